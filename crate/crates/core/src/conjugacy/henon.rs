//! The Hénon map `(x, y) -> (alpha - beta y - x^2, x)` and the parameter
//! region where it carries a horseshoe.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{rat, IntervalBox};
use crate::error::domain;
use crate::Result;

/// Grid used to keep iterates from growing without bound.
const COARSEN_BITS: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenonSystem {
    alpha: BigRational,
    beta: BigRational,
}

impl HenonSystem {
    /// Any `beta != 0` is accepted; use [`HenonSystem::in_region`] to ask
    /// whether the parameters lie in the horseshoe region.
    pub fn new(alpha: BigRational, beta: BigRational) -> Result<Self> {
        if beta.is_zero() {
            return Err(domain("beta must be non-zero"));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    pub fn in_region(&self) -> bool {
        region_holds(&self.alpha, &self.beta)
    }

    /// Enclosure of the image of `p`.
    pub fn step(&self, p: &IntervalBox) -> IntervalBox {
        let x =
            p.x.square()
                .neg()
                .add(&p.y.scale(&-&self.beta))
                .offset(&self.alpha);
        IntervalBox::new(
            x.coarsen(COARSEN_BITS, 2 * COARSEN_BITS as u64),
            p.x.clone(),
        )
    }

    /// Image of `p` under `steps` iterations, each intermediate box included.
    pub fn orbit(&self, p: &IntervalBox, steps: usize) -> Vec<IntervalBox> {
        let mut out = vec![p.clone()];
        for _ in 0..steps {
            let next = self.step(out.last().expect("orbit starts non-empty"));
            out.push(next);
        }
        out
    }
}

/// Whether `alpha >= (5 + 2 sqrt 5)(1 + |beta|)^2 / 4`, decided exactly.
pub fn region_check(alpha: &BigRational, beta: &BigRational) -> Result<bool> {
    if beta.is_zero() {
        return Err(domain("beta must be non-zero"));
    }
    Ok(region_holds(alpha, beta))
}

fn region_holds(alpha: &BigRational, beta: &BigRational) -> bool {
    // alpha >= (5 + 2 sqrt 5) s / 4  with s = (1 + |beta|)^2
    // <=> c := 4 alpha / s - 5 >= 2 sqrt 5 <=> c >= 0 and c^2 >= 20
    let s = (BigRational::one() + beta.abs()).pow(2);
    let c = rat(4, 1) * alpha / s - rat(5, 1);
    !c.is_negative() && &c * &c >= rat(20, 1)
}

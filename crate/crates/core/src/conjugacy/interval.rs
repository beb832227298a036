//! Closed intervals and planar boxes with exact rational endpoints.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::domain;
use crate::Result;

pub(crate) fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// Denominator size of `q` in bits.
pub(crate) fn denom_bits(q: &BigRational) -> u64 {
    q.denom().bits()
}

/// `floor(q * 2^bits) / 2^bits`.
pub fn round_down(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigRational::from_integer(pow2(bits));
    BigRational::new((q * &scale).floor().to_integer(), pow2(bits))
}

/// `ceil(q * 2^bits) / 2^bits`.
pub fn round_up(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigRational::from_integer(pow2(bits));
    BigRational::new((q * &scale).ceil().to_integer(), pow2(bits))
}

fn exact_root(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Lower and upper bounds on `sqrt(q)` on a `2^-bits` grid, or the exact
/// root when numerator and denominator are both perfect squares.
pub fn sqrt_bounds(q: &BigRational, bits: u32) -> Result<(BigRational, BigRational)> {
    if q.is_negative() {
        return Err(domain(format!("square root of negative {q}")));
    }
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    if let (Some(a), Some(b)) = (exact_root(num), exact_root(den)) {
        let r = BigRational::new(a.into(), b.into());
        return Ok((r.clone(), r));
    }
    // floor(sqrt(floor(y))) == floor(sqrt(y)) for y >= 0
    let scaled = (q * BigRational::from_integer(pow2(2 * bits)))
        .floor()
        .to_integer();
    let r = scaled.sqrt();
    let lo = BigRational::new(r.clone(), pow2(bits));
    let hi = BigRational::new(r + 1, pow2(bits));
    Ok((lo, hi))
}

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub(crate) fn new_unchecked(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn unit() -> Self {
        Self::new_unchecked(BigRational::zero(), BigRational::one())
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then(|| Self::new_unchecked(lo, hi))
    }

    /// Tight range of `x^2` over the interval.
    pub fn square(&self) -> Interval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.lo.is_negative() && self.hi.is_positive() {
            Self::new_unchecked(BigRational::zero(), a.max(b))
        } else if a <= b {
            Self::new_unchecked(a, b)
        } else {
            Self::new_unchecked(b, a)
        }
    }

    /// `c * self` for a rational constant.
    pub fn scale(&self, c: &BigRational) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Self::new_unchecked(a, b)
        } else {
            Self::new_unchecked(b, a)
        }
    }

    pub fn offset(&self, c: &BigRational) -> Interval {
        Self::new_unchecked(&self.lo + c, &self.hi + c)
    }

    pub fn neg(&self) -> Interval {
        Self::new_unchecked(-&self.hi, -&self.lo)
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Self::new_unchecked(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    /// Widens the endpoints outward onto a `2^-bits` grid when their
    /// denominators exceed `limit` bits. Never shrinks the interval.
    pub fn coarsen(&self, bits: u32, limit: u64) -> Interval {
        if denom_bits(&self.lo) <= limit && denom_bits(&self.hi) <= limit {
            return self.clone();
        }
        Self::new_unchecked(round_down(&self.lo, bits), round_up(&self.hi, bits))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A product of two intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalBox {
    pub x: Interval,
    pub y: Interval,
}

impl IntervalBox {
    pub fn new(x: Interval, y: Interval) -> Self {
        Self { x, y }
    }

    pub fn point(x: BigRational, y: BigRational) -> Self {
        Self::new(Interval::point(x), Interval::point(y))
    }

    pub fn unit_square() -> Self {
        Self::new(Interval::unit(), Interval::unit())
    }

    pub fn contains(&self, x: &BigRational, y: &BigRational) -> bool {
        self.x.contains(x) && self.y.contains(y)
    }

    pub fn is_subset_of(&self, other: &IntervalBox) -> bool {
        self.x.is_subset_of(&other.x) && self.y.is_subset_of(&other.y)
    }

    pub fn center(&self) -> (BigRational, BigRational) {
        (self.x.midpoint(), self.y.midpoint())
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x {}", self.x, self.y)
    }
}

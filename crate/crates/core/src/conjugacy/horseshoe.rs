//! Affine Smale horseshoe on the unit square.
//!
//! The map stretches the vertical strip `V0 = [0, 1/e] x [0, 1]` by `e`
//! horizontally and squeezes it by `l` vertically onto `H0 = [0, 1] x [0, l]`;
//! `V1 = [1 - 1/e, 1] x [0, 1]` goes to `H1 = [0, 1] x [1 - l, 1]` the same
//! way. Points never leaving the square are coded by bi-infinite words.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;

use super::interval::{rat, Interval, IntervalBox};
use crate::error::domain;
use crate::symbolic::{FiniteWord, Kind, Sequence, Symbol};
use crate::{star, Error, Result};

/// A two-sided block `s_{-b} .. s_{-1} . s_0 .. s_{f-1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DottedWord {
    /// Symbols left of the dot, leftmost first.
    pub past: FiniteWord,
    /// Symbols from index 0 on.
    pub future: FiniteWord,
}

impl DottedWord {
    pub fn new(past: FiniteWord, future: FiniteWord) -> Self {
        Self { past, future }
    }

    /// The central window `s_{-radius} .. s_{radius}` of a bi-infinite stream.
    pub fn central<S: Sequence + ?Sized>(s: &S, radius: usize) -> Result<Self> {
        if s.kind() != Kind::BiInfinite {
            return Err(Error::KindMismatch(
                s.kind().name(),
                Kind::BiInfinite.name(),
            ));
        }
        let r = radius as i64;
        Ok(Self::new(s.window(-r, radius)?, s.window(0, radius + 1)?))
    }
}

impl fmt::Display for DottedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.past, self.future)
    }
}

impl FromStr for DottedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (past, future) = s
            .split_once('.')
            .ok_or_else(|| Error::Parse(format!("expected a dot in {s:?}")))?;
        let parse = |p: &str| -> Result<FiniteWord> {
            if p.is_empty() {
                Ok(FiniteWord::empty())
            } else {
                p.parse()
            }
        };
        Ok(Self::new(parse(past)?, parse(future)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HorseshoeItinerary {
    Word(DottedWord),
    /// Strip membership fails at this symbol index.
    Undecided {
        index: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorseshoeSystem {
    contraction: BigRational,
    expansion: BigRational,
}

impl Default for HorseshoeSystem {
    fn default() -> Self {
        Self {
            contraction: rat(1, 3),
            expansion: rat(3, 1),
        }
    }
}

impl HorseshoeSystem {
    pub fn new(contraction: BigRational, expansion: BigRational) -> Result<Self> {
        if contraction <= rat(0, 1) || contraction >= rat(1, 2) {
            return Err(domain(format!(
                "contraction must lie in (0, 1/2), got {contraction}"
            )));
        }
        if expansion <= rat(2, 1) {
            return Err(domain(format!("expansion must exceed 2, got {expansion}")));
        }
        Ok(Self {
            contraction,
            expansion,
        })
    }

    pub fn contraction(&self) -> &BigRational {
        &self.contraction
    }

    pub fn expansion(&self) -> &BigRational {
        &self.expansion
    }

    pub fn vertical_strip(&self, s: Symbol) -> IntervalBox {
        let w = BigRational::one() / &self.expansion;
        let x = match s {
            Symbol::Zero => Interval::new_unchecked(rat(0, 1), w),
            Symbol::One => Interval::new_unchecked(BigRational::one() - w, BigRational::one()),
        };
        IntervalBox::new(x, Interval::unit())
    }

    pub fn horizontal_strip(&self, s: Symbol) -> IntervalBox {
        let l = self.contraction.clone();
        let y = match s {
            Symbol::Zero => Interval::new_unchecked(rat(0, 1), l),
            Symbol::One => Interval::new_unchecked(BigRational::one() - l, BigRational::one()),
        };
        IntervalBox::new(Interval::unit(), y)
    }

    fn strip_of(&self, p: &IntervalBox, strip: impl Fn(Symbol) -> IntervalBox) -> Option<Symbol> {
        [Symbol::Zero, Symbol::One]
            .into_iter()
            .find(|&s| p.is_subset_of(&strip(s)))
    }

    /// Forward image; the box must sit inside one vertical strip.
    pub fn step(&self, p: &IntervalBox) -> Result<IntervalBox> {
        let s = self
            .strip_of(p, |s| self.vertical_strip(s))
            .ok_or_else(|| domain(format!("{p} is not inside a vertical strip")))?;
        let shift = match s {
            Symbol::Zero => (rat(0, 1), rat(0, 1)),
            Symbol::One => (
                BigRational::one() - &self.expansion,
                BigRational::one() - &self.contraction,
            ),
        };
        Ok(IntervalBox::new(
            p.x.scale(&self.expansion).offset(&shift.0),
            p.y.scale(&self.contraction).offset(&shift.1),
        ))
    }

    /// Backward image; the box must sit inside one horizontal strip.
    pub fn inverse_step(&self, p: &IntervalBox) -> Result<IntervalBox> {
        let s = self
            .strip_of(p, |s| self.horizontal_strip(s))
            .ok_or_else(|| domain(format!("{p} is not inside a horizontal strip")))?;
        let x = self.x_branch(s, &p.x);
        let y = match s {
            Symbol::Zero => p.y.scale(&(BigRational::one() / &self.contraction)),
            Symbol::One => {
                p.y.offset(&(&self.contraction - BigRational::one()))
                    .scale(&(BigRational::one() / &self.contraction))
            }
        };
        Ok(IntervalBox::new(x, y))
    }

    /// Inverse of the horizontal stretch on `V_s`.
    fn x_branch(&self, s: Symbol, x: &Interval) -> Interval {
        let inv = BigRational::one() / &self.expansion;
        match s {
            Symbol::Zero => x.scale(&inv),
            Symbol::One => x
                .offset(&(&self.expansion - BigRational::one()))
                .scale(&inv),
        }
    }

    /// Vertical squeeze onto `H_s`.
    fn y_branch(&self, s: Symbol, y: &Interval) -> Interval {
        let squeezed = y.scale(&self.contraction);
        match s {
            Symbol::Zero => squeezed,
            Symbol::One => squeezed.offset(&(BigRational::one() - &self.contraction)),
        }
    }

    /// The set of points of the square whose itinerary matches `word` on
    /// its indices. Exact for the affine model.
    pub fn box_for(&self, word: &DottedWord) -> IntervalBox {
        let mut x = Interval::unit();
        for &s in word.future.symbols().iter().rev() {
            x = self.x_branch(s, &x);
        }
        // past is stored leftmost first, so s_{-1} is last and applied last
        let mut y = Interval::unit();
        for &s in word.past.symbols() {
            y = self.y_branch(s, &y);
        }
        IntervalBox::new(x, y)
    }

    /// Symbols `s_{-past} .. s_{future-1}` of every point in `p`.
    pub fn itinerary(&self, p: &IntervalBox, past: usize, future: usize) -> HorseshoeItinerary {
        let mut fwd = FiniteWord::empty();
        let mut current = p.clone();
        for k in 0..future {
            match self.strip_of(&current, |s| self.vertical_strip(s)) {
                Some(s) => fwd.push(s),
                None => return HorseshoeItinerary::Undecided { index: k as i64 },
            }
            if k + 1 < future {
                current = self.step(&current).expect("box checked to lie in a strip");
            }
        }
        let mut back = Vec::with_capacity(past);
        let mut current = p.clone();
        for k in 1..=past {
            match self.strip_of(&current, |s| self.horizontal_strip(s)) {
                Some(s) => back.push(s),
                None => return HorseshoeItinerary::Undecided { index: -(k as i64) },
            }
            if k < past {
                current = self
                    .inverse_step(&current)
                    .expect("box checked to lie in a strip");
            }
        }
        back.reverse();
        HorseshoeItinerary::Word(DottedWord::new(FiniteWord::new(back), fwd))
    }

    /// Box coding the central window of radius `radius` of bi-infinite `s*`.
    pub fn transport_bi_star(&self, radius: usize) -> Result<IntervalBox> {
        Ok(self.box_for(&DottedWord::central(&star::bi_infinite(), radius)?))
    }
}

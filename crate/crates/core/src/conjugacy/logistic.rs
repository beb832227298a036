//! The logistic map `x -> mu x (1 - x)` for `mu > 4` and its coding by the
//! two branch intervals around the escape gap.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::interval::{rat, sqrt_bounds, Interval};
use crate::error::domain;
use crate::star;
use crate::symbolic::{FiniteWord, Sequence, Symbol};
use crate::{Error, Result};

pub const DEFAULT_PRECISION_BITS: u32 = 64;

/// Result of coding an enclosure by branch intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Itinerary {
    Word(FiniteWord),
    /// The `step`-th iterate straddles a branch boundary or sits in the gap.
    Undecided {
        step: usize,
        prefix: FiniteWord,
    },
}

impl Itinerary {
    pub fn word(&self) -> Option<&FiniteWord> {
        match self {
            Itinerary::Word(w) => Some(w),
            Itinerary::Undecided { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogisticSystem {
    mu: BigRational,
    precision_bits: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationFailure {
    pub word: FiniteWord,
    pub expected: FiniteWord,
    pub observed: Itinerary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationReport {
    pub checked: usize,
    pub failures: Vec<CommutationFailure>,
}

impl CommutationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl LogisticSystem {
    pub fn new(mu: BigRational) -> Result<Self> {
        Self::with_precision(mu, DEFAULT_PRECISION_BITS)
    }

    pub fn with_precision(mu: BigRational, precision_bits: u32) -> Result<Self> {
        if mu <= rat(4, 1) {
            return Err(domain(format!(
                "logistic parameter must exceed 4, got {mu}"
            )));
        }
        if !(8..=4096).contains(&precision_bits) {
            return Err(domain("precision must be between 8 and 4096 bits"));
        }
        Ok(Self { mu, precision_bits })
    }

    pub fn mu(&self) -> &BigRational {
        &self.mu
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        &self.mu * x * (BigRational::one() - x)
    }

    /// Enclosure of the image of `x`. The range is computed exactly and is
    /// only widened onto a fine grid once denominators grow large.
    pub fn step(&self, x: &Interval) -> Interval {
        let half = rat(1, 2);
        let a = self.eval(x.lo());
        let b = self.eval(x.hi());
        let image = if x.hi() <= &half {
            Interval::new_unchecked(a, b)
        } else if x.lo() >= &half {
            Interval::new_unchecked(b, a)
        } else {
            let peak = &self.mu / rat(4, 1);
            Interval::new_unchecked(a.min(b), peak)
        };
        let bits = 2 * self.precision_bits;
        image.coarsen(bits, 2 * bits as u64)
    }

    /// Which branch interval contains all of `x`, decided exactly.
    pub fn branch_of(&self, x: &Interval) -> Option<Symbol> {
        let half = rat(1, 2);
        let one = BigRational::one();
        if x.lo() < &BigRational::zero() || x.hi() > &one {
            return None;
        }
        // f is increasing on [0, 1/2] and decreasing on [1/2, 1]
        if x.hi() <= &half && self.eval(x.hi()) <= one {
            Some(Symbol::Zero)
        } else if x.lo() >= &half && self.eval(x.lo()) <= one {
            Some(Symbol::One)
        } else {
            None
        }
    }

    /// Outer enclosures of the branch intervals `I0` and `I1`.
    pub fn branch_intervals(&self) -> Result<(Interval, Interval)> {
        let i0 = self.hull_branch(Symbol::Zero, &Interval::unit())?;
        let i1 = self.hull_branch(Symbol::One, &Interval::unit())?;
        Ok((i0, i1))
    }

    pub fn itinerary(&self, x: &Interval, length: usize) -> Result<Itinerary> {
        if length == 0 {
            return Err(domain("itinerary length must be at least 1"));
        }
        let mut word = FiniteWord::empty();
        let mut current = x.clone();
        for step in 0..length {
            match self.branch_of(&current) {
                Some(s) => word.push(s),
                None => return Ok(Itinerary::Undecided { step, prefix: word }),
            }
            if step + 1 < length {
                current = self.step(&current);
            }
        }
        Ok(Itinerary::Word(word))
    }

    /// `1 - 4y/mu` for the inverse branches.
    fn discriminant(&self, y: &BigRational) -> BigRational {
        BigRational::one() - rat(4, 1) * y / &self.mu
    }

    /// `g_s(y)` bounded below and above.
    fn inverse_bounds(&self, s: Symbol, y: &BigRational) -> Result<(BigRational, BigRational)> {
        let (r_lo, r_hi) = sqrt_bounds(&self.discriminant(y), self.precision_bits)?;
        let one = BigRational::one();
        let two = rat(2, 1);
        Ok(match s {
            Symbol::Zero => ((&one - r_hi) / &two, (&one - r_lo) / &two),
            Symbol::One => ((&one + r_lo) / &two, (&one + r_hi) / &two),
        })
    }

    /// Inner enclosure of `g_s(y)` for `y` in `[0, 1]`.
    fn inner_branch(&self, s: Symbol, y: &Interval) -> Option<Interval> {
        // g0 increases in y, g1 decreases
        let (at_lo, at_hi) = (
            self.inverse_bounds(s, y.lo()).ok()?,
            self.inverse_bounds(s, y.hi()).ok()?,
        );
        let (lo, hi) = match s {
            Symbol::Zero => (at_lo.1, at_hi.0),
            Symbol::One => (at_hi.1, at_lo.0),
        };
        (lo <= hi).then(|| Interval::new_unchecked(lo, hi))
    }

    fn hull_branch(&self, s: Symbol, y: &Interval) -> Result<Interval> {
        let at_lo = self.inverse_bounds(s, y.lo())?;
        let at_hi = self.inverse_bounds(s, y.hi())?;
        let (lo, hi) = match s {
            Symbol::Zero => (at_lo.0, at_hi.1),
            Symbol::One => (at_hi.0, at_lo.1),
        };
        let lo = lo.max(BigRational::zero());
        let hi = hi.min(BigRational::one());
        Interval::new(lo, hi)
    }

    /// Inner enclosure of the cylinder of `word`: every point of the result
    /// has an itinerary beginning with `word`.
    pub fn point_for(&self, word: &FiniteWord) -> Result<Interval> {
        if word.is_empty() {
            return Err(domain("point_for needs a non-empty word"));
        }
        let mut y = Interval::unit();
        for (k, &s) in word.symbols().iter().enumerate().rev() {
            y = self.inner_branch(s, &y).ok_or_else(|| Error::Precision {
                bits: self.precision_bits,
                achieved_width: format!("{} after {} symbols", y.width(), word.len() - k - 1),
            })?;
        }
        Ok(y)
    }

    /// Outer enclosure of the cylinder of `word`, containing every point of
    /// the invariant set whose itinerary begins with `word`.
    pub fn cylinder_hull(&self, word: &FiniteWord) -> Result<Interval> {
        if word.is_empty() {
            return Err(domain("cylinder_hull needs a non-empty word"));
        }
        let mut y = Interval::unit();
        for &s in word.symbols().iter().rev() {
            y = self.hull_branch(s, &y)?;
        }
        Ok(y)
    }

    /// Enclosure of the point of the invariant set coded by the one-sided
    /// unpredictable sequence, from its first `depth` symbols.
    pub fn transport_unpredictable_point(&self, depth: usize) -> Result<Interval> {
        if depth == 0 {
            return Err(domain("depth must be at least 1"));
        }
        let prefix = star::one_sided().window(0, depth)?;
        self.cylinder_hull(&prefix)
    }

    /// Checks that stepping the cylinder of `w` lands in the cylinder of
    /// the shifted word, for each word given.
    pub fn commutation_check_words<'a>(
        &self,
        words: impl IntoIterator<Item = &'a FiniteWord>,
    ) -> Result<CommutationReport> {
        let mut checked = 0;
        let mut failures = Vec::new();
        for w in words {
            if w.len() < 2 {
                return Err(domain("commutation needs words of length at least 2"));
            }
            checked += 1;
            let image = self.step(&self.point_for(w)?);
            let expected = w.suffix_from(1);
            let observed = self.itinerary(&image, expected.len())?;
            if observed.word() != Some(&expected) {
                failures.push(CommutationFailure {
                    word: w.clone(),
                    expected,
                    observed,
                });
            }
        }
        Ok(CommutationReport { checked, failures })
    }

    /// Commutation on `samples` random words of length `word_length`.
    pub fn commutation_check(
        &self,
        word_length: usize,
        samples: usize,
        seed: u64,
    ) -> Result<CommutationReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let words: Vec<FiniteWord> = (0..samples)
            .map(|_| {
                (0..word_length)
                    .map(|_| {
                        if rng.gen::<bool>() {
                            Symbol::One
                        } else {
                            Symbol::Zero
                        }
                    })
                    .collect()
            })
            .collect();
        self.commutation_check_words(&words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys() -> LogisticSystem {
        LogisticSystem::new(rat(9, 2)).unwrap()
    }

    fn w(s: &str) -> FiniteWord {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_small_mu() {
        assert!(LogisticSystem::new(rat(4, 1)).is_err());
    }

    #[test]
    fn step_examples() {
        let s = sys();
        assert_eq!(
            s.step(&Interval::point(rat(0, 1))),
            Interval::point(rat(0, 1))
        );
        assert_eq!(
            s.step(&Interval::point(rat(1, 2))),
            Interval::point(rat(9, 8))
        );
        assert_eq!(
            s.step(&Interval::point(rat(1, 1))),
            Interval::point(rat(0, 1))
        );
    }

    #[test]
    fn first_cylinders_are_exact() {
        let s = sys();
        assert_eq!(
            s.point_for(&w("0")).unwrap(),
            Interval::new(rat(0, 1), rat(1, 3)).unwrap()
        );
        assert_eq!(
            s.point_for(&w("1")).unwrap(),
            Interval::new(rat(2, 3), rat(1, 1)).unwrap()
        );
        assert_eq!(
            s.cylinder_hull(&w("0")).unwrap(),
            s.point_for(&w("0")).unwrap()
        );
    }

    #[test]
    fn fixed_point_and_gap() {
        let s = sys();
        let zero = Interval::point(rat(0, 1));
        assert_eq!(s.itinerary(&zero, 5).unwrap(), Itinerary::Word(w("00000")));
        let gap = Interval::new(rat(1, 4), rat(3, 4)).unwrap();
        assert!(matches!(
            s.itinerary(&gap, 3).unwrap(),
            Itinerary::Undecided { step: 0, .. }
        ));
        let escaped = Interval::point(rat(1, 2));
        assert!(matches!(
            s.itinerary(&escaped, 1).unwrap(),
            Itinerary::Undecided { step: 0, .. }
        ));
    }

    #[test]
    fn round_trip_short_words() {
        let s = sys();
        for len in 1..=6 {
            for word in FiniteWord::all_of_length(len) {
                let x = s.point_for(&word).unwrap();
                assert_eq!(s.itinerary(&x, len).unwrap(), Itinerary::Word(word));
            }
        }
    }

    #[test]
    fn inner_inside_hull() {
        let s = sys();
        for word in FiniteWord::all_of_length(7) {
            assert!(s
                .point_for(&word)
                .unwrap()
                .is_subset_of(&s.cylinder_hull(&word).unwrap()));
        }
    }

    #[test]
    fn commutation_examples() {
        let s = sys();
        let r = s
            .commutation_check_words(&[w("01"), w("00000000")])
            .unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(s.commutation_check(12, 20, 7).unwrap().passed());
    }

    #[test]
    fn transport_shrinks() {
        let s = sys();
        let one = s.transport_unpredictable_point(1).unwrap();
        assert_eq!(one, Interval::new(rat(0, 1), rat(1, 3)).unwrap());
        let two = s.transport_unpredictable_point(2).unwrap();
        assert!(two.is_subset_of(&one));
        let inner = s.point_for(&w("01")).unwrap();
        assert!(inner.is_subset_of(&two));
        assert_eq!(s.branch_of(&s.step(&inner)), Some(Symbol::One));
        let widths: Vec<_> = [1, 2, 4, 8, 12]
            .iter()
            .map(|&l| s.transport_unpredictable_point(l).unwrap().width())
            .collect();
        assert!(widths.windows(2).all(|p| p[1] < p[0]));
        assert!(widths[4] < rat(1, 256));
    }
}

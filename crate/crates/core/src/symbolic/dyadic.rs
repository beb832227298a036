use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// An exact rational `numerator / 2^exponent`, kept in lowest terms
/// (odd numerator unless the exponent is zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u64,
}

impl Dyadic {
    pub fn new(numerator: impl Into<BigInt>, exponent: u64) -> Self {
        let mut numerator = numerator.into();
        let mut exponent = exponent;
        if numerator.is_zero() {
            return Self::zero();
        }
        let twos = numerator.trailing_zeros().unwrap_or(0).min(exponent);
        if twos > 0 {
            numerator >>= twos;
            exponent -= twos;
        }
        Self {
            numerator,
            exponent,
        }
    }

    pub fn zero() -> Self {
        Self {
            numerator: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn from_int(value: impl Into<BigInt>) -> Self {
        Self::new(value, 0)
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u64) -> Self {
        Self::new(1, k)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.numerator.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.numerator.is_negative()
    }

    /// Multiply by `2^k` for any signed `k`.
    pub fn scale_pow2(&self, k: i64) -> Self {
        if k >= 0 {
            let k = k as u64;
            if k <= self.exponent {
                Self::new(self.numerator.clone(), self.exponent - k)
            } else {
                Self::new(&self.numerator << (k - self.exponent), 0)
            }
        } else {
            Self::new(self.numerator.clone(), self.exponent + k.unsigned_abs())
        }
    }

    pub fn half(&self) -> Self {
        self.scale_pow2(-1)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), BigInt::one() << self.exponent)
    }

    /// Lossy conversion for display and plotting.
    pub fn to_f64(&self) -> f64 {
        // drop low bits first so huge numerators stay finite
        let drop = self.numerator.bits().saturating_sub(60);
        let head = (&self.numerator >> drop).to_f64().unwrap_or(f64::NAN);
        let e = drop as f64 - self.exponent as f64;
        head * e.exp2()
    }

    /// Aligns two dyadics onto a common power-of-two denominator.
    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u64) {
        let e = self.exponent.max(other.exponent);
        (
            &self.numerator << (e - self.exponent),
            &other.numerator << (e - other.exponent),
            e,
        )
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Self::zero()
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

/// Serialized as `p/2^q`.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.exponent)
    }
}

/// Accepts `p/2^q`, `p/q` with `q` a power of two, or a bare integer.
impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a dyadic rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Self::from_int(s.parse::<BigInt>().map_err(|_| bad())?)),
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q = q.trim();
                if let Some(e) = q.strip_prefix("2^") {
                    let e: u64 = e.parse().map_err(|_| bad())?;
                    return Ok(Self::new(p, e));
                }
                let q: BigInt = q.parse().map_err(|_| bad())?;
                if !q.is_positive() || q.magnitude().count_ones() != 1 {
                    return Err(bad());
                }
                let e = q.trailing_zeros().unwrap_or(0);
                Ok(Self::new(p, e))
            }
        }
    }
}

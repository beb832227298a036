use num_bigint::BigUint;

use super::stream::require_same_kind;
use super::{Dyadic, Kind, Sequence};
use crate::{error::domain, Result};

/// Window radius at which undecided comparisons give up.
pub const DEFAULT_RADIUS_CAP: u64 = 4096;

/// Inclusive index range that was summed exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

/// Exact bracket `[partial_sum, partial_sum + tail_bound]` around a metric
/// value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicEnclosure {
    pub partial_sum: Dyadic,
    pub tail_bound: Dyadic,
    pub window: Window,
}

impl DyadicEnclosure {
    pub fn lower(&self) -> &Dyadic {
        &self.partial_sum
    }

    pub fn upper(&self) -> Dyadic {
        &self.partial_sum + &self.tail_bound
    }

    pub fn contains(&self, value: &Dyadic) -> bool {
        value >= &self.partial_sum && *value <= self.upper()
    }

    /// `self ⊆ other` as brackets.
    pub fn is_within(&self, other: &DyadicEnclosure) -> bool {
        self.partial_sum >= other.partial_sum && self.upper() <= other.upper()
    }
}

fn tail_mass(kind: Kind, radius: u64) -> Dyadic {
    match kind {
        Kind::OneSided => Dyadic::pow2_neg(radius),
        Kind::BiInfinite => Dyadic::new(2, radius),
    }
}

fn radius_i64(radius: u64) -> Result<i64> {
    i64::try_from(radius)
        .ok()
        .filter(|r| *r < i64::MAX / 2)
        .ok_or_else(|| domain(format!("window radius {radius} too large")))
}

fn differs<A, B>(s: &A, r: &B, k: i64) -> Result<bool>
where
    A: Sequence + ?Sized,
    B: Sequence + ?Sized,
{
    Ok(s.symbol_at_small(k)? != r.symbol_at_small(k)?)
}

/// Sums `|s_k - r_k| / 2^|k|` exactly over the window of the given radius
/// and bounds the rest by the remaining geometric mass.
pub fn metric<A, B>(s: &A, r: &B, radius: u64) -> Result<DyadicEnclosure>
where
    A: Sequence + ?Sized,
    B: Sequence + ?Sized,
{
    let kind = s.kind();
    require_same_kind(kind, r.kind())?;
    let rad = radius_i64(radius)?;
    // numerator over 2^radius; index k carries weight 2^(radius - |k|)
    let mut num = BigUint::default();
    let mut extra = BigUint::default();
    for k in 0..=rad {
        let bit = (rad - k) as u64;
        if differs(s, r, k)? {
            num.set_bit(bit, true);
        }
        if kind == Kind::BiInfinite && k > 0 && differs(s, r, -k)? {
            extra.set_bit(bit, true);
        }
    }
    let lo = if kind == Kind::OneSided { 0 } else { -rad };
    Ok(DyadicEnclosure {
        partial_sum: Dyadic::new(num + extra, radius),
        tail_bound: tail_mass(kind, radius),
        window: Window { lo, hi: rad },
    })
}

/// Three-valued answer of a metric comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    /// Not decided before the radius cap.
    Unknown,
}

impl Decision {
    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }
}

/// Decides `d(s, r) >= threshold` with the default radius cap.
pub fn metric_at_least<A, B>(s: &A, r: &B, threshold: &Dyadic) -> Result<Decision>
where
    A: Sequence + ?Sized,
    B: Sequence + ?Sized,
{
    metric_at_least_with_cap(s, r, threshold, DEFAULT_RADIUS_CAP)
}

/// Widens the summed window one index at a time until the bracket lies
/// entirely on one side of `threshold`, or `cap` is reached.
pub fn metric_at_least_with_cap<A, B>(
    s: &A,
    r: &B,
    threshold: &Dyadic,
    cap: u64,
) -> Result<Decision>
where
    A: Sequence + ?Sized,
    B: Sequence + ?Sized,
{
    let kind = s.kind();
    require_same_kind(kind, r.kind())?;
    if !threshold.is_positive() {
        return Err(domain("threshold must be positive"));
    }
    let cap = radius_i64(cap)?;
    let mut partial = Dyadic::zero();
    for k in 0..=cap {
        let mut hits = u8::from(differs(s, r, k)?);
        if kind == Kind::BiInfinite && k > 0 {
            hits += u8::from(differs(s, r, -k)?);
        }
        if hits > 0 {
            partial = &partial + &Dyadic::new(hits, k as u64);
        }
        if partial >= *threshold {
            return Ok(Decision::Yes);
        }
        if &partial + &tail_mass(kind, k as u64) < *threshold {
            return Ok(Decision::No);
        }
    }
    Ok(Decision::Unknown)
}

/// Largest central window on which two sequences agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    /// The symbols at index 0 differ.
    Disagree,
    /// Agreement on `|i| <= n` (or `0..=n`), failing just beyond.
    UpTo(u64),
    /// Agreement holds through the whole capped window.
    ExceedsCap,
}

impl Agreement {
    /// Agreement radius clamped to the cap, if any.
    pub fn radius(self, cap: u64) -> Option<u64> {
        match self {
            Agreement::Disagree => None,
            Agreement::UpTo(n) => Some(n),
            Agreement::ExceedsCap => Some(cap),
        }
    }
}

pub fn agreement_radius<A, B>(s: &A, r: &B, cap: u64) -> Result<Agreement>
where
    A: Sequence + ?Sized,
    B: Sequence + ?Sized,
{
    let kind = s.kind();
    require_same_kind(kind, r.kind())?;
    let cap = radius_i64(cap)?;
    for k in 0..=cap {
        let broken = differs(s, r, k)? || (kind == Kind::BiInfinite && k > 0 && differs(s, r, -k)?);
        if broken {
            return Ok(if k == 0 {
                Agreement::Disagree
            } else {
                Agreement::UpTo(k as u64 - 1)
            });
        }
    }
    Ok(Agreement::ExceedsCap)
}

//! Return times `t_n` and separation times `τ_n`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::scan::{read_window, scan_window, Direction};
use crate::error::domain;
use crate::star;
use crate::symbolic::{
    agreement_radius, Agreement, FiniteWord, Kind, Sequence, ShiftedStream, Symbol,
};
use crate::{Error, Result};

/// Default bound on `|t|` for every orbit search.
pub const DEFAULT_HORIZON: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReturnMode {
    /// Least admissible time found by scanning the orbit.
    Minimal,
    /// Occurrence of the central window as a whole block of `s*`, located by
    /// index arithmetic.
    Canonical,
}

impl ReturnMode {
    pub fn name(self) -> &'static str {
        match self {
            ReturnMode::Minimal => "minimal",
            ReturnMode::Canonical => "canonical",
        }
    }
}

/// Lowest index of the window a depth-`n` return must reproduce.
pub(crate) fn window_lo(kind: Kind, n: u64) -> i64 {
    match kind {
        Kind::OneSided => 0,
        Kind::BiInfinite => -(n as i64),
    }
}

pub(crate) fn window_len(kind: Kind, n: u64) -> usize {
    match kind {
        Kind::OneSided => n as usize + 1,
        Kind::BiInfinite => 2 * n as usize + 1,
    }
}

/// Checks that `σ^t(s)` agrees with `s` on the depth-`n` window.
pub fn returns_within<S: Sequence + ?Sized>(s: &S, t: &BigInt, n: u64) -> Result<bool> {
    let image = s.shift(t)?;
    let here = s.view();
    Ok(match agreement_radius(&image, &here, n)? {
        Agreement::Disagree => false,
        Agreement::UpTo(r) => r >= n,
        Agreement::ExceedsCap => true,
    })
}

/// Least `t >= 1` with `σ^t(s)` matching `s` on `0..=n` (one-sided) or
/// `-n..=n` (bi-infinite); see [`find_return_time_from`].
pub fn find_return_time<S: Sequence + ?Sized>(
    s: &S,
    n: u64,
    mode: ReturnMode,
    horizon: u64,
) -> Result<BigInt> {
    match mode {
        ReturnMode::Minimal => find_return_time_from(s, n, 1, Direction::Forward, horizon),
        ReturnMode::Canonical => canonical_return_time(s, n, Direction::Forward),
    }
}

/// Least admissible time at or beyond `from` in the given direction.
pub fn find_return_time_from<S: Sequence + ?Sized>(
    s: &S,
    n: u64,
    from: i64,
    dir: Direction,
    horizon: u64,
) -> Result<BigInt> {
    let kind = s.kind();
    if dir == Direction::Backward && kind == Kind::OneSided {
        return Err(domain("negative times need a bi-infinite stream"));
    }
    if (dir == Direction::Forward && from < 1) || (dir == Direction::Backward && from > -1) {
        return Err(domain(
            "return times must be nonzero and in the search direction",
        ));
    }
    let lo = window_lo(kind, n);
    let pattern = read_window(s, lo, window_len(kind, n))?;
    match scan_window(s, lo, &pattern, from, dir, horizon)? {
        Some(t) => {
            let t = BigInt::from(t);
            verify_return(s, &t, n)?;
            Ok(t)
        }
        None => Err(Error::NotFound {
            what: format!("return time at depth {n}"),
            horizon,
        }),
    }
}

fn verify_return<S: Sequence + ?Sized>(s: &S, t: &BigInt, n: u64) -> Result<()> {
    if !returns_within(s, t, n)? {
        return Err(Error::Verification(format!(
            "σ^{t} does not reproduce the depth-{n} window"
        )));
    }
    Ok(())
}

/// The block-occurrence return time of `s*` itself.
///
/// One-sided: the prefix `s*_0..s*_n` appears as a whole block of the
/// length-`(n+1)` segment, at `segment_start(n+1) + (n+1)·value(prefix)`.
/// Bi-infinite: the central window `w` extended by one symbol is a whole
/// block of the length-`(2n+2)` segment: `w0` (odd rank) right of the origin
/// for forward times, `w1` (even rank) left of it for backward times.
pub fn canonical_return_time<S: Sequence + ?Sized>(
    s: &S,
    n: u64,
    dir: Direction,
) -> Result<BigInt> {
    let view = s.view();
    if !star::is_star(view.base()) || !view.offset().is_zero() {
        return Err(domain("canonical return times are defined for s* itself"));
    }
    let kind = s.kind();
    let t = match (kind, dir) {
        (Kind::OneSided, Direction::Backward) => {
            return Err(domain("negative times need a bi-infinite stream"))
        }
        (Kind::OneSided, Direction::Forward) => {
            if n == 0 {
                return Err(domain("the depth-0 prefix is its own block at time 0"));
            }
            let prefix: FiniteWord = read_window(s, 0, n as usize + 1)?.into_iter().collect();
            star::one_sided_block_position(&prefix)?
        }
        (Kind::BiInfinite, dir) => {
            let mut block: FiniteWord = read_window(s, -(n as i64), 2 * n as usize + 1)?
                .into_iter()
                .collect();
            block.push(match dir {
                Direction::Forward => Symbol::Zero,
                Direction::Backward => Symbol::One,
            });
            let start = star::bi_block_position(&block)?
                .ok_or_else(|| Error::Verification("missing block".into()))?;
            start + n
        }
    };
    verify_return(s, &t, n)?;
    Ok(t)
}

/// `sum_{j=1}^{n} j 2^j`, the lower bound for one-sided canonical times.
pub fn one_sided_canonical_bound(n: u64) -> BigInt {
    (1..=n).map(|j| BigInt::from(j) << j).sum()
}

/// `n + sum_{k=1}^{2n+1} k 2^(k-1)`, the lower bound for bi-infinite
/// canonical times.
pub fn bi_infinite_canonical_bound(n: u64) -> BigInt {
    BigInt::from(n)
        + (1..=2 * n + 1)
            .map(|k| BigInt::from(k) << (k - 1))
            .sum::<BigInt>()
}

/// Least `τ >= min_tau` with `σ^(t+τ)(s)_0 != σ^τ(s)_0`. A mismatch at index
/// 0 makes the distance at least 1 exactly.
pub fn find_separation_time<S: Sequence + ?Sized>(
    s: &S,
    t: &BigInt,
    min_tau: u64,
    horizon: u64,
) -> Result<BigInt> {
    if min_tau < 1 {
        return Err(domain("separation times start at 1"));
    }
    let ahead: ShiftedStream = s.shift(t)?;
    let small_t = t.to_i64();
    for tau in min_tau..=horizon {
        let tau_i = tau as i64;
        let far = match small_t.and_then(|t| t.checked_add(tau_i)) {
            Some(i) => s.symbol_at_small(i)?,
            None => ahead.symbol_at_small(tau_i)?,
        };
        if far != s.symbol_at_small(tau_i)? {
            return Ok(BigInt::from(tau));
        }
    }
    Err(Error::NotFound {
        what: format!("separation time after return {t}"),
        horizon,
    })
}

/// For each period `q <= max_period`, looks for `i <= max_index` with
/// `s_i != s_(i+q)`. Returns the first period with no break, if any.
pub fn aperiodicity_scan<S: Sequence + ?Sized>(
    s: &S,
    max_period: u64,
    max_index: u64,
) -> Result<Option<u64>> {
    for q in 1..=max_period {
        if find_period_break(s, q, 0, max_index)?.is_none() {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// Least `i` in `[start, start + span]` with `s_i != s_(i+q)`.
pub fn find_period_break<S: Sequence + ?Sized>(
    s: &S,
    q: u64,
    start: i64,
    span: u64,
) -> Result<Option<i64>> {
    let q = q as i64;
    for i in start..=start + span as i64 {
        if s.symbol_at_small(i)? != s.symbol_at_small(i + q)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

pub(crate) fn ensure_positive_time(t: &BigInt) -> Result<()> {
    if !t.is_positive() {
        return Err(Error::Verification(format!("time {t} is not positive")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::SymbolStream;

    #[test]
    fn one_sided_minimal_examples() {
        let s = star::one_sided();
        let t = |n| find_return_time(&s, n, ReturnMode::Minimal, DEFAULT_HORIZON).unwrap();
        assert_eq!(t(0), BigInt::from(2));
        assert_eq!(t(1), BigInt::from(4));
    }

    #[test]
    fn one_sided_canonical_example() {
        let s = star::one_sided();
        assert_eq!(
            find_return_time(&s, 1, ReturnMode::Canonical, DEFAULT_HORIZON).unwrap(),
            BigInt::from(4)
        );
        assert!(find_return_time(&s, 0, ReturnMode::Canonical, DEFAULT_HORIZON).is_err());
        assert!(canonical_return_time(&s.shift_by(3).unwrap(), 2, Direction::Forward).is_err());
    }

    #[test]
    fn canonical_bounds() {
        assert_eq!(one_sided_canonical_bound(1), BigInt::from(2));
        assert_eq!(one_sided_canonical_bound(3), BigInt::from(2 + 8 + 24));
        assert_eq!(bi_infinite_canonical_bound(1), BigInt::from(1 + 1 + 4 + 12));
    }

    #[test]
    fn backward_canonical_lands_left() {
        let s = star::bi_infinite();
        for n in 0..6 {
            let t = canonical_return_time(&s, n, Direction::Backward).unwrap();
            assert!(t.is_negative());
            assert!(returns_within(&s, &t, n).unwrap());
        }
    }

    #[test]
    fn separation_is_least_mismatch() {
        let s = star::one_sided();
        let t = BigInt::from(4);
        let tau = find_separation_time(&s, &t, 2, 1000).unwrap();
        let tau_u = tau.to_i64().unwrap();
        for k in 2..tau_u {
            assert_eq!(
                s.symbol_at_small(4 + k).unwrap(),
                s.symbol_at_small(k).unwrap()
            );
        }
        assert_ne!(
            s.symbol_at_small(4 + tau_u).unwrap(),
            s.symbol_at_small(tau_u).unwrap()
        );
    }

    #[test]
    fn periodic_stream_never_separates() {
        let p = SymbolStream::periodic(Kind::OneSided, &"01".parse().unwrap()).unwrap();
        let t = find_return_time(&p, 3, ReturnMode::Minimal, 100).unwrap();
        assert_eq!(t, BigInt::from(2));
        assert!(matches!(
            find_separation_time(&p, &t, 4, 5000),
            Err(Error::NotFound { .. })
        ));
        assert_eq!(aperiodicity_scan(&p, 4, 100).unwrap(), Some(2));
    }
}

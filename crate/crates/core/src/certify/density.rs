//! Finite-resolution density of an orbit: every pattern of a given window
//! size is visited.

use num_bigint::BigInt;

use super::scan::read_window;
use crate::error::domain;
use crate::star;
use crate::symbolic::{FiniteWord, Kind, Sequence, Symbol};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityStrategy {
    /// Place each pattern at its own block of `s*` by index arithmetic.
    BlockPosition,
    /// Record the visit closest to time 0 with `|t| <= horizon`.
    Scan { horizon: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityHit {
    pub pattern: FiniteWord,
    /// `σ^shift(s)` shows `pattern` on the window.
    pub shift: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub kind: Kind,
    /// Window `0..L` (one-sided) or `-r..=r` with `L = 2r + 1`.
    pub window_length: usize,
    pub hits: Vec<DensityHit>,
    pub missing: Vec<FiniteWord>,
}

impl DensityReport {
    pub fn complete(&self) -> bool {
        self.missing.is_empty() && self.hits.len() == 1usize << self.window_length
    }
}

fn window_lo(kind: Kind, len: usize) -> i64 {
    match kind {
        Kind::OneSided => 0,
        Kind::BiInfinite => -((len as i64 - 1) / 2),
    }
}

/// Locates every word of length `window_length` on the orbit of `s`. For
/// bi-infinite streams the window is central and `window_length` must be
/// odd.
pub fn density_check<S: Sequence + ?Sized>(
    s: &S,
    window_length: usize,
    strategy: DensityStrategy,
) -> Result<DensityReport> {
    let kind = s.kind();
    if window_length == 0 {
        return Err(domain("window length must be at least 1"));
    }
    if window_length > 24 {
        return Err(domain(
            "exhaustive density checks are limited to windows of 24 symbols",
        ));
    }
    if kind == Kind::BiInfinite && window_length.is_multiple_of(2) {
        return Err(domain(
            "bi-infinite windows are central and need odd length",
        ));
    }
    let lo = window_lo(kind, window_length);
    let found: Vec<Option<BigInt>> = match strategy {
        DensityStrategy::BlockPosition => block_positions(s, window_length, lo)?,
        DensityStrategy::Scan { horizon } => scan_all(s, window_length, lo, horizon)?,
    };
    let mut hits = Vec::new();
    let mut missing = Vec::new();
    for (value, shift) in found.into_iter().enumerate() {
        let pattern = FiniteWord::from_value(value as u64, window_length);
        match shift {
            Some(shift) => {
                let image = s.shift(&shift)?;
                let seen: FiniteWord = read_window(&image, lo, window_length)?
                    .into_iter()
                    .collect();
                if seen != pattern {
                    return Err(Error::Verification(format!(
                        "shift {shift} shows {seen}, expected {pattern}"
                    )));
                }
                hits.push(DensityHit { pattern, shift });
            }
            None => missing.push(pattern),
        }
    }
    Ok(DensityReport {
        kind,
        window_length,
        hits,
        missing,
    })
}

fn block_positions<S: Sequence + ?Sized>(
    s: &S,
    len: usize,
    lo: i64,
) -> Result<Vec<Option<BigInt>>> {
    let view = s.view();
    if !star::is_star(view.base()) {
        return Err(domain("block positions are defined for s* only"));
    }
    let offset = view.offset().clone();
    FiniteWord::all_of_length(len)
        .map(|w| {
            let start = match s.kind() {
                Kind::OneSided => Some(star::one_sided_block_position(&w)?),
                Kind::BiInfinite => match star::bi_block_position(&w)? {
                    Some(p) => Some(p),
                    // "1" has no length-1 block; "10" is an odd-rank block
                    None => {
                        let mut ext = w.clone();
                        ext.push(Symbol::Zero);
                        star::bi_block_position(&ext)?
                    }
                },
            };
            Ok(start.map(|p| p - lo - &offset))
        })
        .collect()
}

fn scan_all<S: Sequence + ?Sized>(
    s: &S,
    len: usize,
    lo: i64,
    horizon: u64,
) -> Result<Vec<Option<BigInt>>> {
    let h = horizon.min(i64::MAX as u64 / 4) as i64;
    let forward = first_visits(s, len, lo, h, 1)?;
    let backward = match s.kind() {
        Kind::OneSided => vec![None; 1 << len],
        Kind::BiInfinite => first_visits(s, len, lo, h, -1)?,
    };
    // keep the visit nearest 0, preferring the forward one on ties
    Ok(forward
        .into_iter()
        .zip(backward)
        .map(|pair| match pair {
            (Some(f), Some(b)) if b.abs() < f => Some(b),
            (Some(f), _) => Some(f),
            (None, b) => b,
        })
        .map(|o| o.map(BigInt::from))
        .collect())
}

/// First time each window value appears walking from 0 in direction `step`.
fn first_visits<S: Sequence + ?Sized>(
    s: &S,
    len: usize,
    lo: i64,
    h: i64,
    step: i64,
) -> Result<Vec<Option<i64>>> {
    let mask = (1u64 << len) - 1;
    let mut seen: Vec<Option<i64>> = vec![None; 1 << len];
    let mut remaining = 1usize << len;
    let mut window = 0u64;
    for k in 0..len as i64 {
        window = (window << 1) | s.symbol_at_small(lo + k)?.bit() as u64;
    }
    let mut t = 0i64;
    loop {
        let slot = &mut seen[window as usize];
        if slot.is_none() {
            *slot = Some(t);
            remaining -= 1;
            if remaining == 0 {
                break;
            }
        }
        t += step;
        if t.abs() > h {
            break;
        }
        window = if step > 0 {
            ((window << 1) | s.symbol_at_small(t + lo + len as i64 - 1)?.bit() as u64) & mask
        } else {
            (window >> 1) | ((s.symbol_at_small(t + lo)?.bit() as u64) << (len - 1))
        };
    }
    Ok(seen)
}

/// Shift bringing the orbit of `s` within the depth-`n` window of `target`,
/// if `s` passes near `target` within the horizon.
pub fn find_visit<S, T>(s: &S, target: &T, n: u64, horizon: u64) -> Result<Option<BigInt>>
where
    S: Sequence + ?Sized,
    T: Sequence + ?Sized,
{
    let kind = s.kind();
    if kind != target.kind() {
        return Err(Error::KindMismatch(kind.name(), target.kind().name()));
    }
    let len = match kind {
        Kind::OneSided => n as usize + 1,
        Kind::BiInfinite => 2 * n as usize + 1,
    };
    let lo = window_lo(kind, len);
    let pattern = read_window(target, lo, len)?;
    let hit = super::scan::scan_window(s, lo, &pattern, 0, super::Direction::Forward, horizon)?;
    Ok(hit.map(BigInt::from))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn length_one_words() {
        let s = star::one_sided();
        let r = density_check(&s, 1, DensityStrategy::BlockPosition).unwrap();
        let shifts: Vec<_> = r.hits.iter().map(|h| h.shift.to_i64().unwrap()).collect();
        assert_eq!(shifts, [0, 1]);
    }

    #[test]
    fn length_three_inside_own_segment() {
        let s = star::one_sided();
        let r = density_check(&s, 3, DensityStrategy::BlockPosition).unwrap();
        assert!(r.complete());
        for h in &r.hits {
            let t = h.shift.to_i64().unwrap();
            assert!((10..=33).contains(&t), "{} at {t}", h.pattern);
        }
    }

    #[test]
    fn bi_infinite_radius_one_either_strategy() {
        let s = star::bi_infinite();
        let blocks = density_check(&s, 3, DensityStrategy::BlockPosition).unwrap();
        assert!(blocks.complete());
        assert!(blocks.hits.iter().any(|h| h.shift < BigInt::from(0)));
        let scan = density_check(&s, 3, DensityStrategy::Scan { horizon: 1000 }).unwrap();
        assert!(scan.complete());
        for (a, b) in blocks.hits.iter().zip(&scan.hits) {
            assert!(num_traits::Signed::abs(&b.shift) <= num_traits::Signed::abs(&a.shift));
        }
    }

    #[test]
    fn constant_stream_is_not_dense() {
        let c = crate::symbolic::SymbolStream::constant(Kind::OneSided, Symbol::One);
        let r = density_check(&c, 2, DensityStrategy::Scan { horizon: 100 }).unwrap();
        assert_eq!(r.missing.len(), 3);
        assert!(!r.complete());
        assert!(density_check(&c, 2, DensityStrategy::BlockPosition).is_err());
    }
}

//! Window searches along an orbit.

use crate::symbolic::{Sequence, Symbol};
use crate::Result;

/// Direction of a time search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    fn step(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }
}

/// First time `t`, starting at `first` and moving in `dir` while
/// `|t| <= horizon`, such that `s[t + lo + k] == pattern[k]` for every `k`.
///
/// Windows of up to 64 symbols are matched with a rolling bit mask, so each
/// candidate time costs a single symbol query.
pub(crate) fn scan_window<S: Sequence + ?Sized>(
    s: &S,
    lo: i64,
    pattern: &[Symbol],
    first: i64,
    dir: Direction,
    horizon: u64,
) -> Result<Option<i64>> {
    let horizon = horizon.min(i64::MAX as u64 / 4) as i64;
    if pattern.is_empty() {
        return Ok((first.abs() <= horizon).then_some(first));
    }
    let len = pattern.len() as i64;
    let in_range = |t: i64| t.abs() <= horizon;
    if pattern.len() > 64 {
        let mut t = first;
        while in_range(t) {
            let mut ok = true;
            for (k, want) in pattern.iter().enumerate() {
                if s.symbol_at_small(t + lo + k as i64)? != *want {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Some(t));
            }
            t += dir.step();
        }
        return Ok(None);
    }
    let mask = if len == 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    };
    let target = pattern
        .iter()
        .fold(0u64, |acc, s| (acc << 1) | s.bit() as u64);
    let bit = |i: i64| -> Result<u64> { Ok(s.symbol_at_small(i)?.bit() as u64) };
    if !in_range(first) {
        return Ok(None);
    }
    let mut window = 0u64;
    for k in 0..len {
        window = (window << 1) | bit(first + lo + k)?;
    }
    let mut t = first;
    loop {
        if window == target {
            return Ok(Some(t));
        }
        t += dir.step();
        if !in_range(t) {
            return Ok(None);
        }
        window = match dir {
            Direction::Forward => ((window << 1) | bit(t + lo + len - 1)?) & mask,
            Direction::Backward => (window >> 1) | (bit(t + lo)? << (len - 1)),
        };
    }
}

/// Central window `s[lo..lo + len]` as symbols.
pub(crate) fn read_window<S: Sequence + ?Sized>(s: &S, lo: i64, len: usize) -> Result<Vec<Symbol>> {
    (0..len as i64).map(|k| s.symbol_at_small(lo + k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::star;

    fn naive(
        s: &impl Sequence,
        lo: i64,
        pat: &[Symbol],
        first: i64,
        dir: Direction,
        h: i64,
    ) -> Option<i64> {
        let mut t = first;
        while t.abs() <= h {
            if (0..pat.len()).all(|k| s.symbol_at_small(t + lo + k as i64).unwrap() == pat[k]) {
                return Some(t);
            }
            t += dir.step();
        }
        None
    }

    #[test]
    fn rolling_matches_naive() {
        let s = star::bi_infinite();
        for (lo, len) in [(0i64, 1usize), (-2, 5), (-4, 9), (0, 12)] {
            let pat = read_window(&s, lo, len).unwrap();
            for dir in [Direction::Forward, Direction::Backward] {
                let first = if dir == Direction::Forward { 1 } else { -1 };
                let fast = scan_window(&s, lo, &pat, first, dir, 20_000).unwrap();
                assert_eq!(
                    fast,
                    naive(&s, lo, &pat, first, dir, 20_000),
                    "lo {lo} len {len} {dir:?}"
                );
            }
        }
    }

    #[test]
    fn horizon_is_respected() {
        let s = star::one_sided();
        let pat = read_window(&s, 0, 13).unwrap();
        assert_eq!(
            scan_window(&s, 0, &pat, 1, Direction::Forward, 1000).unwrap(),
            None
        );
    }
}

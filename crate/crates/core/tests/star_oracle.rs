//! Cross-checks of the closed-form star sequences against a literal
//! construction that simply writes every block out in order.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use updyn_core::certify::{
    canonical_return_time, certify_poisson, certify_unpredictable, density_check, find_return_time,
    one_sided_canonical_bound, DensityStrategy, Direction, ReturnMode,
};
use updyn_core::star;
use updyn_core::symbolic::{FiniteWord, Sequence};

fn bits(value: usize, len: usize) -> Vec<u8> {
    (0..len).rev().map(|k| ((value >> k) & 1) as u8).collect()
}

/// Blocks of length 1..=max_len, one after another.
fn literal_one_sided(max_len: usize) -> Vec<u8> {
    let mut out = Vec::new();
    for m in 1..=max_len {
        for v in 0..1usize << m {
            out.extend(bits(v, m));
        }
    }
    out
}

/// Right side (indices >= 0) and left side (index -1 first, moving outward)
/// of the bi-infinite sequence, using blocks of length up to `max_len`.
fn literal_bi(max_len: usize) -> (Vec<u8>, Vec<u8>) {
    let mut right = Vec::new();
    let mut left_blocks: Vec<Vec<u8>> = Vec::new();
    for m in 1..=max_len {
        for v in 0..1usize << m {
            let b = bits(v, m);
            // rank j = v + 1; odd ranks have even value
            if v % 2 == 0 {
                right.extend(b);
            } else if m >= 2 {
                left_blocks.push(b);
            }
        }
    }
    // blocks march outward, each read left to right
    let mut left = Vec::new();
    for b in left_blocks {
        left.extend(b.into_iter().rev());
    }
    (right, left)
}

fn symbol_bi(right: &[u8], left: &[u8], i: i64) -> u8 {
    if i >= 0 {
        right[i as usize]
    } else {
        left[(-i - 1) as usize]
    }
}

#[test]
fn one_sided_matches_listing_through_length_12() {
    let lit = literal_one_sided(12);
    let s = star::one_sided();
    assert_eq!(
        BigInt::from(lit.len()),
        star::one_sided_segment_start(13).unwrap()
    );
    for (i, &b) in lit.iter().enumerate() {
        assert_eq!(s.symbol_at_small(i as i64).unwrap().bit(), b, "index {i}");
    }
}

#[test]
fn bi_infinite_matches_listing_through_length_8() {
    let (right, left) = literal_bi(8);
    let s = star::bi_infinite();
    for (i, &b) in right.iter().enumerate() {
        assert_eq!(s.symbol_at_small(i as i64).unwrap().bit(), b, "index {i}");
    }
    for (k, &b) in left.iter().enumerate() {
        let i = -(k as i64) - 1;
        assert_eq!(s.symbol_at_small(i).unwrap().bit(), b, "index {i}");
    }
    assert_eq!(
        BigInt::from(right.len()),
        star::bi_segment_start_right(9).unwrap()
    );
    assert_eq!(
        BigInt::from(-(left.len() as i64)),
        star::bi_segment_start_left(8).unwrap()
    );
}

#[test]
fn central_radius_eight_window() {
    let s = star::bi_infinite();
    let w = s.window(-8, 17).unwrap().to_string();
    assert_eq!(format!("{}.{}", &w[..8], &w[8..]), "10011101.000100000");
}

fn literal_min_return(seq: &[u8], n: usize, from: usize) -> usize {
    (from..seq.len() - n)
        .find(|&t| seq[t..=t + n] == seq[..=n])
        .expect("return inside the literal prefix")
}

const ONE_SIDED_MONOTONE: [u64; 13] = [
    2, 4, 14, 16, 43, 50, 182, 292, 828, 2665, 4070, 21548, 44360,
];

#[test]
fn one_sided_minimal_returns_frozen() {
    let lit = literal_one_sided(13);
    let mut prev = 0;
    let mut got = Vec::new();
    for n in 0..=12 {
        let t = literal_min_return(&lit, n, prev + 1);
        got.push(t as u64);
        prev = t;
    }
    assert_eq!(got, ONE_SIDED_MONOTONE);

    let s = star::one_sided();
    assert_eq!(
        find_return_time(&s, 0, ReturnMode::Minimal, 1 << 20).unwrap(),
        BigInt::from(2)
    );
    let cert = certify_unpredictable(&s, 12, ReturnMode::Minimal, 1 << 20).unwrap();
    let ts: Vec<u64> = cert.entries.iter().map(|e| e.t.to_u64().unwrap()).collect();
    assert_eq!(ts, ONE_SIDED_MONOTONE[1..]);
}

#[test]
fn one_sided_canonical_times_and_bound() {
    let s = star::one_sided();
    let lit = literal_one_sided(14);
    for n in 1..=12u64 {
        let t = canonical_return_time(&s, n, Direction::Forward).unwrap();
        assert!(t >= one_sided_canonical_bound(n));
        let t = t.to_usize().unwrap();
        let n = n as usize;
        assert_eq!(lit[t..=t + n], lit[..=n]);
    }
    assert_eq!(
        canonical_return_time(&s, 1, Direction::Forward).unwrap(),
        BigInt::from(4)
    );
}

const BI_FORWARD: [i64; 9] = [1, 4, 27, 34, 1314, 3018, 23912, 51110, 150391];
const BI_BACKWARD: [i64; 7] = [-2, -7, -58, -180, -362, -7343, -16352];

#[test]
fn bi_infinite_poisson_times_frozen() {
    let (right, left) = literal_bi(18);
    let at = |i: i64| symbol_bi(&right, &left, i);
    let matches = |t: i64, n: i64| (-n..=n).all(|i| at(t + i) == at(i));
    let mut prev = 0i64;
    for (n, &want) in BI_FORWARD.iter().enumerate() {
        let t = (prev + 1..).find(|&t| matches(t, n as i64)).unwrap();
        assert_eq!(t, want, "forward n = {n}");
        prev = t;
    }
    let mut prev = 0i64;
    for (n, &want) in BI_BACKWARD.iter().enumerate() {
        let t = (1..)
            .map(|k| prev - k)
            .find(|&t| matches(t, n as i64))
            .unwrap();
        assert_eq!(t, want, "backward n = {n}");
        prev = t;
    }

    let s = star::bi_infinite();
    let fwd = certify_poisson(&s, Direction::Forward, 8, 1 << 20).unwrap();
    let ts: Vec<i64> = fwd.iter().map(|e| e.t.to_i64().unwrap()).collect();
    assert_eq!(ts, BI_FORWARD[1..]);
    let back = certify_poisson(&s, Direction::Backward, 6, 1 << 20).unwrap();
    let ts: Vec<i64> = back.iter().map(|e| e.t.to_i64().unwrap()).collect();
    assert_eq!(ts, BI_BACKWARD[1..]);
}

#[test]
fn every_short_word_has_its_own_block() {
    let lit = literal_one_sided(10);
    for len in 1..=10usize {
        let r = density_check(&star::one_sided(), len, DensityStrategy::BlockPosition).unwrap();
        assert!(r.complete());
        let seg = star::one_sided_segment_start(len as u64)
            .unwrap()
            .to_usize()
            .unwrap();
        for h in &r.hits {
            let t = h.shift.to_usize().unwrap();
            assert!(t >= seg && t + len <= seg + len * (1 << len));
            let want: Vec<u8> = h.pattern.symbols().iter().map(|s| s.bit()).collect();
            assert_eq!(lit[t..t + len], want[..]);
        }
    }
}

#[test]
fn every_word_occurs_in_bi_infinite() {
    let s = star::bi_infinite();
    for len in 2..=10usize {
        for w in FiniteWord::all_of_length(len) {
            let p = star::bi_block_position(&w).unwrap().expect("block exists");
            let p = p.to_i64().unwrap();
            assert_eq!(s.window(p, len).unwrap(), w);
            let odd_rank = w.value_u64().unwrap() % 2 == 0;
            assert_eq!(p >= 0, odd_rank);
        }
    }
}

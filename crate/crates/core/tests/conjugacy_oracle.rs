//! Conjugate models checked against independent evaluations.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use updyn_core::conjugacy::{
    region_check, DottedWord, HorseshoeItinerary, HorseshoeSystem, Interval, IntervalBox,
    Itinerary, LogisticSystem,
};
use updyn_core::star;
use updyn_core::symbolic::{FiniteWord, Sequence};

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

fn logistic() -> LogisticSystem {
    LogisticSystem::new(q(9, 2)).unwrap()
}

/// Cylinder widths around the one-sided `s*` prefix at mu = 9/2, evaluated
/// independently at 50 digits.
const STAR_CYLINDER_WIDTHS: [(usize, f64); 6] = [
    (1, 1.0 / 3.0),
    (2, 0.152),
    (4, 0.0117),
    (8, 1.37e-4),
    (12, 1.68e-6),
    (16, 9.26e-9),
];

#[test]
fn transported_widths_match_reference() {
    let sys = logistic();
    for (depth, want) in STAR_CYLINDER_WIDTHS {
        let w = sys.transport_unpredictable_point(depth).unwrap().width();
        let w = w.to_f64().unwrap();
        assert!(
            (w - want).abs() <= want * 0.01,
            "depth {depth}: {w} vs {want}"
        );
    }
}

#[test]
fn round_trip_all_words_to_length_10() {
    let sys = logistic();
    for len in 1..=10 {
        for w in FiniteWord::all_of_length(len) {
            let x = sys.point_for(&w).unwrap();
            assert_eq!(sys.itinerary(&x, len).unwrap(), Itinerary::Word(w));
        }
    }
}

#[test]
fn star_prefixes_commute() {
    let sys = logistic();
    let prefixes: Vec<FiniteWord> = (2..=14)
        .map(|l| star::one_sided().window(0, l).unwrap())
        .collect();
    let r = sys.commutation_check_words(&prefixes).unwrap();
    assert!(r.passed(), "{:?}", r.failures);
}

#[test]
fn hull_contains_exact_preimage_points() {
    // the fixed point 0 and the other fixed point 7/9 have itineraries 0^L and 1^L
    let sys = logistic();
    let zeros: FiniteWord = "000000000".parse().unwrap();
    let ones: FiniteWord = "111111111".parse().unwrap();
    assert!(sys.cylinder_hull(&zeros).unwrap().contains(&q(0, 1)));
    assert!(sys.cylinder_hull(&ones).unwrap().contains(&q(7, 9)));
    assert_eq!(
        sys.itinerary(&Interval::point(q(7, 9)), 9).unwrap(),
        Itinerary::Word(ones)
    );
}

/// `floor(x * 2^bits)` for the region threshold `(5 + 2 sqrt 5) s / 4`,
/// with `sqrt 5` taken to 200 bits.
fn threshold_fixed(s: &BigRational, bits: u32) -> BigInt {
    let five = BigUint::from(5u32) << (2 * bits);
    let root5 = BigInt::from(five.sqrt());
    let base = (BigInt::from(5) << bits) + 2 * root5;
    (BigRational::from_integer(base) * s / BigRational::from_integer(4.into()))
        .floor()
        .to_integer()
}

#[test]
fn henon_region_agrees_with_fixed_point_evaluation() {
    const BITS: u32 = 200;
    let margin = BigRational::new(BigInt::one(), BigInt::one() << 20u32);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 1000 {
        let alpha = q(rng.gen_range(0..40 << 16), 1 << 16);
        let beta = q(rng.gen_range(-3 << 16..=3 << 16), 1 << 16);
        if beta.is_zero() {
            continue;
        }
        let s = (BigRational::one() + beta.abs()).pow(2);
        let t = BigRational::new(threshold_fixed(&s, BITS), BigInt::one() << BITS);
        if (&alpha - &t).abs() <= margin {
            continue;
        }
        assert_eq!(
            region_check(&alpha, &beta).unwrap(),
            alpha > t,
            "alpha {alpha} beta {beta}"
        );
        checked += 1;
    }
    assert!(region_check(&q(10, 1), &q(1, 1)).unwrap());
    assert!(!region_check(&q(9, 1), &q(1, 1)).unwrap());
}

#[test]
fn horseshoe_central_words_nest_and_shrink() {
    let h = HorseshoeSystem::default();
    let s = star::bi_infinite();
    let mut prev: Option<IntervalBox> = None;
    for r in 0..=5usize {
        let word = DottedWord::central(&s, r).unwrap();
        let b = h.box_for(&word);
        assert_eq!(b.x.width(), q(1, 3i64.pow(r as u32 + 1)));
        assert_eq!(b.y.width(), q(1, 3i64.pow(r as u32)));
        if let Some(p) = &prev {
            assert!(b.is_subset_of(p));
        }
        let (cx, cy) = b.center();
        let got = h.itinerary(&IntervalBox::point(cx, cy), r, r + 1);
        assert_eq!(got, HorseshoeItinerary::Word(word));
        prev = Some(b);
    }
}

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use updyn_core::certify::aperiodicity_scan;
use updyn_core::conjugacy::{HenonSystem, Interval, IntervalBox, Itinerary, LogisticSystem};
use updyn_core::star::{self, OrderedWordIndex};
use updyn_core::symbolic::{
    agreement_radius, metric, Agreement, Dyadic, FiniteWord, Kind, Sequence, ShiftedStream, Symbol,
    SymbolStream,
};

fn word_strategy(max: usize) -> impl Strategy<Value = FiniteWord> {
    prop::collection::vec(any::<bool>(), 1..=max).prop_map(|v| {
        v.into_iter()
            .map(|b| if b { Symbol::One } else { Symbol::Zero })
            .collect()
    })
}

/// Periodic streams and shifted `s*` views of either kind.
fn stream(kind: Kind) -> impl Strategy<Value = ShiftedStream> {
    let periodic = word_strategy(12).prop_map(move |w| {
        SymbolStream::periodic(kind, &w)
            .unwrap()
            .shift_by(0)
            .unwrap()
    });
    let shifted = (0i64..5000).prop_map(move |k| star::star(kind).shift_by(k).unwrap());
    prop_oneof![periodic, shifted]
}

fn kind_and_pair() -> impl Strategy<Value = (ShiftedStream, ShiftedStream, ShiftedStream)> {
    prop_oneof![Just(Kind::OneSided), Just(Kind::BiInfinite)]
        .prop_flat_map(|k| (stream(k), stream(k), stream(k)))
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-(1i64 << 20)..=(1i64 << 20), 1i64..=(1 << 12))
        .prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enclosures_nest((s, r, _) in kind_and_pair(), a in 0u64..40, b in 0u64..40) {
        let (lo, hi) = (a.min(b), a.max(b));
        let coarse = metric(&s, &r, lo).unwrap();
        let fine = metric(&s, &r, hi).unwrap();
        prop_assert!(fine.is_within(&coarse));
    }

    #[test]
    fn metric_is_symmetric((s, r, _) in kind_and_pair(), radius in 0u64..64) {
        prop_assert_eq!(metric(&s, &r, radius).unwrap(), metric(&r, &s, radius).unwrap());
    }

    #[test]
    fn triangle_on_partial_sums((s, r, u) in kind_and_pair(), radius in 0u64..64) {
        let su = metric(&s, &u, radius).unwrap().partial_sum;
        let sr = metric(&s, &r, radius).unwrap().partial_sum;
        let ru = metric(&r, &u, radius).unwrap().partial_sum;
        prop_assert!(su <= &sr + &ru);
    }

    #[test]
    fn one_sided_shift_doubles(a in stream(Kind::OneSided), b in stream(Kind::OneSided), radius in 1u64..48) {
        let d = metric(&a, &b, radius).unwrap().partial_sum;
        let head = if a.symbol_at_small(0).unwrap() == b.symbol_at_small(0).unwrap() {
            Dyadic::zero()
        } else {
            Dyadic::from_int(1)
        };
        let shifted = metric(&a.shift_by(1).unwrap(), &b.shift_by(1).unwrap(), radius - 1)
            .unwrap()
            .partial_sum;
        prop_assert_eq!(shifted, (&d - &head).scale_pow2(1));
    }

    #[test]
    fn proximity_duality((s, r, _) in kind_and_pair(), n in 0u64..30) {
        let limit = match s.kind() {
            Kind::OneSided => Dyadic::pow2_neg(n),
            Kind::BiInfinite => Dyadic::new(2, n),
        };
        let agrees = matches!(agreement_radius(&s, &r, n).unwrap(),
            Agreement::UpTo(k) if k >= n) || agreement_radius(&s, &r, n).unwrap() == Agreement::ExceedsCap;
        let enc = metric(&s, &r, n).unwrap();
        if agrees {
            prop_assert!(enc.upper() <= limit);
        }
        if enc.partial_sum < Dyadic::pow2_neg(n) {
            prop_assert!(agrees);
        }
    }

    #[test]
    fn rank_round_trip(m in 1u64..=12, j in 0u64..4096) {
        let j = 1 + j % (1u64 << m);
        let idx = OrderedWordIndex::new(m, BigUint::from(j)).unwrap();
        prop_assert_eq!(star::rank_of(&star::word_of(&idx)).unwrap(), idx);
    }

    #[test]
    fn big_indices_agree_with_block_layout(w in word_strategy(40)) {
        // a word placed by index arithmetic is read back by the symbol rule
        let s = star::one_sided();
        let p = star::one_sided_block_position(&w).unwrap();
        let seen: FiniteWord = (0..w.len())
            .map(|k| star::symbol_at_one_sided(&(&p + BigInt::from(k))).unwrap())
            .collect();
        prop_assert_eq!(&seen, &w);
        prop_assert_eq!(s.kind(), Kind::OneSided);
        if let Some(q) = star::bi_block_position(&w).unwrap() {
            let seen: FiniteWord = (0..w.len())
                .map(|k| star::symbol_at_bi_infinite(&(&q + BigInt::from(k))))
                .collect();
            prop_assert_eq!(seen, w);
        }
    }

    #[test]
    fn logistic_step_encloses_points(a in small_rational(), b in small_rational(), t in 0u32..=64) {
        let sys = LogisticSystem::new(BigRational::new(9.into(), 2.into())).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let x = &lo + (&hi - &lo) * BigRational::new(t.into(), 64.into());
        let image = sys.step(&Interval::new(lo, hi).unwrap());
        let exact = sys.mu() * &x * (BigRational::from_integer(1.into()) - &x);
        prop_assert!(image.contains(&exact));
    }

    #[test]
    fn logistic_cylinders_nest(w in word_strategy(13), last in any::<bool>()) {
        let sys = LogisticSystem::new(BigRational::new(9.into(), 2.into())).unwrap();
        let mut longer = w.clone();
        longer.push(if last { Symbol::One } else { Symbol::Zero });
        prop_assert!(sys.point_for(&longer).unwrap().is_subset_of(&sys.point_for(&w).unwrap()));
        prop_assert!(sys.cylinder_hull(&longer).unwrap().is_subset_of(&sys.cylinder_hull(&w).unwrap()));
    }

    #[test]
    fn logistic_round_trip_to_14(w in word_strategy(14)) {
        let sys = LogisticSystem::new(BigRational::new(9.into(), 2.into())).unwrap();
        let x = sys.point_for(&w).unwrap();
        prop_assert_eq!(sys.itinerary(&x, w.len()).unwrap(), Itinerary::Word(w));
    }

    #[test]
    fn henon_step_encloses_points(
        alpha in small_rational(), beta in small_rational(),
        x0 in small_rational(), x1 in small_rational(), y in small_rational(),
    ) {
        prop_assume!(beta != BigRational::from_integer(0.into()));
        let h = HenonSystem::new(alpha.clone(), beta.clone()).unwrap();
        let (lo, hi) = if x0 <= x1 { (x0, x1) } else { (x1, x0) };
        let b = IntervalBox::new(Interval::new(lo.clone(), hi.clone()).unwrap(), Interval::point(y.clone()));
        let img = h.step(&b);
        for x in [lo, hi] {
            let nx = &alpha - &beta * &y - &x * &x;
            prop_assert!(img.contains(&nx, &x));
        }
    }
}

#[test]
fn star_sequences_are_not_periodic_on_any_short_window() {
    for kind in [Kind::OneSided, Kind::BiInfinite] {
        let s = star::star(kind);
        for q in 1..=64u64 {
            for b in 0..=1024i64 {
                let span = 2 * 64 * q;
                let hit = (b..=b + span as i64).any(|i| {
                    s.symbol_at_small(i).unwrap() != s.symbol_at_small(i + q as i64).unwrap()
                });
                assert!(hit, "{kind:?} q = {q} b = {b}");
            }
        }
        assert_eq!(aperiodicity_scan(&s, 64, 4096).unwrap(), None);
    }
}

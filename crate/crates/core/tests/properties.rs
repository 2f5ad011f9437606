use congruence_core::asymptotics::circle_scan;
use congruence_core::bijections::colored::{enumerate_r, phi, phi_inverse, prop2_forward, prop2_inverse};
use congruence_core::bijections::theorem2::{theorem2_forward, theorem2_inverse, Cell, Domain};
use congruence_core::composition::{residue_bar, succession_count, Composition, CountTable, SuccessionParams};
use congruence_core::gf::gf_general;
use congruence_core::{Poly2, SeriesXYQ};
use num_bigint::BigInt;
use proptest::prelude::*;

const ORDER: usize = 6;

fn composition() -> impl Strategy<Value = Composition> {
    prop::collection::vec(1u32..9, 0..8).prop_map(|parts| Composition::new(parts).unwrap())
}

fn series() -> impl Strategy<Value = SeriesXYQ> {
    prop::collection::vec(((0usize..=ORDER, 0usize..3, 0usize..3), -4i64..=4), 0..10).prop_map(|terms| {
        terms.into_iter().fold(SeriesXYQ::zero(ORDER), |acc, ((n, d, a), c)| {
            &acc + &SeriesXYQ::monomial(n, Poly2::monomial(d, a, BigInt::from(c)), ORDER)
        })
    })
}

fn unit_series() -> impl Strategy<Value = SeriesXYQ> {
    series().prop_map(|s| {
        let constant = s.coeff_poly(0).unwrap().clone();
        &(&s - &SeriesXYQ::monomial(0, constant, ORDER)) + &SeriesXYQ::one(ORDER)
    })
}

proptest! {
    #[test]
    fn composition_text_round_trips(pi in composition()) {
        prop_assert_eq!(pi.to_string().parse::<Composition>().unwrap(), pi);
    }

    #[test]
    fn residue_in_range(t in 1i64..1000, m in 1i64..40) {
        let bar = residue_bar(t, m).unwrap();
        prop_assert!((1..=m).contains(&bar));
        prop_assert_eq!((bar - t).rem_euclid(m), 0);
    }

    #[test]
    fn successions_bounded_by_gaps(pi in composition(), m in 1u32..7, r in 0u32..7) {
        let params = SuccessionParams::new(m, r % m).unwrap();
        prop_assert!(succession_count(&pi, &params) <= pi.len().saturating_sub(1));
        if m == 1 {
            prop_assert_eq!(succession_count(&pi, &params), pi.len().saturating_sub(1));
        }
    }

    #[test]
    fn product_commutes_and_associates(f in series(), g in series(), h in series()) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }

    #[test]
    fn reciprocal_inverts(f in unit_series()) {
        let inv = f.reciprocal().unwrap();
        prop_assert_eq!(&f * &inv, SeriesXYQ::one(ORDER));
    }

    #[test]
    fn specialization_is_a_ring_map(f in series(), g in series(), y in -3i64..=3, q in -3i64..=3) {
        let (y, q) = (BigInt::from(y), BigInt::from(q));
        let lhs = (&f * &g).specialize(Some(&y), Some(&q));
        let rhs = &f.specialize(Some(&y), Some(&q)) * &g.specialize(Some(&y), Some(&q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_tables_satisfy_row_sums(m in 1u32..6, r in 0u32..6) {
        let params = SuccessionParams::new(m, r % m).unwrap();
        let table = CountTable::from_series(&gf_general(params, 10).unwrap(), params).unwrap();
        prop_assert!(table.check_invariants().is_ok());
    }

    #[test]
    fn theorem2_round_trips(prefix in prop::collection::vec(1u32..6, 2..7), last in 1u32..=2) {
        let mut parts = prefix;
        parts.push(last);
        let pi = Composition::new(parts).unwrap();
        prop_assume!(pi.size() >= 4);
        let a = succession_count(&pi, &SuccessionParams::parity());
        let cell = Cell::new(pi.size(), pi.len(), a).unwrap();
        let elem = Domain::B(pi);
        let (case, image) = theorem2_forward(cell, &elem).unwrap();
        prop_assert!(image.belongs_to(cell));
        prop_assert_eq!(theorem2_inverse(cell, &image).unwrap(), (case, elem));
    }

    #[test]
    fn phi_round_trips(n in 0usize..13, pick in any::<prop::sample::Index>()) {
        let all = enumerate_r(n);
        let elem = &all[pick.index(all.len())];
        let pi = phi(elem);
        prop_assert_eq!(pi.size(), n);
        prop_assert_eq!(succession_count(&pi, &SuccessionParams::parity()), 0);
        prop_assert_eq!(&phi_inverse(&pi).unwrap(), elem);
    }

    #[test]
    fn prop2_round_trips(n in 5usize..14, shorter in any::<bool>(), pick in any::<prop::sample::Index>()) {
        let all = enumerate_r(if shorter { n - 3 } else { n - 2 });
        let elem = &all[pick.index(all.len())];
        let (case, image) = prop2_forward(n, elem).unwrap();
        prop_assert!(image.size() == n || image.size() + 4 == n);
        prop_assert_eq!(prop2_inverse(n, &image).unwrap(), (case, elem.clone()));
    }

    #[test]
    fn certificate_below_samples(k in 1usize..12, c in 0.05f64..0.9, n in 8usize..400) {
        let report = circle_scan(k, c, n).unwrap();
        prop_assert!(report.certified_lower_bound <= report.sample_min);
        prop_assert!(report.sample_min >= 0.0);
    }
}

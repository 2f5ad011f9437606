use congruence_core::closed_forms::binomial;
use congruence_core::composition::{brute_force_table, carlitz_count, CountTable, SuccessionParams};
use congruence_core::gf::{gf_carlitz, gf_congruence, gf_general, gf_parity, CarlitzForm};
use congruence_core::{Poly2, SeriesXYQ};
use num_bigint::BigInt;
use num_traits::Signed;

const N_MAX: usize = 14;

#[test]
fn generating_functions_match_enumeration() {
    for m in 1..=5 {
        for r in 0..m {
            let params = SuccessionParams::new(m, r).unwrap();
            let series = gf_general(params, N_MAX).unwrap();
            let table = CountTable::from_series(&series, params).unwrap();
            assert_eq!(table, brute_force_table(N_MAX, params).unwrap(), "m={m} r={r}");
        }
    }
}

#[test]
fn specialization_chain() {
    for m in 1..=6 {
        let general = gf_general(SuccessionParams::new(m, 0).unwrap(), 16).unwrap();
        assert_eq!(general, gf_congruence(m, 16).unwrap(), "m={m}");
    }
    assert_eq!(gf_congruence(2, 20).unwrap(), gf_parity(20).unwrap());
}

#[test]
fn forgetting_successions_leaves_binomials() {
    let one = BigInt::from(1);
    for m in 1..=5 {
        for r in 0..m {
            let series = gf_general(SuccessionParams::new(m, r).unwrap(), 12).unwrap();
            let collapsed = series.specialize(None, Some(&one));
            for n in 1..=12 {
                for d in 0..=n {
                    let want = BigInt::from(binomial(n as i64 - 1, d as i64 - 1));
                    assert_eq!(collapsed.coefficient(n, d, 0).unwrap(), want);
                }
            }
        }
    }
}

#[test]
fn coefficients_are_nonnegative() {
    for m in 1..=5 {
        for r in 0..m {
            let series = gf_general(SuccessionParams::new(m, r).unwrap(), 12).unwrap();
            for poly in series.coeffs() {
                assert!(poly.terms().all(|(_, c)| !c.is_negative()), "m={m} r={r}");
            }
        }
    }
}

#[test]
fn parity_slice_is_rational() {
    // (1 + x - x^2) / ((1 - x^2)^2 - x^3)
    let order = 40;
    let x = |k: usize, c: i64| SeriesXYQ::monomial(k, Poly2::constant(BigInt::from(c)), order);
    let one = SeriesXYQ::one(order);
    let numerator = &(&one + &x(1, 1)) - &x(2, 1);
    let denominator = &(&(&one - &x(2, 2)) + &x(4, 1)) - &x(3, 1);
    let expected = &numerator * &denominator.reciprocal().unwrap();
    let slice = gf_parity(order).unwrap().specialize(Some(&BigInt::from(1)), Some(&BigInt::from(0)));
    assert_eq!(slice, expected);
}

#[test]
fn carlitz_forms_agree_and_count() {
    let limit = gf_carlitz(CarlitzForm::Limit, 30).unwrap();
    assert_eq!(limit, gf_carlitz(CarlitzForm::AlternatingSum, 30).unwrap());
    let counts = limit.evaluate_yq(&BigInt::from(1), &BigInt::from(0));
    for n in 1..=N_MAX {
        assert_eq!(counts[n], BigInt::from(carlitz_count(n).unwrap()), "n={n}");
    }
}

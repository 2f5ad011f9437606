//! Cyclic linear systems `x_j = a_j + b_j · x_{j+r}` with indices taken
//! modulo `m` in `{1, …, m}`.
//!
//! Following `x_j → x_{j+r} → x_{j+2r} → …` returns to `x_j` after
//! `p = m / gcd(m, r)` steps, so each orbit closes into a geometric sum:
//!
//! ```text
//! x_{j+ℓr} = Σ_{i=ℓ}^{ℓ+p-1} a_{j+ir} Π_{k=ℓ}^{i-1} b_{j+kr}  /  (1 - Π_{k=ℓ}^{ℓ+p-1} b_{j+kr})
//! ```
//!
//! for `1 ≤ j ≤ s = gcd(m, r)` and `0 ≤ ℓ < p`. These index pairs cover
//! every residue modulo `m` exactly once.

use alloc::vec;
use alloc::vec::Vec;

use crate::composition::{residue_bar, SuccessionParams};
use crate::error::{Error, Result};
use crate::series::SeriesXYQ;

/// `x_j = a_j + b_j x_{j+r}` for `j = 1..=m`; `a[j-1]` holds `a_j`.
#[derive(Debug, Clone)]
pub struct CyclicLinearSystem {
    params: SuccessionParams,
    a: Vec<SeriesXYQ>,
    b: Vec<SeriesXYQ>,
}

impl CyclicLinearSystem {
    /// Every `b_j` must have zero constant term.
    pub fn new(params: SuccessionParams, a: Vec<SeriesXYQ>, b: Vec<SeriesXYQ>) -> Result<Self> {
        let m = params.m() as usize;
        if a.len() != m || b.len() != m {
            return Err(Error::InvalidArgument(alloc::format!(
                "cyclic system of size {m} needs {m} a- and b-series, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        if let Some(j) = b.iter().position(|bj| !bj.coeffs()[0].is_zero()) {
            return Err(Error::InvalidArgument(alloc::format!(
                "b_{} has a nonzero constant term",
                j + 1
            )));
        }
        Ok(Self { params, a, b })
    }

    pub fn params(&self) -> &SuccessionParams {
        &self.params
    }

    pub fn a(&self, j: i64) -> &SeriesXYQ {
        &self.a[self.slot(j)]
    }

    pub fn b(&self, j: i64) -> &SeriesXYQ {
        &self.b[self.slot(j)]
    }

    fn slot(&self, j: i64) -> usize {
        // indices here are always >= 1
        residue_bar(j, i64::from(self.params.m())).unwrap_or(1) as usize - 1
    }

    /// `bar(j + r)`, the index `x_j` refers to.
    pub fn successor(&self, j: i64) -> usize {
        self.slot(j + i64::from(self.params.r())) + 1
    }

    fn order(&self) -> usize {
        self.a
            .iter()
            .chain(self.b.iter())
            .map(SeriesXYQ::order)
            .min()
            .unwrap_or(0)
    }
}

/// Index pairs `(j, ℓ)` with `1 ≤ j ≤ s`, `0 ≤ ℓ < p`, mapped to
/// `bar(j + ℓr)`. The result is a permutation of `1..=m`.
pub fn orbit_cover(params: &SuccessionParams) -> Vec<usize> {
    let (m, r) = (i64::from(params.m()), i64::from(params.r()));
    let mut out = Vec::with_capacity(params.m() as usize);
    for j in 1..=i64::from(params.s()) {
        for l in 0..i64::from(params.p()) {
            out.push(residue_bar(j + l * r, m).unwrap_or(1) as usize);
        }
    }
    out
}

/// Solves the system in closed form; `result[j-1]` is `x_j`.
pub fn solve_cyclic(sys: &CyclicLinearSystem) -> Result<Vec<SeriesXYQ>> {
    let params = sys.params;
    let (r, s, p) = (
        i64::from(params.r()),
        i64::from(params.s()),
        i64::from(params.p()),
    );
    let order = sys.order();
    let mut solution: Vec<Option<SeriesXYQ>> = vec![None; params.m() as usize];
    for j in 1..=s {
        for l in 0..p {
            let mut numerator = SeriesXYQ::zero(order);
            let mut prefix = SeriesXYQ::one(order);
            for i in l..l + p {
                numerator = &numerator + &(&prefix * sys.a(j + i * r));
                prefix = &prefix * sys.b(j + i * r);
            }
            // prefix is now the full orbit product Π_{k=ℓ}^{ℓ+p-1} b_{j+kr}
            let denominator = (&SeriesXYQ::one(order) - &prefix).reciprocal()?;
            solution[sys.slot(j + l * r)] = Some(&numerator * &denominator);
        }
    }
    solution
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            x.ok_or_else(|| Error::Numeric(alloc::format!("x_{} not covered by any orbit", i + 1)))
        })
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::series::Poly2;
    use num_bigint::BigInt;

    /// Iterates `x ← a + b·x_{j+r}` from zero. Each round fixes one more
    /// power of `x` because every `b_j` has positive valuation.
    pub(crate) fn fixed_point(sys: &CyclicLinearSystem) -> Vec<SeriesXYQ> {
        let m = sys.params().m() as usize;
        let order = sys.order();
        let mut xs = vec![SeriesXYQ::zero(order); m];
        for _ in 0..=order + 1 {
            xs = (1..=m as i64)
                .map(|j| sys.a(j) + &(sys.b(j) * &xs[sys.successor(j) - 1]))
                .collect();
        }
        xs
    }

    fn x_pow(k: usize, order: usize) -> SeriesXYQ {
        SeriesXYQ::monomial(k, Poly2::one(), order)
    }

    fn check_relations(sys: &CyclicLinearSystem, xs: &[SeriesXYQ]) {
        for j in 1..=sys.params().m() as i64 {
            let rhs = sys.a(j) + &(sys.b(j) * &xs[sys.successor(j) - 1]);
            assert_eq!(xs[j as usize - 1], rhs, "relation for x_{j}");
        }
    }

    #[test]
    fn r_zero_is_a_over_one_minus_b() {
        let params = SuccessionParams::new(3, 0).unwrap();
        let order = 8;
        let a: Vec<_> = (1..=3).map(|j| x_pow(j, order)).collect();
        let b: Vec<_> = (1..=3)
            .map(|j| SeriesXYQ::monomial(j, Poly2::y(), order))
            .collect();
        let sys = CyclicLinearSystem::new(params, a.clone(), b.clone()).unwrap();
        let xs = solve_cyclic(&sys).unwrap();
        for j in 0..3 {
            let expected = &a[j] * &(&SeriesXYQ::one(order) - &b[j]).reciprocal().unwrap();
            assert_eq!(xs[j], expected);
        }
    }

    #[test]
    fn two_cycle_matches_fixed_point() {
        let params = SuccessionParams::new(2, 1).unwrap();
        let order = 10;
        let x = x_pow(1, order);
        let sys = CyclicLinearSystem::new(params, vec![x.clone(), x.clone()], vec![x.clone(), x]).unwrap();
        let xs = solve_cyclic(&sys).unwrap();
        assert_eq!(xs, fixed_point(&sys));
        // x(1+x)/(1-x^2) = x/(1-x) = x + x^2 + ...
        for n in 1..=order {
            assert_eq!(xs[0].coefficient(n, 0, 0).unwrap(), BigInt::from(1));
        }
        check_relations(&sys, &xs);
    }

    #[test]
    fn general_shifts_satisfy_relations() {
        let order = 7;
        for m in 1..=6u32 {
            for r in 0..m {
                let params = SuccessionParams::new(m, r).unwrap();
                let a: Vec<_> = (1..=m as usize)
                    .map(|j| SeriesXYQ::monomial(j % 3, Poly2::y(), order))
                    .collect();
                let b: Vec<_> = (1..=m as usize)
                    .map(|j| SeriesXYQ::monomial(1 + j % 2, &Poly2::q() - &Poly2::one(), order))
                    .collect();
                let sys = CyclicLinearSystem::new(params, a, b).unwrap();
                let xs = solve_cyclic(&sys).unwrap();
                check_relations(&sys, &xs);
                assert_eq!(xs, fixed_point(&sys), "m={m} r={r}");
            }
        }
    }

    #[test]
    fn orbits_cover_every_residue_once() {
        for m in 1..=12u32 {
            for r in 0..m {
                let params = SuccessionParams::new(m, r).unwrap();
                let mut cover = orbit_cover(&params);
                cover.sort_unstable();
                assert_eq!(cover, (1..=m as usize).collect::<Vec<_>>(), "m={m} r={r}");
            }
        }
    }

    #[test]
    fn rejects_bad_systems() {
        let params = SuccessionParams::new(2, 1).unwrap();
        let one = SeriesXYQ::one(3);
        assert!(CyclicLinearSystem::new(params, vec![one.clone()], vec![one.clone()]).is_err());
        assert!(
            CyclicLinearSystem::new(params, vec![one.clone(), one.clone()], vec![one.clone(), one])
                .is_err()
        );
    }
}

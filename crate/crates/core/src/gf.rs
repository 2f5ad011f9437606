//! Generating functions `Σ c(n,d,a) x^n y^d q^a` for compositions counted by
//! size, parts and successions, expanded to a fixed truncation order.
//!
//! Every constructor composes exact series arithmetic on closed-form
//! building blocks; no rational function is ever normalized symbolically.
//! Infinite sums over a part size `a` (or a run length `j`) are cut at the
//! truncation order, which is lossless because the `a`-th term has
//! `x`-valuation at least `a`.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::composition::{residue_bar, SuccessionParams};
use crate::cyclic::{solve_cyclic, CyclicLinearSystem};
use crate::error::Result;
use crate::series::{Poly2, SeriesXYQ};

fn x_pow(k: usize, poly: Poly2, order: usize) -> SeriesXYQ {
    SeriesXYQ::monomial(k, poly, order)
}

/// `y(q - 1)`.
fn y_q_minus_one() -> Poly2 {
    &Poly2::y() * &(&Poly2::q() - &Poly2::one())
}

fn one_minus(s: &SeriesXYQ) -> SeriesXYQ {
    &SeriesXYQ::one(s.order()) - s
}

fn sum_all(order: usize, terms: impl IntoIterator<Item = SeriesXYQ>) -> SeriesXYQ {
    terms
        .into_iter()
        .fold(SeriesXYQ::zero(order), |acc, t| &acc + &t)
}

/// Compositions by `(m, r)`-congruence successions.
///
/// With `G_j` the generating function of compositions whose first part is
/// `≡ j (mod m)`, one has `G_j = a_j R + b_j G_{j+r}` where
/// `a_j = x^j y/(1-x^m)` and `b_j = x^j y(q-1)/(1-x^m)`. Solving the cyclic
/// system with `R` factored out gives `G_j = R·x_j` and so
/// `R = 1/(1 - Σ_j x_j)`.
pub fn gf_general(params: SuccessionParams, order: usize) -> Result<SeriesXYQ> {
    let m = params.m() as usize;
    let inv = one_minus(&x_pow(m, Poly2::one(), order)).reciprocal()?;
    let a = (1..=m).map(|j| &x_pow(j, Poly2::y(), order) * &inv).collect();
    let b = (1..=m)
        .map(|j| &x_pow(j, y_q_minus_one(), order) * &inv)
        .collect();
    let system = CyclicLinearSystem::new(params, a, b)?;
    let xs = solve_cyclic(&system)?;
    one_minus(&sum_all(order, xs)).reciprocal()
}

/// The same series as [`gf_general`], evaluated from the expanded triple
/// sum over orbit start `j`, orbit offset `ℓ` and run length `i`.
///
/// Each summand `x^E y^{i+1} (q-1)^i / ((1-x^m)^{i+1} (1 - (y(q-1))^p x^P / (1-x^m)^p))`
/// is rewritten as
/// `x^E y^{i+1} (q-1)^i (1-x^m)^{p-i-1} / ((1-x^m)^p - (y(q-1))^p x^P)`
/// so that only one reciprocal, with constant term 1, is needed.
pub fn gf_general_explicit(params: SuccessionParams, order: usize) -> Result<SeriesXYQ> {
    let m = i64::from(params.m());
    let (r, s, p) = (
        i64::from(params.r()),
        i64::from(params.s()),
        i64::from(params.p()),
    );
    let bar = |t: i64| residue_bar(t, m).map(|v| v as usize);
    let one_minus_xm = one_minus(&x_pow(m as usize, Poly2::one(), order));
    let q_minus_one = &Poly2::q() - &Poly2::one();

    let mut total = SeriesXYQ::zero(order);
    for j in 1..=s {
        for l in 0..p {
            let mut cycle_exp = 0;
            for k in l..l + p {
                cycle_exp += bar(j + k * r)?;
            }
            let denominator = &one_minus_xm.pow(p as u32)
                - &x_pow(cycle_exp, y_q_minus_one().pow(p as u32), order);
            let inv = denominator.reciprocal()?;
            let mut run_exp = 0;
            for i in 0..p {
                let exponent = bar(j + (i + l) * r)? + run_exp;
                let coeff = &Poly2::monomial(i as usize + 1, 0, BigInt::from(1))
                    * &q_minus_one.pow(i as u32);
                let numerator = &x_pow(exponent, coeff, order) * &one_minus_xm.pow((p - i - 1) as u32);
                total = &total + &(&numerator * &inv);
                run_exp += bar(j + (i + l) * r)?;
            }
        }
    }
    one_minus(&total).reciprocal()
}

/// Compositions by `m`-congruence successions (`r = 0`):
/// `1 / (1 - Σ_{a=1}^{m} x^a y / (1 - x^m - x^a y (q-1)))`.
pub fn gf_congruence(m: u32, order: usize) -> Result<SeriesXYQ> {
    let m = SuccessionParams::congruence(m)?.m() as usize;
    let xm = x_pow(m, Poly2::one(), order);
    let mut terms = Vec::with_capacity(m);
    for a in 1..=m {
        let denominator = &one_minus(&xm) - &x_pow(a, y_q_minus_one(), order);
        terms.push(&x_pow(a, Poly2::y(), order) * &denominator.reciprocal()?);
    }
    one_minus(&sum_all(order, terms)).reciprocal()
}

/// Parity successions, from the cleared-denominator form
/// `(1-x²-xy(q-1))(1-x²-x²y(q-1)) / ((1-x²)² - x³y² - xy(1-x²)(1+x)q + x³y²q²)`.
pub fn gf_parity(order: usize) -> Result<SeriesXYQ> {
    let one = SeriesXYQ::one(order);
    let x = |k: usize, p: Poly2| x_pow(k, p, order);
    let one_minus_x2 = &one - &x(2, Poly2::one());

    let numerator = &(&one_minus_x2 - &x(1, y_q_minus_one())) * &(&one_minus_x2 - &x(2, y_q_minus_one()));

    let y2 = Poly2::monomial(2, 0, BigInt::from(1));
    let y2q2 = Poly2::monomial(2, 2, BigInt::from(1));
    let yq = &Poly2::y() * &Poly2::q();
    let one_plus_x = &one + &x(1, Poly2::one());
    let middle = &(&x(1, yq) * &one_minus_x2) * &one_plus_x;
    let denominator = &(&(&(&one_minus_x2 * &one_minus_x2) - &x(3, y2)) - &middle) + &x(3, y2q2);
    Ok(&numerator * &denominator.reciprocal()?)
}

/// The two closed forms for Carlitz compositions counted by size and parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarlitzForm {
    /// `1 / (1 - Σ_{a≥1} x^a y / (1 + x^a y))`, the `m → ∞`, `q = 0` limit
    /// of [`gf_congruence`].
    Limit,
    /// `1 / (1 + Σ_{j≥1} (-xy)^j / (1 - x^j))`.
    AlternatingSum,
}

/// Carlitz compositions (no two adjacent parts equal) by size and parts. The
/// result has no `q`.
pub fn gf_carlitz(form: CarlitzForm, order: usize) -> Result<SeriesXYQ> {
    let one = SeriesXYQ::one(order);
    let mut terms = Vec::with_capacity(order);
    for k in 1..=order {
        let term = match form {
            CarlitzForm::Limit => {
                let xy = x_pow(k, Poly2::y(), order);
                &xy * &(&one + &xy).reciprocal()?
            }
            CarlitzForm::AlternatingSum => {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let xy_k = x_pow(k, Poly2::monomial(k, 0, BigInt::from(sign)), order);
                &xy_k * &one_minus(&x_pow(k, Poly2::one(), order)).reciprocal()?
            }
        };
        terms.push(term);
    }
    let sum = sum_all(order, terms);
    match form {
        CarlitzForm::Limit => one_minus(&sum).reciprocal(),
        CarlitzForm::AlternatingSum => (&one + &sum).reciprocal(),
    }
}

/// Exact coefficient of `x^n y^d q^a`; rejects `n` above the truncation order.
pub fn coefficient(series: &SeriesXYQ, n: usize, d: usize, a: usize) -> Result<BigInt> {
    series.coefficient(n, d, a)
}

/// `a_n`, the number of compositions of `n` with no `m`-congruence
/// succession, for `n = 0..=order`: the `y = 1`, `q = 0` slice of
/// [`gf_congruence`].
pub fn no_succession_counts(m: u32, order: usize) -> Result<Vec<BigInt>> {
    Ok(gf_congruence(m, order)?.evaluate_yq(&BigInt::from(1), &BigInt::from(0)))
}

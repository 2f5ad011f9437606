//! Dominant-singularity asymptotics for compositions without congruence
//! successions.
//!
//! At `y = 1, q = 0` the generating function is `1 / H_m(x)` with
//!
//! ```text
//! H_m(x) = 1 - Σ_{a=1}^{m} x^a / (1 + x^a - x^m),
//! ```
//!
//! whose smallest positive zero `ρ_m` gives `a_n ~ ρ_m^{-n} / (-ρ_m H_m'(ρ_m))`.
//! As `m → ∞` the zeros approach the zero of the Carlitz denominator
//! `1 - Σ_{a≥1} x^a / (1 + x^a)`. [`circle_scan`] bounds the truncation
//! `S_k(z) = 1 - Σ_{a=1}^{k} z^a / (1 + z^a)` away from zero on a circle
//! using samples plus a derivative bound.

use core::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Float, ToPrimitive};

use crate::error::{Error, Result};
use crate::gf::{gf_parity, no_succession_counts};

/// Default tolerance on `|H_m(ρ)|`.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Bracket containing `ρ_m` for every `m ≥ 2`.
pub const ROOT_BRACKET: (f64, f64) = (0.5, 0.69);

/// Truncation used for the Carlitz denominator.
pub const CARLITZ_TRUNCATION: usize = 60;

/// Largest `t` accepted by [`diagonal_check`].
pub const DIAGONAL_T_LIMIT: usize = 12;

/// Constant and base of the first-order diagonal approximation
/// `DIAGONAL_CONSTANT · DIAGONAL_BASE^t / (π t)`.
pub const DIAGONAL_CONSTANT: f64 = 0.379867842273;
pub const DIAGONAL_BASE: f64 = 15.8273658508862;

const DENOMINATOR_EPS: f64 = 1e-12;

fn check_m(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be at least 1".into()));
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(alloc::format!(
            "tolerance must be positive and finite, got {tol}"
        )));
    }
    Ok(())
}

/// `H_m(z)`. Fails if some `1 + z^a - z^m` is within `1e-12` of zero.
pub fn eval_h(m: u32, z: Complex64) -> Result<Complex64> {
    check_m(m)?;
    let zm = z.powu(m);
    let mut acc = Complex64::new(1.0, 0.0);
    let mut za = Complex64::new(1.0, 0.0);
    for a in 1..=m {
        za *= z;
        let den = Complex64::new(1.0, 0.0) + za - zm;
        if den.norm() < DENOMINATOR_EPS {
            return Err(Error::Numeric(alloc::format!(
                "denominator 1 + z^{a} - z^{m} vanishes at z = {z}"
            )));
        }
        acc -= za / den;
    }
    Ok(acc)
}

fn eval_h_real(m: u32, x: f64) -> Result<f64> {
    eval_h(m, Complex64::new(x, 0.0)).map(|z| z.re)
}

/// `H_m'(x) = -Σ_{a=1}^{m} (a x^{a-1} + (m-a) x^{a+m-1}) / (1 + x^a - x^m)^2`.
pub fn eval_h_prime(m: u32, x: f64) -> Result<f64> {
    check_m(m)?;
    let xm = Float::powi(x, m as i32);
    let mut acc = 0.0;
    for a in 1..=m {
        let xa = Float::powi(x, a as i32);
        let den = 1.0 + xa - xm;
        if Float::abs(den) < DENOMINATOR_EPS {
            return Err(Error::Numeric(alloc::format!(
                "denominator 1 + x^{a} - x^{m} vanishes at x = {x}"
            )));
        }
        let (a_f, m_f) = (f64::from(a), f64::from(m));
        let num = a_f * Float::powi(x, a as i32 - 1) + (m_f - a_f) * Float::powi(x, (a + m) as i32 - 1);
        acc -= num / (den * den);
    }
    Ok(acc)
}

/// Root of a decreasing-through-zero function on `[lo, hi]`: bisection down
/// to a short bracket, then safeguarded Newton steps.
fn bracketed_root(
    f: &dyn Fn(f64) -> Result<f64>,
    df: &dyn Fn(f64) -> Result<f64>,
    (mut lo, mut hi): (f64, f64),
    tol: f64,
    what: &str,
) -> Result<f64> {
    let (f_lo, f_hi) = (f(lo)?, f(hi)?);
    if !(f_lo > 0.0 && f_hi < 0.0) {
        return Err(Error::Numeric(alloc::format!(
            "{what}: no sign change on [{lo}, {hi}] (values {f_lo}, {f_hi})"
        )));
    }
    for _ in 0..30 {
        let mid = 0.5 * (lo + hi);
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let slope = df(x)?;
        let mut next = x - fx / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if Float::abs(next - x) <= f64::EPSILON * Float::abs(x) {
            x = next;
            break;
        }
        x = next;
    }
    let residual = Float::abs(f(x)?);
    if residual >= tol {
        return Err(Error::Numeric(alloc::format!(
            "{what}: residual {residual:e} at {x} exceeds tolerance {tol:e}"
        )));
    }
    Ok(x)
}

/// The smallest positive zero `ρ_m` of `H_m`; exactly 1 for `m = 1`.
pub fn find_rho(m: u32, tol: f64) -> Result<f64> {
    check_m(m)?;
    check_tol(tol)?;
    if m == 1 {
        return Ok(1.0);
    }
    bracketed_root(
        &|x| eval_h_real(m, x),
        &|x| eval_h_prime(m, x),
        ROOT_BRACKET,
        tol,
        "H_m",
    )
}

/// Dominant root, residue amplitude and growth rate for one modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEstimate {
    pub m: u32,
    pub rho: f64,
    /// `1 / (-ρ H_m'(ρ))`.
    pub amplitude: f64,
    /// `1 / ρ`.
    pub growth_rate: f64,
    pub tolerance: f64,
}

impl AsymptoticEstimate {
    pub fn new(m: u32, tol: f64) -> Result<Self> {
        let rho = find_rho(m, tol)?;
        let slope = eval_h_prime(m, rho)?;
        Ok(Self {
            m,
            rho,
            amplitude: 1.0 / (-rho * slope),
            growth_rate: 1.0 / rho,
            tolerance: tol,
        })
    }

    /// `amplitude · growth_rate^n`.
    pub fn at(&self, n: usize) -> f64 {
        self.amplitude * Float::powi(self.growth_rate, n as i32)
    }
}

/// `amplitude · growth_rate^n` at the default tolerance.
pub fn asymptotic_estimate(m: u32, n: usize) -> Result<f64> {
    Ok(AsymptoticEstimate::new(m, DEFAULT_TOLERANCE)?.at(n))
}

/// Exact count, estimate and relative error at one size.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub n: usize,
    pub exact: BigInt,
    pub estimate: f64,
    pub relative_error: f64,
}

/// Compares the estimate for modulus `m` with the exact number of
/// compositions of `n` without `(m, 0)`-successions.
pub fn compare_with_exact(estimate: &AsymptoticEstimate, n: usize) -> Result<Comparison> {
    let exact = no_succession_counts(estimate.m, n)?.swap_remove(n);
    let value = estimate.at(n);
    Ok(Comparison {
        n,
        relative_error: relative_error(value, &exact)?,
        exact,
        estimate: value,
    })
}

fn relative_error(approx: f64, exact: &BigInt) -> Result<f64> {
    let exact = exact
        .to_f64()
        .filter(|v| *v != 0.0 && v.is_finite())
        .ok_or_else(|| Error::Numeric(alloc::format!("cannot compare with exact value {exact}")))?;
    Ok(Float::abs(approx - exact) / Float::abs(exact))
}

fn carlitz_terms(x: f64, terms: usize) -> (f64, f64) {
    let (mut value, mut slope) = (1.0, 0.0);
    let mut xa = 1.0;
    for a in 1..=terms {
        let prev = xa;
        xa *= x;
        let den = 1.0 + xa;
        value -= xa / den;
        slope -= a as f64 * prev / (den * den);
    }
    (value, slope)
}

/// Zero of `1 - Σ_{a=1}^{K} x^a / (1 + x^a)` in the standard bracket.
pub fn find_rho_carlitz(tol: f64, truncation: usize) -> Result<f64> {
    check_tol(tol)?;
    if truncation < 2 {
        return Err(Error::InvalidArgument("Carlitz truncation must be at least 2".into()));
    }
    bracketed_root(
        &|x| Ok(carlitz_terms(x, truncation).0),
        &|x| Ok(carlitz_terms(x, truncation).1),
        ROOT_BRACKET,
        tol,
        "Carlitz denominator",
    )
}

/// The positive zero of `S_k` in `(0, 1)`; exists for `k ≥ 3`.
pub fn positive_root_of_sk(k: usize) -> Result<f64> {
    if k < 3 {
        return Err(Error::InvalidArgument(alloc::format!(
            "S_{k} has no zero in (0, 1)"
        )));
    }
    bracketed_root(
        &|x| Ok(carlitz_terms(x, k).0),
        &|x| Ok(carlitz_terms(x, k).1),
        (0.0, 1.0),
        DEFAULT_TOLERANCE,
        "S_k",
    )
}

/// `Σ_{a ≥ start} c^a / (1 - c^start) = c^start / ((1 - c)(1 - c^start))`,
/// an upper bound for the omitted tail `|Σ_{a ≥ start} z^a / (1 + z^a)|` on
/// `|z| = c`.
pub fn tail_bound(c: f64, start: u32) -> Result<f64> {
    if !(c > 0.0 && c < 1.0) || start == 0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "tail bound needs 0 < c < 1 and start >= 1, got c = {c}, start = {start}"
        )));
    }
    let cs = Float::powi(c, start as i32);
    Ok(cs / ((1.0 - c) * (1.0 - cs)))
}

/// `Σ_{a=1}^{k} a c^{a-1} / (1 - c^a)^2`, a bound for `|S_k'(z)|` on `|z| = c`.
pub fn sk_derivative_bound(k: usize, c: f64) -> f64 {
    (1..=k)
        .map(|a| {
            let ca = Float::powi(c, a as i32);
            a as f64 * Float::powi(c, a as i32 - 1) / ((1.0 - ca) * (1.0 - ca))
        })
        .sum()
}

/// Minimum of `|S_k|` sampled on `|z| = c`, with a certified lower bound for
/// the whole circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleScanReport {
    pub k: usize,
    pub c: f64,
    pub num_points: usize,
    pub sample_min: f64,
    pub derivative_bound: f64,
    /// Largest arc distance from a point of the circle to its nearest
    /// sample: `π c / N`.
    pub spacing_bound: f64,
    /// `sample_min - derivative_bound · spacing_bound`.
    pub certified_lower_bound: f64,
}

fn eval_sk(k: usize, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut acc = one;
    let mut za = one;
    for _ in 0..k {
        za *= z;
        acc -= za / (one + za);
    }
    acc
}

/// [`circle_scan_with_bound`] using [`sk_derivative_bound`].
pub fn circle_scan(k: usize, c: f64, num_points: usize) -> Result<CircleScanReport> {
    circle_scan_with_bound(k, c, num_points, sk_derivative_bound(k, c))
}

/// Samples `|S_k|` at `N` equally spaced points of `|z| = c` starting at
/// `z = c`. Any point of the circle lies within arc distance `π c / N` of a
/// sample, so `|S_k| ≥ sample_min - bound · π c / N` everywhere on it.
pub fn circle_scan_with_bound(
    k: usize,
    c: f64,
    num_points: usize,
    derivative_bound: f64,
) -> Result<CircleScanReport> {
    if k == 0 || !(c > 0.0 && c < 1.0) || num_points < 8 || !(derivative_bound >= 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "circle scan needs k >= 1, 0 < c < 1, N >= 8 and a nonnegative bound; \
             got k = {k}, c = {c}, N = {num_points}, bound = {derivative_bound}"
        )));
    }
    let sample_min = (0..num_points)
        .map(|j| {
            let angle = 2.0 * PI * j as f64 / num_points as f64;
            eval_sk(k, Complex64::from_polar(c, angle)).norm()
        })
        .fold(f64::INFINITY, f64::min);
    let spacing_bound = PI * c / num_points as f64;
    Ok(CircleScanReport {
        k,
        c,
        num_points,
        sample_min,
        derivative_bound,
        spacing_bound,
        certified_lower_bound: sample_min - derivative_bound * spacing_bound,
    })
}

/// Exact diagonal coefficient against the first-order approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalCheck {
    pub t: usize,
    /// Compositions of `4t` with `2t` parts and `t` parity successions.
    pub exact: BigInt,
    pub formula: f64,
    pub relative_error: f64,
}

/// Coefficient of `x^{4t} y^{2t} q^t` in the parity generating function,
/// compared with `DIAGONAL_CONSTANT · DIAGONAL_BASE^t / (π t)`.
pub fn diagonal_check(t: usize) -> Result<DiagonalCheck> {
    if t == 0 {
        return Err(Error::InvalidArgument("diagonal index must be at least 1".into()));
    }
    if t > DIAGONAL_T_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "diagonal t",
            requested: t as u64,
            limit: DIAGONAL_T_LIMIT as u64,
        });
    }
    let exact = gf_parity(4 * t)?.coefficient(4 * t, 2 * t, t)?;
    let formula = DIAGONAL_CONSTANT * Float::powi(DIAGONAL_BASE, t as i32) / (PI * t as f64);
    Ok(DiagonalCheck {
        t,
        relative_error: relative_error(formula, &exact)?,
        exact,
        formula,
    })
}

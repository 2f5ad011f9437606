//! Exact truncated power series in `x` whose coefficients are integer
//! polynomials in `y` and `q`.
//!
//! `x` marks size, `y` the number of parts and `q` the number of successions.
//! A [`SeriesXYQ`] of order `N` stores the coefficients of `x^0..=x^N`; no
//! operation reads or produces anything above `x^N`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense polynomial in `y` and `q`; `rows[d][a]` is the coefficient of
/// `y^d q^a`. Rows carry no trailing zeros and the row list has no trailing
/// empty rows, so equal polynomials compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    rows: Vec<Vec<BigInt>>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c · y^d q^a`.
    pub fn monomial(d: usize, a: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![Vec::new(); d + 1];
        rows[d] = vec![BigInt::zero(); a + 1];
        rows[d][a] = c;
        Self { rows }
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, BigInt::one())
    }

    pub fn q() -> Self {
        Self::monomial(0, 1, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn coeff(&self, d: usize, a: usize) -> BigInt {
        self.rows
            .get(d)
            .and_then(|row| row.get(a))
            .cloned()
            .unwrap_or_default()
    }

    /// The constant term, when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.rows.as_slice() {
            [] => Some(BigInt::zero()),
            [row] if row.len() == 1 => Some(row[0].clone()),
            _ => None,
        }
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn degree_q(&self) -> Option<usize> {
        self.rows.iter().map(Vec::len).max().and_then(|l| l.checked_sub(1))
    }

    /// Nonzero terms as `((d, a), coefficient)`, ordered by `d` then `a`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &BigInt)> + '_ {
        self.rows.iter().enumerate().flat_map(|(d, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(a, c)| ((d, a), c))
        })
    }

    fn add_term(&mut self, d: usize, a: usize, c: &BigInt) {
        if self.rows.len() <= d {
            self.rows.resize(d + 1, Vec::new());
        }
        let row = &mut self.rows[d];
        if row.len() <= a {
            row.resize(a + 1, BigInt::zero());
        }
        row[a] += c;
    }

    fn normalize(&mut self) {
        for row in &mut self.rows {
            while row.last().is_some_and(Zero::is_zero) {
                row.pop();
            }
        }
        while self.rows.last().is_some_and(Vec::is_empty) {
            self.rows.pop();
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|c| c * k).collect())
                .collect(),
        }
    }

    /// Substitutes integer values for `y` and/or `q`; a substituted variable
    /// disappears (its degree becomes zero).
    pub fn specialize(&self, y: Option<&BigInt>, q: Option<&BigInt>) -> Self {
        let mut out = Self::zero();
        for ((d, a), c) in self.terms() {
            let mut c = c.clone();
            let mut d_out = d;
            let mut a_out = a;
            if let Some(y) = y {
                c *= num_traits::pow(y.clone(), d);
                d_out = 0;
            }
            if let Some(q) = q {
                c *= num_traits::pow(q.clone(), a);
                a_out = 0;
            }
            out.add_term(d_out, a_out, &c);
        }
        out.normalize();
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Poly2 {
    type Output = Poly2;

    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for ((d, a), c) in rhs.terms() {
            out.add_term(d, a, c);
        }
        out.normalize();
        out
    }
}

impl AddAssign<&Poly2> for Poly2 {
    fn add_assign(&mut self, rhs: &Poly2) {
        for ((d, a), c) in rhs.terms() {
            self.add_term(d, a, c);
        }
        self.normalize();
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;

    fn sub(self, rhs: &Poly2) -> Poly2 {
        self + &(-rhs)
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;

    fn neg(self) -> Poly2 {
        Poly2 {
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|c| -c).collect())
                .collect(),
        }
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;

    fn mul(self, rhs: &Poly2) -> Poly2 {
        if self.is_zero() || rhs.is_zero() {
            return Poly2::zero();
        }
        let dy = self.rows.len() + rhs.rows.len() - 1;
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); dy];
        for (d1, r1) in self.rows.iter().enumerate() {
            for (d2, r2) in rhs.rows.iter().enumerate() {
                if r1.is_empty() || r2.is_empty() {
                    continue;
                }
                let row = &mut rows[d1 + d2];
                let need = r1.len() + r2.len() - 1;
                if row.len() < need {
                    row.resize(need, BigInt::zero());
                }
                for (a1, c1) in r1.iter().enumerate() {
                    if c1.is_zero() {
                        continue;
                    }
                    for (a2, c2) in r2.iter().enumerate() {
                        if !c2.is_zero() {
                            row[a1 + a2] += c1 * c2;
                        }
                    }
                }
            }
        }
        let mut out = Poly2 { rows };
        out.normalize();
        out
    }
}

/// Truncated series `Σ_{n=0}^{N} x^n · P_n(y, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesXYQ {
    coeffs: Vec<Poly2>,
}

impl SeriesXYQ {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Poly2::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, Poly2::one(), order)
    }

    /// `x^k · poly`, or zero when `k` is above the order.
    pub fn monomial(k: usize, poly: Poly2, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = poly;
        }
        s
    }

    /// Builds a series from its first coefficients; missing ones are zero and
    /// extra ones are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Poly2>, order: usize) -> Self {
        coeffs.resize(order + 1, Poly2::zero());
        Self { coeffs }
    }

    /// The truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly2] {
        &self.coeffs
    }

    /// The polynomial coefficient of `x^n`.
    pub fn coeff_poly(&self, n: usize) -> Result<&Poly2> {
        self.coeffs.get(n).ok_or(Error::BeyondTruncation {
            n,
            order: self.order(),
        })
    }

    /// The coefficient of `x^n y^d q^a`.
    pub fn coefficient(&self, n: usize, d: usize, a: usize) -> Result<BigInt> {
        Ok(self.coeff_poly(n)?.coeff(d, a))
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    /// Smallest `n` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|p| !p.is_zero())
    }

    pub fn scale(&self, poly: &Poly2) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * poly).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![Poly2::zero(); k.min(order + 1)];
        coeffs.extend(self.coeffs.iter().take((order + 1).saturating_sub(k)).cloned());
        Self::from_coeffs(coeffs, order)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse up to the truncation order. The `x^0`
    /// coefficient must be the constant `1` or `-1`.
    pub fn reciprocal(&self) -> Result<Self> {
        let f0 = &self.coeffs[0];
        if f0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let unit = match f0.as_constant() {
            Some(c) if c.abs().is_one() => c,
            _ => return Err(Error::NonUnitConstantTerm(alloc::format!("{f0:?}"))),
        };
        let order = self.order();
        let mut g: Vec<Poly2> = Vec::with_capacity(order + 1);
        g.push(Poly2::constant(unit.clone()));
        for n in 1..=order {
            let mut acc = Poly2::zero();
            for i in 1..=n {
                let fi = &self.coeffs[i];
                if fi.is_zero() || g[n - i].is_zero() {
                    continue;
                }
                acc += &(fi * &g[n - i]);
            }
            // g_n = -u · Σ f_i g_{n-i}, and u^{-1} = u for u = ±1
            g.push(acc.scale(&-&unit));
        }
        Ok(Self { coeffs: g })
    }

    /// Substitutes integer values for `y` and/or `q` in every coefficient.
    pub fn specialize(&self, y: Option<&BigInt>, q: Option<&BigInt>) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|p| p.specialize(y, q)).collect(),
        }
    }

    /// The univariate sequence obtained by fixing both `y` and `q`.
    pub fn evaluate_yq(&self, y: &BigInt, q: &BigInt) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|p| {
                p.specialize(Some(y), Some(q))
                    .as_constant()
                    .unwrap_or_default()
            })
            .collect()
    }
}

fn common_order(a: &SeriesXYQ, b: &SeriesXYQ) -> usize {
    a.order().min(b.order())
}

impl Add for &SeriesXYQ {
    type Output = SeriesXYQ;

    fn add(self, rhs: &SeriesXYQ) -> SeriesXYQ {
        let order = common_order(self, rhs);
        SeriesXYQ {
            coeffs: (0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect(),
        }
    }
}

impl Sub for &SeriesXYQ {
    type Output = SeriesXYQ;

    fn sub(self, rhs: &SeriesXYQ) -> SeriesXYQ {
        let order = common_order(self, rhs);
        SeriesXYQ {
            coeffs: (0..=order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect(),
        }
    }
}

impl Neg for &SeriesXYQ {
    type Output = SeriesXYQ;

    fn neg(self) -> SeriesXYQ {
        SeriesXYQ {
            coeffs: self.coeffs.iter().map(|p| -p).collect(),
        }
    }
}

impl Mul for &SeriesXYQ {
    type Output = SeriesXYQ;

    fn mul(self, rhs: &SeriesXYQ) -> SeriesXYQ {
        let order = common_order(self, rhs);
        let mut coeffs = vec![Poly2::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        SeriesXYQ { coeffs }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for SeriesXYQ {
            type Output = SeriesXYQ;
            fn $method(self, rhs: SeriesXYQ) -> SeriesXYQ {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn xy(order: usize) -> SeriesXYQ {
        SeriesXYQ::monomial(1, Poly2::y(), order)
    }

    #[test]
    fn geometric_series() {
        let one_minus_x = &SeriesXYQ::one(4) - &SeriesXYQ::monomial(1, Poly2::one(), 4);
        let inv = one_minus_x.reciprocal().unwrap();
        for n in 0..=4 {
            assert_eq!(inv.coefficient(n, 0, 0).unwrap(), int(1));
        }
        assert_eq!(&one_minus_x * &inv, SeriesXYQ::one(4));
    }

    #[test]
    fn difference_of_squares() {
        let one = SeriesXYQ::one(3);
        let p = &(&one + &xy(3)) * &(&one - &xy(3));
        let expected = &one - &SeriesXYQ::monomial(2, Poly2::monomial(2, 0, int(1)), 3);
        assert_eq!(p, expected);
    }

    #[test]
    fn binomial_expansion() {
        // 1/(1 - x - xy) = Σ (x(1+y))^n: the x^n y^d coefficient is binomial(n, d)
        let n_max = 12;
        let x = SeriesXYQ::monomial(1, Poly2::one(), n_max);
        let f = &(&SeriesXYQ::one(n_max) - &x) - &xy(n_max);
        let inv = f.reciprocal().unwrap();
        for n in 1..=n_max {
            for d in 0..=n {
                let expected = crate::closed_forms::binomial(n as i64, d as i64);
                assert_eq!(inv.coefficient(n, d, 0).unwrap(), expected.into());
            }
        }
    }

    #[test]
    fn reciprocal_errors() {
        let x = SeriesXYQ::monomial(1, Poly2::one(), 3);
        assert_eq!(x.reciprocal(), Err(Error::ZeroConstantTerm));
        let two = SeriesXYQ::monomial(0, Poly2::constant(int(2)), 3);
        assert!(matches!(two.reciprocal(), Err(Error::NonUnitConstantTerm(_))));
        let one_plus_y = SeriesXYQ::monomial(0, &Poly2::one() + &Poly2::y(), 3);
        assert!(matches!(one_plus_y.reciprocal(), Err(Error::NonUnitConstantTerm(_))));
    }

    #[test]
    fn negative_unit_reciprocal() {
        let f = &SeriesXYQ::monomial(0, Poly2::constant(int(-1)), 5) + &xy(5);
        let g = f.reciprocal().unwrap();
        assert_eq!(&f * &g, SeriesXYQ::one(5));
    }

    #[test]
    fn coefficient_beyond_order_rejected() {
        let s = SeriesXYQ::one(3);
        assert!(matches!(s.coefficient(4, 0, 0), Err(Error::BeyondTruncation { .. })));
        assert_eq!(s.coefficient(2, 5, 5).unwrap(), int(0));
    }

    #[test]
    fn shift_and_specialize() {
        let s = xy(4).shift(2);
        assert_eq!(s.coefficient(3, 1, 0).unwrap(), int(1));
        assert_eq!(xy(4).shift(10), SeriesXYQ::zero(4));

        let p = &(&Poly2::y() * &Poly2::q()) + &Poly2::constant(int(3));
        let at = p.specialize(Some(&int(2)), Some(&int(5)));
        assert_eq!(at.as_constant(), Some(int(13)));
        let only_q = p.specialize(None, Some(&int(0)));
        assert_eq!(only_q, Poly2::constant(int(3)));
    }

    #[test]
    fn poly_normal_form() {
        let p = &Poly2::y() - &Poly2::y();
        assert!(p.is_zero());
        assert_eq!(p, Poly2::zero());
        let sq = (&Poly2::q() - &Poly2::one()).pow(2);
        assert_eq!(sq.coeff(0, 1), int(-2));
        assert_eq!(sq.degree_q(), Some(2));
        assert_eq!(sq.degree_y(), Some(0));
    }
}

//! Closed forms and recurrences for parity successions (`m = 2`, `r = 0`).
//!
//! Everything here is exact integer arithmetic.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::composition::{CountTable, SuccessionParams};
use crate::error::{Error, Result};

/// `binomial(x, k)`, zero when `k < 0` or `x < k` (including every negative
/// `x`).
pub fn binomial(x: i64, k: i64) -> BigUint {
    if k < 0 || x < k {
        return BigUint::zero();
    }
    let k = k.min(x - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from((x - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

/// `c(n, 2d, 0)`: parity-alternating compositions of `n` with `2d` parts.
///
/// `2·binomial((n+d)/2 - 1, 2d - 1)` when `n ≡ d (mod 2)`, else zero.
pub fn c_parity_alt_even(n: u64, d: u64) -> BigUint {
    if n == 0 {
        return BigUint::from(u8::from(d == 0));
    }
    if (n + d) % 2 != 0 {
        return BigUint::zero();
    }
    let half = ((n + d) / 2) as i64;
    binomial(half - 1, 2 * d as i64 - 1) * 2u32
}

/// `c(n, 2d+1, 0)`: parity-alternating compositions of `n` with `2d + 1`
/// parts.
///
/// `binomial((n+d)/2 - 1, 2d)` when `n ≡ d (mod 2)`, else
/// `binomial((n+d-1)/2, 2d)`.
pub fn c_parity_alt_odd(n: u64, d: u64) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let twice_d = 2 * d as i64;
    if (n + d) % 2 == 0 {
        binomial(((n + d) / 2) as i64 - 1, twice_d)
    } else {
        binomial(((n + d - 1) / 2) as i64, twice_d)
    }
}

/// Checks the eight-term parity recurrence at `(n, d, a)`:
///
/// ```text
/// c(n,d,a) = c(n-1,d-1,a-1) + 2c(n-2,d,a) + c(n-2,d-1,a-1) + c(n-3,d-2,a)
///          - c(n-3,d-1,a-1) - c(n-3,d-2,a-2) - c(n-4,d,a) - c(n-4,d-1,a-1)
/// ```
///
/// Needs `n ≥ 4`, `d ≥ 3`, a parity table and coverage of `n`. Negative
/// indices read as zero.
pub fn theorem2_check(table: &CountTable, n: usize, d: usize, a: usize) -> Result<bool> {
    if *table.params() != SuccessionParams::parity() {
        return Err(Error::InvalidArgument(
            "the parity recurrence needs a (2, 0) table".into(),
        ));
    }
    if n < 4 || d < 3 {
        return Err(Error::InvalidArgument(alloc::format!(
            "the parity recurrence holds for n >= 4, d >= 3; got n = {n}, d = {d}"
        )));
    }
    if n > table.n_max() {
        return Err(Error::InsufficientCoverage {
            n_max: table.n_max(),
            requested: n,
        });
    }
    let (n, d, a) = (n as i64, d as i64, a as i64);
    let c = |n: i64, d: i64, a: i64| BigInt::from(table.get(n, d, a));
    let rhs = c(n - 1, d - 1, a - 1) + c(n - 2, d, a) * 2 + c(n - 2, d - 1, a - 1) + c(n - 3, d - 2, a)
        - c(n - 3, d - 1, a - 1)
        - c(n - 3, d - 2, a - 2)
        - c(n - 4, d, a)
        - c(n - 4, d - 1, a - 1);
    Ok(c(n, d, a) == rhs)
}

/// Memoized `a(n)`, the number of parity-alternating compositions of `n`:
/// `a(0..=3) = 1, 1, 1, 3` and `a(n) = 2a(n-2) + a(n-3) - a(n-4)`.
#[derive(Debug, Clone)]
pub struct ParitySequenceCache {
    values: Vec<BigUint>,
}

impl ParitySequenceCache {
    pub fn new(n_max: usize) -> Self {
        let mut values: Vec<BigInt> = [1, 1, 1, 3].map(BigInt::from).to_vec();
        for n in 4..=n_max {
            let next = &values[n - 2] * 2 + &values[n - 3] - &values[n - 4];
            values.push(next);
        }
        values.truncate(n_max + 1);
        Self {
            values: values
                .into_iter()
                .map(|v| v.to_biguint().unwrap_or_default())
                .collect(),
        }
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

/// `a(n)` from the four-term recurrence.
pub fn a_seq(n: usize) -> BigUint {
    ParitySequenceCache::new(n).values[n].clone()
}

/// `Σ_{d=0}^{⌊(n+1)/3⌋} binomial(n+d+1, 4d)`, which equals `a(2n)`.
pub fn a_even_binomial(n: u64) -> BigUint {
    let n = n as i64;
    (0..=(n + 1) / 3).map(|d| binomial(n + d + 1, 4 * d)).sum()
}

/// `Σ_{d=0}^{⌊n/3⌋} binomial(n+d+2, 4d+2)`, which equals `a(2n+1)`.
pub fn a_odd_binomial(n: u64) -> BigUint {
    let n = n as i64;
    (0..=n / 3).map(|d| binomial(n + d + 2, 4 * d + 2)).sum()
}

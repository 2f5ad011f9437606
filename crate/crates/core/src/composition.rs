//! Compositions, the `(m, r)`-congruence succession statistic, and the
//! brute-force count tables every other module is checked against.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::closed_forms::binomial;
use crate::error::{Error, Result};
use crate::series::SeriesXYQ;

/// Largest `n_max` accepted by [`brute_force_table`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 24;

/// The member of `{1, …, m}` congruent to `t` modulo `m`.
pub fn residue_bar(t: i64, m: i64) -> Result<i64> {
    if t < 1 || m < 1 {
        return Err(Error::InvalidArgument(alloc::format!(
            "residue_bar needs t >= 1 and m >= 1, got t = {t}, m = {m}"
        )));
    }
    Ok((t - 1) % m + 1)
}

/// The modulus and shift of a succession statistic, with `s = gcd(m, r)`
/// (taking `gcd(m, 0) = m`) and `p = m / s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SuccessionParams {
    m: u32,
    r: u32,
    s: u32,
    p: u32,
}

impl SuccessionParams {
    pub fn new(m: u32, r: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("modulus m must be positive".into()));
        }
        if r >= m {
            return Err(Error::InvalidArgument(alloc::format!(
                "shift r must satisfy 0 <= r < m, got r = {r}, m = {m}"
            )));
        }
        let s = if r == 0 { m } else { num_integer::gcd(m, r) };
        Ok(Self { m, r, s, p: m / s })
    }

    /// `m`-congruence successions (`r = 0`).
    pub fn congruence(m: u32) -> Result<Self> {
        Self::new(m, 0)
    }

    /// Parity successions, `(m, r) = (2, 0)`.
    pub fn parity() -> Self {
        Self { m: 2, r: 0, s: 2, p: 1 }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Whether `next` follows `prev` as a succession.
    #[inline]
    pub fn is_succession(&self, prev: u32, next: u32) -> bool {
        let m = u64::from(self.m);
        (u64::from(prev) + u64::from(self.r)) % m == u64::from(next) % m
    }
}

/// An ordered list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument(
                "composition parts must be positive".into(),
            ));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.parts
    }

    /// The sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// The number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn last(&self) -> Option<u32> {
        self.parts.last().copied()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Parses the `(3,1,2)` form written by `Display`; `()` is the empty
    /// composition.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(alloc::format!("expected (p1,p2,...), got {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(alloc::format!("bad part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Lexicographic stream of the compositions of `n`, optionally with exactly
/// `d` parts. Built by [`enumerate_compositions`].
#[derive(Debug, Clone)]
pub struct Compositions {
    parts_wanted: Option<usize>,
    next: Option<Vec<u32>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let advanced = match self.parts_wanted {
            None => advance_free(&mut succ),
            Some(_) => advance_fixed(&mut succ),
        };
        if advanced {
            self.next = Some(succ);
        }
        Some(Composition::from_parts_unchecked(current))
    }
}

// (…, p, L) -> (…, p + 1, 1, …, 1) with L - 1 trailing ones.
fn advance_free(parts: &mut Vec<u32>) -> bool {
    if parts.len() <= 1 {
        return false;
    }
    let last = parts.pop().unwrap_or_default();
    if let Some(prev) = parts.last_mut() {
        *prev += 1;
    }
    parts.extend(core::iter::repeat(1).take(last as usize - 1));
    true
}

// Bump the rightmost part that has slack to its right, then reset the tail
// to its lexicographically smallest shape.
fn advance_fixed(parts: &mut [u32]) -> bool {
    let d = parts.len();
    if d <= 1 {
        return false;
    }
    let mut tail: u64 = u64::from(parts[d - 1]);
    for i in (0..d - 1).rev() {
        let tail_len = (d - 1 - i) as u64;
        if tail > tail_len {
            parts[i] += 1;
            for p in parts.iter_mut().take(d - 1).skip(i + 1) {
                *p = 1;
            }
            parts[d - 1] = (tail - 1 - (tail_len - 1)) as u32;
            return true;
        }
        tail += u64::from(parts[i]);
    }
    false
}

/// All compositions of `n` (with exactly `d` parts when given), each once,
/// in lexicographic order of the part sequence.
pub fn enumerate_compositions(n: usize, d: Option<usize>) -> Result<Compositions> {
    if let Some(d) = d {
        if d > n {
            return Err(Error::InvalidArgument(alloc::format!(
                "a composition of {n} cannot have {d} parts"
            )));
        }
    }
    let first = match d {
        None => Some(vec![1; n]),
        Some(0) => (n == 0).then(Vec::new),
        Some(d) => {
            let mut parts = vec![1; d];
            parts[d - 1] = (n - d + 1) as u32;
            Some(parts)
        }
    };
    Ok(Compositions {
        parts_wanted: d,
        next: first,
    })
}

/// Number of indices `i` with `π_{i+1} ≡ π_i + r (mod m)`.
pub fn succession_count(pi: &Composition, params: &SuccessionParams) -> usize {
    pi.parts()
        .windows(2)
        .filter(|w| params.is_succession(w[0], w[1]))
        .count()
}

/// No two adjacent parts are equal.
pub fn is_carlitz(pi: &Composition) -> bool {
    pi.parts().windows(2).all(|w| w[0] != w[1])
}

/// Number of Carlitz compositions of `n`, by exhaustive enumeration.
pub fn carlitz_count(n: usize) -> Result<BigUint> {
    check_budget(n, DEFAULT_ENUMERATION_LIMIT)?;
    let mut count = BigUint::zero();
    for pi in enumerate_compositions(n, None)? {
        if is_carlitz(&pi) {
            count += 1u32;
        }
    }
    Ok(count)
}

/// Every composition of `n` without a single `(m, r)`-succession, found by
/// depth-first search that only extends by non-succession parts. Output is in
/// lexicographic order.
pub fn compositions_without_successions(n: usize, params: &SuccessionParams) -> Vec<Composition> {
    fn extend(
        remaining: usize,
        params: &SuccessionParams,
        prefix: &mut Vec<u32>,
        out: &mut Vec<Composition>,
    ) {
        if remaining == 0 {
            out.push(Composition::from_parts_unchecked(prefix.clone()));
            return;
        }
        for part in 1..=remaining as u32 {
            if let Some(&prev) = prefix.last() {
                if params.is_succession(prev, part) {
                    continue;
                }
            }
            prefix.push(part);
            extend(remaining - part as usize, params, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, params, &mut Vec::new(), &mut out);
    out
}

fn check_budget(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::BudgetExceeded {
            what: "n_max",
            requested: n as u64,
            limit: limit as u64,
        });
    }
    Ok(())
}

/// Exact counts `c(n, d, a)`: compositions of `n` with `d` parts and `a`
/// successions, for `0 <= n <= n_max`, `0 <= d <= n`, `0 <= a <= max(d-1, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    params: SuccessionParams,
    // entries[n][d][a]
    entries: Vec<Vec<Vec<BigUint>>>,
}

impl CountTable {
    /// A table of zeros with the canonical shape.
    pub fn zeros(n_max: usize, params: SuccessionParams) -> Self {
        let entries = (0..=n_max)
            .map(|n| {
                (0..=n)
                    .map(|d| vec![BigUint::zero(); d.saturating_sub(1) + 1])
                    .collect()
            })
            .collect();
        Self { params, entries }
    }

    pub fn params(&self) -> &SuccessionParams {
        &self.params
    }

    pub fn n_max(&self) -> usize {
        self.entries.len() - 1
    }

    /// `c(n, d, a)`, reading any index outside the table shape (negative or
    /// too large) as zero. `n` beyond `n_max` is also zero; callers that
    /// need coverage check [`CountTable::n_max`] first.
    pub fn get(&self, n: i64, d: i64, a: i64) -> BigUint {
        self.entry(n, d, a).cloned().unwrap_or_default()
    }

    fn entry(&self, n: i64, d: i64, a: i64) -> Option<&BigUint> {
        if n < 0 || d < 0 || a < 0 {
            return None;
        }
        self.entries
            .get(n as usize)?
            .get(d as usize)?
            .get(a as usize)
    }

    pub fn get_mut(&mut self, n: usize, d: usize, a: usize) -> Option<&mut BigUint> {
        self.entries.get_mut(n)?.get_mut(d)?.get_mut(a)
    }

    /// All cells `(n, d, a, count)` in increasing index order, zeros included.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, usize, &BigUint)> + '_ {
        self.entries.iter().enumerate().flat_map(|(n, row)| {
            row.iter().enumerate().flat_map(move |(d, col)| {
                col.iter().enumerate().map(move |(a, c)| (n, d, a, c))
            })
        })
    }

    /// Reads `c(n, d, a)` off the coefficients of a generating function.
    /// Fails if a coefficient is negative or lies outside the table shape.
    pub fn from_series(series: &SeriesXYQ, params: SuccessionParams) -> Result<Self> {
        let mut table = Self::zeros(series.order(), params);
        for n in 0..=series.order() {
            for ((d, a), c) in series.coeff_poly(n)?.terms() {
                let slot = table.get_mut(n, d, a).ok_or_else(|| {
                    Error::InvalidArgument(alloc::format!(
                        "series has a nonzero term x^{n} y^{d} q^{a} outside the count-table shape"
                    ))
                })?;
                *slot = c.to_biguint().ok_or_else(|| {
                    Error::InvalidArgument(alloc::format!(
                        "series coefficient of x^{n} y^{d} q^{a} is negative: {c}"
                    ))
                })?;
            }
        }
        Ok(table)
    }

    /// Row-sum identities and the vanishing pattern. Returns the first
    /// violated cell as a message.
    pub fn check_invariants(&self) -> core::result::Result<(), String> {
        if self.get(0, 0, 0) != BigUint::one() {
            return Err("c(0,0,0) must be 1".into());
        }
        for n in 1..=self.n_max() {
            let mut total = BigUint::zero();
            for d in 0..=n {
                let row: BigUint = self.entries[n][d].iter().sum();
                let expected = binomial(n as i64 - 1, d as i64 - 1);
                if row != expected {
                    return Err(alloc::format!(
                        "sum_a c({n},{d},a) = {row}, expected binomial({},{}) = {expected}",
                        n - 1,
                        d as i64 - 1
                    ));
                }
                total += row;
            }
            if total != BigUint::one() << (n - 1) {
                return Err(alloc::format!("sum over row n = {n} is {total}, not 2^{}", n - 1));
            }
        }
        Ok(())
    }
}

/// Counts every composition of size up to `n_max` by parts and successions.
pub fn brute_force_table(n_max: usize, params: SuccessionParams) -> Result<CountTable> {
    brute_force_table_with_limit(n_max, params, DEFAULT_ENUMERATION_LIMIT)
}

pub fn brute_force_table_with_limit(
    n_max: usize,
    params: SuccessionParams,
    limit: usize,
) -> Result<CountTable> {
    check_budget(n_max, limit)?;
    let mut table = CountTable::zeros(n_max, params);
    for n in 0..=n_max {
        let mut counts: Vec<Vec<u64>> = (0..=n).map(|d| vec![0; d.saturating_sub(1) + 1]).collect();
        for pi in enumerate_compositions(n, None)? {
            counts[pi.len()][succession_count(&pi, &params)] += 1;
        }
        for (d, row) in counts.into_iter().enumerate() {
            for (a, c) in row.into_iter().enumerate() {
                table.entries[n][d][a] = BigUint::from(c);
            }
        }
    }
    Ok(table)
}

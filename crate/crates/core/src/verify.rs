//! Self-checking suites run by `congruence verify`.
//!
//! Each suite compares two independent computations (exhaustive counts
//! against generating functions, closed forms against enumeration,
//! bijections against both of their sets) up to a size budget and stops at
//! the first disagreement with a concrete counterexample.
//!
//! [`VerifyConfig::inject_fault`] deliberately corrupts one side of every
//! comparison; the suites must then fail, which is how their sensitivity is
//! tested.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::asymptotics::{
    compare_with_exact, find_rho, find_rho_carlitz, AsymptoticEstimate, CARLITZ_TRUNCATION,
};
use crate::bijections::colored::{
    audit_phi_with, audit_prop2_with, phi, prop2_forward, Prop2Case,
};
use crate::bijections::theorem2::{audit_theorem2_with, theorem2_forward, Image};
use crate::bijections::Counterexample;
use crate::closed_forms::{
    a_even_binomial, a_odd_binomial, c_parity_alt_even, c_parity_alt_odd, theorem2_check,
    ParitySequenceCache,
};
use crate::composition::{
    brute_force_table, carlitz_count, compositions_without_successions, Composition, CountTable,
    SuccessionParams,
};
use crate::error::{Error, Result};
use crate::gf::{gf_carlitz, gf_congruence, gf_general, gf_general_explicit, gf_parity, CarlitzForm};

/// The available suites, in the order [`run_all`] runs them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    OracleGf,
    Specialization,
    Carlitz,
    ClosedForms,
    Theorem2Recurrence,
    BijectionTheorem2,
    BijectionPhi,
    BijectionProp2,
    Asymptotics,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::OracleGf,
        Suite::Specialization,
        Suite::Carlitz,
        Suite::ClosedForms,
        Suite::Theorem2Recurrence,
        Suite::BijectionTheorem2,
        Suite::BijectionPhi,
        Suite::BijectionProp2,
        Suite::Asymptotics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OracleGf => "oracle-gf",
            Suite::Specialization => "specialization",
            Suite::Carlitz => "carlitz",
            Suite::ClosedForms => "closed-forms",
            Suite::Theorem2Recurrence => "theorem2-recurrence",
            Suite::BijectionTheorem2 => "bijection-theorem2",
            Suite::BijectionPhi => "bijection-phi",
            Suite::BijectionProp2 => "bijection-prop2",
            Suite::Asymptotics => "asymptotics",
        }
    }

    /// Size budget used when none is configured.
    pub fn default_n_max(self) -> usize {
        match self {
            Suite::OracleGf => 12,
            Suite::Specialization => 12,
            Suite::Carlitz => 14,
            Suite::ClosedForms => 30,
            Suite::Theorem2Recurrence => 16,
            Suite::BijectionTheorem2 => 14,
            Suite::BijectionPhi => 16,
            Suite::BijectionProp2 => 14,
            Suite::Asymptotics => 25,
        }
    }

    /// Largest size budget accepted.
    pub fn max_n_max(self) -> usize {
        match self {
            Suite::OracleGf | Suite::Theorem2Recurrence => 20,
            Suite::Specialization => 30,
            Suite::Carlitz => 20,
            Suite::ClosedForms => 40,
            Suite::BijectionTheorem2 => 16,
            Suite::BijectionPhi => 20,
            Suite::BijectionProp2 => 16,
            Suite::Asymptotics => 60,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(alloc::format!("unknown suite {s:?}")))
    }
}

/// Budgets and the fault-injection switch.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Overrides every suite's default size budget.
    pub n_max: Option<usize>,
    /// Corrupt one side of each comparison so the suite must fail.
    pub inject_fault: bool,
}

impl VerifyConfig {
    fn budget(&self, suite: Suite) -> Result<usize> {
        let n = self.n_max.unwrap_or(suite.default_n_max());
        if n > suite.max_n_max() {
            return Err(Error::BudgetExceeded {
                what: "n_max",
                requested: n as u64,
                limit: suite.max_n_max() as u64,
            });
        }
        Ok(n)
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n_max: usize,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub checks: usize,
    /// Per-cell summaries (element counts and the like).
    pub details: Vec<String>,
    pub counterexample: Option<String>,
}

struct Run {
    checks: usize,
    details: Vec<String>,
}

type Outcome = core::result::Result<Run, String>;

/// Runs one suite. Budget violations are errors; disagreements are failed
/// reports.
pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<SuiteReport> {
    let n_max = config.budget(suite)?;
    let fault = config.inject_fault;
    let outcome = match suite {
        Suite::OracleGf => oracle_gf(n_max, fault)?,
        Suite::Specialization => specialization(n_max, fault)?,
        Suite::Carlitz => carlitz(n_max, fault)?,
        Suite::ClosedForms => closed_forms(n_max, fault)?,
        Suite::Theorem2Recurrence => recurrence(n_max, fault)?,
        Suite::BijectionTheorem2 => bijection_theorem2(n_max, fault),
        Suite::BijectionPhi => bijection_phi(n_max, fault),
        Suite::BijectionProp2 => bijection_prop2(n_max, fault),
        Suite::Asymptotics => asymptotics(n_max, fault)?,
    };
    Ok(match outcome {
        Ok(run) => SuiteReport {
            suite,
            n_max,
            passed: true,
            checks: run.checks,
            details: run.details,
            counterexample: None,
        },
        Err(counterexample) => SuiteReport {
            suite,
            n_max,
            passed: false,
            checks: 0,
            details: Vec::new(),
            counterexample: Some(counterexample),
        },
    })
}

/// Runs every suite in order.
pub fn run_all(config: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    Suite::ALL.iter().map(|&s| run_suite(s, config)).collect()
}

fn corrupt(table: &mut CountTable) {
    let n = table.n_max();
    if let Some(cell) = table.get_mut(n, 1, 0) {
        *cell += 1u32;
    }
}

fn compare_tables(expected: &CountTable, actual: &CountTable, label: &str) -> core::result::Result<usize, String> {
    let mut checks = 0;
    for ((n, d, a, want), (_, _, _, got)) in expected.cells().zip(actual.cells()) {
        checks += 1;
        if want != got {
            return Err(alloc::format!(
                "{label}: c({n},{d},{a}) is {want} by enumeration but {got} from the series"
            ));
        }
    }
    Ok(checks)
}

fn oracle_gf(n_max: usize, fault: bool) -> Result<Outcome> {
    let mut run = Run { checks: 0, details: Vec::new() };
    for m in 1..=5u32 {
        for r in 0..m {
            let params = SuccessionParams::new(m, r)?;
            let mut oracle = brute_force_table(n_max, params)?;
            if fault && m == 2 && r == 0 {
                corrupt(&mut oracle);
            }
            let series = CountTable::from_series(&gf_general(params, n_max)?, params)?;
            match compare_tables(&oracle, &series, &alloc::format!("m={m} r={r}")) {
                Ok(k) => run.checks += k,
                Err(e) => return Ok(Err(e)),
            }
            run.details.push(alloc::format!("m={m} r={r}: {n_max} sizes agree"));
        }
    }
    Ok(Ok(run))
}

fn specialization(n_max: usize, fault: bool) -> Result<Outcome> {
    let mut run = Run { checks: 0, details: Vec::new() };
    let one = BigInt::one();
    for m in 1..=6u32 {
        let general = gf_general(SuccessionParams::new(m, 0)?, n_max)?;
        let mut congruence = gf_congruence(m, n_max)?;
        if fault && m == 2 {
            congruence = &congruence + &crate::SeriesXYQ::monomial(n_max, crate::Poly2::y(), n_max);
        }
        run.checks += 1;
        if general != congruence {
            return Ok(Err(alloc::format!("m={m}: general and congruence forms differ")));
        }
        for r in 0..m {
            let params = SuccessionParams::new(m, r)?;
            run.checks += 1;
            if gf_general(params, n_max.min(10))? != gf_general_explicit(params, n_max.min(10))? {
                return Ok(Err(alloc::format!("m={m} r={r}: solved and explicit forms differ")));
            }
        }
        // q = 1 forgets successions: 2^(n-1) compositions of n >= 1.
        let total = congruence.evaluate_yq(&one, &one);
        for (n, value) in total.iter().enumerate().skip(1) {
            run.checks += 1;
            if *value != BigInt::from(2).pow(n as u32 - 1) {
                return Ok(Err(alloc::format!("m={m}: {value} compositions of {n} at q=1")));
            }
        }
    }
    run.checks += 1;
    if gf_congruence(2, n_max)? != gf_parity(n_max)? {
        return Ok(Err("parity form differs from the m=2 congruence form".into()));
    }
    run.details.push(alloc::format!("order {n_max}: r=0, explicit, q=1 and parity specializations agree"));
    Ok(Ok(run))
}

fn carlitz(n_max: usize, fault: bool) -> Result<Outcome> {
    let mut run = Run { checks: 0, details: Vec::new() };
    let order = n_max.max(30).min(40);
    let limit = gf_carlitz(CarlitzForm::Limit, order)?;
    let alternating = gf_carlitz(CarlitzForm::AlternatingSum, order)?;
    run.checks += 1;
    if limit != alternating {
        return Ok(Err(alloc::format!("the two Carlitz forms differ below order {order}")));
    }
    let counts = limit.evaluate_yq(&BigInt::one(), &BigInt::one());
    for n in 0..=n_max {
        let mut exact = BigInt::from(if n == 0 { BigUint::one() } else { carlitz_count(n)? });
        if fault && n == n_max {
            exact += 1;
        }
        run.checks += 1;
        if counts[n] != exact {
            return Ok(Err(alloc::format!(
                "n={n}: {exact} Carlitz compositions by enumeration, {} from the series",
                counts[n]
            )));
        }
    }
    run.details.push(alloc::format!("forms agree to order {order}; counts agree for n <= {n_max}"));
    Ok(Ok(run))
}

fn closed_forms(n_max: usize, fault: bool) -> Result<Outcome> {
    let mut run = Run { checks: 0, details: Vec::new() };
    let params = SuccessionParams::parity();
    let cache = ParitySequenceCache::new(2 * n_max + 1);
    let series = gf_parity(n_max)?.evaluate_yq(&BigInt::one(), &BigInt::from(0));
    for n in 0..=n_max {
        let mut by_parts = alloc::vec![BigUint::from(0u8); n + 1];
        let alternating = compositions_without_successions(n, &params);
        for pi in &alternating {
            by_parts[pi.len()] += 1u32;
        }
        if fault && n == n_max {
            by_parts[1] += 1u32;
        }
        for (d, count) in by_parts.iter().enumerate() {
            let half = (d / 2) as u64;
            let formula = if d % 2 == 0 {
                c_parity_alt_even(n as u64, half)
            } else {
                c_parity_alt_odd(n as u64, half)
            };
            run.checks += 1;
            if *count != formula {
                return Ok(Err(alloc::format!(
                    "n={n} parts={d}: {count} alternating compositions, closed form gives {formula}"
                )));
            }
        }
        let total = BigInt::from(alternating.len());
        run.checks += 2;
        if Some(&total.to_biguint().unwrap_or_default()) != cache.get(n) || series[n] != total {
            return Ok(Err(alloc::format!("n={n}: a(n) disagrees between enumeration, recurrence and series")));
        }
    }
    for k in 0..=n_max as u64 {
        run.checks += 2;
        if Some(&a_even_binomial(k)) != cache.get(2 * k as usize) {
            return Ok(Err(alloc::format!("even binomial sum differs from a({})", 2 * k)));
        }
        if Some(&a_odd_binomial(k)) != cache.get(2 * k as usize + 1) {
            return Ok(Err(alloc::format!("odd binomial sum differs from a({})", 2 * k + 1)));
        }
    }
    run.details.push(alloc::format!(
        "alternating counts by parts agree for n <= {n_max}; binomial sums agree up to a({})",
        2 * n_max + 1
    ));
    Ok(Ok(run))
}

fn recurrence(n_max: usize, fault: bool) -> Result<Outcome> {
    let mut run = Run { checks: 0, details: Vec::new() };
    let mut table = brute_force_table(n_max, SuccessionParams::parity())?;
    if fault && n_max >= 6 {
        if let Some(cell) = table.get_mut(6, 3, 1) {
            *cell += 1u32;
        }
    }
    for n in 4..=n_max {
        for d in 3..=n {
            for a in 0..d {
                run.checks += 1;
                if !theorem2_check(&table, n, d, a)? {
                    return Ok(Err(alloc::format!("recurrence fails at n={n} d={d} a={a}")));
                }
            }
        }
    }
    run.details.push(alloc::format!("recurrence holds for 4 <= n <= {n_max}, 3 <= d <= n"));
    Ok(Ok(run))
}

fn bijection_theorem2(n_max: usize, fault: bool) -> Outcome {
    let broken = |cell, elem: &_| {
        let (case, image) = theorem2_forward(cell, elem)?;
        Ok(match image {
            Image::SameParts(_) => (case, Image::SameParts(elem_composition(elem))),
            other => (case, other),
        })
    };
    let audits = if fault {
        audit_theorem2_with(n_max, &broken)
    } else {
        audit_theorem2_with(n_max, &theorem2_forward)
    }
    .map_err(|c| c.to_string())?;
    let details = audits
        .iter()
        .filter(|a| a.domain_size > 0)
        .map(|a| {
            alloc::format!(
                "{}: {} elements, cases i-v {:?}",
                a.cell,
                a.domain_size,
                a.per_case
            )
        })
        .collect();
    Ok(Run {
        checks: audits.iter().map(|a| a.domain_size + a.codomain_size).sum(),
        details,
    })
}

fn elem_composition(elem: &crate::bijections::theorem2::Domain) -> Composition {
    elem.composition().clone()
}

fn bijection_phi(n_max: usize, fault: bool) -> Outcome {
    let broken = |elem: &_| {
        let mut parts = phi(elem).into_parts();
        parts.reverse();
        Composition::new(parts).unwrap_or_default()
    };
    let audits = if fault { audit_phi_with(n_max, &broken) } else { audit_phi_with(n_max, &phi) }
        .map_err(|c: Counterexample| c.to_string())?;
    Ok(Run {
        checks: audits.iter().map(|a| a.colored).sum(),
        details: audits
            .iter()
            .map(|a| alloc::format!("n={}: {} elements", a.n, a.colored))
            .collect(),
    })
}

fn bijection_prop2(n_max: usize, fault: bool) -> Outcome {
    let broken = |n, elem: &_| {
        let (case, image) = prop2_forward(n, elem)?;
        Ok(if case == Prop2Case::SGrow { (case, elem.clone()) } else { (case, image) })
    };
    let audits = if fault {
        audit_prop2_with(n_max, &broken)
    } else {
        audit_prop2_with(n_max, &prop2_forward)
    }
    .map_err(|c| c.to_string())?;
    Ok(Run {
        checks: audits.iter().map(|a| a.domain_size).sum(),
        details: audits
            .iter()
            .map(|a| {
                alloc::format!(
                    "n={}: {} elements, |R'(n)| = {}, cases {:?}",
                    a.n,
                    a.domain_size,
                    a.distinguished,
                    a.per_case
                )
            })
            .collect(),
    })
}

fn asymptotics(n_max: usize, fault: bool) -> Result<Outcome> {
    let tol = crate::asymptotics::DEFAULT_TOLERANCE;
    let mut run = Run { checks: 0, details: Vec::new() };
    let mut prev = find_rho(2, tol)?;
    if fault {
        prev *= 0.8;
    }
    for m in 3..=40 {
        let rho = find_rho(m, tol)?;
        run.checks += 1;
        if !(0.5..=prev).contains(&rho) {
            return Ok(Err(alloc::format!("rho_{m} = {rho} is not in [0.5, rho_{}]", m - 1)));
        }
        prev = rho;
    }
    let carlitz = find_rho_carlitz(tol, CARLITZ_TRUNCATION)?;
    run.checks += 1;
    if carlitz > prev {
        return Ok(Err(alloc::format!("Carlitz root {carlitz} exceeds rho_40 = {prev}")));
    }
    // The 1% agreement is only claimed from n = 25 on.
    let n = n_max.max(25);
    for m in 2..=5 {
        let estimate = AsymptoticEstimate::new(m, tol)?;
        let cmp = compare_with_exact(&estimate, n)?;
        run.checks += 1;
        if cmp.relative_error >= 0.01 {
            return Ok(Err(alloc::format!(
                "m={m} n={n}: estimate {} vs exact {} (relative error {})",
                cmp.estimate,
                cmp.exact,
                cmp.relative_error
            )));
        }
        run.details.push(alloc::format!(
            "m={m}: rho={:.15} relative error at n={n} is {:.3e}",
            estimate.rho,
            cmp.relative_error
        ));
    }
    Ok(Ok(run))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_budgets_pass_and_faults_fail() {
        let small = |suite: Suite| match suite {
            Suite::ClosedForms => 16,
            Suite::Asymptotics => 25,
            _ => 9,
        };
        for suite in Suite::ALL {
            let ok = VerifyConfig { n_max: Some(small(suite)), inject_fault: false };
            let report = run_suite(suite, &ok).unwrap();
            assert!(report.passed, "{suite}: {:?}", report.counterexample);
            assert!(report.checks > 0);
            let bad = VerifyConfig { inject_fault: true, ..ok };
            let report = run_suite(suite, &bad).unwrap();
            assert!(!report.passed, "{suite} missed the injected fault");
            assert!(report.counterexample.is_some());
        }
    }

    #[test]
    fn oversized_budget_rejected() {
        let config = VerifyConfig { n_max: Some(99), inject_fault: false };
        assert!(matches!(
            run_suite(Suite::BijectionTheorem2, &config),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}

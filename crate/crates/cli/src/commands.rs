//! Command implementations. Each returns the text to print and the exit
//! code; hard errors come back as [`CliError`].

use std::fmt::Write as _;

use congruence_core::asymptotics::{
    circle_scan, circle_scan_with_bound, compare_with_exact, diagonal_check, find_rho_carlitz,
    positive_root_of_sk, tail_bound, AsymptoticEstimate, CARLITZ_TRUNCATION,
};
use congruence_core::composition::{
    brute_force_table, carlitz_count, compositions_without_successions,
};
use congruence_core::gf::{gf_carlitz, gf_general, CarlitzForm};
use congruence_core::verify::{run_all, run_suite, Suite, SuiteReport, VerifyConfig};
use congruence_core::{CountTable, Error, SuccessionParams};
use num_bigint::BigInt;
use serde::Serialize;

use crate::args::{AsymptArgs, CountArgs, DiagonalArgs, ScanArgs, SeriesArgs, Source, VerifyArgs};
use crate::error::{CliError, EXIT_VERIFY};
use crate::format::{round15, sig15, to_csv, to_json, Format};
use crate::report::{
    CarlitzReport, ComparisonReport, CountReport, CountRow, DiagonalReport, EstimateReport,
    EstimateRow, ScanReport, SeriesEntry, SeriesReport, SuiteDetail, SuiteSummary, TotalRow,
    VerifyReport,
};
use crate::trace;

/// Largest truncation order the generating-function paths will expand to.
pub const SERIES_ORDER_LIMIT: usize = 60;
/// Largest size for the depth-first search of succession-free compositions.
pub const ALTERNATING_ORACLE_LIMIT: usize = 30;
/// Largest size a bijection trace may cover.
pub const TRACE_LIMIT: usize = 14;
/// Trace size when `--n-max` is not given.
pub const TRACE_DEFAULT: usize = 10;

/// Text to print and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

fn budget(what: &'static str, requested: usize, limit: usize) -> Result<(), CliError> {
    if requested > limit {
        return Err(Error::BudgetExceeded { what, requested: requested as u64, limit: limit as u64 }.into());
    }
    Ok(())
}

fn source_name(source: Source) -> &'static str {
    match source {
        Source::Oracle => "oracle",
        Source::Gf => "gf",
        Source::Both => "both",
    }
}

fn render<T: Serialize>(format: Format, report: &T, rows: &[impl Serialize], text: impl FnOnce() -> String) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(text()),
        Format::Json => to_json(report),
        Format::Csv => to_csv(rows),
    }
}

/// Picks the oracle or generating-function value, or both and insists they
/// agree.
fn reconcile<T: PartialEq + std::fmt::Display>(
    source: Source,
    label: &str,
    oracle: impl FnOnce() -> Result<T, CliError>,
    gf: impl FnOnce() -> Result<T, CliError>,
) -> Result<T, CliError> {
    match source {
        Source::Oracle => oracle(),
        Source::Gf => gf(),
        Source::Both => {
            let (o, g) = (oracle()?, gf()?);
            if o != g {
                return Err(CliError::verify(format!("{label}: enumeration gives {o}, generating function gives {g}")));
            }
            Ok(o)
        }
    }
}

fn size_range(args: &CountArgs) -> std::ops::RangeInclusive<usize> {
    match (args.n, args.n_max) {
        (Some(n), _) => n..=n,
        (None, Some(n_max)) => 0..=n_max,
        (None, None) => 0..=0,
    }
}

pub fn count(args: &CountArgs) -> Result<Outcome, CliError> {
    let params = SuccessionParams::new(args.modulus.m, args.modulus.r)?;
    let sizes = size_range(args);
    let top = *sizes.end();
    if args.source != Source::Oracle {
        budget("N", top, SERIES_ORDER_LIMIT)?;
    }
    if args.alternating || args.carlitz {
        return count_totals(args, params, sizes);
    }
    let oracle = || -> Result<CountTable, CliError> { Ok(brute_force_table(top, params)?) };
    let from_gf = || -> Result<CountTable, CliError> {
        Ok(CountTable::from_series(&gf_general(params, top)?, params)?)
    };
    let table = match args.source {
        Source::Oracle => oracle()?,
        Source::Gf => from_gf()?,
        Source::Both => {
            let (o, g) = (oracle()?, from_gf()?);
            if let Some((n, d, a, v)) = o.cells().find(|&(n, d, a, v)| g.get(n as i64, d as i64, a as i64) != *v) {
                let w = g.get(n as i64, d as i64, a as i64);
                return Err(CliError::verify(format!(
                    "c({n},{d},{a}): enumeration gives {v}, generating function gives {w}"
                )));
            }
            o
        }
    };
    let mut rows = Vec::new();
    for n in sizes {
        let parts = if n == 0 { 0..=0 } else { 1..=n };
        for d in parts.filter(|d| args.d.is_none_or(|want| want == *d)) {
            for a in (0..d.max(1)).filter(|a| args.a.is_none_or(|want| want == *a)) {
                let count = table.get(n as i64, d as i64, a as i64).to_string();
                rows.push(CountRow { n, d, a, count });
            }
        }
    }
    let report = CountReport { m: params.m(), r: params.r(), source: source_name(args.source).into(), rows };
    let text = || {
        report.rows.iter().fold(String::new(), |mut out, row| {
            let _ = writeln!(out, "c({},{},{}) = {}", row.n, row.d, row.a, row.count);
            out
        })
    };
    Ok(Outcome::ok(render(args.format, &report, &report.rows, text)?))
}

fn count_totals(
    args: &CountArgs,
    params: SuccessionParams,
    sizes: std::ops::RangeInclusive<usize>,
) -> Result<Outcome, CliError> {
    let top = *sizes.end();
    let (one, zero) = (BigInt::from(1), BigInt::from(0));
    let series = || -> Result<Vec<BigInt>, CliError> {
        let s = if args.carlitz { gf_carlitz(CarlitzForm::Limit, top)? } else { gf_general(params, top)? };
        Ok(s.evaluate_yq(&one, &zero))
    };
    let gf_values = match args.source {
        Source::Oracle => None,
        _ => Some(series()?),
    };
    let (symbol, mut rows) = (if args.carlitz { "carlitz" } else { "a" }, Vec::new());
    for n in sizes {
        let label = format!("{symbol}({n})");
        let oracle = || -> Result<BigInt, CliError> {
            if args.carlitz {
                Ok(BigInt::from(carlitz_count(n)?))
            } else {
                budget("n", n, ALTERNATING_ORACLE_LIMIT)?;
                Ok(BigInt::from(compositions_without_successions(n, &params).len()))
            }
        };
        let gf = || Ok(gf_values.as_ref().map(|v| v[n].clone()).unwrap_or_default());
        let value = reconcile(args.source, &label, oracle, gf)?;
        rows.push(TotalRow { n, count: value.to_string() });
    }
    let report = CountReport { m: params.m(), r: params.r(), source: source_name(args.source).into(), rows };
    let text = || {
        report.rows.iter().fold(String::new(), |mut out, row| {
            let _ = writeln!(out, "{symbol}({}) = {}", row.n, row.count);
            out
        })
    };
    Ok(Outcome::ok(render(args.format, &report, &report.rows, text)?))
}

pub fn series(args: &SeriesArgs) -> Result<Outcome, CliError> {
    let params = SuccessionParams::new(args.modulus.m, args.modulus.r)?;
    budget("N", args.order, SERIES_ORDER_LIMIT)?;
    let series = gf_general(params, args.order)?;
    let mut entries = Vec::new();
    for (n, poly) in series.coeffs().iter().enumerate() {
        let mut terms: Vec<_> = poly.terms().filter(|(_, c)| **c != BigInt::from(0)).collect();
        terms.sort_by_key(|(key, _)| *key);
        for ((d, a), c) in terms {
            entries.push(SeriesEntry { n, d, a, coefficient: c.to_string() });
        }
    }
    let report = SeriesReport { m: params.m(), r: params.r(), truncation_order: args.order, entries };
    let text = || {
        report.entries.iter().fold(String::new(), |mut out, e| {
            let _ = writeln!(out, "[x^{} y^{} q^{}] = {}", e.n, e.d, e.a, e.coefficient);
            out
        })
    };
    Ok(Outcome::ok(render(args.format, &report, &report.entries, text)?))
}

fn summary(report: &SuiteReport) -> SuiteSummary {
    SuiteSummary {
        suite: report.suite.name().into(),
        n_max: report.n_max,
        passed: report.passed,
        checks: report.checks,
        counterexample: report.counterexample.clone(),
    }
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    if let Some(path) = &args.check_trace {
        let text = std::fs::read_to_string(path)?;
        let checked = trace::check(&text)?;
        return Ok(Outcome::ok(format!(
            "trace ok: {} sections, {} elements\n",
            checked.sections, checked.lines
        )));
    }
    let config = VerifyConfig { n_max: args.n_max, inject_fault: args.inject_fault };
    let reports = match &args.suite {
        Some(name) => vec![run_suite(name.parse::<Suite>()?, &config)?],
        None => run_all(&config)?,
    };
    if let Some(path) = &args.trace {
        let n_max = args.n_max.unwrap_or(TRACE_DEFAULT);
        budget("trace n_max", n_max, TRACE_LIMIT)?;
        std::fs::write(path, trace::render(n_max)?)?;
    }
    let passed = reports.iter().all(|r| r.passed);
    let suites: Vec<SuiteDetail> = reports
        .iter()
        .map(|r| SuiteDetail { summary: summary(r), details: r.details.clone() })
        .collect();
    let rows: Vec<SuiteSummary> = suites.iter().map(|s| s.summary.clone()).collect();
    let report = VerifyReport { passed, suites };
    let text = || {
        let mut out = String::new();
        for suite in &report.suites {
            let s = &suite.summary;
            match &s.counterexample {
                None => {
                    let _ = writeln!(out, "PASS {} (n_max = {}, {} checks)", s.suite, s.n_max, s.checks);
                    for line in &suite.details {
                        let _ = writeln!(out, "  {line}");
                    }
                }
                Some(cx) => {
                    let _ = writeln!(out, "FAIL {} (n_max = {}): {cx}", s.suite, s.n_max);
                }
            }
        }
        let _ = writeln!(out, "{}", if passed { "all suites pass" } else { "verification failed" });
        out
    };
    let stdout = render(args.format, &report, &rows, text)?;
    Ok(Outcome { stdout, code: if passed { 0 } else { EXIT_VERIFY } })
}

fn key_values(pairs: &[(&str, String)]) -> String {
    pairs.iter().fold(String::new(), |mut out, (k, v)| {
        let _ = writeln!(out, "{k} = {v}");
        out
    })
}

pub fn asympt(args: &AsymptArgs) -> Result<Outcome, CliError> {
    if args.carlitz {
        let rho = find_rho_carlitz(args.tol, CARLITZ_TRUNCATION)?;
        let report = CarlitzReport {
            truncation: CARLITZ_TRUNCATION,
            rho: round15(rho),
            growth_rate: round15(1.0 / rho),
            tolerance: args.tol,
        };
        let text = || {
            key_values(&[
                ("truncation", report.truncation.to_string()),
                ("rho", sig15(rho)),
                ("growth_rate", sig15(1.0 / rho)),
                ("tolerance", sig15(args.tol)),
            ])
        };
        return Ok(Outcome::ok(render(args.format, &report, std::slice::from_ref(&report), text)?));
    }
    let estimate = AsymptoticEstimate::new(args.m, args.tol)?;
    let comparison = match args.compare {
        Some(n) => {
            budget("compare n", n, SERIES_ORDER_LIMIT)?;
            Some(compare_with_exact(&estimate, n)?)
        }
        None => None,
    };
    let report = EstimateReport {
        m: estimate.m,
        rho: round15(estimate.rho),
        amplitude: round15(estimate.amplitude),
        growth_rate: round15(estimate.growth_rate),
        tolerance: estimate.tolerance,
        comparison: comparison.as_ref().map(|c| ComparisonReport {
            n: c.n,
            exact: c.exact.to_string(),
            estimate: round15(c.estimate),
            relative_error: round15(c.relative_error),
        }),
    };
    let row = EstimateRow {
        m: report.m,
        rho: report.rho,
        amplitude: report.amplitude,
        growth_rate: report.growth_rate,
        tolerance: report.tolerance,
        compare_n: report.comparison.as_ref().map(|c| c.n),
        exact: report.comparison.as_ref().map(|c| c.exact.clone()),
        estimate: report.comparison.as_ref().map(|c| c.estimate),
        relative_error: report.comparison.as_ref().map(|c| c.relative_error),
    };
    let text = || {
        let mut pairs = vec![
            ("m", estimate.m.to_string()),
            ("rho", sig15(estimate.rho)),
            ("amplitude", sig15(estimate.amplitude)),
            ("growth_rate", sig15(estimate.growth_rate)),
            ("tolerance", sig15(estimate.tolerance)),
        ];
        if let Some(c) = &comparison {
            pairs.push(("n", c.n.to_string()));
            pairs.push(("exact", c.exact.to_string()));
            pairs.push(("estimate", sig15(c.estimate)));
            pairs.push(("relative_error", sig15(c.relative_error)));
        }
        key_values(&pairs)
    };
    Ok(Outcome::ok(render(args.format, &report, &[row], text)?))
}

pub fn scan(args: &ScanArgs) -> Result<Outcome, CliError> {
    let scan = match args.bound {
        Some(bound) => circle_scan_with_bound(args.k, args.c, args.points, bound)?,
        None => circle_scan(args.k, args.c, args.points)?,
    };
    let start = u32::try_from(args.k + 1).map_err(|_| CliError::usage("k is too large"))?;
    let tail = tail_bound(args.c, start)?;
    let root = if args.k >= 3 { Some(positive_root_of_sk(args.k)?) } else { None };
    let report = ScanReport {
        k: scan.k,
        c: scan.c,
        num_points: scan.num_points,
        sample_min: round15(scan.sample_min),
        derivative_bound: round15(scan.derivative_bound),
        spacing_bound: round15(scan.spacing_bound),
        certified_lower_bound: round15(scan.certified_lower_bound),
        tail_bound: round15(tail),
        positive_root: root.map(round15),
    };
    let text = || {
        let mut pairs = vec![
            ("k", scan.k.to_string()),
            ("c", sig15(scan.c)),
            ("num_points", scan.num_points.to_string()),
            ("sample_min", sig15(scan.sample_min)),
            ("derivative_bound", sig15(scan.derivative_bound)),
            ("spacing_bound", sig15(scan.spacing_bound)),
            ("certified_lower_bound", sig15(scan.certified_lower_bound)),
            ("tail_bound", sig15(tail)),
        ];
        if let Some(root) = root {
            pairs.push(("positive_root", sig15(root)));
        }
        key_values(&pairs)
    };
    Ok(Outcome::ok(render(args.format, &report, std::slice::from_ref(&report), text)?))
}

pub fn diagonal(args: &DiagonalArgs) -> Result<Outcome, CliError> {
    let check = diagonal_check(args.t)?;
    let report = DiagonalReport {
        t: check.t,
        exact: check.exact.to_string(),
        formula: round15(check.formula),
        relative_error: round15(check.relative_error),
    };
    let text = || {
        key_values(&[
            ("t", check.t.to_string()),
            ("exact", report.exact.clone()),
            ("formula", sig15(check.formula)),
            ("relative_error", sig15(check.relative_error)),
        ])
    };
    Ok(Outcome::ok(render(args.format, &report, std::slice::from_ref(&report), text)?))
}

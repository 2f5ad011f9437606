//! Acceptance criteria, one line each.
//!
//! Run with `cargo test -p congruence-core --release --test acceptance`.
//! Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use congruence_core::asymptotics::{
    circle_scan, compare_with_exact, diagonal_check, find_rho, find_rho_carlitz, positive_root_of_sk,
    tail_bound, AsymptoticEstimate, CARLITZ_TRUNCATION, DEFAULT_TOLERANCE,
};
use congruence_core::bijections::colored::{audit_phi, audit_prop2};
use congruence_core::bijections::theorem2::audit_theorem2;
use congruence_core::closed_forms::{
    a_even_binomial, a_odd_binomial, c_parity_alt_even, c_parity_alt_odd, theorem2_check,
    ParitySequenceCache,
};
use congruence_core::composition::{
    brute_force_table, carlitz_count, compositions_without_successions, CountTable, SuccessionParams,
};
use congruence_core::gf::{gf_carlitz, gf_general, CarlitzForm};
use num_bigint::{BigInt, BigUint};

type Check = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn oracle_equivalence() -> Check {
    let mut cells = 0;
    for m in 1..=5 {
        for r in 0..m {
            let params = SuccessionParams::new(m, r).map_err(|e| e.to_string())?;
            let oracle = brute_force_table(14, params).map_err(|e| e.to_string())?;
            let series = gf_general(params, 14).map_err(|e| e.to_string())?;
            let table = CountTable::from_series(&series, params).map_err(|e| e.to_string())?;
            if table != oracle {
                return Err(format!("m={m} r={r}: series and enumeration differ"));
            }
            cells += oracle.cells().count();
        }
    }
    Ok(format!("15 (m, r) pairs, {cells} cells equal"))
}

fn carlitz_limit() -> Check {
    let limit = gf_carlitz(CarlitzForm::Limit, 30).map_err(|e| e.to_string())?;
    let alternating = gf_carlitz(CarlitzForm::AlternatingSum, 30).map_err(|e| e.to_string())?;
    if limit != alternating {
        return Err("the two forms differ below order 30".into());
    }
    let counts = limit.evaluate_yq(&BigInt::from(1), &BigInt::from(0));
    for n in 1..=14 {
        let exact = BigInt::from(carlitz_count(n).map_err(|e| e.to_string())?);
        if counts[n] != exact {
            return Err(format!("n={n}: series {} vs enumeration {exact}", counts[n]));
        }
    }
    Ok("forms agree to order 30; counts agree for n <= 14".into())
}

fn closed_forms() -> Check {
    let params = SuccessionParams::parity();
    for n in 0..=30usize {
        let mut by_parts = vec![0u64; n + 1];
        for pi in compositions_without_successions(n, &params) {
            by_parts[pi.len()] += 1;
        }
        for (d, count) in by_parts.iter().enumerate() {
            let half = (d / 2) as u64;
            let formula = if d % 2 == 0 {
                c_parity_alt_even(n as u64, half)
            } else {
                c_parity_alt_odd(n as u64, half)
            };
            if formula != BigUint::from(*count) {
                return Err(format!("n={n} d={d}: closed form {formula}, enumeration {count}"));
            }
        }
    }
    let cache = ParitySequenceCache::new(81);
    for k in 0..=40u64 {
        if Some(&a_even_binomial(k)) != cache.get(2 * k as usize)
            || Some(&a_odd_binomial(k)) != cache.get(2 * k as usize + 1)
        {
            return Err(format!("binomial sums differ from a(n) at k={k}"));
        }
    }
    Ok("closed forms match enumeration for n <= 30; binomial sums match for n <= 40".into())
}

fn recurrence() -> Check {
    let table = brute_force_table(16, SuccessionParams::parity()).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for n in 4..=16 {
        for d in 3..=n {
            for a in 0..d {
                if !theorem2_check(&table, n, d, a).map_err(|e| e.to_string())? {
                    return Err(format!("fails at n={n} d={d} a={a}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cells"))
}

fn bijections() -> Check {
    let t2 = audit_theorem2(14).map_err(|c| c.to_string())?;
    let phi = audit_phi(16).map_err(|c| c.to_string())?;
    let p2 = audit_prop2(14).map_err(|c| c.to_string())?;
    let t2_elems: usize = t2.iter().map(|a| a.domain_size).sum();
    let phi_elems: usize = phi.iter().map(|a| a.colored).sum();
    let p2_elems: usize = p2.iter().map(|a| a.domain_size).sum();
    Ok(format!(
        "theorem2 {} cells / {t2_elems} elements, phi {phi_elems} elements, prop2 {p2_elems} elements",
        t2.len()
    ))
}

fn dominant_root_constants() -> Check {
    let rho = find_rho(2, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    let est = AsymptoticEstimate::new(2, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    let cmp = compare_with_exact(&est, 20).map_err(|e| e.to_string())?;
    let ok = (rho - 0.6710436067037893).abs() < 1e-9
        && (est.amplitude - 0.6436).abs() < 5e-4
        && (est.growth_rate - 1.4902).abs() < 5e-4
        && cmp.relative_error < 0.002;
    ensure(
        ok,
        format!(
            "rho={rho:.16} amplitude={:.9} growth={:.9} error(n=20)={:.4}%",
            est.amplitude,
            est.growth_rate,
            100.0 * cmp.relative_error
        ),
    )
}

fn circle_certificate() -> Check {
    let scan = circle_scan(7, 0.7, 1000).map_err(|e| e.to_string())?;
    let tail = tail_bound(0.7, 8).map_err(|e| e.to_string())?;
    let root = positive_root_of_sk(7).map_err(|e| e.to_string())?;
    let parts = [
        ("sample_min > 0.51", scan.sample_min > 0.51),
        ("certified >= 0.43", scan.certified_lower_bound >= 0.43),
        ("tail < 0.204", tail < 0.204),
        ("root within 1e-3 of 0.572", (root - 0.572).abs() <= 1e-3),
    ];
    let failed: Vec<_> = parts.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
    ensure(
        failed.is_empty(),
        format!(
            "sample_min={:.5} certified={:.5} tail={:.6} root={:.6}{}",
            scan.sample_min,
            scan.certified_lower_bound,
            tail,
            root,
            if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join(", ")) }
        ),
    )
}

fn diagonal() -> Check {
    let check = diagonal_check(8).map_err(|e| e.to_string())?;
    let exact_ok = check.exact == BigInt::from(54_865_800);
    let formula_ok = check.relative_error <= 0.015;
    ensure(
        exact_ok && formula_ok,
        format!(
            "exact={} formula={:.1} relative_error={:.4}%{}{}",
            check.exact,
            check.formula,
            100.0 * check.relative_error,
            if exact_ok { "" } else { "; exact count wrong" },
            if formula_ok { "" } else { "; formula error above 1.5%" }
        ),
    )
}

fn monotonicity() -> Check {
    let rho2 = find_rho(2, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    let mut prev = rho2;
    for m in 2..=41 {
        let rho = find_rho(m, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
        if m <= 40 && !(0.5 <= rho && rho <= rho2 && rho2 < 0.68) {
            return Err(format!("rho_{m} = {rho} out of bounds"));
        }
        if rho > prev {
            return Err(format!("rho_{m} = {rho} > rho_{} = {prev}", m - 1));
        }
        prev = rho;
    }
    let growth30 = 1.0 / find_rho(30, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    let carlitz = 1.0 / find_rho_carlitz(DEFAULT_TOLERANCE, CARLITZ_TRUNCATION).map_err(|e| e.to_string())?;
    ensure(
        (growth30 - 1.7502).abs() < 1e-3,
        format!("1/rho_30={growth30:.6} carlitz growth={carlitz:.6}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 9] = [
        ("oracle equivalence, m <= 5, n <= 14", 60, oracle_equivalence),
        ("Carlitz limit forms and counts", 10, carlitz_limit),
        ("alternating closed forms and binomial sums", 5, closed_forms),
        ("eight-term recurrence, 4 <= n <= 16", 30, recurrence),
        ("bijection audits", 60, bijections),
        ("dominant root, amplitude, growth, n=20 error", 1, dominant_root_constants),
        ("circle-scan certificate, tail bound, S_7 root", 5, circle_certificate),
        ("diagonal count and approximation at t=8", 60, diagonal),
        ("root bounds, monotonicity, m=30 growth", 5, monotonicity),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("{status} [{}] {name}: {detail} ({:.2} s)", i + 1, elapsed.as_secs_f64());
    }
    println!("{} of 9 criteria pass", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

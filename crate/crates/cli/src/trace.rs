//! Bijection traces: one `domain TAB case TAB image` line per element,
//! grouped under `# theorem2 n=.. d=.. a=..` and `# prop2 n=..` headers.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use congruence_core::bijections::colored::{enumerate_r, prop2_forward, prop2_trace, Prop2Case, RElement};
use congruence_core::bijections::theorem2::{
    domain_of, theorem2_forward, theorem2_trace, Case, Cell, Domain, Image, ParityBuckets,
};
use congruence_core::bijections::TraceLine;

use crate::error::CliError;

fn push_lines(out: &mut String, lines: &[TraceLine]) {
    for line in lines {
        let _ = writeln!(out, "{}\t{}\t{}", line.domain, line.case, line.image);
    }
}

/// Trace of every theorem2 cell with `4 ≤ n ≤ n_max` and every prop2 size
/// `5 ≤ n ≤ n_max`. Cells with an empty domain get a header only.
pub fn render(n_max: usize) -> Result<String, CliError> {
    let buckets = ParityBuckets::build(n_max)?;
    let mut out = String::new();
    for n in 4..=n_max {
        for d in 3..=n {
            for a in 0..d {
                let _ = writeln!(out, "# theorem2 n={n} d={d} a={a}");
                push_lines(&mut out, &theorem2_trace(&buckets, Cell::new(n, d, a)?)?);
            }
        }
    }
    for n in 5..=n_max {
        let _ = writeln!(out, "# prop2 n={n}");
        push_lines(&mut out, &prop2_trace(n)?);
    }
    Ok(out)
}

enum Section {
    Theorem2 { cell: Cell, seen: BTreeSet<Domain> },
    Prop2 { n: usize, seen: BTreeSet<RElement> },
}

/// Summary of a successful check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCheck {
    pub sections: usize,
    pub lines: usize,
}

fn parse_header(rest: &str, lineno: usize) -> Result<(String, Vec<usize>), CliError> {
    let mut words = rest.split_whitespace();
    let kind = words.next().unwrap_or_default().to_string();
    let values = words
        .map(|w| {
            w.split_once('=')
                .and_then(|(_, v)| v.parse().ok())
                .ok_or_else(|| CliError::usage(format!("line {lineno}: bad header field {w:?}")))
        })
        .collect::<Result<Vec<usize>, _>>()?;
    Ok((kind, values))
}

/// Re-derives every line of a trace. A wrong image or case, a duplicated
/// element, or a section that misses part of its domain is a verification
/// failure (exit 1); malformed text is a usage error.
pub fn check(text: &str) -> Result<TraceCheck, CliError> {
    let mut buckets: Option<(usize, ParityBuckets)> = None;
    let mut section: Option<Section> = None;
    let mut summary = TraceCheck { sections: 0, lines: 0 };
    let finish = |section: Option<Section>, buckets: &mut Option<(usize, ParityBuckets)>| -> Result<(), CliError> {
        match section {
            None => Ok(()),
            Some(Section::Theorem2 { cell, seen }) => {
                if buckets.as_ref().is_none_or(|(n, _)| *n < cell.n) {
                    *buckets = Some((cell.n, ParityBuckets::build(cell.n)?));
                }
                let all = buckets.as_ref().map(|(_, b)| domain_of(b, cell)).unwrap_or_default();
                if all.len() != seen.len() {
                    return Err(CliError::verify(format!(
                        "theorem2 {cell}: trace lists {} of {} domain elements",
                        seen.len(),
                        all.len()
                    )));
                }
                Ok(())
            }
            Some(Section::Prop2 { n, seen }) => {
                let total = enumerate_r(n - 2).len() + enumerate_r(n - 3).len();
                if total != seen.len() {
                    return Err(CliError::verify(format!(
                        "prop2 n={n}: trace lists {} of {total} domain elements",
                        seen.len()
                    )));
                }
                Ok(())
            }
        }
    };
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            finish(section.take(), &mut buckets)?;
            summary.sections += 1;
            section = Some(match parse_header(rest, lineno)? {
                (kind, v) if kind == "theorem2" && v.len() == 3 => Section::Theorem2 {
                    cell: Cell::new(v[0], v[1], v[2])?,
                    seen: BTreeSet::new(),
                },
                (kind, v) if kind == "prop2" && v.len() == 1 && v[0] >= 5 => {
                    Section::Prop2 { n: v[0], seen: BTreeSet::new() }
                }
                _ => return Err(CliError::usage(format!("line {lineno}: unknown section header"))),
            });
            continue;
        }
        let [domain, case, image] = line.split('\t').collect::<Vec<_>>()[..] else {
            return Err(CliError::usage(format!("line {lineno}: expected three tab-separated fields")));
        };
        let mismatch = |what: &str| CliError::verify(format!("line {lineno}: {what}: {line}"));
        match section.as_mut() {
            None => return Err(CliError::usage(format!("line {lineno}: element before any header"))),
            Some(Section::Theorem2 { cell, seen }) => {
                let elem: Domain = domain.parse()?;
                let (want_case, want_image) = theorem2_forward(*cell, &elem).map_err(|e| mismatch(&e.to_string()))?;
                if case.parse::<Case>()? != want_case || image.parse::<Image>()? != want_image {
                    return Err(mismatch(&format!("expected {want_case} and {want_image}")));
                }
                if !seen.insert(elem) {
                    return Err(mismatch("element listed twice"));
                }
            }
            Some(Section::Prop2 { n, seen }) => {
                let elem: RElement = domain.parse()?;
                let (want_case, want_image) = prop2_forward(*n, &elem).map_err(|e| mismatch(&e.to_string()))?;
                if case.parse::<Prop2Case>()? != want_case || image.parse::<RElement>()? != want_image {
                    return Err(mismatch(&format!("expected {want_case} and {want_image}")));
                }
                if !seen.insert(elem) {
                    return Err(mismatch("element listed twice"));
                }
            }
        }
        summary.lines += 1;
    }
    finish(section, &mut buckets)?;
    Ok(summary)
}

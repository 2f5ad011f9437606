//! Serializable report shapes. Counts are decimal strings; floats are
//! rounded to 15 significant digits.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: usize,
    pub d: usize,
    pub a: usize,
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalRow {
    pub n: usize,
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport<R> {
    pub m: u32,
    pub r: u32,
    pub source: String,
    pub rows: Vec<R>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub n: usize,
    pub d: usize,
    pub a: usize,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub m: u32,
    pub r: u32,
    pub truncation_order: usize,
    pub entries: Vec<SeriesEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub n_max: usize,
    pub passed: bool,
    pub checks: usize,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteDetail {
    #[serde(flatten)]
    pub summary: SuiteSummary,
    pub details: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub suites: Vec<SuiteDetail>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub n: usize,
    pub exact: String,
    pub estimate: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub m: u32,
    pub rho: f64,
    pub amplitude: f64,
    pub growth_rate: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonReport>,
}

/// Flat form of [`EstimateReport`] for CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRow {
    pub m: u32,
    pub rho: f64,
    pub amplitude: f64,
    pub growth_rate: f64,
    pub tolerance: f64,
    pub compare_n: Option<usize>,
    pub exact: Option<String>,
    pub estimate: Option<f64>,
    pub relative_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarlitzReport {
    pub truncation: usize,
    pub rho: f64,
    pub growth_rate: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub k: usize,
    pub c: f64,
    pub num_points: usize,
    pub sample_min: f64,
    pub derivative_bound: f64,
    pub spacing_bound: f64,
    pub certified_lower_bound: f64,
    /// Bound on the omitted terms `a > k` on the same circle.
    pub tail_bound: f64,
    /// Positive zero of the truncation, when it has one in (0, 1).
    pub positive_root: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalReport {
    pub t: usize,
    pub exact: String,
    pub formula: f64,
    pub relative_error: f64,
}

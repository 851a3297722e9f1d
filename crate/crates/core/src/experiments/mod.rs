//! Experiment drivers and their reports.
//!
//! Every driver returns an [`ExperimentReport`]: the inputs (graph digests and see-saw
//! parameters), analytic anchors, one row per case, named checks and a verdict. Reports
//! contain no timings, so equal inputs give byte-identical JSON.

mod lemmas;
mod selftest;
mod theorem6;
mod theorem8;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{ColouredMultigraph, GraphFile};
use crate::opr::seesaw::{SeesawParams, SeesawReport};

pub use lemmas::{lemma_suite, random_multigraph, LemmaOptions};
pub use selftest::{selftest_cycles, substitution_rows};
pub use theorem6::reproduce_theorem6;
pub use theorem8::{reproduce_theorem8, THEOREM8_DIMS, THEOREM8_GAP, THEOREM8_MIN_RESTARTS};

/// Tolerance for "value lies between α and ϑ" on every row.
pub const SANDWICH_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDigest {
    pub name: String,
    /// SHA-256 of the compact JSON graph file.
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportInputs {
    pub graphs: Vec<GraphDigest>,
    pub params: SeesawParams,
    pub seed: u64,
    /// Party dimensions of the first see-saw attempt, when they are the same for all rows.
    pub dims: Vec<usize>,
    pub n_list: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Anchor {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRow {
    pub case: String,
    pub n: usize,
    /// Colour letters, one per edge (cycle order on cycles, sorted edge order otherwise).
    pub word: String,
    pub digest: String,
    pub value: f64,
    /// Analytic or reference value this case is compared with.
    pub target: Option<f64>,
    /// `target − value`.
    pub gap: Option<f64>,
    /// Closed-form Lovász number of the shadow, when known.
    pub theta: Option<f64>,
    pub alpha: Option<usize>,
    pub t: Option<usize>,
    pub scenario: Option<String>,
    pub bell: Option<bool>,
    pub converged: bool,
    pub agreeing_restarts: usize,
    pub escalated: bool,
    pub dims: Vec<usize>,
    pub note: Option<String>,
}

impl CaseRow {
    pub fn new(case: impl Into<String>, n: usize, value: f64) -> Self {
        Self {
            case: case.into(),
            n,
            word: String::new(),
            digest: String::new(),
            value,
            target: None,
            gap: None,
            theta: None,
            alpha: None,
            t: None,
            scenario: None,
            bell: None,
            converged: true,
            agreeing_restarts: 0,
            escalated: false,
            dims: Vec::new(),
            note: None,
        }
    }

    pub(crate) fn with_graph(mut self, cm: &ColouredMultigraph, word: &[usize]) -> Self {
        self.word = word_string(word);
        self.digest = graph_digest(cm);
        self
    }

    pub(crate) fn with_target(mut self, target: f64) -> Self {
        self.target = Some(target);
        self.gap = Some(target - self.value);
        self
    }

    pub(crate) fn with_run(mut self, report: &SeesawReport, agreement_tol: f64) -> Self {
        self.converged = report.converged;
        self.agreeing_restarts = report.agreeing_restarts(agreement_tol);
        self.escalated = report.escalated;
        self.dims = report.dims.clone();
        self
    }

    /// `α − tol ≤ value ≤ ϑ + tol` for whichever bounds are known.
    pub fn within_sandwich(&self, tol: f64) -> bool {
        self.alpha.is_none_or(|a| self.value >= a as f64 - tol) && self.theta.is_none_or(|t| self.value <= t + tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub inputs: ReportInputs,
    pub anchors: Vec<Anchor>,
    pub rows: Vec<CaseRow>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    /// One-sentence reading of the verdict.
    pub statement: String,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Flat per-case table.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(CsvRow::from(r)).expect("rows serialise to CSV");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("CSV is UTF-8")
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    case: &'a str,
    n: usize,
    word: &'a str,
    value: f64,
    target: Option<f64>,
    gap: Option<f64>,
    theta: Option<f64>,
    alpha: Option<usize>,
    t: Option<usize>,
    scenario: Option<&'a str>,
    bell: Option<bool>,
    converged: bool,
    agreeing_restarts: usize,
    escalated: bool,
    dims: String,
    digest: &'a str,
}

impl<'a> From<&'a CaseRow> for CsvRow<'a> {
    fn from(r: &'a CaseRow) -> Self {
        Self {
            case: &r.case,
            n: r.n,
            word: &r.word,
            value: r.value,
            target: r.target,
            gap: r.gap,
            theta: r.theta,
            alpha: r.alpha,
            t: r.t,
            scenario: r.scenario.as_deref(),
            bell: r.bell,
            converged: r.converged,
            agreeing_restarts: r.agreeing_restarts,
            escalated: r.escalated,
            dims: r.dims.iter().map(usize::to_string).collect::<Vec<_>>().join("x"),
            digest: &r.digest,
        }
    }
}

/// SHA-256 of the compact JSON form of the multigraph.
pub fn graph_digest(cm: &ColouredMultigraph) -> String {
    let text = serde_json::to_string(&GraphFile::from(cm)).expect("graph files serialise");
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// `[0, 0, 1]` → `"AAB"`.
pub fn word_string(word: &[usize]) -> String {
    word.iter()
        .map(|&c| char::from_u32('A' as u32 + c as u32).unwrap_or('?'))
        .collect()
}

/// Pass when every check passes. Otherwise fail, unless some see-saw run did not converge,
/// in which case the numbers do not support a failure either.
pub(crate) fn verdict(checks: &[Check], all_converged: bool) -> Verdict {
    if checks.iter().all(|c| c.pass) {
        Verdict::Pass
    } else if all_converged {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    }
}

pub(crate) fn check_odd_range(n_list: &[usize], max: usize) -> Result<()> {
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("the list of cycle lengths is empty".into()));
    }
    for &n in n_list {
        if n < 5 || n % 2 == 0 || n > max {
            return Err(Error::InvalidArgument(format!("cycle length {n} must be odd and in 5..={max}")));
        }
    }
    Ok(())
}

pub(crate) fn coloured_params(params: &SeesawParams) -> SeesawParams {
    let mut p = *params;
    p.dimension_retry = true;
    p
}

//! Machine-readable report types shared by the CLI and the tests.
//! JSON is the primary format; CSV and tables are rendered from the same
//! data. Every top-level report carries `schema_version`.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::convergence::{
    rational_string, subsequence_limits, Alpha1Result, Classification, Verdict,
};
use crate::error::Result;
use crate::recurrence::{SequenceRun, Values};
use crate::roots::RootAnalysis;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeqRow {
    pub n: u64,
    /// `num/den` text in exact mode, absent in float mode.
    pub value_exact: Option<String>,
    pub value_float: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeqReport {
    pub schema_version: u32,
    pub set: Vec<u64>,
    pub mode: String,
    pub n_max: u64,
    pub rows: Vec<SeqRow>,
}

impl SeqReport {
    pub fn from_run(run: &SequenceRun) -> Self {
        let rows = match &run.values {
            Values::Exact(values) => values
                .iter()
                .enumerate()
                .map(|(n, v)| SeqRow {
                    n: n as u64,
                    value_exact: Some(rational_string(v)),
                    value_float: v.to_f64().unwrap(),
                })
                .collect(),
            Values::Float(values) => values
                .iter()
                .enumerate()
                .map(|(n, v)| SeqRow {
                    n: n as u64,
                    value_exact: None,
                    value_float: *v,
                })
                .collect(),
        };
        SeqReport {
            schema_version: SCHEMA_VERSION,
            set: run.set.elements().to_vec(),
            mode: match run.values {
                Values::Exact(_) => "exact".into(),
                Values::Float(_) => "float64".into(),
            },
            n_max: run.n_max(),
            rows,
        }
    }

    /// CSV dump with the fixed header `n,value_exact,value_float`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value_exact,value_float\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                row.n,
                row.value_exact.as_deref().unwrap_or(""),
                row.value_float
            ));
        }
        out
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerdictReport {
    Periodic {
        period: u64,
    },
    ConvergesToHalf,
    Oscillates {
        alpha1: String,
        even_limit: String,
        odd_limit: String,
    },
    ConditionalOscillation {
        alpha1: String,
        simple_roots_verified: bool,
    },
}

impl From<&Verdict> for VerdictReport {
    fn from(v: &Verdict) -> Self {
        match v {
            Verdict::Periodic { period } => VerdictReport::Periodic { period: *period },
            Verdict::ConvergesToHalf => VerdictReport::ConvergesToHalf,
            Verdict::Oscillates {
                alpha1,
                even_limit,
                odd_limit,
            } => VerdictReport::Oscillates {
                alpha1: rational_string(alpha1),
                even_limit: rational_string(even_limit),
                odd_limit: rational_string(odd_limit),
            },
            Verdict::ConditionalOscillation {
                alpha1,
                simple_roots_verified,
            } => VerdictReport::ConditionalOscillation {
                alpha1: rational_string(alpha1),
                simple_roots_verified: *simple_roots_verified,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSummary {
    pub max_modulus: f64,
    pub has_minus_one: bool,
    pub unit_root_count: usize,
    pub spectral_gap: f64,
    pub square_free: bool,
}

impl From<&RootAnalysis> for RootSummary {
    fn from(a: &RootAnalysis) -> Self {
        RootSummary {
            max_modulus: a.max_modulus,
            has_minus_one: a.has_minus_one,
            unit_root_count: a.unit_root_count,
            spectral_gap: a.spectral_gap,
            square_free: a.square_free,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub set: Vec<u64>,
    pub reduced_set: Vec<u64>,
    pub reduction_factor: u64,
    pub verdict: VerdictReport,
    pub even_limit: String,
    pub odd_limit: String,
    pub oscillates: bool,
    pub root_summary: RootSummary,
    pub roots: Vec<crate::roots::ComplexRoot>,
    /// Present for all-odd reduced sets.
    pub alpha1: Option<Alpha1Result>,
}

pub fn analyze_report(
    classification: &Classification,
    analysis: &RootAnalysis,
    alpha1: Option<Alpha1Result>,
) -> Result<AnalyzeReport> {
    let (even, odd, oscillates) = subsequence_limits(classification);
    Ok(AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        set: classification.input.elements().to_vec(),
        reduced_set: classification.reduced.elements().to_vec(),
        reduction_factor: classification.reduction_factor,
        verdict: (&classification.verdict).into(),
        even_limit: rational_string(&even),
        odd_limit: rational_string(&odd),
        oscillates,
        root_summary: analysis.into(),
        roots: analysis.roots.clone(),
        alpha1,
    })
}

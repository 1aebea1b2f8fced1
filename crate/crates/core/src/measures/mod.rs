//! Exact combinatorial complexity measures.

pub mod alternation;
pub mod block;
pub mod certificate;
pub mod decision_tree;
pub mod sensitivity;

use serde::Serialize;

pub use alternation::{
    alternation, alternation_decrease, alternation_decrease_lazy, circuit_negations, decrease,
    negation_complexity, AlternationReport, NegationComplexity,
};
pub use block::{block_sensitivity, block_sensitivity_at, max_disjoint_packing, BS_CAP};
pub use certificate::{certificate_complexity, certificate_complexity_at, C_CAP};
pub use decision_tree::{decision_tree_depth, DT_CAP};
pub use sensitivity::{influence, sensitivity, sensitivity_at, sensitivity_profile};

use crate::chains::Chain;
use crate::error::Result;
use crate::rational::{self, Rational};
use crate::table::TruthTable;

/// Per-input values of the pointwise measures, in index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointTables {
    pub s: Vec<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bs: Option<Vec<u8>>,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<u8>>,
}

/// Every combinatorial measure of one function. Measures whose solver cap is
/// below the arity are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasureReport {
    pub arity: usize,
    pub s: usize,
    pub bs: Option<usize>,
    #[serde(rename = "C")]
    pub c: Option<usize>,
    #[serde(rename = "I", serialize_with = "rational::serde_text::serialize")]
    pub influence: Rational,
    pub alt: usize,
    pub dc: usize,
    #[serde(rename = "DT")]
    pub dt: Option<usize>,
    pub negs: usize,
    pub negs_formula: usize,
    pub witness: Chain,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_point: Option<PointTables>,
}

pub fn measure_report(f: &TruthTable, per_point: bool) -> Result<MeasureReport> {
    let n = f.arity();
    let alt = alternation_decrease(f)?;
    let bs = (n <= BS_CAP).then(|| block_sensitivity(f)).transpose()?;
    let c = (n <= C_CAP)
        .then(|| certificate_complexity(f))
        .transpose()?;
    let dt = (n <= DT_CAP).then(|| decision_tree_depth(f)).transpose()?;
    let per_point = per_point.then(|| {
        let points = 0..f.len() as u64;
        PointTables {
            s: sensitivity_profile(f),
            bs: (n <= BS_CAP).then(|| {
                points
                    .clone()
                    .map(|x| block::block_sensitivity_index(f, x) as u8)
                    .collect()
            }),
            c: (n <= C_CAP).then(|| {
                points
                    .map(|x| certificate::certificate_index(f, x) as u8)
                    .collect()
            }),
        }
    });
    Ok(MeasureReport {
        arity: n,
        s: sensitivity(f),
        bs,
        c,
        influence: influence(f),
        alt: alt.alt,
        dc: alt.dc,
        dt,
        negs: circuit_negations(alt.dc),
        negs_formula: alt.dc,
        witness: alt.witness,
        per_point,
    })
}

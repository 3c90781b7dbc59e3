//! Witness engines: given a host `G` on `2n − 1` vertices, produce a fan
//! `F_m` in `G` or the pattern in `Ḡ`, following the structural argument
//! step by step and verifying the result before returning it.

mod anchors;
mod cycles;
mod place;
mod split;
mod tree;
mod unicyclic;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::matching::FanEmbedding;
use crate::oracle::{check_embedding, Embedding};
use crate::trees::TreeError;

pub use anchors::{build_anchor_sets, AnchorCase, AnchorSets};
pub use cycles::{cycle_witness, dirac_hamiltonian, CycleMethod, CyclePlan, DEFAULT_SEARCH_BUDGET};
pub use place::{embed_forest_pinned, greedy_extend, PlacementError, Stuck};
pub use split::{designated_split, UCSplit};
pub use tree::{find_witness_tree, find_witness_tree_traced, heavy_leaf_witness};
pub use unicyclic::{
    common_neighbour_triple, find_witness_unicyclic, find_witness_unicyclic_traced,
    UnicyclicOptions,
};

pub(crate) const NONE: usize = usize::MAX;

/// Either a fan in `G` or the pattern in `Ḡ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Fan(FanEmbedding),
    Tree(Embedding),
    /// `t1`, `t2` are pattern ids of the designated cycle edge.
    Unicyclic {
        embedding: Embedding,
        t1: usize,
        t2: usize,
    },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Fan(_) => "fan",
            Witness::Tree(_) => "tree",
            Witness::Unicyclic { .. } => "unicyclic",
        }
    }

    /// Re-verifies against the host and the pattern graph (ignored for fans).
    pub fn verify(&self, g: &Graph, pattern: &Graph, m: usize) -> Result<(), String> {
        match self {
            Witness::Fan(f) => {
                if f.pairs.len() != m {
                    return Err(format!("fan has {} triangles, expected {m}", f.pairs.len()));
                }
                check_embedding(&Graph::fan(m), g, &Embedding::new(f.to_map(), false))
                    .map_err(|e| e.to_string())
            }
            Witness::Tree(e) => check_embedding(pattern, g, e).map_err(|e| e.to_string()),
            Witness::Unicyclic { embedding, t1, t2 } => {
                if !pattern.has_edge(*t1, *t2) {
                    return Err(format!("{t1}-{t2} is not a pattern edge"));
                }
                check_embedding(pattern, g, embedding).map_err(|e| e.to_string())
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("guaranteed step {step} failed: {detail}")]
    TheoremViolation { step: &'static str, detail: String },
    #[error("cycle search exhausted its budget of {budget} steps")]
    SearchBudgetExhausted { budget: u64 },
    #[error(transparent)]
    Pattern(#[from] TreeError),
}

pub(crate) fn violation(step: &'static str, detail: impl Into<String>) -> EngineError {
    let detail = detail.into();
    log::warn!("step {step} failed: {detail}");
    EngineError::TheoremViolation { step, detail }
}

/// Steps taken by an engine run, in order.
pub type Trace = Vec<&'static str>;

/// Stable JSON form; field order is part of the format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<usize>,
    pub map: Vec<[usize; 2]>,
    pub m: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t2: Option<usize>,
}

impl WitnessJson {
    /// `t1`/`t2` carry the host images of the designated edge.
    pub fn new(w: &Witness, n: usize, m: usize) -> Self {
        let pairs = |map: &[usize]| map.iter().enumerate().map(|(p, &h)| [p, h]).collect();
        match w {
            Witness::Fan(f) => WitnessJson {
                kind: w.kind().into(),
                center: Some(f.center),
                map: pairs(&f.to_map()),
                m,
                n,
                t1: None,
                t2: None,
            },
            Witness::Tree(e) => WitnessJson {
                kind: w.kind().into(),
                center: None,
                map: pairs(&e.map),
                m,
                n,
                t1: None,
                t2: None,
            },
            Witness::Unicyclic { embedding, t1, t2 } => WitnessJson {
                kind: w.kind().into(),
                center: None,
                map: pairs(&embedding.map),
                m,
                n,
                t1: Some(embedding.map[*t1]),
                t2: Some(embedding.map[*t2]),
            },
        }
    }
}

pub(crate) fn check_hypotheses(
    order: usize,
    n: usize,
    m: usize,
    min_m: usize,
) -> Result<(), EngineError> {
    if m < min_m {
        return Err(EngineError::Hypothesis(format!(
            "m = {m} is below the required {min_m}"
        )));
    }
    if n < m * m - m + 1 {
        return Err(EngineError::Hypothesis(format!(
            "n = {n} is below m² − m + 1 = {}",
            m * m - m + 1
        )));
    }
    if order != 2 * n - 1 {
        return Err(EngineError::Hypothesis(format!(
            "host has {order} vertices, expected 2n − 1 = {}",
            2 * n - 1
        )));
    }
    Ok(())
}

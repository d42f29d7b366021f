//! Exact extension search and the constructive bipartite routines.

pub mod bipartite;
mod csp;
pub mod cycle;
pub mod list_edge;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::coloring::{
    check_total_coloring, conflicts, derive_lists, forbidden_colors, uncolored_items, CheckMode, Color, ColoringError,
    Item, ListAssignment, PartialTotalColoring,
};
use crate::planar::PlanarEmbedding;

pub use bipartite::{
    bipartite_extension, bipartite_total_pipeline, planar_bipartite_vertex_3list, ExtensionError, PipelineError,
    PipelineResult, ShrunkenList, VertexListError,
};
pub use cycle::{color_even_cycle_from_2_lists, CycleError};
pub use list_edge::{
    bipartite_list_edge_color, exhaustive_list_edge_color, kernel_method, konig_edge_coloring, EdgeColoringRoute,
    ListEdgeColoring, ListEdgeError,
};

/// Search budget as a number of tried assignments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Budget {
    pub const fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::nodes(50_000_000)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Colored,
    ProvenImpossible,
    Timeout,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Colored => "colored",
            SolveStatus::ProvenImpossible => "proven-impossible",
            SolveStatus::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Complete coloring when `status` is `Colored`.
    pub witness: Option<PartialTotalColoring>,
    pub stats: SolveStats,
}

impl SolveOutcome {
    /// `status`, `witness` in precoloring-file syntax, `nodes`, `elapsed` in seconds.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "status": self.status.as_str(),
            "witness": self.witness.as_ref().map(PartialTotalColoring::to_text),
            "nodes": self.stats.nodes,
            "elapsed": self.stats.elapsed.as_secs_f64(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("no list given for uncolored {0}")]
    MissingList(Item),
    #[error("list given for {0}, which is precolored or not in the graph")]
    UnexpectedList(Item),
    #[error("list of {item} contains color {color} outside 1..={k}")]
    ListColorOutOfRange { item: Item, color: Color, k: Color },
}

/// Decides whether the uncolored items of `emb` can be colored from `lists`
/// compatibly with `fixed`, and builds a witness if so.
pub fn list_total_color_exact(
    emb: &PlanarEmbedding,
    lists: &ListAssignment,
    fixed: &PartialTotalColoring,
    budget: Budget,
) -> Result<SolveOutcome, SolveError> {
    let start = Instant::now();
    let verdict = check_total_coloring(emb, fixed, CheckMode::OfHInG)?;
    if !verdict.is_proper() {
        return Err(ColoringError::Improper(verdict).into());
    }
    let items = uncolored_items(emb, fixed);
    let index: HashMap<Item, usize> = items.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    if let Some((item, _)) = lists.iter().find(|(item, _)| !index.contains_key(item)) {
        return Err(SolveError::UnexpectedList(item));
    }
    let k = fixed.palette();
    let mut domains = Vec::with_capacity(items.len());
    for &item in &items {
        let list = lists.get(item).ok_or(SolveError::MissingList(item))?;
        if let Some(color) = list.iter().find(|&c| c == 0 || c > k) {
            return Err(SolveError::ListColorOutOfRange { item, color, k });
        }
        domains.push(list.difference(&forbidden_colors(emb, fixed, item)));
    }
    let adjacency: Vec<Vec<usize>> = items
        .iter()
        .map(|&item| {
            conflicts(emb, item)
                .into_iter()
                .filter_map(|x| index.get(&x).copied())
                .collect()
        })
        .collect();

    let (result, nodes) = csp::solve(domains, &adjacency, budget.max_nodes);
    let (status, witness) = match result {
        csp::CspResult::Solved(colors) => {
            let mut w = fixed.clone();
            for (&item, &c) in items.iter().zip(&colors) {
                w.set(item, c)?;
            }
            debug_assert!(check_total_coloring(emb, &w, CheckMode::Total).is_ok_and(|v| v.is_proper()));
            (SolveStatus::Colored, Some(w))
        }
        csp::CspResult::Exhausted => (SolveStatus::ProvenImpossible, None),
        csp::CspResult::OutOfBudget => (SolveStatus::Timeout, None),
    };
    Ok(SolveOutcome {
        status,
        witness,
        stats: SolveStats {
            nodes,
            elapsed: start.elapsed(),
        },
    })
}

/// Decides whether `c` extends to a total coloring of `emb` with its palette.
pub fn extend_exact(
    emb: &PlanarEmbedding,
    c: &PartialTotalColoring,
    budget: Budget,
) -> Result<SolveOutcome, SolveError> {
    let lists = derive_lists(emb, c)?;
    list_total_color_exact(emb, &lists, c, budget)
}

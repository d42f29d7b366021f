//! Total-coloring extension on embedded planar graphs.
//!
//! A planar graph is stored as a rotation system ([`planar::PlanarEmbedding`]).
//! A precolored subgraph `H` is described by a [`coloring::PartialTotalColoring`];
//! the question is whether the coloring of `H` extends to a total coloring of
//! the whole graph with colors `1..=k`.
//!
//! The crate provides
//! - exact and greedy extension ([`solver`], [`coloring::greedy_extend`]),
//! - the constructive bipartite route: 3-list vertex coloring, list edge
//!   coloring by kernels, and the two-phase total pipeline,
//! - generators for the sharpness constructions ([`sharpness`]),
//! - exact-rational discharging audits for the three rule systems
//!   ([`discharging`]).

pub mod coloring;
pub mod discharging;
pub mod dot;
pub mod planar;
pub mod sharpness;
pub mod solver;

pub use coloring::{
    check_total_coloring, derive_lists, greedy_extend, CheckMode, Color, ColorSet, Item, ListAssignment,
    PartialTotalColoring,
};
pub use planar::{analyze_precolored_shape, Edge, PlanarEmbedding, Subgraph};
pub use solver::{extend_exact, list_total_color_exact, Budget, SolveOutcome, SolveStatus};

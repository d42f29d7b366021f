//! Partial total colorings, properness checks, list derivation and greedy
//! extension.
//!
//! Items are vertices and edges. Two items conflict when they are adjacent
//! vertices, edges sharing an endpoint, or an edge and one of its endpoints.

mod colorset;
mod io;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::planar::{Edge, PlanarEmbedding, Subgraph};

pub use colorset::ColorSet;
pub use io::PrecoloringParseError;

pub type Color = u32;

/// A vertex or an edge. Vertices order before edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Item {
    Vertex { v: usize },
    Edge { u: usize, v: usize },
}

impl Item {
    pub fn vertex(v: usize) -> Self {
        Item::Vertex { v }
    }

    pub fn edge(e: Edge) -> Self {
        Item::Edge { u: e.u, v: e.v }
    }

    pub fn as_edge(self) -> Option<Edge> {
        match self {
            Item::Edge { u, v } => Some(Edge::new(u, v)),
            Item::Vertex { .. } => None,
        }
    }

    pub fn as_vertex(self) -> Option<usize> {
        match self {
            Item::Vertex { v } => Some(v),
            Item::Edge { .. } => None,
        }
    }
}

impl From<Edge> for Item {
    fn from(e: Edge) -> Self {
        Item::edge(e)
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Vertex { v } => write!(f, "vertex {v}"),
            Item::Edge { u, v } => write!(f, "edge {u}-{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("{item} has color {color} outside 1..={k}")]
    ColorOutOfRange { item: Item, color: Color, k: Color },
    #[error("{0} is not in the graph")]
    UnknownItem(Item),
    #[error("precoloring is not a proper total coloring of H in G: {0}")]
    Improper(Verdict),
}

/// Palette size plus a partial assignment of colors to vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialTotalColoring {
    k: Color,
    vertex_colors: BTreeMap<usize, Color>,
    edge_colors: BTreeMap<Edge, Color>,
}

impl PartialTotalColoring {
    pub fn new(k: Color) -> Self {
        PartialTotalColoring {
            k,
            vertex_colors: BTreeMap::new(),
            edge_colors: BTreeMap::new(),
        }
    }

    pub fn palette(&self) -> Color {
        self.k
    }

    /// Same assignment under another palette size.
    pub fn with_palette(&self, k: Color) -> Result<Self, ColoringError> {
        let mut c = self.clone();
        c.k = k;
        c.check_range()?;
        Ok(c)
    }

    fn check_range(&self) -> Result<(), ColoringError> {
        for (item, color) in self.items() {
            if color == 0 || color > self.k {
                return Err(ColoringError::ColorOutOfRange { item, color, k: self.k });
            }
        }
        Ok(())
    }

    pub fn set(&mut self, item: Item, color: Color) -> Result<(), ColoringError> {
        if color == 0 || color > self.k {
            return Err(ColoringError::ColorOutOfRange { item, color, k: self.k });
        }
        match item {
            Item::Vertex { v } => {
                self.vertex_colors.insert(v, color);
            }
            Item::Edge { u, v } => {
                self.edge_colors.insert(Edge::new(u, v), color);
            }
        }
        Ok(())
    }

    /// Removes the color of `item`, returning it.
    pub fn unset(&mut self, item: Item) -> Option<Color> {
        match item {
            Item::Vertex { v } => self.vertex_colors.remove(&v),
            Item::Edge { u, v } => self.edge_colors.remove(&Edge::new(u, v)),
        }
    }

    pub fn set_vertex(&mut self, v: usize, color: Color) -> Result<(), ColoringError> {
        self.set(Item::vertex(v), color)
    }

    pub fn set_edge(&mut self, e: Edge, color: Color) -> Result<(), ColoringError> {
        self.set(Item::edge(e), color)
    }

    pub fn vertex_color(&self, v: usize) -> Option<Color> {
        self.vertex_colors.get(&v).copied()
    }

    pub fn edge_color(&self, e: Edge) -> Option<Color> {
        self.edge_colors.get(&e).copied()
    }

    pub fn get(&self, item: Item) -> Option<Color> {
        match item {
            Item::Vertex { v } => self.vertex_color(v),
            Item::Edge { u, v } => self.edge_color(Edge::new(u, v)),
        }
    }

    pub fn vertex_colors(&self) -> &BTreeMap<usize, Color> {
        &self.vertex_colors
    }

    pub fn edge_colors(&self) -> &BTreeMap<Edge, Color> {
        &self.edge_colors
    }

    /// Colored items, vertices first.
    pub fn items(&self) -> impl Iterator<Item = (Item, Color)> + '_ {
        self.vertex_colors
            .iter()
            .map(|(&v, &c)| (Item::vertex(v), c))
            .chain(self.edge_colors.iter().map(|(&e, &c)| (Item::edge(e), c)))
    }

    pub fn colored_count(&self) -> usize {
        self.vertex_colors.len() + self.edge_colors.len()
    }

    /// The precolored subgraph `H`: every mentioned vertex and every colored edge.
    pub fn subgraph(&self) -> Subgraph {
        Subgraph::spanned(self.vertex_colors.keys().copied(), self.edge_colors.keys().copied())
    }

    /// Whether every item of `emb` is colored.
    pub fn is_complete(&self, emb: &PlanarEmbedding) -> bool {
        self.vertex_colors.len() == emb.vertex_count() && self.edge_colors.len() == emb.edge_count()
    }

    /// Whether `self` agrees with `other` on every item `other` colors.
    pub fn extends(&self, other: &PartialTotalColoring) -> bool {
        other.items().all(|(item, c)| self.get(item) == Some(c))
    }

    fn validate(&self, emb: &PlanarEmbedding) -> Result<(), ColoringError> {
        self.check_range()?;
        for (item, _) in self.items() {
            let known = match item {
                Item::Vertex { v } => v < emb.vertex_count(),
                Item::Edge { u, v } => emb.has_edge(u, v),
            };
            if !known {
                return Err(ColoringError::UnknownItem(item));
            }
        }
        Ok(())
    }
}

/// Per-item admissible colors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ListAssignment {
    lists: BTreeMap<Item, ColorSet>,
}

impl ListAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every vertex and edge of `emb` gets `{1..k}`.
    pub fn uniform(emb: &PlanarEmbedding, k: Color) -> Self {
        let mut l = Self::new();
        for v in 0..emb.vertex_count() {
            l.insert(Item::vertex(v), ColorSet::full(k));
        }
        for &e in emb.edges() {
            l.insert(Item::edge(e), ColorSet::full(k));
        }
        l
    }

    pub fn insert(&mut self, item: Item, list: ColorSet) {
        self.lists.insert(item, list);
    }

    pub fn get(&self, item: Item) -> Option<&ColorSet> {
        self.lists.get(&item)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Item, &ColorSet)> {
        self.lists.iter().map(|(&i, l)| (i, l))
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn max_color(&self) -> Option<Color> {
        self.lists.values().filter_map(ColorSet::max).max()
    }

    /// One line per item, `v <id>: <colors>` or `e <u> <v>: <colors>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (item, list) in &self.lists {
            let colors: Vec<String> = list.iter().map(|c| c.to_string()).collect();
            match item {
                Item::Vertex { v } => out.push_str(&format!("v {v}: {}\n", colors.join(" "))),
                Item::Edge { u, v } => out.push_str(&format!("e {u} {v}: {}\n", colors.join(" "))),
            }
        }
        out
    }
}

impl Serialize for ListAssignment {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            item: Item,
            colors: &'a ColorSet,
        }
        serializer.collect_seq(self.lists.iter().map(|(&item, colors)| Entry { item, colors }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    /// Properness inside the precolored subgraph only.
    OfH,
    /// Additionally, colored vertices adjacent in `G` differ.
    OfHInG,
    /// Every item colored and the whole coloring proper.
    Total,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    AdjacentVertices { u: usize, v: usize, color: Color },
    AdjacentEdges { e: Edge, f: Edge, color: Color },
    EdgeAtEndpoint { edge: Edge, vertex: usize, color: Color },
    Uncolored { item: Item },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AdjacentVertices { u, v, color } => {
                write!(f, "vertices {u} and {v} share color {color}")
            }
            Violation::AdjacentEdges { e, f: g, color } => write!(f, "edges {e} and {g} share color {color}"),
            Violation::EdgeAtEndpoint { edge, vertex, color } => {
                write!(f, "edge {edge} and its endpoint {vertex} share color {color}")
            }
            Violation::Uncolored { item } => write!(f, "{item} is uncolored"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub mode: CheckMode,
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn is_proper(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "proper");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Lists every violation of `c` under `mode`.
pub fn check_total_coloring(
    emb: &PlanarEmbedding,
    c: &PartialTotalColoring,
    mode: CheckMode,
) -> Result<Verdict, ColoringError> {
    c.validate(emb)?;
    let mut violations = Vec::new();
    for &e in emb.edges() {
        if let (Some(a), Some(b)) = (c.vertex_color(e.u), c.vertex_color(e.v)) {
            let adjacent_in_scope = mode != CheckMode::OfH || c.edge_color(e).is_some();
            if a == b && adjacent_in_scope {
                violations.push(Violation::AdjacentVertices {
                    u: e.u,
                    v: e.v,
                    color: a,
                });
            }
        }
        if let Some(ce) = c.edge_color(e) {
            for x in [e.u, e.v] {
                if c.vertex_color(x) == Some(ce) {
                    violations.push(Violation::EdgeAtEndpoint {
                        edge: e,
                        vertex: x,
                        color: ce,
                    });
                }
            }
        }
    }
    for x in 0..emb.vertex_count() {
        let colored: Vec<(Edge, Color)> = emb
            .rotation(x)
            .iter()
            .filter_map(|&y| {
                let e = Edge::new(x, y);
                c.edge_color(e).map(|col| (e, col))
            })
            .collect();
        for (i, &(e, ce)) in colored.iter().enumerate() {
            for &(f, cf) in &colored[i + 1..] {
                if ce == cf {
                    let (e, f) = if e < f { (e, f) } else { (f, e) };
                    violations.push(Violation::AdjacentEdges { e, f, color: ce });
                }
            }
        }
    }
    if mode == CheckMode::Total {
        for v in 0..emb.vertex_count() {
            if c.vertex_color(v).is_none() {
                violations.push(Violation::Uncolored { item: Item::vertex(v) });
            }
        }
        for &e in emb.edges() {
            if c.edge_color(e).is_none() {
                violations.push(Violation::Uncolored { item: Item::edge(e) });
            }
        }
    }
    Ok(Verdict { mode, violations })
}

/// Items conflicting with `item`.
pub fn conflicts(emb: &PlanarEmbedding, item: Item) -> Vec<Item> {
    match item {
        Item::Vertex { v } => emb
            .rotation(v)
            .iter()
            .map(|&u| Item::vertex(u))
            .chain(emb.rotation(v).iter().map(|&u| Item::edge(Edge::new(u, v))))
            .collect(),
        Item::Edge { u, v } => {
            let e = Edge::new(u, v);
            let mut out = vec![Item::vertex(u), Item::vertex(v)];
            for x in [u, v] {
                out.extend(
                    emb.rotation(x)
                        .iter()
                        .map(|&y| Edge::new(x, y))
                        .filter(|&f| f != e)
                        .map(Item::edge),
                );
            }
            out
        }
    }
}

/// Colors used by items conflicting with `item`.
pub fn forbidden_colors(emb: &PlanarEmbedding, c: &PartialTotalColoring, item: Item) -> ColorSet {
    conflicts(emb, item).into_iter().filter_map(|x| c.get(x)).collect()
}

fn require_proper_in_g(emb: &PlanarEmbedding, c: &PartialTotalColoring) -> Result<(), ColoringError> {
    let verdict = check_total_coloring(emb, c, CheckMode::OfHInG)?;
    if verdict.is_proper() {
        Ok(())
    } else {
        Err(ColoringError::Improper(verdict))
    }
}

/// Uncolored items in greedy order: vertices by id, then edges lexicographically.
pub fn uncolored_items(emb: &PlanarEmbedding, c: &PartialTotalColoring) -> Vec<Item> {
    let vertices = (0..emb.vertex_count())
        .filter(|&v| c.vertex_color(v).is_none())
        .map(Item::vertex);
    let edges = emb
        .edges()
        .iter()
        .filter(|&&e| c.edge_color(e).is_none())
        .map(|&e| Item::edge(e));
    vertices.chain(edges).collect()
}

/// `L(x) = {1..k}` minus the colors on items conflicting with `x`, for every
/// uncolored item `x`.
pub fn derive_lists(emb: &PlanarEmbedding, c: &PartialTotalColoring) -> Result<ListAssignment, ColoringError> {
    require_proper_in_g(emb, c)?;
    let full = ColorSet::full(c.palette());
    let mut lists = ListAssignment::new();
    for item in uncolored_items(emb, c) {
        lists.insert(item, full.difference(&forbidden_colors(emb, c, item)));
    }
    Ok(lists)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreedyOutcome {
    Complete(PartialTotalColoring),
    /// `item` had no admissible color; `partial` is the coloring so far.
    Stuck {
        item: Item,
        partial: PartialTotalColoring,
    },
}

/// Colors uncolored items in [`uncolored_items`] order, each with its
/// smallest admissible color. Always completes when `k >= 2Δ + 1`.
pub fn greedy_extend(emb: &PlanarEmbedding, c: &PartialTotalColoring) -> Result<GreedyOutcome, ColoringError> {
    require_proper_in_g(emb, c)?;
    let mut out = c.clone();
    for item in uncolored_items(emb, c) {
        let forbidden = forbidden_colors(emb, &out, item);
        match (1..=out.palette()).find(|&col| !forbidden.contains(col)) {
            Some(col) => out.set(item, col)?,
            None => return Ok(GreedyOutcome::Stuck { item, partial: out }),
        }
    }
    Ok(GreedyOutcome::Complete(out))
}

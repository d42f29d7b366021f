//! Total coloring of planar bipartite graphs from lists: vertices first from
//! 3-lists, then edges from the lists left after removing endpoint colors.

use serde::Serialize;
use thiserror::Error;

use super::csp::{self, CspResult};
use super::list_edge::{bipartite_list_edge_color, EdgeColoringRoute, ListEdgeError};
use super::Budget;
use crate::coloring::{
    check_total_coloring, derive_lists, CheckMode, Color, ColorSet, ColoringError, Item, ListAssignment,
    PartialTotalColoring,
};
use crate::planar::{bipartition_of, Edge, PlanarEmbedding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VertexListError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("{vertices} vertices but {lists} lists")]
    LengthMismatch { vertices: usize, lists: usize },
    #[error("list of vertex {vertex} has {size} colors, needs at least 3")]
    ListTooSmall { vertex: usize, size: usize },
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("no coloring from the lists exists")]
    Infeasible,
}

/// Colors the vertices of a planar bipartite graph from lists of size ≥ 3.
pub fn planar_bipartite_vertex_3list(
    emb: &PlanarEmbedding,
    lists: &[ColorSet],
    budget: Budget,
) -> Result<Vec<Color>, VertexListError> {
    let adjacency: Vec<Vec<usize>> = emb.rotations().to_vec();
    vertex_3list(&adjacency, lists, budget)
}

fn vertex_3list(adjacency: &[Vec<usize>], lists: &[ColorSet], budget: Budget) -> Result<Vec<Color>, VertexListError> {
    if lists.len() != adjacency.len() {
        return Err(VertexListError::LengthMismatch {
            vertices: adjacency.len(),
            lists: lists.len(),
        });
    }
    if bipartition_of(adjacency).is_none() {
        return Err(VertexListError::NotBipartite);
    }
    if let Some((vertex, l)) = lists.iter().enumerate().find(|(_, l)| l.len() < 3) {
        return Err(VertexListError::ListTooSmall { vertex, size: l.len() });
    }
    match csp::solve(lists.to_vec(), adjacency, budget.max_nodes).0 {
        CspResult::Solved(colors) => Ok(colors),
        CspResult::Exhausted => Err(VertexListError::Infeasible),
        CspResult::OutOfBudget => Err(VertexListError::BudgetExhausted),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("no list for {0}")]
    MissingList(Item),
    #[error("list given for {0}, which is not in the graph")]
    UnexpectedList(Item),
    #[error("list of edge {edge} has {size} colors, needs at least {required}")]
    EdgeListTooSmall { edge: Edge, size: usize, required: usize },
    #[error("vertex phase: {0}")]
    Vertices(VertexListError),
    #[error("edge phase: {0}")]
    Edges(ListEdgeError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Size of an edge list after the vertex phase against the bound the edge
/// phase needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShrunkenList {
    pub edge: Edge,
    pub size: usize,
    pub required: usize,
}

impl ShrunkenList {
    pub fn holds(&self) -> bool {
        self.size >= self.required
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineResult {
    pub coloring: PartialTotalColoring,
    pub edge_route: EdgeColoringRoute,
    /// One entry per edge, in edge order.
    pub shrunken: Vec<ShrunkenList>,
}

/// Lists of a graph given as `n` vertices and an edge list.
struct Instance<'a> {
    n: usize,
    edges: &'a [Edge],
    vertex_lists: Vec<ColorSet>,
    edge_lists: Vec<ColorSet>,
    /// Adjacencies that constrain the vertex phase only.
    extra_adjacent: Vec<Edge>,
}

fn degrees(n: usize, edges: &[Edge]) -> Vec<usize> {
    let mut deg = vec![0; n];
    for e in edges {
        deg[e.u] += 1;
        deg[e.v] += 1;
    }
    deg
}

fn run_pipeline(inst: &Instance<'_>, palette: Color, budget: Budget) -> Result<PipelineResult, PipelineError> {
    let deg = degrees(inst.n, inst.edges);
    for (i, &e) in inst.edges.iter().enumerate() {
        let required = deg[e.u].max(deg[e.v]) + 2;
        let size = inst.edge_lists[i].len();
        if size < required {
            return Err(PipelineError::EdgeListTooSmall {
                edge: e,
                size,
                required,
            });
        }
    }
    let mut adjacency = vec![Vec::new(); inst.n];
    for e in inst.edges.iter().chain(&inst.extra_adjacent) {
        adjacency[e.u].push(e.v);
        adjacency[e.v].push(e.u);
    }
    let vcol = vertex_3list(&adjacency, &inst.vertex_lists, budget).map_err(PipelineError::Vertices)?;

    let mut shrunk = Vec::with_capacity(inst.edges.len());
    let mut shrunken = Vec::with_capacity(inst.edges.len());
    for (i, &e) in inst.edges.iter().enumerate() {
        let mut l = inst.edge_lists[i].clone();
        l.remove(vcol[e.u]);
        l.remove(vcol[e.v]);
        shrunken.push(ShrunkenList {
            edge: e,
            size: l.len(),
            required: deg[e.u].max(deg[e.v]),
        });
        shrunk.push(l);
    }
    let edges = bipartite_list_edge_color(inst.n, inst.edges, &shrunk, budget).map_err(PipelineError::Edges)?;

    let mut coloring = PartialTotalColoring::new(palette);
    for (v, &c) in vcol.iter().enumerate() {
        coloring.set_vertex(v, c)?;
    }
    for (&e, &c) in inst.edges.iter().zip(&edges.colors) {
        coloring.set_edge(e, c)?;
    }
    Ok(PipelineResult {
        coloring,
        edge_route: edges.route,
        shrunken,
    })
}

/// Totally colors a planar bipartite graph from lists with `|L(v)| ≥ 3` and
/// `|L(xy)| ≥ max(deg x, deg y) + 2`.
pub fn bipartite_total_pipeline(
    emb: &PlanarEmbedding,
    lists: &ListAssignment,
    budget: Budget,
) -> Result<PipelineResult, PipelineError> {
    let n = emb.vertex_count();
    for (item, _) in lists.iter() {
        let known = match item {
            Item::Vertex { v } => v < n,
            Item::Edge { u, v } => emb.has_edge(u, v),
        };
        if !known {
            return Err(PipelineError::UnexpectedList(item));
        }
    }
    let fetch = |item: Item| lists.get(item).cloned().ok_or(PipelineError::MissingList(item));
    let vertex_lists = (0..n).map(|v| fetch(Item::vertex(v))).collect::<Result<_, _>>()?;
    let edge_lists = emb
        .edges()
        .iter()
        .map(|&e| fetch(Item::edge(e)))
        .collect::<Result<_, _>>()?;
    let inst = Instance {
        n,
        edges: emb.edges(),
        vertex_lists,
        edge_lists,
        extra_adjacent: Vec::new(),
    };
    let palette = lists.max_color().unwrap_or(1);
    let out = run_pipeline(&inst, palette, budget)?;
    debug_assert!(check_total_coloring(emb, &out.coloring, CheckMode::Total).is_ok_and(|v| v.is_proper()));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("precolored subgraph has a vertex of degree {degree}, above d = {d}")]
    DegreeAboveD { degree: usize, d: usize },
    #[error("palette {k} is below Δ + d + 4 = {required}")]
    PaletteTooSmall { k: Color, required: Color },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("precoloring is not proper in G")]
    Improper,
    /// A derived list fell below the bound the reduction guarantees.
    #[error("derived list of {item} has {size} colors, the reduction guarantees {required}")]
    BoundViolation { item: Item, size: usize, required: usize },
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

/// Extends a precoloring whose subgraph `H` has maximum degree at most `d`
/// to a total coloring with `k ≥ Δ + d + 4` colors.
///
/// Lists on `G' = G - E(H)` are the palette minus the colors of adjacent and
/// incident items of `H`. Vertices of `H` are given the whole palette for the
/// vertex phase, which only removes their phase color from incident edge
/// lists; their original color is restored afterwards. Vertices of `H` may
/// be uncolored, in which case they are colored from derived lists like the
/// rest.
pub fn bipartite_extension(
    emb: &PlanarEmbedding,
    c: &PartialTotalColoring,
    d: usize,
    budget: Budget,
) -> Result<PipelineResult, ExtensionError> {
    if !emb.is_bipartite() {
        return Err(ExtensionError::NotBipartite);
    }
    let h = c.subgraph();
    h.validate(emb).map_err(|_| ExtensionError::Improper)?;
    let degree = h.max_degree();
    if degree > d {
        return Err(ExtensionError::DegreeAboveD { degree, d });
    }
    let k = c.palette();
    let required = (emb.max_degree() + d + 4) as Color;
    if k < required {
        return Err(ExtensionError::PaletteTooSmall { k, required });
    }
    if !check_total_coloring(emb, c, CheckMode::OfHInG)?.is_proper() {
        return Err(ExtensionError::Improper);
    }

    let derived = derive_lists(emb, c)?;
    let n = emb.vertex_count();
    let g_edges: Vec<Edge> = emb.edges().iter().copied().filter(|e| !h.contains_edge(*e)).collect();
    let g_deg = degrees(n, &g_edges);
    let mut vertex_lists = Vec::with_capacity(n);
    for v in 0..n {
        let list = match derived.get(Item::vertex(v)) {
            Some(l) => {
                if l.len() < 4 {
                    return Err(ExtensionError::BoundViolation {
                        item: Item::vertex(v),
                        size: l.len(),
                        required: 4,
                    });
                }
                l.clone()
            }
            None => ColorSet::full(k),
        };
        vertex_lists.push(list);
    }
    let mut edge_lists = Vec::with_capacity(g_edges.len());
    for &e in &g_edges {
        let item = Item::edge(e);
        let l = derived.get(item).expect("uncolored edge has a list");
        let required = g_deg[e.u].max(g_deg[e.v]) + 2;
        if l.len() < required {
            return Err(ExtensionError::BoundViolation {
                item,
                size: l.len(),
                required,
            });
        }
        edge_lists.push(l.clone());
    }

    // an edge of H with both ends uncolored still forces distinct end colors
    let extra_adjacent: Vec<Edge> = h
        .edges()
        .iter()
        .copied()
        .filter(|e| c.vertex_color(e.u).is_none() && c.vertex_color(e.v).is_none())
        .collect();
    let inst = Instance {
        n,
        edges: &g_edges,
        vertex_lists,
        edge_lists,
        extra_adjacent,
    };
    let mut out = run_pipeline(&inst, k, budget)?;
    let mut full = PartialTotalColoring::new(k);
    for (item, color) in out.coloring.items() {
        if c.get(item).is_none() {
            full.set(item, color)?;
        }
    }
    for (item, color) in c.items() {
        full.set(item, color)?;
    }
    debug_assert!(full.extends(c));
    debug_assert!(check_total_coloring(emb, &full, CheckMode::Total).is_ok_and(|v| v.is_proper()));
    out.coloring = full;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> PlanarEmbedding {
        PlanarEmbedding::from_rotations((0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect()).unwrap()
    }

    #[test]
    fn vertex_phase_on_c6_with_distinct_lists() {
        let lists: Vec<ColorSet> = (0..6)
            .map(|i| ColorSet::from([i, i + 1, i + 2].map(|x| x % 6 + 1)))
            .collect();
        let cols = planar_bipartite_vertex_3list(&cycle(6), &lists, Budget::default()).unwrap();
        for i in 0..6 {
            assert!(lists[i].contains(cols[i]));
            assert_ne!(cols[i], cols[(i + 1) % 6]);
        }
        assert_eq!(
            planar_bipartite_vertex_3list(&cycle(3), &vec![ColorSet::full(3); 3], Budget::default()),
            Err(VertexListError::NotBipartite)
        );
        assert_eq!(
            planar_bipartite_vertex_3list(&cycle(4), &vec![ColorSet::full(2); 4], Budget::default()),
            Err(VertexListError::ListTooSmall { vertex: 0, size: 2 })
        );
    }

    #[test]
    fn pipeline_on_c4() {
        let emb = cycle(4);
        let mut lists = ListAssignment::new();
        for v in 0..4 {
            lists.insert(Item::vertex(v), ColorSet::from([1, 2, 3]));
        }
        for &e in emb.edges() {
            lists.insert(Item::edge(e), ColorSet::from([1, 2, 3, 4]));
        }
        let out = bipartite_total_pipeline(&emb, &lists, Budget::default()).unwrap();
        assert!(check_total_coloring(&emb, &out.coloring, CheckMode::Total)
            .unwrap()
            .is_proper());
        assert!(out.shrunken.iter().all(ShrunkenList::holds));

        lists.insert(Item::edge(Edge::new(0, 1)), ColorSet::from([1, 2, 3]));
        assert!(matches!(
            bipartite_total_pipeline(&emb, &lists, Budget::default()),
            Err(PipelineError::EdgeListTooSmall {
                required: 4,
                size: 3,
                ..
            })
        ));
    }

    #[test]
    fn extension_of_star_with_pendant_edge() {
        let emb = PlanarEmbedding::from_rotations(vec![vec![1, 2, 3, 4], vec![0], vec![0], vec![0], vec![0]]).unwrap();
        let mut c = PartialTotalColoring::new(9);
        c.set_edge(Edge::new(0, 1), 5).unwrap();
        let out = bipartite_extension(&emb, &c, 1, Budget::default()).unwrap();
        assert!(out.coloring.extends(&c));
        assert!(check_total_coloring(&emb, &out.coloring, CheckMode::Total)
            .unwrap()
            .is_proper());
        assert!(matches!(
            bipartite_extension(&emb, &c.with_palette(8).unwrap(), 1, Budget::default()),
            Err(ExtensionError::PaletteTooSmall { k: 8, required: 9 })
        ));
    }
}

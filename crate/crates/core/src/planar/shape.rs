use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use super::{Edge, PlanarEmbedding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(Edge),
    #[error("edge {0} has an endpoint outside the subgraph's vertex set")]
    DanglingEdge(Edge),
}

/// A subgraph given by explicit vertex and edge sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Subgraph {
    vertices: BTreeSet<usize>,
    edges: BTreeSet<Edge>,
}

impl Subgraph {
    pub fn new(
        vertices: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, ShapeError> {
        let vertices: BTreeSet<usize> = vertices.into_iter().collect();
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        if let Some(&e) = edges
            .iter()
            .find(|e| !vertices.contains(&e.u) || !vertices.contains(&e.v))
        {
            return Err(ShapeError::DanglingEdge(e));
        }
        Ok(Subgraph { vertices, edges })
    }

    /// Subgraph spanned by `edges` plus any extra `vertices`.
    pub fn spanned(vertices: impl IntoIterator<Item = usize>, edges: impl IntoIterator<Item = Edge>) -> Self {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        let mut vs: BTreeSet<usize> = vertices.into_iter().collect();
        for e in &edges {
            vs.insert(e.u);
            vs.insert(e.v);
        }
        Subgraph { vertices: vs, edges }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Degree of `v` inside the subgraph.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices.iter().map(|&v| self.degree(v)).max().unwrap_or(0)
    }

    /// Checks that every item lies in `emb`.
    pub fn validate(&self, emb: &PlanarEmbedding) -> Result<(), ShapeError> {
        if let Some(&v) = self.vertices.iter().find(|&&v| v >= emb.vertex_count()) {
            return Err(ShapeError::UnknownVertex(v));
        }
        if let Some(&e) = self.edges.iter().find(|e| emb.edge_index(**e).is_none()) {
            return Err(ShapeError::UnknownEdge(e));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeKind {
    /// Every component is `K1` or `K2`.
    Matching,
    /// Every component is complete.
    CliqueSet,
    Arbitrary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

impl Component {
    pub fn is_complete(&self) -> bool {
        let k = self.vertices.len();
        self.edges.len() == k * (k - 1) / 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrecoloredShape {
    pub components: Vec<Component>,
    pub kind: ShapeKind,
    /// Minimum distance in `G` between distinct components; `None` when
    /// there are fewer than two components.
    pub separation: Option<usize>,
    pub required_distance: usize,
    pub meets_distance: bool,
}

impl PrecoloredShape {
    pub fn is_matching_compatible(&self) -> bool {
        self.kind == ShapeKind::Matching
    }

    pub fn is_clique_set(&self) -> bool {
        matches!(self.kind, ShapeKind::Matching | ShapeKind::CliqueSet)
    }
}

/// Components of `h`, its most specific kind, and the separation between
/// components measured in `emb`.
pub fn analyze_precolored_shape(
    emb: &PlanarEmbedding,
    h: &Subgraph,
    required_distance: usize,
) -> Result<PrecoloredShape, ShapeError> {
    h.validate(emb)?;
    let n = emb.vertex_count();
    let mut adjacency = vec![Vec::new(); n];
    for e in h.edges() {
        adjacency[e.u].push(e.v);
        adjacency[e.v].push(e.u);
    }

    let mut label = vec![usize::MAX; n];
    let mut components = Vec::new();
    for &s in h.vertices() {
        if label[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut vertices = vec![s];
        label[s] = id;
        let mut i = 0;
        while i < vertices.len() {
            let x = vertices[i];
            i += 1;
            for &y in &adjacency[x] {
                if label[y] == usize::MAX {
                    label[y] = id;
                    vertices.push(y);
                }
            }
        }
        vertices.sort_unstable();
        let edges = h.edges().iter().copied().filter(|e| label[e.u] == id).collect();
        components.push(Component { vertices, edges });
    }

    let kind = if components.iter().all(|c| c.vertices.len() <= 2 && c.is_complete()) {
        ShapeKind::Matching
    } else if components.iter().all(Component::is_complete) {
        ShapeKind::CliqueSet
    } else {
        ShapeKind::Arbitrary
    };

    let mut separation: Option<usize> = None;
    if components.len() > 1 {
        for c in &components {
            let id = label[c.vertices[0]];
            let dist = multi_source_bfs(emb, &c.vertices);
            for (v, d) in dist.iter().enumerate() {
                if label[v] != usize::MAX && label[v] != id {
                    if let Some(d) = d {
                        separation = Some(separation.map_or(*d, |s| s.min(*d)));
                    }
                }
            }
        }
    }
    let meets_distance = separation.is_none_or(|s| s >= required_distance);
    Ok(PrecoloredShape {
        components,
        kind,
        separation,
        required_distance,
        meets_distance,
    })
}

pub(crate) fn multi_source_bfs(emb: &PlanarEmbedding, sources: &[usize]) -> Vec<Option<usize>> {
    let mut dist = vec![None; emb.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s] = Some(0);
        queue.push_back(s);
    }
    while let Some(x) = queue.pop_front() {
        let dx = dist[x].unwrap_or(0);
        for &y in emb.rotation(x) {
            if dist[y].is_none() {
                dist[y] = Some(dx + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

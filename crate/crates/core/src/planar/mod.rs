//! Rotation-system embeddings of connected simple planar graphs.
//!
//! Every vertex carries the clockwise cyclic order of its neighbors. A dart is
//! an ordered pair `(u, v)` for an edge `uv`; dart ids are dense, with the darts
//! leaving `u` numbered in rotation order. Faces are traced with the rule
//!
//! ```text
//! next(u -> v) = v -> w   where w follows u in the rotation at v
//! ```
//!
//! and the embedding is accepted only if `V - E + F = 2`.

mod builder;
mod degrees;
mod shape;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

pub use builder::{Corner, RotationBuilder};
pub use degrees::DegreeClassification;
pub use shape::{analyze_precolored_shape, Component, PrecoloredShape, ShapeError, ShapeKind, Subgraph};

pub type DartId = usize;
pub type FaceId = usize;

/// An undirected edge with endpoints stored as `(min, max)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Canonical edge between `a` and `b`.
    ///
    /// # Panics
    /// If `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop {a}-{a}");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn contains(self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`.
    pub fn other(self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            debug_assert_eq!(self.v, x);
            self.u
        }
    }

    pub fn shares_endpoint(self, f: Edge) -> bool {
        self != f && (f.contains(self.u) || f.contains(self.v))
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("vertex {0} is out of range")]
    UnknownVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} lists neighbor {neighbor} more than once")]
    RepeatedNeighbor { vertex: usize, neighbor: usize },
    #[error("asymmetric rotation: {u} lists {v} but {v} does not list {u}")]
    Asymmetric { u: usize, v: usize },
    #[error("graph needs at least one edge")]
    NoEdges,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("Euler check failed: V - E + F = {0}, expected 2 (not a planar rotation system)")]
    Euler(i64),
}

/// A face boundary walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: FaceId,
    /// Darts in walk order.
    pub darts: Vec<DartId>,
    /// Tail of each dart, so `walk[i] -> walk[i + 1]` is `darts[i]`.
    pub walk: Vec<usize>,
}

impl Face {
    /// Walk length; a bridge counts twice.
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Sorted distinct vertices on the boundary.
    pub fn distinct_vertices(&self) -> Vec<usize> {
        let mut vs = self.walk.clone();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Edges on the boundary, one entry per dart.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.walk.len();
        (0..n).map(move |i| Edge::new(self.walk[i], self.walk[(i + 1) % n]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarEmbedding {
    rotations: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    tails: Vec<usize>,
    heads: Vec<usize>,
    twins: Vec<DartId>,
    dart_edge: Vec<usize>,
    edges: Vec<Edge>,
    edge_ids: HashMap<Edge, usize>,
    faces: Vec<Face>,
    dart_face: Vec<FaceId>,
}

impl PlanarEmbedding {
    /// Builds and validates an embedding from clockwise rotations.
    pub fn from_rotations(rotations: Vec<Vec<usize>>) -> Result<Self, EmbeddingError> {
        let n = rotations.len();
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &u) in rot.iter().enumerate() {
                if u >= n {
                    return Err(EmbeddingError::UnknownVertex(u));
                }
                if u == v {
                    return Err(EmbeddingError::SelfLoop(v));
                }
                if rot[..i].contains(&u) {
                    return Err(EmbeddingError::RepeatedNeighbor { vertex: v, neighbor: u });
                }
            }
        }

        let mut offsets = Vec::with_capacity(n + 1);
        let mut total = 0;
        for rot in &rotations {
            offsets.push(total);
            total += rot.len();
        }
        offsets.push(total);

        let mut position: HashMap<(usize, usize), DartId> = HashMap::with_capacity(total);
        let mut tails = Vec::with_capacity(total);
        let mut heads = Vec::with_capacity(total);
        for (v, rot) in rotations.iter().enumerate() {
            for &u in rot {
                position.insert((v, u), tails.len());
                tails.push(v);
                heads.push(u);
            }
        }

        let mut twins = Vec::with_capacity(total);
        for d in 0..total {
            match position.get(&(heads[d], tails[d])) {
                Some(&t) => twins.push(t),
                None => {
                    return Err(EmbeddingError::Asymmetric {
                        u: tails[d],
                        v: heads[d],
                    })
                }
            }
        }
        if total == 0 {
            return Err(EmbeddingError::NoEdges);
        }

        let mut edges: Vec<Edge> = (0..total)
            .filter(|&d| tails[d] < heads[d])
            .map(|d| Edge::new(tails[d], heads[d]))
            .collect();
        edges.sort_unstable();
        let edge_ids: HashMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let dart_edge = (0..total).map(|d| edge_ids[&Edge::new(tails[d], heads[d])]).collect();

        let mut emb = PlanarEmbedding {
            rotations,
            offsets,
            tails,
            heads,
            twins,
            dart_edge,
            edges,
            edge_ids,
            faces: Vec::new(),
            dart_face: vec![usize::MAX; total],
        };

        if emb.distances_from(0).iter().any(|d| d.is_none()) {
            return Err(EmbeddingError::Disconnected);
        }
        emb.trace_faces();
        let euler = n as i64 - emb.edges.len() as i64 + emb.faces.len() as i64;
        if euler != 2 {
            return Err(EmbeddingError::Euler(euler));
        }
        Ok(emb)
    }

    fn trace_faces(&mut self) {
        let total = self.tails.len();
        for start in 0..total {
            if self.dart_face[start] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut darts = Vec::new();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                self.dart_face[d] = id;
                darts.push(d);
                walk.push(self.tails[d]);
                d = self.next_in_face(d);
                if d == start {
                    break;
                }
            }
            self.faces.push(Face { id, darts, walk });
        }
    }

    /// Parses the line-oriented graph file format.
    pub fn parse(text: &str) -> Result<Self, EmbeddingError> {
        let mut header = false;
        let mut n: Option<usize> = None;
        let mut rotations: Vec<Option<Vec<usize>>> = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens = tokenize_line(content);
            let Some(&(col, first)) = tokens.first() else {
                continue;
            };
            let syntax = |column: usize, message: String| EmbeddingError::Syntax { line, column, message };
            if !header {
                if first != "planar" || tokens.len() != 2 || tokens[1].1 != "1" {
                    return Err(syntax(col, "expected header `planar 1`".into()));
                }
                header = true;
                continue;
            }
            match first {
                "vertices" => {
                    if n.is_some() {
                        return Err(syntax(col, "duplicate `vertices` line".into()));
                    }
                    if tokens.len() != 2 {
                        return Err(syntax(col, "expected `vertices <n>`".into()));
                    }
                    let count = parse_number(tokens[1], line)?;
                    n = Some(count);
                    rotations = vec![None; count];
                }
                "rot" => {
                    let Some(count) = n else {
                        return Err(syntax(col, "`rot` before `vertices`".into()));
                    };
                    let Some(&(vcol, vtok)) = tokens.get(1) else {
                        return Err(syntax(col, "expected `rot <v>: <neighbors>`".into()));
                    };
                    let Some(vstr) = vtok.strip_suffix(':') else {
                        return Err(syntax(vcol, "expected `:` after vertex id".into()));
                    };
                    let v = parse_number((vcol, vstr), line)?;
                    if v >= count {
                        return Err(syntax(vcol, format!("vertex {v} out of range 0..{count}")));
                    }
                    if rotations[v].is_some() {
                        return Err(syntax(vcol, format!("duplicate rotation for vertex {v}")));
                    }
                    let mut rot = Vec::with_capacity(tokens.len() - 2);
                    for &tok in &tokens[2..] {
                        let u = parse_number(tok, line)?;
                        if u >= count {
                            return Err(syntax(tok.0, format!("vertex {u} out of range 0..{count}")));
                        }
                        rot.push(u);
                    }
                    rotations[v] = Some(rot);
                }
                other => return Err(syntax(col, format!("unknown directive `{other}`"))),
            }
        }
        if !header {
            return Err(EmbeddingError::Syntax {
                line: 1,
                column: 1,
                message: "missing header `planar 1`".into(),
            });
        }
        if n.is_none() {
            return Err(EmbeddingError::Syntax {
                line: text.lines().count().max(1),
                column: 1,
                message: "missing `vertices <n>` line".into(),
            });
        }
        Self::from_rotations(rotations.into_iter().map(Option::unwrap_or_default).collect())
    }

    /// Serializes to the graph file format; `parse(to_text())` round-trips.
    pub fn to_text(&self) -> String {
        let mut out = String::from("planar 1\n");
        let _ = writeln!(out, "vertices {}", self.vertex_count());
        for (v, rot) in self.rotations.iter().enumerate() {
            let _ = write!(out, "rot {v}:");
            for u in rot {
                let _ = write!(out, " {u}");
            }
            out.push('\n');
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn dart_count(&self) -> usize {
        self.tails.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.rotations.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Clockwise neighbors of `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    /// Edges sorted lexicographically.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edge_ids.get(&e).copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edge_ids.contains_key(&Edge::new(a, b))
    }

    pub fn dart(&self, tail: usize, head: usize) -> Option<DartId> {
        let pos = self.rotations.get(tail)?.iter().position(|&x| x == head)?;
        Some(self.offsets[tail] + pos)
    }

    pub fn tail(&self, d: DartId) -> usize {
        self.tails[d]
    }

    pub fn head(&self, d: DartId) -> usize {
        self.heads[d]
    }

    pub fn twin(&self, d: DartId) -> DartId {
        self.twins[d]
    }

    pub fn dart_edge(&self, d: DartId) -> usize {
        self.dart_edge[d]
    }

    /// Next dart on the face of `d = u -> v`: leaves `v` towards the
    /// rotation successor of `u`.
    pub fn next_in_face(&self, d: DartId) -> DartId {
        let t = self.twins[d];
        let v = self.tails[t];
        let pos = t - self.offsets[v];
        self.offsets[v] + (pos + 1) % self.rotations[v].len()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn face_of_dart(&self, d: DartId) -> FaceId {
        self.dart_face[d]
    }

    /// The faces on either side of an edge (equal for a bridge).
    pub fn faces_of_edge(&self, e: Edge) -> Option<(FaceId, FaceId)> {
        let d = self.dart(e.u, e.v)?;
        Some((self.dart_face[d], self.dart_face[self.twins[d]]))
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap_or(0);
            for &y in &self.rotations[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Shortest-path edge count between `u` and `v`.
    pub fn pairwise_distance(&self, u: usize, v: usize) -> Result<usize, EmbeddingError> {
        let n = self.vertex_count();
        for x in [u, v] {
            if x >= n {
                return Err(EmbeddingError::UnknownVertex(x));
            }
        }
        Ok(self.distances_from(u)[v].expect("embeddings are connected"))
    }

    /// Side of each vertex in a proper 2-coloring, or `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let adjacency: Vec<Vec<usize>> = self.rotations.clone();
        bipartition_of(&adjacency)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn classify_degrees(&self, range_bound: usize) -> DegreeClassification {
        DegreeClassification::new(self, range_bound)
    }
}

/// 2-colors an adjacency list graph; components are handled independently.
pub(crate) fn bipartition_of(adjacency: &[Vec<usize>]) -> Option<Vec<bool>> {
    let n = adjacency.len();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            let sx = side[x].unwrap_or(false);
            for &y in &adjacency[x] {
                match side[y] {
                    None => {
                        side[y] = Some(!sx);
                        queue.push_back(y);
                    }
                    Some(sy) if sy == sx => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(side.into_iter().map(|s| s.unwrap_or(false)).collect())
}

pub(crate) fn tokenize_line(content: &str) -> Vec<(usize, &str)> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push((s + 1, &content[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push((s + 1, &content[s..]));
    }
    tokens
}

fn parse_number((column, tok): (usize, &str), line: usize) -> Result<usize, EmbeddingError> {
    tok.parse().map_err(|_| EmbeddingError::Syntax {
        line,
        column,
        message: format!("expected a non-negative integer, found `{tok}`"),
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn k4() -> PlanarEmbedding {
        PlanarEmbedding::from_rotations(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]).unwrap()
    }

    #[test]
    fn k4_has_four_triangles() {
        let emb = k4();
        assert_eq!(emb.face_count(), 4);
        assert!(emb.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn single_edge_has_one_face_of_length_two() {
        let emb = PlanarEmbedding::from_rotations(vec![vec![1], vec![0]]).unwrap();
        assert_eq!(emb.face_count(), 1);
        assert_eq!(emb.face(0).len(), 2);
    }

    #[test]
    fn k5_fails_euler() {
        let rot = (0..5).map(|v| (0..5).filter(|&u| u != v).collect()).collect();
        assert!(matches!(
            PlanarEmbedding::from_rotations(rot),
            Err(EmbeddingError::Euler(_))
        ));
    }

    #[test]
    fn star_has_one_face_of_length_eight() {
        let emb = PlanarEmbedding::from_rotations(vec![vec![1, 2, 3, 4], vec![0], vec![0], vec![0], vec![0]]).unwrap();
        assert_eq!(emb.face_count(), 1);
        assert_eq!(emb.face(0).len(), 8);
    }

    #[test]
    fn bad_k4_rotation_is_not_planar() {
        // same graph, one rotation flipped: genus 1
        let rot = vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 2, 1]];
        assert!(matches!(
            PlanarEmbedding::from_rotations(rot),
            Err(EmbeddingError::Euler(_))
        ));
    }

    #[test]
    fn rejects_asymmetric_and_disconnected() {
        assert_eq!(
            PlanarEmbedding::from_rotations(vec![vec![1], vec![]]),
            Err(EmbeddingError::Asymmetric { u: 0, v: 1 })
        );
        assert_eq!(
            PlanarEmbedding::from_rotations(vec![vec![1], vec![0], vec![3], vec![2]]),
            Err(EmbeddingError::Disconnected)
        );
        assert_eq!(
            PlanarEmbedding::from_rotations(vec![vec![1, 1], vec![0]]),
            Err(EmbeddingError::RepeatedNeighbor { vertex: 0, neighbor: 1 })
        );
        assert_eq!(
            PlanarEmbedding::from_rotations(vec![vec![]]),
            Err(EmbeddingError::NoEdges)
        );
    }

    #[test]
    fn parse_round_trip_and_comments() {
        let text = "# K4\nplanar 1\nvertices 4\nrot 0: 1 2 3\nrot 1: 0 3 2 # tail\n\nrot 2: 0 1 3\nrot 3: 0 2 1\n";
        let emb = PlanarEmbedding::parse(text).unwrap();
        assert_eq!(emb, k4());
        assert_eq!(PlanarEmbedding::parse(&emb.to_text()).unwrap(), emb);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = PlanarEmbedding::parse("planar 1\nvertices 2\nrot 0: 1 x\n").unwrap_err();
        assert_eq!(
            err,
            EmbeddingError::Syntax {
                line: 3,
                column: 10,
                message: "expected a non-negative integer, found `x`".into()
            }
        );
        let err = PlanarEmbedding::parse("planar 2\n").unwrap_err();
        assert!(matches!(err, EmbeddingError::Syntax { line: 1, column: 1, .. }));
        let err = PlanarEmbedding::parse("planar 1\nvertices 2\nrot 0 1\n").unwrap_err();
        assert!(matches!(err, EmbeddingError::Syntax { line: 3, column: 5, .. }));
    }

    #[test]
    fn distances_and_bipartition() {
        let emb = k4();
        assert_eq!(emb.pairwise_distance(0, 0).unwrap(), 0);
        assert_eq!(emb.pairwise_distance(0, 3).unwrap(), 1);
        assert!(emb.pairwise_distance(0, 9).is_err());
        assert!(!emb.is_bipartite());
        let c4 = PlanarEmbedding::from_rotations(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
        assert_eq!(c4.pairwise_distance(0, 2).unwrap(), 2);
        assert!(c4.is_bipartite());
    }

    #[test]
    fn every_dart_on_exactly_one_face() {
        let emb = k4();
        let mut seen = vec![0; emb.dart_count()];
        for f in emb.faces() {
            for &d in &f.darts {
                seen[d] += 1;
                assert_eq!(emb.face_of_dart(d), f.id);
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
    }
}

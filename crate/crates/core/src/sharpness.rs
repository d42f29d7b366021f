//! The three sharpness constructions and a verifier built on the exact solver.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::coloring::{Color, PartialTotalColoring};
use crate::planar::{Edge, PlanarEmbedding};
use crate::solver::{extend_exact, Budget, SolveError, SolveStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExampleId {
    /// Tree rooted at `v` with `k` children, each with `k - 1` leaf children.
    GreedyTree,
    /// `K_{1,t}` with every edge subdivided once.
    SubdividedStar,
    /// `K_{1,4}` with a triangle joined to each leaf.
    JoinedTriangles,
}

impl ExampleId {
    pub const ALL: [ExampleId; 3] = [
        ExampleId::GreedyTree,
        ExampleId::SubdividedStar,
        ExampleId::JoinedTriangles,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExampleId::GreedyTree => "greedy-tree",
            ExampleId::SubdividedStar => "subdivided-star",
            ExampleId::JoinedTriangles => "joined-triangles",
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExampleId {
    type Err = SharpnessError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExampleId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| SharpnessError::UnknownId(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SharpnessError {
    #[error("unknown example `{0}`; expected greedy-tree, subdivided-star or joined-triangles")]
    UnknownId(String),
    #[error("{id} needs a parameter of at least {min}, got {got:?}")]
    OutOfRange {
        id: ExampleId,
        min: usize,
        got: Option<usize>,
    },
    #[error("{0} takes no parameter")]
    UnexpectedParameter(ExampleId),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedExample {
    pub id: ExampleId,
    pub parameter: Option<usize>,
    pub embedding: PlanarEmbedding,
    /// Precoloring with palette `claimed_fail`.
    pub precoloring: PartialTotalColoring,
    /// Palette at which the precoloring is claimed not to extend.
    pub claimed_fail: Color,
    /// Palette at which it is claimed to extend, when one is claimed.
    pub claimed_ok: Option<Color>,
}

pub fn gen_example(id: ExampleId, parameter: Option<usize>) -> Result<NamedExample, SharpnessError> {
    match id {
        ExampleId::GreedyTree | ExampleId::SubdividedStar => match parameter {
            Some(p) if p >= 3 => Ok(if id == ExampleId::GreedyTree {
                greedy_tree(p)
            } else {
                subdivided_star(p)
            }),
            got => Err(SharpnessError::OutOfRange { id, min: 3, got }),
        },
        ExampleId::JoinedTriangles => match parameter {
            None => Ok(joined_triangles()),
            Some(_) => Err(SharpnessError::UnexpectedParameter(id)),
        },
    }
}

fn greedy_tree(k: usize) -> NamedExample {
    // v = 0, u_i = i, w_j^(i) = k + (i-1)(k-1) + j
    let w = |i: usize, j: usize| k + (i - 1) * (k - 1) + j;
    let n = 1 + k + k * (k - 1);
    let mut rot = vec![Vec::new(); n];
    rot[0] = (1..=k).collect();
    for i in 1..=k {
        rot[i].push(0);
        for j in 1..k {
            rot[i].push(w(i, j));
            rot[w(i, j)] = vec![i];
        }
    }
    let kc = k as Color;
    let mut c = PartialTotalColoring::new(2 * kc);
    for i in 1..=k {
        c.set_vertex(i, i as Color).unwrap();
        for j in 1..k {
            c.set_vertex(w(i, j), kc + 1).unwrap();
            let col = ((i + j) % k) as Color;
            c.set_edge(Edge::new(i, w(i, j)), if col == 0 { kc } else { col })
                .unwrap();
        }
    }
    NamedExample {
        id: ExampleId::GreedyTree,
        parameter: Some(k),
        embedding: PlanarEmbedding::from_rotations(rot).expect("tree is planar"),
        precoloring: c,
        claimed_fail: 2 * kc,
        claimed_ok: Some(2 * kc + 1),
    }
}

fn subdivided_star(t: usize) -> NamedExample {
    // v = 0, x_i = i, y_i = t + i
    let mut rot = vec![Vec::new(); 2 * t + 1];
    rot[0] = (1..=t).collect();
    for i in 1..=t {
        rot[i] = vec![0, t + i];
        rot[t + i] = vec![i];
    }
    let tc = t as Color;
    let mut c = PartialTotalColoring::new(tc + 2);
    for i in 1..=t {
        let (x, e) = if i < t { (1, 2) } else { (2, 1) };
        c.set_vertex(i, x).unwrap();
        c.set_edge(Edge::new(i, t + i), e).unwrap();
        c.set_vertex(t + i, 3).unwrap();
    }
    NamedExample {
        id: ExampleId::SubdividedStar,
        parameter: Some(t),
        embedding: PlanarEmbedding::from_rotations(rot).expect("tree is planar"),
        precoloring: c,
        claimed_fail: tc + 2,
        claimed_ok: None,
    }
}

fn joined_triangles() -> NamedExample {
    // centre 0, leaves 1..=4, triangle of leaf l = 1+i on 5+3i, 6+3i, 7+3i
    let mut rot = vec![Vec::new(); 17];
    rot[0] = vec![1, 2, 3, 4];
    let mut c = PartialTotalColoring::new(7);
    for i in 0..4 {
        let (l, a, b, t) = (1 + i, 5 + 3 * i, 6 + 3 * i, 7 + 3 * i);
        rot[l] = vec![0, t, a, b];
        rot[a] = vec![l, t, b];
        rot[b] = vec![l, a, t];
        rot[t] = vec![b, a, l];
        for (v, col) in [(a, 1), (b, 2), (t, 3)] {
            c.set_vertex(v, col).unwrap();
        }
        c.set_edge(Edge::new(b, t), 1).unwrap();
        c.set_edge(Edge::new(a, t), 2).unwrap();
        c.set_edge(Edge::new(a, b), 3).unwrap();
    }
    NamedExample {
        id: ExampleId::JoinedTriangles,
        parameter: None,
        embedding: PlanarEmbedding::from_rotations(rot).expect("blocks are planar"),
        precoloring: c,
        claimed_fail: 7,
        claimed_ok: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaletteRun {
    pub palette: Color,
    pub status: SolveStatus,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpnessReport {
    pub id: ExampleId,
    pub parameter: Option<usize>,
    /// Run at the palette claimed to fail.
    pub at_fail: PaletteRun,
    /// Run with one more color.
    pub at_next: PaletteRun,
    pub claimed_ok: Option<Color>,
}

impl SharpnessReport {
    /// The failing palette is proven impossible and, where success with one
    /// more color is claimed, that run colors the graph.
    pub fn agrees(&self) -> bool {
        self.at_fail.status == SolveStatus::ProvenImpossible
            && (self.claimed_ok.is_none() || self.at_next.status == SolveStatus::Colored)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "id": self.id,
            "parameter": self.parameter,
            "fail_palette": self.at_fail,
            "next_palette": self.at_next,
            "claimed_ok": self.claimed_ok,
            "agrees": self.agrees(),
        })
    }
}

impl fmt::Display for SharpnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let param = self.parameter.map_or(String::new(), |p| format!(" {p}"));
        write!(
            f,
            "{}{}: palette {} {}, palette {} {}{} -> {}",
            self.id,
            param,
            self.at_fail.palette,
            self.at_fail.status.as_str(),
            self.at_next.palette,
            self.at_next.status.as_str(),
            if self.claimed_ok.is_some() { " (claimed)" } else { "" },
            if self.agrees() { "agrees" } else { "DISAGREES" }
        )
    }
}

fn run(ex: &NamedExample, palette: Color, budget: Budget) -> Result<PaletteRun, SharpnessError> {
    let c = ex.precoloring.with_palette(palette).map_err(SolveError::from)?;
    let out = extend_exact(&ex.embedding, &c, budget)?;
    Ok(PaletteRun {
        palette,
        status: out.status,
        nodes: out.stats.nodes,
    })
}

/// Runs the exact solver at the claimed failing palette and at one more color.
pub fn verify_sharpness(ex: &NamedExample, budget: Budget) -> Result<SharpnessReport, SharpnessError> {
    Ok(SharpnessReport {
        id: ex.id,
        parameter: ex.parameter,
        at_fail: run(ex, ex.claimed_fail, budget)?,
        at_next: run(ex, ex.claimed_fail + 1, budget)?,
        claimed_ok: ex.claimed_ok,
    })
}

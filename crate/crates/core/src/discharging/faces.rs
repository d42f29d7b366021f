//! Face classifications: faces by number of incident vertices of degree at
//! least 3, leaves on a face, and needy faces of high vertices.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{DischargeError, InstanceParams};
use crate::planar::{Face, FaceId, PlanarEmbedding, Subgraph};

/// Faces grouped by their number of distinct incident vertices of degree ≥ 3.
pub fn tilde_face_counts(emb: &PlanarEmbedding) -> BTreeMap<usize, Vec<FaceId>> {
    let mut out: BTreeMap<usize, Vec<FaceId>> = BTreeMap::new();
    for f in emb.faces() {
        let m = f
            .distinct_vertices()
            .into_iter()
            .filter(|&v| emb.degree(v) >= 3)
            .count();
        out.entry(m).or_default().push(f.id);
    }
    out
}

/// Distinct degree-1 vertices on the walk of `f`.
pub fn leaves_of_face(emb: &PlanarEmbedding, f: &Face) -> Vec<usize> {
    f.distinct_vertices()
        .into_iter()
        .filter(|&v| emb.degree(v) == 1)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NeedyFace {
    pub face: FaceId,
    /// 1: a 3-face whose only high vertex is `v`. 2: two low-leaves hang off
    /// walk-neighbors of `v`.
    pub kind: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexNeed {
    pub vertex: usize,
    pub degree: usize,
    pub faces: Vec<NeedyFace>,
}

impl VertexNeed {
    /// `η(v)`.
    pub fn eta(&self) -> usize {
        self.faces.len()
    }

    /// `η(v) ≤ deg(v) / 2`.
    pub fn bound_holds(&self) -> bool {
        2 * self.eta() <= self.degree
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeedyReport {
    /// One entry per high vertex outside `H`, by vertex id.
    pub vertices: Vec<VertexNeed>,
}

/// Needy faces of every high vertex outside `H`; `H` must have maximum
/// degree at most 1.
pub fn needy_faces(
    emb: &PlanarEmbedding,
    h: &Subgraph,
    params: &InstanceParams,
) -> Result<NeedyReport, DischargeError> {
    h.validate(emb)?;
    if h.max_degree() > 1 {
        return Err(DischargeError::NotMatching(h.max_degree()));
    }
    let is_high = |v: usize| params.is_high(emb.degree(v));
    let is_low_leaf = |u: usize| emb.degree(u) == 1 && !is_high(emb.rotation(u)[0]);
    let mut vertices = Vec::new();
    for v in (0..emb.vertex_count()).filter(|&v| is_high(v) && !h.contains_vertex(v)) {
        let incident: BTreeSet<FaceId> = emb
            .rotation(v)
            .iter()
            .map(|&u| emb.face_of_dart(emb.dart(v, u).expect("rotation dart")))
            .collect();
        let mut faces = Vec::new();
        for fid in incident {
            let f = emb.face(fid);
            let lone_high = f.len() == 3 && f.distinct_vertices().iter().filter(|&&x| is_high(x)).count() == 1;
            if lone_high {
                faces.push(NeedyFace { face: fid, kind: 1 });
                continue;
            }
            let n = f.walk.len();
            let walk_neighbors: BTreeSet<usize> = (0..n)
                .filter(|&i| f.walk[i] == v)
                .flat_map(|i| [f.walk[(i + n - 1) % n], f.walk[(i + 1) % n]])
                .collect();
            let hanging = leaves_of_face(emb, f)
                .into_iter()
                .filter(|&u| is_low_leaf(u) && walk_neighbors.contains(&emb.rotation(u)[0]))
                .count();
            if hanging >= 2 {
                faces.push(NeedyFace { face: fid, kind: 2 });
            }
        }
        vertices.push(VertexNeed {
            vertex: v,
            degree: emb.degree(v),
            faces,
        });
    }
    Ok(NeedyReport { vertices })
}

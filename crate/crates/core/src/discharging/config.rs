//! Configurations `C(H_i) = G[N[H_i]]` of precolored cliques: poor/rich
//! classification, shape labels, scores and helpful faces.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::{DischargeError, InstanceParams};
use crate::planar::{analyze_precolored_shape, Edge, FaceId, PlanarEmbedding, Subgraph};

/// Poor configuration shapes in the order they are enumerated in the text.
/// `h` stands for the degree of the high vertex.
pub const CATALOGUE: [&str; 12] = [
    "(h)",
    "(1,2)",
    "(1,h)",
    "(2,2)",
    "(2,2,h)",
    "(2,2,3)",
    "(2,3,3)",
    "(3,3,3)",
    "(3,3,3,h)",
    "(3,3,3,4)",
    "(3,3,4,4)",
    "(3,4,4,4)",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum HelpfulStatus {
    /// Rich configuration, or a single precolored vertex.
    NotApplicable,
    Face {
        face: FaceId,
    },
    /// The clique minus its high vertex is not a component of `G - v`.
    Ineligible {
        reason: String,
    },
    /// More than one face qualifies.
    Ambiguous {
        faces: Vec<FaceId>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigReport {
    pub index: usize,
    pub clique: Vec<usize>,
    pub closed_neighborhood: Vec<usize>,
    /// Degrees of the clique vertices, ascending.
    pub signature: Vec<usize>,
    /// Signature with high degrees written as `h`, e.g. `(2,2,h)`.
    pub label: String,
    pub high_vertices: Vec<usize>,
    pub poor: bool,
    /// 1-based position in [`CATALOGUE`] for poor configurations that match.
    pub shape: Option<usize>,
    pub score: i64,
    /// 3-faces containing an edge of the clique.
    pub triangles: Vec<FaceId>,
    pub helpful: HelpfulStatus,
}

impl ConfigReport {
    pub fn size(&self) -> usize {
        self.clique.len()
    }

    /// Claim-6 bound for this configuration: 0, 5 or 6 when poor, 6 otherwise.
    pub fn score_bound(&self) -> i64 {
        match (self.poor, self.size()) {
            (true, 1) => 0,
            (true, 2) => 5,
            _ => 6,
        }
    }
}

/// One report per component of `h`, which must be a set of cliques at
/// pairwise distance at least 3.
pub fn configurations(
    emb: &PlanarEmbedding,
    h: &Subgraph,
    params: &InstanceParams,
) -> Result<Vec<ConfigReport>, DischargeError> {
    let shape = analyze_precolored_shape(emb, h, 3)?;
    if let Some(c) = shape.components.iter().find(|c| !c.is_complete()) {
        return Err(DischargeError::NotCliques(c.vertices.clone()));
    }
    if let Some(sep) = shape.separation.filter(|&s| s < 3) {
        return Err(DischargeError::Overlap(sep));
    }
    let mut reports = Vec::with_capacity(shape.components.len());
    for (index, comp) in shape.components.iter().enumerate() {
        reports.push(config_report(emb, params, index, &comp.vertices, &comp.edges));
    }
    Ok(reports)
}

fn config_report(
    emb: &PlanarEmbedding,
    params: &InstanceParams,
    index: usize,
    clique: &[usize],
    edges: &[Edge],
) -> ConfigReport {
    let mut closed: BTreeSet<usize> = clique.iter().copied().collect();
    for &v in clique {
        closed.extend(emb.rotation(v).iter().copied());
    }
    let high_vertices: Vec<usize> = closed
        .iter()
        .copied()
        .filter(|&v| params.is_high(emb.degree(v)))
        .collect();
    let poor = high_vertices.len() <= 1;

    let mut by_degree: Vec<usize> = clique.to_vec();
    by_degree.sort_by_key(|&v| (emb.degree(v), v));
    let signature: Vec<usize> = by_degree.iter().map(|&v| emb.degree(v)).collect();
    let parts: Vec<String> = signature
        .iter()
        .map(|&d| {
            if params.is_high(d) {
                "h".to_string()
            } else {
                d.to_string()
            }
        })
        .collect();
    let label = format!("({})", parts.join(","));

    let edge_set: BTreeSet<Edge> = edges.iter().copied().collect();
    let triangles: Vec<FaceId> = emb
        .faces()
        .iter()
        .filter(|f| f.len() == 3 && f.edges().any(|e| edge_set.contains(&e)))
        .map(|f| f.id)
        .collect();
    let deficiency: i64 = clique
        .iter()
        .map(|&v| emb.degree(v))
        .filter(|d| (1..=3).contains(d))
        .map(|d| 4 - d as i64)
        .sum();
    let score = deficiency + triangles.len() as i64;

    let shape = if poor && high_vertices.len() == 1 {
        let hv = high_vertices[0];
        let k = clique.len();
        let side_condition = clique
            .iter()
            .filter(|&&v| v != hv && emb.degree(v) == k)
            .all(|&v| emb.has_edge(v, hv));
        CATALOGUE
            .iter()
            .position(|&s| s == label)
            .filter(|_| side_condition)
            .map(|i| i + 1)
    } else {
        None
    };

    let helpful = if poor && clique.len() >= 2 {
        match high_vertices.as_slice() {
            [v] => helpful_face(emb, clique, &edge_set, *v),
            _ => HelpfulStatus::Ineligible {
                reason: "no high vertex".into(),
            },
        }
    } else {
        HelpfulStatus::NotApplicable
    };

    ConfigReport {
        index,
        clique: clique.to_vec(),
        closed_neighborhood: closed.into_iter().collect(),
        signature,
        label,
        high_vertices,
        poor,
        shape,
        score,
        triangles,
        helpful,
    }
}

/// The face that contains an edge of the clique and a dart at `v` leading
/// out of `X ∪ {v}`, where `X = V(H_i) - v` must be a component of `G - v`.
fn helpful_face(emb: &PlanarEmbedding, clique: &[usize], edges: &BTreeSet<Edge>, v: usize) -> HelpfulStatus {
    let x: BTreeSet<usize> = clique.iter().copied().filter(|&u| u != v).collect();
    let mut seen: BTreeSet<usize> = x.clone();
    let mut queue: VecDeque<usize> = x.iter().copied().collect();
    while let Some(a) = queue.pop_front() {
        for &b in emb.rotation(a) {
            if b != v && seen.insert(b) {
                queue.push_back(b);
            }
        }
    }
    if seen != x {
        return HelpfulStatus::Ineligible {
            reason: format!("clique minus v{v} is not a component of G - v{v}"),
        };
    }
    let outside = |u: usize| u != v && !x.contains(&u);
    let faces: Vec<FaceId> = emb
        .faces()
        .iter()
        .filter(|f| {
            let n = f.walk.len();
            let has_clique_edge = f.edges().any(|e| edges.contains(&e));
            let leaves_block = (0..n).any(|i| {
                let (a, b) = (f.walk[i], f.walk[(i + 1) % n]);
                (a == v && outside(b)) || (b == v && outside(a))
            });
            has_clique_edge && leaves_block
        })
        .map(|f| f.id)
        .collect();
    match faces.as_slice() {
        [] => HelpfulStatus::Ineligible {
            reason: format!("v{v} has no edge leaving the configuration"),
        },
        [face] => HelpfulStatus::Face { face: *face },
        _ => HelpfulStatus::Ambiguous { faces },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HelpfulFaceReport {
    pub face: FaceId,
    pub length: usize,
    /// Poor configurations with two clique vertices helped by this face.
    pub x2: usize,
    /// Poor configurations with at least three clique vertices.
    pub x3: usize,
    pub configs: Vec<usize>,
}

impl HelpfulFaceReport {
    /// `ℓ ≥ 4(x2 + x3)`, sharpened to 5 or 6 for a single configuration.
    pub fn required_length(&self) -> usize {
        match (self.x2, self.x3) {
            (1, 0) => 5,
            (0, 1) => 6,
            (a, b) => 4 * (a + b),
        }
    }

    pub fn claim_holds(&self) -> bool {
        self.length >= self.required_length()
    }
}

/// Tallies helpful faces over the configurations.
pub fn helpful_faces(emb: &PlanarEmbedding, configs: &[ConfigReport]) -> Vec<HelpfulFaceReport> {
    let mut by_face: BTreeMap<FaceId, HelpfulFaceReport> = BTreeMap::new();
    for c in configs {
        if let HelpfulStatus::Face { face } = c.helpful {
            let r = by_face.entry(face).or_insert_with(|| HelpfulFaceReport {
                face,
                length: emb.face(face).len(),
                x2: 0,
                x3: 0,
                configs: Vec::new(),
            });
            if c.size() == 2 {
                r.x2 += 1;
            } else {
                r.x3 += 1;
            }
            r.configs.push(c.index);
        }
    }
    by_face.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{Corner, RotationBuilder};

    /// Vertex 0 padded with leaves to degree `deg`, plus whatever `extra` adds.
    fn hub_with_leaves(deg: usize) -> RotationBuilder {
        let mut b = RotationBuilder::edge();
        while b.degree(0) < deg {
            let from = b.rotations()[0][0];
            b.add_leaf(Corner { vertex: 0, from });
        }
        b
    }

    fn params() -> InstanceParams {
        InstanceParams { delta: 27, t: 1, d: 1 }
    }

    #[test]
    fn isolated_high_vertex() {
        let emb = hub_with_leaves(27).build().unwrap();
        let h = Subgraph::spanned([0], []);
        let cs = configurations(&emb, &h, &params()).unwrap();
        assert_eq!(cs[0].label, "(h)");
        assert!(cs[0].poor);
        assert_eq!(cs[0].shape, Some(1));
        assert_eq!(cs[0].score, 0);
        assert_eq!(cs[0].helpful, HelpfulStatus::NotApplicable);
    }

    #[test]
    fn pendant_edge_one_two() {
        // hub 0 with leaves; path 0 - a - b, H = ab with deg(a)=2, deg(b)=1
        let mut b = hub_with_leaves(26);
        let a = b.add_leaf(Corner { vertex: 0, from: 1 });
        let leaf = b.add_pendant(a);
        let emb = b.build().unwrap();
        let h = Subgraph::spanned([a, leaf], [Edge::new(a, leaf)]);
        let cs = configurations(&emb, &h, &params()).unwrap();
        let c = &cs[0];
        assert_eq!(c.label, "(1,2)");
        assert_eq!(c.shape, Some(2));
        assert_eq!(c.score, 5);
        let HelpfulStatus::Face { face } = c.helpful else {
            panic!("{:?}", c.helpful)
        };
        let report = helpful_faces(&emb, &cs);
        assert_eq!(report[0].face, face);
        assert_eq!((report[0].x2, report[0].x3), (1, 0));
        assert_eq!(report[0].required_length(), 5);
        assert!(report[0].claim_holds());
    }

    #[test]
    fn triangle_with_high_vertex() {
        let mut b = hub_with_leaves(25);
        let a = b.add_leaf(Corner { vertex: 0, from: 1 });
        let c = b.add_leaf(Corner { vertex: 0, from: a });
        let face = b
            .faces()
            .into_iter()
            .find(|f| f.iter().any(|x| x.vertex == a) && f.iter().any(|x| x.vertex == c))
            .unwrap();
        let ca = *face.iter().find(|x| x.vertex == a).unwrap();
        let cc = *face.iter().find(|x| x.vertex == c).unwrap();
        b.add_chord(ca, cc);
        let emb = b.build().unwrap();
        let h = Subgraph::spanned([0, a, c], [Edge::new(0, a), Edge::new(0, c), Edge::new(a, c)]);
        let cs = configurations(&emb, &h, &params()).unwrap();
        assert_eq!(cs[0].label, "(2,2,h)");
        assert_eq!(cs[0].shape, Some(5));
        assert_eq!(cs[0].score, 5);
        assert!(matches!(cs[0].helpful, HelpfulStatus::Face { .. }));
    }

    #[test]
    fn close_cliques_are_rejected() {
        let emb = crate::planar::tests::k4();
        let h = Subgraph::spanned([0, 1], []);
        assert_eq!(configurations(&emb, &h, &params()), Err(DischargeError::Overlap(1)));
        let h = Subgraph::spanned([0, 1, 2], [Edge::new(0, 1), Edge::new(1, 2)]);
        assert!(matches!(
            configurations(&emb, &h, &params()),
            Err(DischargeError::NotCliques(_))
        ));
    }
}

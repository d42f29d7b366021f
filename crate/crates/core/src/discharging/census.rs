//! Census of small configurations: every precolored clique of size at most 4
//! together with up to two high hubs, filtered by the degree-sum condition,
//! with each poor configuration checked against the catalogue and every
//! score against its bound.

use std::collections::BTreeMap;

use serde::Serialize;

use super::audit::degree_sum_holds;
use super::config::configurations;
use super::InstanceParams;
use crate::planar::{Corner, Edge, PlanarEmbedding, RotationBuilder, Subgraph};

const DELTA: usize = 27;
const T: usize = 1;

/// An instance produced by the generator.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub description: String,
    pub embedding: PlanarEmbedding,
    pub precolored: Subgraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub label: String,
    pub poor: bool,
    pub shape: Option<usize>,
    pub score: i64,
    pub bound: i64,
    pub count: usize,
    /// Description of the first instance seen with this outcome.
    pub example: String,
}

impl CensusEntry {
    pub fn catalogued(&self) -> bool {
        !self.poor || self.shape.is_some()
    }

    pub fn within_bound(&self) -> bool {
        self.score <= self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub params: InstanceParams,
    pub generated: usize,
    pub accepted: usize,
    pub entries: Vec<CensusEntry>,
}

impl CensusReport {
    pub fn uncatalogued(&self) -> Vec<&CensusEntry> {
        self.entries.iter().filter(|e| !e.catalogued()).collect()
    }

    pub fn over_bound(&self) -> Vec<&CensusEntry> {
        self.entries.iter().filter(|e| !e.within_bound()).collect()
    }

    /// Every poor configuration is catalogued and every score within bound.
    pub fn complete(&self) -> bool {
        self.uncatalogued().is_empty() && self.over_bound().is_empty()
    }
}

fn clique(size: usize) -> RotationBuilder {
    let mut b = match size {
        1 => {
            let mut b = RotationBuilder::new();
            b.add_vertex();
            return b;
        }
        _ => RotationBuilder::edge(),
    };
    if size >= 3 {
        b.add_leaf(Corner { vertex: 0, from: 1 });
        let face = b.faces()[0].clone();
        let c1 = *face.iter().find(|c| c.vertex == 1).unwrap();
        let c2 = *face.iter().find(|c| c.vertex == 2).unwrap();
        b.add_chord(c1, c2);
    }
    if size == 4 {
        let face = b.faces()[0].clone();
        b.insert_star(&face);
    }
    b
}

fn pad(b: &mut RotationBuilder, v: usize, degree: usize) {
    while b.degree(v) < degree {
        match b.rotations()[v].first().copied() {
            Some(from) => b.add_leaf(Corner { vertex: v, from }),
            None => b.add_pendant(v),
        };
    }
}

/// Corner lists, one per face containing every vertex of `set`, taking the
/// first corner of each vertex along the walk.
fn star_sites(b: &RotationBuilder, set: &[usize]) -> Vec<Vec<Corner>> {
    if set.len() == 1 && b.degree(set[0]) == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for face in b.faces() {
        let mut corners: Vec<Corner> = Vec::new();
        for c in &face {
            if set.contains(&c.vertex) && !corners.iter().any(|x| x.vertex == c.vertex) {
                corners.push(*c);
            }
        }
        if corners.len() == set.len() {
            out.push(corners);
        }
    }
    out
}

fn place_hub(b: &mut RotationBuilder, set: &[usize], site: &[Corner]) -> usize {
    if site.is_empty() {
        b.add_pendant(set[0])
    } else {
        b.insert_star(site)
    }
}

fn subsets(size: usize) -> Vec<Vec<usize>> {
    (1u32..1 << size)
        .map(|mask| (0..size).filter(|&i| mask & (1 << i) != 0).collect())
        .collect()
}

fn finish(mut b: RotationBuilder, size: usize, high: bool, hubs: &[usize], description: String) -> GeneratedInstance {
    for &z in hubs {
        pad(&mut b, z, DELTA);
    }
    if high {
        pad(&mut b, 0, DELTA);
    }
    let vertices: Vec<usize> = (0..size).collect();
    let edges: Vec<Edge> = (0..size)
        .flat_map(|a| (a + 1..size).map(move |c| Edge::new(a, c)))
        .collect();
    GeneratedInstance {
        description,
        embedding: b.build().expect("builder keeps planarity"),
        precolored: Subgraph::spanned(vertices, edges),
    }
}

/// Cliques `K_1..K_4`, optionally with one clique vertex raised to degree
/// `Δ`, and zero to two hubs of degree `Δ` attached to subsets of the clique
/// through each face that admits them. `Δ = 27`, `t = 1`.
pub fn generate_small_configurations() -> Vec<GeneratedInstance> {
    let mut out = Vec::new();
    for size in 1..=4 {
        let base = clique(size);
        let sets = subsets(size);
        for high in [false, true] {
            let tag = |s: &str| format!("K{size}{}{s}", if high { " high v0" } else { "" });
            if high {
                out.push(finish(base.clone(), size, high, &[], tag("")));
            }
            for (i, a) in sets.iter().enumerate() {
                for (si, site) in star_sites(&base, a).iter().enumerate() {
                    let mut b1 = base.clone();
                    let z1 = place_hub(&mut b1, a, site);
                    out.push(finish(b1.clone(), size, high, &[z1], tag(&format!(" hub{a:?}@{si}"))));
                    for c in &sets[i..] {
                        for (sj, site2) in star_sites(&b1, c).iter().enumerate() {
                            let mut b2 = b1.clone();
                            let z2 = place_hub(&mut b2, c, site2);
                            let d = format!(" hub{a:?}@{si} hub{c:?}@{sj}");
                            out.push(finish(b2, size, high, &[z1, z2], tag(&d)));
                        }
                    }
                }
            }
        }
    }
    out
}

fn is_complete(emb: &PlanarEmbedding) -> bool {
    let n = emb.vertex_count();
    emb.edge_count() == n * (n - 1) / 2
}

/// Runs the generator and classifies every instance that has `Δ = 27`, is
/// not complete, and satisfies the degree-sum condition at `t = 1`.
pub fn small_configuration_census() -> CensusReport {
    let instances = generate_small_configurations();
    let params = InstanceParams {
        delta: DELTA,
        t: T,
        d: 1,
    };
    let mut accepted = 0;
    let mut entries: BTreeMap<(String, bool, Option<usize>, i64), CensusEntry> = BTreeMap::new();
    for inst in &instances {
        let emb = &inst.embedding;
        if emb.max_degree() != DELTA || is_complete(emb) || !degree_sum_holds(emb, &inst.precolored, &params) {
            continue;
        }
        let Ok(configs) = configurations(emb, &inst.precolored, &params) else {
            continue;
        };
        accepted += 1;
        for c in configs {
            let key = (c.label.clone(), c.poor, c.shape, c.score);
            entries
                .entry(key)
                .and_modify(|e| e.count += 1)
                .or_insert_with(|| CensusEntry {
                    label: c.label.clone(),
                    poor: c.poor,
                    shape: c.shape,
                    score: c.score,
                    bound: c.score_bound(),
                    count: 1,
                    example: inst.description.clone(),
                });
        }
    }
    CensusReport {
        params,
        generated: instances.len(),
        accepted,
        entries: entries.into_values().collect(),
    }
}

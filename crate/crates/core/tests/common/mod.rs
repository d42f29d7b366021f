//! Random fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use totalext::coloring::{conflicts, forbidden_colors, uncolored_items};
use totalext::planar::{Corner, RotationBuilder};
use totalext::{Color, ColorSet, Edge, Item, PartialTotalColoring, PlanarEmbedding, Subgraph};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Connected planar embedding on `n >= 2` vertices grown by leaves, stars
/// and chords inside random faces.
pub fn random_planar(rng: &mut StdRng, n: usize, chord_rate: f64) -> PlanarEmbedding {
    let mut b = RotationBuilder::edge();
    while b.vertex_count() < n {
        let faces = b.faces();
        let face = faces.choose(rng).unwrap();
        if rng.gen_bool(0.5) {
            b.add_leaf(*face.choose(rng).unwrap());
        } else {
            let corners = distinct_corners(face);
            let take = rng.gen_range(1..=corners.len().min(4));
            let start = rng.gen_range(0..corners.len());
            let picked: Vec<Corner> = (0..take).map(|i| corners[(start + i) % corners.len()]).collect();
            let mut ordered = picked.clone();
            ordered.sort_by_key(|c| face.iter().position(|x| x == c).unwrap());
            b.insert_star(&ordered);
        }
        add_chords(rng, &mut b, chord_rate, |_, _| true);
    }
    b.build().expect("builder output is planar")
}

/// Connected planar bipartite embedding on `n >= 2` vertices.
pub fn random_bipartite_planar(rng: &mut StdRng, n: usize, chord_rate: f64) -> PlanarEmbedding {
    let mut b = RotationBuilder::edge();
    let mut side = vec![false, true];
    while b.vertex_count() < n {
        let faces = b.faces();
        let face = faces.choose(rng).unwrap();
        let corners = distinct_corners(face);
        let target = rng.gen_bool(0.5);
        let same: Vec<Corner> = corners.iter().copied().filter(|c| side[c.vertex] == target).collect();
        if same.len() >= 2 && rng.gen_bool(0.5) {
            let take = rng.gen_range(2..=same.len().min(3));
            b.insert_star(&same[..take]);
        } else {
            let c = *corners.choose(rng).unwrap();
            b.add_leaf(c);
            side.push(!side[c.vertex]);
            continue;
        }
        side.push(!target);
        let sides = side.clone();
        add_chords(rng, &mut b, chord_rate, |a, c| sides[a] != sides[c]);
    }
    b.build().expect("builder output is planar")
}

fn distinct_corners(face: &[Corner]) -> Vec<Corner> {
    let mut seen = BTreeSet::new();
    face.iter().copied().filter(|c| seen.insert(c.vertex)).collect()
}

fn add_chords(rng: &mut StdRng, b: &mut RotationBuilder, rate: f64, allowed: impl Fn(usize, usize) -> bool) {
    if !rng.gen_bool(rate) {
        return;
    }
    let faces = b.faces();
    let face = faces.choose(rng).unwrap();
    let corners = distinct_corners(face);
    if corners.len() < 2 {
        return;
    }
    for _ in 0..4 {
        let x = *corners.choose(rng).unwrap();
        let y = *corners.choose(rng).unwrap();
        if x.vertex != y.vertex && !b.has_edge(x.vertex, y.vertex) && allowed(x.vertex, y.vertex) {
            b.add_chord(x, y);
            return;
        }
    }
}

/// Random subgraph: each edge with probability `pe`, each further vertex with
/// probability `pv`.
pub fn random_subgraph(rng: &mut StdRng, emb: &PlanarEmbedding, pv: f64, pe: f64) -> Subgraph {
    let edges: Vec<Edge> = emb.edges().iter().copied().filter(|_| rng.gen_bool(pe)).collect();
    let vertices: Vec<usize> = (0..emb.vertex_count()).filter(|_| rng.gen_bool(pv)).collect();
    Subgraph::spanned(vertices, edges)
}

/// Colors the items of `h` one at a time with a random admissible color;
/// `None` if some item has no admissible color left.
pub fn random_precoloring(
    rng: &mut StdRng,
    emb: &PlanarEmbedding,
    h: &Subgraph,
    k: Color,
) -> Option<PartialTotalColoring> {
    let mut items: Vec<Item> = h.vertices().iter().map(|&v| Item::vertex(v)).collect();
    items.extend(h.edges().iter().map(|&e| Item::edge(e)));
    items.shuffle(rng);
    let mut c = PartialTotalColoring::new(k);
    for item in items {
        let forbidden = forbidden_colors(emb, &c, item);
        let options: Vec<Color> = (1..=k).filter(|&x| !forbidden.contains(x)).collect();
        c.set(item, *options.choose(rng)?).unwrap();
    }
    Some(c)
}

/// Matching of `emb` with isolated vertices added at random.
pub fn random_matching(rng: &mut StdRng, emb: &PlanarEmbedding) -> Subgraph {
    let mut edges: Vec<Edge> = emb.edges().to_vec();
    edges.shuffle(rng);
    let mut used = vec![false; emb.vertex_count()];
    let mut chosen = Vec::new();
    for e in edges {
        if !used[e.u] && !used[e.v] && rng.gen_bool(0.5) {
            used[e.u] = true;
            used[e.v] = true;
            chosen.push(e);
        }
    }
    let extra: Vec<usize> = (0..emb.vertex_count())
        .filter(|&v| !used[v] && rng.gen_bool(0.1))
        .collect();
    Subgraph::spanned(extra, chosen)
}

/// Edge subset with every vertex of degree at most `d`.
pub fn random_bounded_degree(rng: &mut StdRng, emb: &PlanarEmbedding, d: usize) -> Subgraph {
    let mut edges: Vec<Edge> = emb.edges().to_vec();
    edges.shuffle(rng);
    let mut deg = vec![0; emb.vertex_count()];
    let mut chosen = Vec::new();
    for e in edges {
        if deg[e.u] < d && deg[e.v] < d && rng.gen_bool(0.5) {
            deg[e.u] += 1;
            deg[e.v] += 1;
            chosen.push(e);
        }
    }
    Subgraph::spanned([], chosen)
}

/// Cliques (single vertices, edges, triangular faces) at pairwise distance
/// at least 3.
pub fn random_clique_set(rng: &mut StdRng, emb: &PlanarEmbedding) -> Subgraph {
    let n = emb.vertex_count();
    let mut candidates: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    candidates.extend(emb.edges().iter().map(|e| vec![e.u, e.v]));
    for f in emb.faces() {
        let vs = f.distinct_vertices();
        if f.len() == 3 && vs.len() == 3 {
            candidates.push(vs);
        }
    }
    candidates.shuffle(rng);
    let mut blocked = vec![false; n];
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for cand in candidates {
        if cand.iter().any(|&v| blocked[v]) || !rng.gen_bool(0.4) {
            continue;
        }
        for &v in &cand {
            for (u, d) in emb.distances_from(v).into_iter().enumerate() {
                if d.is_some_and(|d| d <= 2) {
                    blocked[u] = true;
                }
            }
        }
        for (i, &a) in cand.iter().enumerate() {
            for &b in &cand[i + 1..] {
                edges.push(Edge::new(a, b));
            }
        }
        vertices.extend(cand);
    }
    Subgraph::spanned(vertices, edges)
}

/// Chronological backtracking over the uncolored items in a fixed order,
/// each tried with colors `1..=k`; no propagation or ordering heuristics.
pub fn naive_extends(emb: &PlanarEmbedding, c: &PartialTotalColoring) -> bool {
    let items = uncolored_items(emb, c);
    let neighbours: Vec<Vec<Item>> = items.iter().map(|&i| conflicts(emb, i)).collect();
    let mut work = c.clone();
    fn go(i: usize, items: &[Item], nb: &[Vec<Item>], work: &mut PartialTotalColoring) -> bool {
        if i == items.len() {
            return true;
        }
        for col in 1..=work.palette() {
            if nb[i].iter().any(|&x| work.get(x) == Some(col)) {
                continue;
            }
            work.set(items[i], col).unwrap();
            if go(i + 1, items, nb, work) {
                return true;
            }
            work.unset(items[i]);
        }
        false
    }
    go(0, &items, &neighbours, &mut work)
}

/// Random list of `size` colors from `1..=k`.
pub fn random_list(rng: &mut StdRng, size: usize, k: Color) -> ColorSet {
    let mut all: Vec<Color> = (1..=k).collect();
    all.shuffle(rng);
    all.into_iter().take(size).collect()
}

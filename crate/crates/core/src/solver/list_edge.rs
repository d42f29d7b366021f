//! List edge coloring of bipartite graphs by the kernel method.
//!
//! Each vertex ranks its incident edges (rank 0 = most preferred). Orient
//! `e -> f` when `e` and `f` share a vertex that prefers `f`. The out-degree
//! of `e = xy` is then `rank_x(e) + rank_y(e)`. In a bipartite line graph
//! every induced subdigraph of such an orientation has a kernel, namely a
//! stable matching of the corresponding edges. So if every edge has
//! out-degree below its list size, colors can be handed out one at a time:
//! take the uncolored edges whose list contains `c`, color a kernel of them
//! with `c`, and drop `c` from the rest. Each edge that loses a color also
//! loses an out-neighbor, so lists stay larger than out-degrees and every
//! edge ends up colored.
//!
//! Ranks come from a proper edge coloring with `Δ` colors (one side prefers
//! larger colors, the other smaller). That order can exceed a list bound of
//! `max(deg x, deg y)` when the endpoint degrees are unbalanced. In that case
//! a small search over rank systems, seeded by the coloring's ranks, looks for
//! one that fits. If none is found within budget, an exhaustive search over
//! colorings takes over and the result says so.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use super::csp::{self, CspResult};
use super::Budget;
use crate::coloring::{Color, ColorSet};
use crate::planar::{bipartition_of, Edge};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeColoringRoute {
    Kernel,
    ExhaustiveFallback,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListEdgeColoring {
    /// Color of `edges[i]`.
    pub colors: Vec<Color>,
    pub route: EdgeColoringRoute,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListEdgeError {
    #[error("{edges} edges but {lists} lists")]
    LengthMismatch { edges: usize, lists: usize },
    #[error("edge {0} has an endpoint out of range")]
    UnknownVertex(Edge),
    #[error("edge {0} is listed twice")]
    DuplicateEdge(Edge),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("list of edge {edge} has {size} colors, needs at least {required}")]
    ListTooSmall { edge: Edge, size: usize, required: usize },
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("no coloring from the lists exists")]
    Infeasible,
}

struct Bipartite<'a> {
    n: usize,
    edges: &'a [Edge],
    /// `true` for the right side.
    side: Vec<bool>,
    incident: Vec<Vec<usize>>,
}

impl<'a> Bipartite<'a> {
    fn new(n: usize, edges: &'a [Edge]) -> Result<Self, ListEdgeError> {
        let mut incident = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (i, &e) in edges.iter().enumerate() {
            if e.v >= n {
                return Err(ListEdgeError::UnknownVertex(e));
            }
            if !seen.insert(e) {
                return Err(ListEdgeError::DuplicateEdge(e));
            }
            incident[e.u].push(i);
            incident[e.v].push(i);
        }
        let adjacency: Vec<Vec<usize>> = (0..n)
            .map(|v| incident[v].iter().map(|&i| edges[i].other(v)).collect())
            .collect();
        let side = bipartition_of(&adjacency).ok_or(ListEdgeError::NotBipartite)?;
        Ok(Bipartite {
            n,
            edges,
            side,
            incident,
        })
    }

    fn left(&self, e: usize) -> usize {
        let Edge { u, v } = self.edges[e];
        if self.side[u] {
            v
        } else {
            u
        }
    }

    fn right(&self, e: usize) -> usize {
        self.edges[e].other(self.left(e))
    }

    fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    fn max_degree(&self) -> usize {
        self.incident.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn line_graph(&self) -> Vec<Vec<usize>> {
        (0..self.edges.len())
            .map(|e| {
                let Edge { u, v } = self.edges[e];
                self.incident[u]
                    .iter()
                    .chain(&self.incident[v])
                    .copied()
                    .filter(|&f| f != e)
                    .collect()
            })
            .collect()
    }
}

/// Proper edge coloring with colors `1..=Δ` by alternating-path recoloring.
pub fn konig_edge_coloring(n: usize, edges: &[Edge]) -> Result<Vec<Color>, ListEdgeError> {
    let g = Bipartite::new(n, edges)?;
    Ok(konig(&g))
}

fn konig(g: &Bipartite<'_>) -> Vec<Color> {
    let delta = g.max_degree();
    let m = g.edges.len();
    let mut at: Vec<Vec<Option<usize>>> = vec![vec![None; delta + 1]; g.n];
    let mut color = vec![0usize; m];
    for e in 0..m {
        let (x, y) = (g.left(e), g.right(e));
        let a = (1..=delta).find(|&c| at[x][c].is_none()).expect("x has a free color");
        if at[y][a].is_some() {
            let b = (1..=delta).find(|&c| at[y][c].is_none()).expect("y has a free color");
            // the a/b path from y cannot reach x, which misses a
            let mut path = Vec::new();
            let (mut cur, mut want) = (y, a);
            while let Some(f) = at[cur][want] {
                path.push(f);
                cur = g.edges[f].other(cur);
                want = if want == a { b } else { a };
            }
            for &f in &path {
                let Edge { u, v } = g.edges[f];
                at[u][color[f]] = None;
                at[v][color[f]] = None;
            }
            for &f in &path {
                color[f] = if color[f] == a { b } else { a };
                let Edge { u, v } = g.edges[f];
                at[u][color[f]] = Some(f);
                at[v][color[f]] = Some(f);
            }
        }
        color[e] = a;
        at[x][a] = Some(e);
        at[y][a] = Some(e);
    }
    color.into_iter().map(|c| c as Color).collect()
}

/// Rank of each edge at its left and right endpoint.
#[derive(Debug, Clone)]
struct Ranks {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Ranks {
    /// Left vertices prefer larger colors, right vertices smaller ones.
    fn from_coloring(g: &Bipartite<'_>, color: &[Color]) -> Self {
        let m = g.edges.len();
        let mut left = vec![0; m];
        let mut right = vec![0; m];
        for e in 0..m {
            let (x, y) = (g.left(e), g.right(e));
            left[e] = g.incident[x].iter().filter(|&&f| color[f] > color[e]).count();
            right[e] = g.incident[y].iter().filter(|&&f| color[f] < color[e]).count();
        }
        Ranks { left, right }
    }

    fn reversed(&self, g: &Bipartite<'_>) -> Self {
        let m = g.edges.len();
        Ranks {
            left: (0..m).map(|e| g.degree(g.left(e)) - 1 - self.left[e]).collect(),
            right: (0..m).map(|e| g.degree(g.right(e)) - 1 - self.right[e]).collect(),
        }
    }

    fn fits(&self, lists: &[ColorSet]) -> bool {
        lists
            .iter()
            .enumerate()
            .all(|(e, l)| self.left[e] + self.right[e] < l.len())
    }
}

/// Searches rank systems with `rank_x(e) + rank_y(e) < |L(e)|`.
///
/// Variables are (edge, endpoint) slots; ranks at one vertex are all
/// different. Values are tried closest-first to `seed`.
fn search_ranks(g: &Bipartite<'_>, lists: &[ColorSet], seed: &Ranks, budget: u64) -> Option<Ranks> {
    let m = g.edges.len();
    let slots = 2 * m;
    let vertex_of = |s: usize| {
        if s.is_multiple_of(2) {
            g.left(s / 2)
        } else {
            g.right(s / 2)
        }
    };
    let seed_of = |s: usize| {
        if s.is_multiple_of(2) {
            seed.left[s / 2]
        } else {
            seed.right[s / 2]
        }
    };
    let cap = |s: usize| lists[s / 2].len();

    // ranks are stored shifted by one so that rank 0 fits a color set
    let mut domains: Vec<ColorSet> = (0..slots)
        .map(|s| {
            let top = g.degree(vertex_of(s)).min(cap(s));
            (1..=top as Color).collect()
        })
        .collect();
    if domains.iter().any(ColorSet::is_empty) {
        return None;
    }
    let mut sizes: Vec<usize> = domains.iter().map(ColorSet::len).collect();
    let siblings: Vec<Vec<usize>> = (0..slots)
        .map(|s| {
            let v = vertex_of(s);
            g.incident[v]
                .iter()
                .map(|&f| if g.left(f) == v { 2 * f } else { 2 * f + 1 })
                .filter(|&t| t != s)
                .collect()
        })
        .collect();
    let mut value: Vec<Option<usize>> = vec![None; slots];
    let mut trail: Vec<(usize, Color)> = Vec::new();
    let mut nodes = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn go(
        value: &mut Vec<Option<usize>>,
        domains: &mut Vec<ColorSet>,
        sizes: &mut Vec<usize>,
        trail: &mut Vec<(usize, Color)>,
        nodes: &mut u64,
        budget: u64,
        siblings: &[Vec<usize>],
        seed_of: &dyn Fn(usize) -> usize,
        cap: &dyn Fn(usize) -> usize,
    ) -> Option<bool> {
        let Some(s) = (0..value.len())
            .filter(|&s| value[s].is_none())
            .min_by_key(|&s| (sizes[s], s))
        else {
            return Some(true);
        };
        let target = seed_of(s);
        let mut order: Vec<usize> = domains[s].iter().map(|r| r as usize - 1).collect();
        order.sort_by_key(|&r| (r.abs_diff(target), r));
        let partner = s ^ 1;
        for r in order {
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            value[s] = Some(r);
            let mark = trail.len();
            let mut wiped = false;
            for &t in &siblings[s] {
                if value[t].is_none() && domains[t].remove(r as Color + 1) {
                    trail.push((t, r as Color + 1));
                    sizes[t] -= 1;
                    if sizes[t] == 0 {
                        wiped = true;
                        break;
                    }
                }
            }
            if !wiped && value[partner].is_none() {
                let limit = cap(s) - 1 - r;
                let over: Vec<Color> = domains[partner].iter().filter(|&x| x as usize - 1 > limit).collect();
                for x in over {
                    domains[partner].remove(x);
                    trail.push((partner, x));
                    sizes[partner] -= 1;
                }
                wiped = sizes[partner] == 0;
            }
            if !wiped {
                match go(value, domains, sizes, trail, nodes, budget, siblings, seed_of, cap) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            while trail.len() > mark {
                let (t, x) = trail.pop().expect("trail above mark");
                domains[t].insert(x);
                sizes[t] += 1;
            }
            value[s] = None;
        }
        Some(false)
    }

    let found = go(
        &mut value,
        &mut domains,
        &mut sizes,
        &mut trail,
        &mut nodes,
        budget,
        &siblings,
        &seed_of,
        &cap,
    );
    if found != Some(true) {
        return None;
    }
    let ranks = Ranks {
        left: (0..m).map(|e| value[2 * e].expect("assigned")).collect(),
        right: (0..m).map(|e| value[2 * e + 1].expect("assigned")).collect(),
    };
    debug_assert!(ranks.fits(lists));
    Some(ranks)
}

/// Kernel of the orientation restricted to `active`: the stable matching
/// found by left-side proposals.
fn stable_matching(g: &Bipartite<'_>, ranks: &Ranks, active: &[usize]) -> Vec<usize> {
    let mut proposals: Vec<Vec<usize>> = vec![Vec::new(); g.n];
    for &e in active {
        proposals[g.left(e)].push(e);
    }
    for list in &mut proposals {
        list.sort_by_key(|&e| ranks.left[e]);
    }
    let mut next = vec![0usize; g.n];
    let mut holder: Vec<Option<usize>> = vec![None; g.n];
    let mut free: Vec<usize> = (0..g.n).rev().filter(|&x| !proposals[x].is_empty()).collect();
    while let Some(x) = free.pop() {
        let Some(&e) = proposals[x].get(next[x]) else {
            continue;
        };
        next[x] += 1;
        let y = g.right(e);
        match holder[y] {
            None => holder[y] = Some(e),
            Some(f) if ranks.right[e] < ranks.right[f] => {
                holder[y] = Some(e);
                free.push(g.left(f));
            }
            Some(_) => free.push(x),
        }
    }
    let mut kernel: Vec<usize> = holder.into_iter().flatten().collect();
    kernel.sort_unstable();
    kernel
}

fn kernel_coloring(g: &Bipartite<'_>, ranks: &Ranks, lists: &[ColorSet]) -> Option<Vec<Color>> {
    let m = g.edges.len();
    let mut lists = lists.to_vec();
    let mut color: Vec<Color> = vec![0; m];
    let palette = lists.iter().fold(ColorSet::new(), |acc, l| acc.union(l));
    for c in palette.iter() {
        let active: Vec<usize> = (0..m).filter(|&e| color[e] == 0 && lists[e].contains(c)).collect();
        if active.is_empty() {
            continue;
        }
        let kernel = stable_matching(g, ranks, &active);
        for e in active {
            if kernel.binary_search(&e).is_ok() {
                color[e] = c;
            } else {
                lists[e].remove(c);
            }
        }
    }
    color.iter().all(|&c| c != 0).then_some(color)
}

/// Colors bipartite edges from lists by the kernel method; `None` if no
/// rank system with out-degrees below list sizes was found within budget.
pub fn kernel_method(
    n: usize,
    edges: &[Edge],
    lists: &[ColorSet],
    budget: Budget,
) -> Result<Option<Vec<Color>>, ListEdgeError> {
    if lists.len() != edges.len() {
        return Err(ListEdgeError::LengthMismatch {
            edges: edges.len(),
            lists: lists.len(),
        });
    }
    let g = Bipartite::new(n, edges)?;
    Ok(kernel_method_on(&g, lists, budget))
}

fn kernel_method_on(g: &Bipartite<'_>, lists: &[ColorSet], budget: Budget) -> Option<Vec<Color>> {
    let base = Ranks::from_coloring(g, &konig(g));
    let ranks = if base.fits(lists) {
        base
    } else {
        let flipped = base.reversed(g);
        if flipped.fits(lists) {
            flipped
        } else {
            search_ranks(g, lists, &base, budget.max_nodes)?
        }
    };
    kernel_coloring(g, &ranks, lists)
}

/// Exhaustive search over list colorings of the line graph.
pub fn exhaustive_list_edge_color(
    n: usize,
    edges: &[Edge],
    lists: &[ColorSet],
    budget: Budget,
) -> Result<Option<Vec<Color>>, ListEdgeError> {
    if lists.len() != edges.len() {
        return Err(ListEdgeError::LengthMismatch {
            edges: edges.len(),
            lists: lists.len(),
        });
    }
    let g = Bipartite::new(n, edges)?;
    exhaustive_on(&g, lists, budget)
}

fn exhaustive_on(g: &Bipartite<'_>, lists: &[ColorSet], budget: Budget) -> Result<Option<Vec<Color>>, ListEdgeError> {
    match csp::solve(lists.to_vec(), &g.line_graph(), budget.max_nodes).0 {
        CspResult::Solved(colors) => Ok(Some(colors)),
        CspResult::Exhausted => Ok(None),
        CspResult::OutOfBudget => Err(ListEdgeError::BudgetExhausted),
    }
}

/// Colors a bipartite graph's edges from lists with
/// `|L(xy)| >= max(deg x, deg y)`.
pub fn bipartite_list_edge_color(
    n: usize,
    edges: &[Edge],
    lists: &[ColorSet],
    budget: Budget,
) -> Result<ListEdgeColoring, ListEdgeError> {
    if lists.len() != edges.len() {
        return Err(ListEdgeError::LengthMismatch {
            edges: edges.len(),
            lists: lists.len(),
        });
    }
    let g = Bipartite::new(n, edges)?;
    for (i, &e) in edges.iter().enumerate() {
        let required = g.degree(e.u).max(g.degree(e.v));
        if lists[i].len() < required {
            return Err(ListEdgeError::ListTooSmall {
                edge: e,
                size: lists[i].len(),
                required,
            });
        }
    }
    if let Some(colors) = kernel_method_on(&g, lists, budget) {
        return Ok(ListEdgeColoring {
            colors,
            route: EdgeColoringRoute::Kernel,
        });
    }
    match exhaustive_on(&g, lists, budget)? {
        Some(colors) => Ok(ListEdgeColoring {
            colors,
            route: EdgeColoringRoute::ExhaustiveFallback,
        }),
        None => Err(ListEdgeError::Infeasible),
    }
}

/// Whether `colors` is a proper edge coloring drawn from `lists`.
pub fn is_proper_list_edge_coloring(edges: &[Edge], lists: &[ColorSet], colors: &[Color]) -> bool {
    if colors.len() != edges.len() || lists.len() != edges.len() {
        return false;
    }
    for i in 0..edges.len() {
        if !lists[i].contains(colors[i]) {
            return false;
        }
        for j in i + 1..edges.len() {
            if colors[i] == colors[j] && edges[i].shares_endpoint(edges[j]) {
                return false;
            }
        }
    }
    true
}

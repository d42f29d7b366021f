//! Backtracking over variables with color domains and pairwise "must differ"
//! constraints. Variable choice is minimum remaining values with ties to the
//! lowest index; values are tried in ascending order; every assignment
//! prunes its value from unassigned neighbors (forward checking).

use crate::coloring::{Color, ColorSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum CspResult {
    Solved(Vec<Color>),
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    adjacency: &'a [Vec<usize>],
    domains: Vec<ColorSet>,
    sizes: Vec<usize>,
    assigned: Vec<Option<Color>>,
    trail: Vec<(usize, Color)>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn pick(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in 0..self.domains.len() {
            if self.assigned[v].is_some() {
                continue;
            }
            if best.is_none_or(|b| self.sizes[v] < self.sizes[b]) {
                best = Some(v);
                if self.sizes[v] <= 1 {
                    break;
                }
            }
        }
        best
    }

    /// `None` when the node budget runs out.
    fn run(&mut self) -> Option<bool> {
        let Some(var) = self.pick() else {
            return Some(true);
        };
        let values: Vec<Color> = self.domains[var].iter().collect();
        for c in values {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.assigned[var] = Some(c);
            let mark = self.trail.len();
            let mut wiped = false;
            for &nb in self.adjacency[var].iter() {
                if self.assigned[nb].is_none() && self.domains[nb].remove(c) {
                    self.trail.push((nb, c));
                    self.sizes[nb] -= 1;
                    if self.sizes[nb] == 0 {
                        wiped = true;
                        break;
                    }
                }
            }
            if !wiped {
                match self.run() {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            while self.trail.len() > mark {
                let (x, col) = self.trail.pop().expect("trail above mark");
                self.domains[x].insert(col);
                self.sizes[x] += 1;
            }
            self.assigned[var] = None;
        }
        Some(false)
    }
}

/// Returns the result and the number of assignments tried.
pub(crate) fn solve(domains: Vec<ColorSet>, adjacency: &[Vec<usize>], budget: u64) -> (CspResult, u64) {
    debug_assert_eq!(domains.len(), adjacency.len());
    if domains.iter().any(ColorSet::is_empty) {
        return (CspResult::Exhausted, 0);
    }
    let sizes = domains.iter().map(ColorSet::len).collect();
    let n = domains.len();
    let mut search = Search {
        adjacency,
        domains,
        sizes,
        assigned: vec![None; n],
        trail: Vec::new(),
        nodes: 0,
        budget,
    };
    let result = match search.run() {
        Some(true) => CspResult::Solved(search.assigned.iter().map(|c| c.expect("complete")).collect()),
        Some(false) => CspResult::Exhausted,
        None => CspResult::OutOfBudget,
    };
    (result, search.nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect()
    }

    #[test]
    fn odd_cycle_needs_three_colors() {
        let adj = cycle(5);
        let (r, _) = solve(vec![ColorSet::full(2); 5], &adj, 1_000);
        assert_eq!(r, CspResult::Exhausted);
        let (r, _) = solve(vec![ColorSet::full(3); 5], &adj, 1_000);
        let CspResult::Solved(cols) = r else { panic!() };
        for i in 0..5 {
            assert_ne!(cols[i], cols[(i + 1) % 5]);
        }
    }

    #[test]
    fn budget_is_respected() {
        let adj: Vec<Vec<usize>> = (0..8).map(|i| (0..8).filter(|&j| j != i).collect()).collect();
        let (r, nodes) = solve(vec![ColorSet::full(7); 8], &adj, 50);
        assert_eq!(r, CspResult::OutOfBudget);
        assert_eq!(nodes, 51);
    }
}

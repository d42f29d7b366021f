use thiserror::Error;

use crate::coloring::{Color, ColorSet};
use crate::planar::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("a cycle needs at least 3 edges, got {0}")]
    TooShort(usize),
    #[error("{edges} edges but {lists} lists")]
    LengthMismatch { edges: usize, lists: usize },
    #[error("edges do not form a simple closed cycle at position {0}")]
    NotACycle(usize),
    #[error("list at position {index} has {size} colors, expected 2")]
    NotAPair { index: usize, size: usize },
    /// Every edge has the same two colors and the cycle is odd: the colors
    /// must alternate, which parity forbids.
    #[error("odd cycle of length {length} with every list equal to {{{}, {}}}", colors.0, colors.1)]
    OddUniform { length: usize, colors: (Color, Color) },
}

/// Colors the edges of a cycle from 2-element lists.
///
/// With equal lists the two colors alternate. Otherwise pick `i` with
/// `L(e_i) != L(e_{i+1})`, give `e_{i+1}` a color outside `L(e_i)`, and walk
/// forward choosing for each edge the smallest color unlike its predecessor;
/// `e_i` comes last and cannot clash with `e_{i+1}`.
pub fn color_even_cycle_from_2_lists(cycle: &[Edge], lists: &[ColorSet]) -> Result<Vec<Color>, CycleError> {
    let m = cycle.len();
    if m < 3 {
        return Err(CycleError::TooShort(m));
    }
    if lists.len() != m {
        return Err(CycleError::LengthMismatch {
            edges: m,
            lists: lists.len(),
        });
    }
    validate_cycle(cycle)?;
    if let Some((index, l)) = lists.iter().enumerate().find(|(_, l)| l.len() != 2) {
        return Err(CycleError::NotAPair { index, size: l.len() });
    }

    let mut colors = vec![0; m];
    match (0..m).find(|&i| lists[i] != lists[(i + 1) % m]) {
        None => {
            let pair: Vec<Color> = lists[0].iter().collect();
            if m % 2 == 1 {
                return Err(CycleError::OddUniform {
                    length: m,
                    colors: (pair[0], pair[1]),
                });
            }
            for (i, c) in colors.iter_mut().enumerate() {
                *c = pair[i % 2];
            }
        }
        Some(i) => {
            let seed = (i + 1) % m;
            colors[seed] = lists[seed].difference(&lists[i]).min().expect("lists differ");
            for step in 1..m {
                let j = (seed + step) % m;
                let prev = colors[(j + m - 1) % m];
                colors[j] = lists[j].iter().find(|&c| c != prev).expect("two colors, one forbidden");
            }
        }
    }
    debug_assert!((0..m).all(|i| colors[i] != colors[(i + 1) % m]));
    Ok(colors)
}

fn validate_cycle(cycle: &[Edge]) -> Result<(), CycleError> {
    let m = cycle.len();
    let first = cycle[0];
    let second = cycle[1];
    // start at the endpoint of e_0 not shared with e_1
    let mut at = if second.contains(first.v) { first.u } else { first.v };
    let start = at;
    let mut seen = std::collections::HashSet::new();
    for (i, e) in cycle.iter().enumerate() {
        if !e.contains(at) || !seen.insert(at) {
            return Err(CycleError::NotACycle(i));
        }
        at = e.other(at);
    }
    if at != start {
        return Err(CycleError::NotACycle(m - 1));
    }
    Ok(())
}

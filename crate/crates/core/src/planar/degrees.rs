use std::collections::BTreeMap;

use serde::Serialize;

use super::PlanarEmbedding;

/// Degree buckets `V_k` and the metric `q = 3|E| + |V_[2,b]|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeClassification {
    pub max_degree: usize,
    pub buckets: BTreeMap<usize, Vec<usize>>,
    pub range_bound: usize,
    pub q: usize,
}

impl DegreeClassification {
    pub(super) fn new(emb: &PlanarEmbedding, range_bound: usize) -> Self {
        let mut buckets: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..emb.vertex_count() {
            buckets.entry(emb.degree(v)).or_default().push(v);
        }
        let mut c = DegreeClassification {
            max_degree: emb.max_degree(),
            buckets,
            range_bound,
            q: 0,
        };
        c.q = 3 * emb.edge_count() + c.count_range(2, range_bound);
        c
    }

    /// `V_k`.
    pub fn bucket(&self, k: usize) -> &[usize] {
        self.buckets.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `V_[a,b]`, sorted; empty when `a > b`.
    pub fn range(&self, a: usize, b: usize) -> Vec<usize> {
        let mut vs: Vec<usize> = if a > b {
            Vec::new()
        } else {
            self.buckets
                .range(a..=b)
                .flat_map(|(_, vs)| vs.iter().copied())
                .collect()
        };
        vs.sort_unstable();
        vs
    }

    pub fn count_range(&self, a: usize, b: usize) -> usize {
        if a > b {
            return 0;
        }
        self.buckets.range(a..=b).map(|(_, vs)| vs.len()).sum()
    }
}

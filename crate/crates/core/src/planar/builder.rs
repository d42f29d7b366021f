use std::collections::HashMap;

use super::{EmbeddingError, PlanarEmbedding};

/// A corner of a face: the face walk arrives at `vertex` from `from`.
/// Inserting a new neighbor into the corner places it right after `from`
/// in the rotation at `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Corner {
    pub vertex: usize,
    pub from: usize,
}

/// Mutable rotation system with planarity-preserving insertions.
///
/// Leaves, chords within a face and stars within a face keep the genus at
/// zero, so anything assembled from them passes [`PlanarEmbedding`]'s
/// Euler check.
#[derive(Debug, Clone, Default)]
pub struct RotationBuilder {
    rotations: Vec<Vec<usize>>,
}

impl RotationBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_rotations(rotations: Vec<Vec<usize>>) -> Self {
        RotationBuilder { rotations }
    }

    /// Starts from a single edge `0-1`.
    pub fn edge() -> Self {
        RotationBuilder {
            rotations: vec![vec![1], vec![0]],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rotations[a].contains(&b)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.rotations.push(Vec::new());
        self.rotations.len() - 1
    }

    fn insert_after(&mut self, at: usize, after: usize, new: usize) {
        let rot = &mut self.rotations[at];
        let pos = rot.iter().position(|&x| x == after).expect("corner neighbor present");
        rot.insert(pos + 1, new);
    }

    /// Face walks as corner sequences, in walk order.
    pub fn faces(&self) -> Vec<Vec<Corner>> {
        let mut pos: HashMap<(usize, usize), usize> = HashMap::new();
        for (v, rot) in self.rotations.iter().enumerate() {
            for (i, &u) in rot.iter().enumerate() {
                pos.insert((v, u), i);
            }
        }
        let mut seen: HashMap<(usize, usize), bool> = HashMap::new();
        let mut faces = Vec::new();
        for (v, rot) in self.rotations.iter().enumerate() {
            for &u in rot {
                if seen.contains_key(&(v, u)) {
                    continue;
                }
                let mut corners = Vec::new();
                let (mut a, mut b) = (v, u);
                loop {
                    seen.insert((a, b), true);
                    corners.push(Corner { vertex: b, from: a });
                    let rb = &self.rotations[b];
                    let next = rb[(pos[&(b, a)] + 1) % rb.len()];
                    a = b;
                    b = next;
                    if (a, b) == (v, u) {
                        break;
                    }
                }
                faces.push(corners);
            }
        }
        faces
    }

    /// Adds a new leaf in `corner`.
    pub fn add_leaf(&mut self, corner: Corner) -> usize {
        let w = self.add_vertex();
        self.insert_after(corner.vertex, corner.from, w);
        self.rotations[w].push(corner.vertex);
        w
    }

    /// Adds a leaf to a vertex of degree at most one.
    pub fn add_pendant(&mut self, v: usize) -> usize {
        match self.rotations[v].first().copied() {
            Some(from) => self.add_leaf(Corner { vertex: v, from }),
            None => {
                let w = self.add_vertex();
                self.rotations[v].push(w);
                self.rotations[w].push(v);
                w
            }
        }
    }

    /// Joins two corners of the same face by a new edge.
    ///
    /// # Panics
    /// If the corners share a vertex or the edge already exists.
    pub fn add_chord(&mut self, a: Corner, b: Corner) {
        assert_ne!(a.vertex, b.vertex, "chord endpoints must differ");
        assert!(!self.has_edge(a.vertex, b.vertex), "chord would duplicate an edge");
        self.insert_after(a.vertex, a.from, b.vertex);
        self.insert_after(b.vertex, b.from, a.vertex);
    }

    /// Places a new vertex inside a face and joins it to the given corners,
    /// which must be listed in walk order on that face with distinct vertices.
    pub fn insert_star(&mut self, corners: &[Corner]) -> usize {
        let z = self.add_vertex();
        for c in corners {
            self.insert_after(c.vertex, c.from, z);
        }
        self.rotations[z] = corners.iter().rev().map(|c| c.vertex).collect();
        z
    }

    pub fn build(self) -> Result<PlanarEmbedding, EmbeddingError> {
        PlanarEmbedding::from_rotations(self.rotations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chord_and_star_stay_planar() {
        let mut b = RotationBuilder::edge();
        let c = b.faces()[0][0];
        b.add_leaf(c);
        let face = b.faces()[0].clone();
        // path 0-1-2 (or similar): join the two ends through the single face
        let ends: Vec<Corner> = face.iter().copied().filter(|c| b.degree(c.vertex) == 1).collect();
        b.add_chord(ends[0], ends[1]);
        let emb = b.clone().build().unwrap();
        assert_eq!(emb.face_count(), 2);
        let face = b.faces()[0].clone();
        b.insert_star(&face);
        let emb = b.build().unwrap();
        assert_eq!(emb.vertex_count(), 4);
        assert_eq!(emb.edge_count(), 6);
        assert_eq!(emb.face_count(), 4);
    }
}

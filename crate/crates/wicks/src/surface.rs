//! Reconstruction of the glued surface from a word.
//!
//! The word labels the sides of a 2e-gon in the oriented plane; sides with
//! the same edge id are identified. Corners of the polygon (corner `i`
//! sits between side `i` and side `i+1`) fall into orbits under the
//! rotation `σ(i) = m(i+1)` where `m` is the side matching; the orbits are
//! the vertices of the embedded graph and the σ-cycle at a vertex is the
//! rotational order of its corners induced by the surface orientation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{EdgeId, Sign, WicksWord};

/// Sign of a vertex. Degree-3 vertices are `Positive` when the rotation
/// visits their corners in increasing cyclic word order, `Negative` when
/// decreasing; all other degrees are `Unsigned`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexSign {
    Positive,
    Negative,
    Unsigned,
}

/// One vertex of the glued surface.
#[derive(Clone, Debug)]
pub struct Vertex {
    /// Corners in rotational (σ-cycle) order, starting at the smallest.
    pub corners: Vec<usize>,
    pub sign: VertexSign,
}

impl Vertex {
    pub fn degree(&self) -> usize {
        self.corners.len()
    }
}

/// Derived incidence structure of a valid word.
#[derive(Clone, Debug)]
pub struct SurfaceMap {
    word: WicksWord,
    matching: Vec<usize>,
    vertex_of_corner: Vec<usize>,
    vertices: Vec<Vertex>,
    genus: usize,
}

impl SurfaceMap {
    /// Builds the surface map. The word must pass `validate`.
    pub fn build(word: &WicksWord) -> Result<SurfaceMap> {
        word.require_valid()?;
        Ok(Self::build_unchecked(word))
    }

    /// Builds the incidence structure without checking conditions (ii) and
    /// (iii). Genus and vertex cycles are well-defined for any word
    /// satisfying condition (i).
    pub fn build_unchecked(word: &WicksWord) -> SurfaceMap {
        let n = word.len();
        let matching = word.matching();
        let sigma = |i: usize| matching[(i + 1) % n];

        let mut vertex_of_corner = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        for start in 0..n {
            if vertex_of_corner[start] != usize::MAX {
                continue;
            }
            let mut cycle = vec![start];
            vertex_of_corner[start] = vertices.len();
            let mut c = sigma(start);
            while c != start {
                vertex_of_corner[c] = vertices.len();
                cycle.push(c);
                c = sigma(c);
            }
            let sign = cycle_sign(&cycle);
            vertices.push(Vertex {
                corners: cycle,
                sign,
            });
        }

        let e = word.edge_count();
        let v = vertices.len();
        // One face: χ = v − e + 1 = 2 − 2g, so e − v + 1 is even.
        debug_assert_eq!((e + 1 - v) % 2, 0, "Euler parity violated");
        let genus = (e + 1 - v) / 2;

        SurfaceMap {
            word: word.clone(),
            matching,
            vertex_of_corner,
            vertices,
            genus,
        }
    }

    pub fn word(&self) -> &WicksWord {
        &self.word
    }

    pub fn edge_count(&self) -> usize {
        self.word.edge_count()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_of_corner(&self, corner: usize) -> usize {
        self.vertex_of_corner[corner % self.word.len()]
    }

    /// Side matching: `matching[i]` is the other side with the same edge.
    pub fn matching(&self) -> &[usize] {
        &self.matching
    }

    /// σ(i) = m(i+1): the next corner around the vertex of corner `i`.
    pub fn next_corner(&self, corner: usize) -> usize {
        let n = self.word.len();
        self.matching[(corner + 1) % n]
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        self.vertices.iter().map(Vertex::degree).collect()
    }

    /// A word is maximal iff its length is `6(2g−1)`; equivalently all
    /// vertices have degree 3.
    pub fn is_maximal(&self) -> bool {
        let by_length = self.genus >= 1 && self.word.len() == 6 * (2 * self.genus - 1);
        debug_assert_eq!(
            by_length,
            self.vertices.iter().all(|v| v.degree() == 3),
            "maximality by length must match trivalence"
        );
        by_length
    }

    /// Endpoint vertices of every edge, as `(id, head_vertex, tail_vertex)`.
    /// The head is the vertex at the end of the positively-signed side.
    pub fn edge_endpoints(&self) -> Vec<(EdgeId, usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (pos, l) in self.word.letters().iter().enumerate() {
            if l.sign == Sign::Plus {
                let head = self.vertex_of_corner[pos];
                let tail = self.vertex_of_corner[self.matching[pos]];
                out.push((l.id, head, tail));
            }
        }
        out.sort_by_key(|&(id, _, _)| id);
        out
    }

    /// Multiset of neighboring vertices for each vertex, sorted.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (_, head, tail) in self.edge_endpoints() {
            adj[head].push(tail);
            adj[tail].push(head);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// The three edges at a degree-3 vertex (with multiplicity).
    pub fn incident_edges(&self, vertex: usize) -> Vec<EdgeId> {
        let n = self.word.len();
        let mut ids: Vec<EdgeId> = self.vertices[vertex]
            .corners
            .iter()
            .map(|&c| self.word.letter((c + 1) % n).id)
            .collect();
        ids.sort();
        ids
    }

    /// `(positive, negative)` counts over all vertices.
    pub fn sign_counts(&self) -> (usize, usize) {
        let mut pos = 0;
        let mut neg = 0;
        for v in &self.vertices {
            match v.sign {
                VertexSign::Positive => pos += 1,
                VertexSign::Negative => neg += 1,
                VertexSign::Unsigned => {}
            }
        }
        (pos, neg)
    }

    pub fn require_maximal(&self) -> Result<()> {
        if self.is_maximal() {
            Ok(())
        } else {
            Err(Error::NotMaximal {
                len: self.word.len(),
                genus: self.genus,
            })
        }
    }
}

/// Sign of a degree-3 σ-cycle: the cycle starts at its smallest corner, so
/// the visit order is increasing exactly when the second entry is the
/// middle corner.
fn cycle_sign(cycle: &[usize]) -> VertexSign {
    if cycle.len() != 3 {
        return VertexSign::Unsigned;
    }
    debug_assert!(cycle[0] < cycle[1] && cycle[0] < cycle[2]);
    if cycle[1] < cycle[2] {
        VertexSign::Positive
    } else {
        VertexSign::Negative
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn map(text: &str) -> SurfaceMap {
        SurfaceMap::build(&parse_word(text).unwrap().0).unwrap()
    }

    #[test]
    fn torus_square() {
        let m = map("a b a' b'");
        assert_eq!(m.vertex_count(), 1);
        assert_eq!(m.edge_count(), 2);
        assert_eq!(m.genus(), 1);
        assert!(!m.is_maximal());
        assert_eq!(m.vertex_degrees(), vec![4]);
    }

    #[test]
    fn genus_one_maximal_word() {
        let m = map("a1 a2 a3 a1' a2' a3'");
        assert_eq!(m.vertex_count(), 2);
        assert_eq!(m.edge_count(), 3);
        assert_eq!(m.genus(), 1);
        assert!(m.is_maximal());
        assert_eq!(m.vertex_degrees(), vec![3, 3]);
        // both vertices negative (the theta graph)
        assert_eq!(m.sign_counts(), (0, 2));
    }

    #[test]
    fn section3_example_surface() {
        let m = map("a b c d e a' f b' e' g h c' f' i g' d' h' i'");
        assert_eq!(m.edge_count(), 9);
        assert_eq!(m.vertex_count(), 6);
        assert_eq!(m.genus(), 2);
        assert!(m.is_maximal());
        assert!(m.vertices().iter().all(|v| v.degree() == 3));
        // Prop 2.1 with g = 2: 2 positive, 4 negative
        assert_eq!(m.sign_counts(), (2, 4));
    }

    #[test]
    fn corners_partition_and_degrees_sum() {
        let m = map("a b c d e a' f b' e' g h c' f' i g' d' h' i'");
        let total: usize = m.vertex_degrees().iter().sum();
        assert_eq!(total, 18);
        for c in 0..18 {
            let v = m.vertex_of_corner(c);
            assert!(m.vertices()[v].corners.contains(&c));
        }
    }

    #[test]
    fn euler_formula_holds() {
        for text in [
            "a b a' b'",
            "a1 a2 a3 a1' a2' a3'",
            "a b c d e a' f b' e' g h c' f' i g' d' h' i'",
            "a b a' b' c d c' d'",
        ] {
            let m = map(text);
            let v = m.vertex_count() as i64;
            let e = m.edge_count() as i64;
            let g = m.genus() as i64;
            assert_eq!(v - e + 1, 2 - 2 * g);
        }
    }

    #[test]
    fn theta_graph_adjacency_is_triple_edge() {
        let m = map("a1 a2 a3 a1' a2' a3'");
        let adj = m.adjacency();
        assert_eq!(adj[0], vec![1, 1, 1]);
        assert_eq!(adj[1], vec![0, 0, 0]);
    }
}

//! Combinatorial maps (rotation systems) and the surgery primitives used
//! by reductions and constructions.
//!
//! A map is a set of darts with two permutations: `next` rotates a dart
//! counterclockwise around its vertex, `opposite` swaps the two darts of
//! an edge. The face successor is `opposite ∘ next`; a word corresponds
//! to a map with a single face, read off along the face cycle.
//!
//! Built from a word with sides as darts, `next[i] = m(i+1)` where `m` is
//! the side matching, so the face walk recovers the original word.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::word::{EdgeId, Letter, Sign, WicksWord};

#[derive(Clone, Debug)]
pub struct CombMap {
    next: Vec<usize>,
    opposite: Vec<usize>,
    edge: Vec<EdgeId>,
    sign: Vec<Sign>,
    alive: Vec<bool>,
}

impl CombMap {
    pub fn from_word(word: &WicksWord) -> CombMap {
        let n = word.len();
        let matching = word.matching();
        let mut next = vec![0; n];
        for i in 0..n {
            next[i] = matching[(i + 1) % n];
        }
        CombMap {
            next,
            opposite: matching,
            edge: word.letters().iter().map(|l| l.id).collect(),
            sign: word.letters().iter().map(|l| l.sign).collect(),
            alive: vec![true; n],
        }
    }

    pub fn alive_darts(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.next.len()).filter(|&d| self.alive[d])
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    fn used_edge_ids(&self) -> BTreeSet<EdgeId> {
        self.alive_darts().map(|d| self.edge[d]).collect()
    }

    fn fresh_edge_id(&self) -> EdgeId {
        let used = self.used_edge_ids();
        let mut id = 0u32;
        while used.contains(&EdgeId(id)) {
            id += 1;
        }
        EdgeId(id)
    }

    pub fn new_dart(&mut self) -> usize {
        let d = self.next.len();
        self.next.push(d);
        self.opposite.push(d);
        self.edge.push(EdgeId(u32::MAX));
        self.sign.push(Sign::Plus);
        self.alive.push(true);
        d
    }

    /// Pairs two darts into a fresh edge.
    pub fn make_edge(&mut self, d1: usize, d2: usize) -> EdgeId {
        let id = self.fresh_edge_id();
        self.opposite[d1] = d2;
        self.opposite[d2] = d1;
        self.edge[d1] = id;
        self.edge[d2] = id;
        self.sign[d1] = Sign::Plus;
        self.sign[d2] = Sign::Minus;
        id
    }

    /// Creates a new vertex whose rotation is the given dart order.
    pub fn make_vertex(&mut self, darts: &[usize]) {
        for i in 0..darts.len() {
            self.next[darts[i]] = darts[(i + 1) % darts.len()];
        }
    }

    /// Inserts `new` into the rotation right after `at`.
    pub fn insert_after(&mut self, at: usize, new: usize) {
        self.next[new] = self.next[at];
        self.next[at] = new;
    }

    pub fn new_darts<const K: usize>(&mut self) -> [usize; K] {
        std::array::from_fn(|_| self.new_dart())
    }

    /// Splits an edge by a new degree-2 vertex. Both halves get fresh
    /// ids; returns the two darts of the new vertex, `(toward the
    /// positive dart, toward the negative dart)`.
    pub fn subdivide(&mut self, id: EdgeId) -> Result<(usize, usize, [EdgeId; 2])> {
        let mut darts = self
            .alive_darts()
            .filter(|&d| self.edge[d] == id)
            .collect::<Vec<_>>();
        if darts.len() != 2 {
            return Err(Error::EdgeNotFound(id.to_string()));
        }
        darts.sort_by_key(|&d| self.sign[d]);
        let (d_plus, d_minus) = (darts[0], darts[1]);
        let p = self.new_dart();
        let q = self.new_dart();
        self.make_vertex(&[p, q]);
        let id1 = {
            let fresh = self.fresh_edge_id();
            self.opposite[d_plus] = p;
            self.opposite[p] = d_plus;
            self.edge[d_plus] = fresh;
            self.edge[p] = fresh;
            self.sign[p] = Sign::Minus;
            self.sign[d_plus] = Sign::Plus;
            fresh
        };
        let id2 = {
            let fresh = self.fresh_edge_id();
            self.opposite[q] = d_minus;
            self.opposite[d_minus] = q;
            self.edge[q] = fresh;
            self.edge[d_minus] = fresh;
            self.sign[q] = Sign::Plus;
            self.sign[d_minus] = Sign::Minus;
            fresh
        };
        Ok((p, q, [id1, id2]))
    }

    /// Removes every edge in `ids`, splicing the dead darts out of their
    /// vertex rotations.
    pub fn delete_edges(&mut self, ids: &BTreeSet<EdgeId>) {
        let mut prev = vec![0usize; self.next.len()];
        for d in 0..self.next.len() {
            if self.alive[d] {
                prev[self.next[d]] = d;
            }
        }
        for d in 0..self.next.len() {
            if self.alive[d] && ids.contains(&self.edge[d]) {
                let p = prev[d];
                let n = self.next[d];
                self.next[p] = n;
                prev[n] = p;
                self.alive[d] = false;
            }
        }
    }

    /// Rotation cycles of alive darts: the vertices.
    pub fn vertex_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.next.len()];
        let mut cycles = Vec::new();
        for start in self.alive_darts() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut d = self.next[start];
            while d != start {
                seen[d] = true;
                cycle.push(d);
                d = self.next[d];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Merges the two edges through every degree-2 vertex until none
    /// remain. The merged edge gets a fresh id.
    pub fn suppress_degree_two(&mut self) -> Result<()> {
        loop {
            let cycle = match self.vertex_cycles().into_iter().find(|c| c.len() <= 2) {
                Some(c) => c,
                None => return Ok(()),
            };
            if cycle.len() < 2 {
                return Err(Error::Internal(format!(
                    "degree-{} vertex during suppression",
                    cycle.len()
                )));
            }
            let (x, y) = (cycle[0], cycle[1]);
            if self.opposite[x] == y {
                return Err(Error::Internal(
                    "isolated circle component during suppression".to_string(),
                ));
            }
            let x_out = self.opposite[x];
            let y_out = self.opposite[y];
            self.alive[x] = false;
            self.alive[y] = false;
            let id = self.fresh_edge_id();
            self.opposite[x_out] = y_out;
            self.opposite[y_out] = x_out;
            self.edge[x_out] = id;
            self.edge[y_out] = id;
            let s = self.sign[x_out];
            self.sign[y_out] = s.flip();
        }
    }

    /// Face cycle through `opposite ∘ next`, starting at the smallest
    /// alive dart. `None` when the map has more than one face.
    pub fn face_cycle(&self) -> Option<Vec<usize>> {
        let start = self.alive_darts().next()?;
        let mut walk = vec![start];
        let mut d = self.opposite[self.next[start]];
        while d != start {
            if walk.len() > self.alive_count() {
                return None;
            }
            walk.push(d);
            d = self.opposite[self.next[d]];
        }
        if walk.len() == self.alive_count() {
            Some(walk)
        } else {
            None
        }
    }

    /// Reads the word along the single face. Edge ids are those stored in
    /// the map. Also returns the face walk, whose `k`-th dart corresponds
    /// to corner `k` of the word.
    pub fn to_word(&self) -> Result<(WicksWord, Vec<usize>)> {
        let walk = self
            .face_cycle()
            .ok_or_else(|| Error::Internal("map does not have a single face".to_string()))?;
        let letters: Vec<Letter> = walk
            .iter()
            .map(|&d| Letter {
                id: self.edge[d],
                sign: self.sign[d],
            })
            .collect();
        let word = WicksWord::new(letters)?;
        Ok((word, walk))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    #[test]
    fn word_round_trips_through_map() {
        for text in [
            "a b a' b'",
            "a1 a2 a3 a1' a2' a3'",
            "a b c d e a' f b' e' g h c' f' i g' d' h' i'",
        ] {
            let w = parse_word(text).unwrap().0;
            let map = CombMap::from_word(&w);
            let (back, walk) = map.to_word().unwrap();
            assert_eq!(back, w);
            assert_eq!(walk, (0..w.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn vertex_cycles_match_surface_map() {
        let w = parse_word("a b c d e a' f b' e' g h c' f' i g' d' h' i'")
            .unwrap()
            .0;
        let map = CombMap::from_word(&w);
        let surface = crate::surface::SurfaceMap::build(&w).unwrap();
        assert_eq!(map.vertex_cycles().len(), surface.vertex_count());
    }

    #[test]
    fn subdivide_then_suppress_restores_word() {
        let w = parse_word("a1 a2 a3 a1' a2' a3'").unwrap().0;
        let mut map = CombMap::from_word(&w);
        map.subdivide(EdgeId(1)).unwrap();
        map.suppress_degree_two().unwrap();
        let (back, _) = map.to_word().unwrap();
        assert_eq!(back.relabeled(), w.relabeled());
        assert!(crate::canon::equivalent(&back, &w));
    }

    #[test]
    fn deleting_a_lone_edge_splits_the_face() {
        let w = parse_word("a b a' b' c d c' d'").unwrap().0;
        let mut map = CombMap::from_word(&w);
        let mut ids = BTreeSet::new();
        ids.insert(EdgeId(0));
        map.delete_edges(&ids);
        assert_eq!(map.alive_count(), 6);
        let cycles = map.vertex_cycles();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 6);
        // an isolated deletion is not a reduction: the face splits
        assert!(map.face_cycle().is_none());
    }
}

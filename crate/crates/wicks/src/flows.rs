//! Flow spaces over Z/2 and Z/3 and the quotient procedures for
//! symmetric maximal words.
//!
//! A Z/pZ-flow assigns a value to each oriented edge with `φ(−e) =
//! −φ(e)` and conservation at every vertex; the flow space is the cycle
//! space of the graph, of dimension `e − v + 1`. Quotients follow the
//! word procedures: take one representative per orbit of oriented edges,
//! delete the letters removed by the symmetry (reversed edges for an
//! involution, edges at fixed vertices for order 3), and cancel
//! `l l⁻¹` factors and substitutable pairs to a fixed point. The flow
//! carried by the quotient records on which "concentric circle" of the
//! unrolled picture each preimage occurrence sits.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::canon::{letter_bijection, shift_order, symmetry_parameters, SymmetryParams};
use crate::error::{Error, Result};
use crate::surface::{SurfaceMap, VertexSign};
use crate::word::{EdgeId, Letter, Sign, WicksWord};

/// An edge assignment over Z/p. Values attach to oriented edges and are
/// stored on the positively-signed occurrence; for p = 2 orientation is
/// immaterial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowVector {
    pub modulus: u8,
    pub values: BTreeMap<EdgeId, u8>,
}

impl FlowVector {
    /// Conservation at every vertex: the incident values, oriented
    /// toward the vertex, sum to zero mod p.
    pub fn conserves(&self, surface: &SurfaceMap) -> bool {
        let p = self.modulus as i64;
        let mut sums = vec![0i64; surface.vertex_count()];
        for (id, head, tail) in surface.edge_endpoints() {
            let v = self.values.get(&id).copied().unwrap_or(0) as i64;
            sums[head] += v;
            sums[tail] -= v;
        }
        sums.iter().all(|&s| s.rem_euclid(p) == 0)
    }
}

/// Reduced word and flow obtained from a symmetric word.
#[derive(Clone, Debug)]
pub struct QuotientData {
    /// `None` when the quotient is empty (f = 0).
    pub reduced: Option<WicksWord>,
    /// Flow on the reduced word's graph; omitted when empty.
    pub flow: Option<FlowVector>,
    /// Symmetry parameters of the automorphism that was quotiented.
    pub params: SymmetryParams,
    /// Genus of the reduced word, `f`.
    pub quotient_genus: usize,
}

/// Gaussian elimination over GF(p); returns the rank.
fn rank_mod_p(mut rows: Vec<Vec<u8>>, p: u8) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = match rows[rank][col] % p {
            1 => 1,
            v => {
                // p is 2 or 3; the only non-unit-1 invertible residue is 2 mod 3
                debug_assert!(p == 3 && v == 2);
                2
            }
        };
        for c in 0..cols {
            rows[rank][c] = (rows[rank][c] * inv) % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % p != 0 {
                let factor = rows[r][col] % p;
                for c in 0..cols {
                    rows[r][c] = (rows[r][c] + (p - factor) * rows[rank][c]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn edge_index(word: &WicksWord) -> BTreeMap<EdgeId, usize> {
    word.edge_ids()
        .into_iter()
        .enumerate()
        .map(|(i, id)| (id, i))
        .collect()
}

fn conservation_rows(surface: &SurfaceMap, index: &BTreeMap<EdgeId, usize>, p: u8) -> Vec<Vec<u8>> {
    let e = index.len();
    let mut rows = vec![vec![0u8; e]; surface.vertex_count()];
    for (id, head, tail) in surface.edge_endpoints() {
        let col = index[&id];
        rows[head][col] = (rows[head][col] + 1) % p;
        rows[tail][col] = (rows[tail][col] + p - 1) % p;
    }
    rows
}

/// Dimension of the space of Z/pZ-flows: the kernel of the vertex
/// incidence map, `e − v + 1` for a connected graph.
pub fn flow_space_dimension(word: &WicksWord, p: u8) -> Result<usize> {
    if p != 2 && p != 3 {
        return Err(Error::UnsupportedOrder {
            order: p as usize,
            expected: "modulus 2 or 3",
        });
    }
    word.require_valid()?;
    let surface = SurfaceMap::build_unchecked(word);
    let index = edge_index(word);
    let rank = rank_mod_p(conservation_rows(&surface, &index, p), p);
    Ok(index.len() - rank)
}

/// Dimension of the subspace of Z/pZ-flows fixed by an order-3
/// automorphism. For p = 2 this is `(h+1−s−t)/3`.
pub fn invariant_flow_dimension(word: &WicksWord, shift: usize, p: u8) -> Result<usize> {
    if p != 2 && p != 3 {
        return Err(Error::UnsupportedOrder {
            order: p as usize,
            expected: "modulus 2 or 3",
        });
    }
    word.require_valid()?;
    let n = word.len();
    if shift_order(n, shift % n) != 3 {
        return Err(Error::UnsupportedOrder {
            order: shift_order(n, shift % n),
            expected: "3",
        });
    }
    let bijection = letter_bijection(word, shift % n)?;
    let surface = SurfaceMap::build_unchecked(word);
    let index = edge_index(word);
    let mut rows = conservation_rows(&surface, &index, p);
    // invariance: φ(e) maps to φ(μ(e)) with matching orientation
    for (&from, &to) in &bijection {
        if from.sign != Sign::Plus {
            continue;
        }
        let mut row = vec![0u8; index.len()];
        row[index[&from.id]] = (row[index[&from.id]] + 1) % p;
        let minus_one = p - 1;
        let coeff = match to.sign {
            Sign::Plus => minus_one,
            Sign::Minus => 1,
        };
        row[index[&to.id]] = (row[index[&to.id]] + coeff) % p;
        rows.push(row);
    }
    let rank = rank_mod_p(rows, p);
    Ok(index.len() - rank)
}

/// Letter sequence with per-edge flow values; the cleanup state shared by
/// both quotient procedures.
struct Cleanup {
    letters: Vec<Letter>,
    values: BTreeMap<EdgeId, u8>,
    modulus: u8,
}

impl Cleanup {
    fn signed(&self, l: Letter) -> i64 {
        let v = self.values[&l.id] as i64;
        match l.sign {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }

    /// Removes `l l⁻¹` factors and substitutable pairs until none
    /// remain. For a substitutable pair `(x y, y⁻¹ x⁻¹)` the first-listed
    /// letter `x` is canceled and `y` keeps the merged edge.
    fn run(&mut self) -> Result<()> {
        let p = self.modulus as i64;
        'outer: loop {
            let n = self.letters.len();
            if n == 0 {
                return Ok(());
            }
            for i in 0..n {
                let a = self.letters[i];
                let b = self.letters[(i + 1) % n];
                if a.is_inverse_of(b) {
                    // a leaf of the quotient graph; conservation forces 0
                    if self.values[&a.id] as i64 % p != 0 {
                        return Err(Error::Internal(format!(
                            "leaf edge {} carries nonzero flow",
                            a.id
                        )));
                    }
                    self.remove_edge(a.id);
                    continue 'outer;
                }
            }
            for i in 0..n {
                let x = self.letters[i];
                let y = self.letters[(i + 1) % n];
                let found = (0..n).any(|j| {
                    self.letters[j] == y.inverse()
                        && self.letters[(j + 1) % n] == x.inverse()
                });
                if found {
                    // degree-2 vertex between x and y; conservation forces
                    // equal flow through both, and y keeps the merged edge
                    if (self.signed(x) - self.signed(y)).rem_euclid(p) != 0 {
                        return Err(Error::Internal(format!(
                            "merged edges {} and {} carry different flow",
                            x.id, y.id
                        )));
                    }
                    self.remove_edge(x.id);
                    continue 'outer;
                }
            }
            return Ok(());
        }
    }

    fn remove_edge(&mut self, id: EdgeId) {
        self.letters.retain(|l| l.id != id);
        self.values.remove(&id);
    }
}

fn finish_quotient(
    cleanup: Cleanup,
    params: SymmetryParams,
    expected_genus: usize,
    modulus: u8,
) -> Result<QuotientData> {
    if cleanup.letters.is_empty() {
        if expected_genus != 0 {
            return Err(Error::Internal(format!(
                "quotient collapsed but expected genus {expected_genus}"
            )));
        }
        return Ok(QuotientData {
            reduced: None,
            flow: None,
            params,
            quotient_genus: 0,
        });
    }
    let reduced = WicksWord::new(cleanup.letters)?;
    reduced
        .require_valid()
        .map_err(|e| Error::Internal(format!("quotient word invalid: {e}")))?;
    let surface = SurfaceMap::build_unchecked(&reduced);
    if surface.genus() != expected_genus || !surface.is_maximal() {
        return Err(Error::Internal(format!(
            "quotient has genus {} length {}, expected maximal genus {}",
            surface.genus(),
            reduced.len(),
            expected_genus
        )));
    }
    let flow = FlowVector {
        modulus,
        values: cleanup.values,
    };
    if !flow.conserves(&surface) {
        return Err(Error::Internal(
            "quotient flow violates conservation".to_string(),
        ));
    }
    Ok(QuotientData {
        reduced: Some(reduced),
        flow: Some(flow),
        params,
        quotient_genus: expected_genus,
    })
}

/// Quotient of a maximal word by an order-2 automorphism.
///
/// Keeps the first half of the word (one representative per orbit of
/// oriented edges), deletes the `r` reversed edges, identifies orbit
/// representatives, and cleans up. The Z/2 flow records whether an
/// edge's two preimage occurrences sit on opposite circles of the
/// two-circle picture, where crossing a reversed (radial) edge toggles
/// the circle.
pub fn quotient_by_involution(word: &WicksWord, shift: usize) -> Result<QuotientData> {
    word.require_valid()?;
    let surface = SurfaceMap::build_unchecked(word);
    surface.require_maximal()?;
    let n = word.len();
    let shift = shift % n;
    if shift_order(n, shift) != 2 {
        return Err(Error::UnsupportedOrder {
            order: shift_order(n, shift),
            expected: "2",
        });
    }
    let params = symmetry_parameters(word, shift)?;
    let SymmetryParams::Order2 { r } = params else {
        return Err(Error::Internal("order-2 parameters expected".to_string()));
    };
    let genus = surface.genus();
    // feasibility from the theorem: f = (2g+1−r)/4
    let f4 = 2 * genus + 1 - r;
    debug_assert_eq!(f4 % 4, 0);
    let f = f4 / 4;

    let bijection = letter_bijection(word, shift)?;
    let reversed: BTreeSet<EdgeId> = word
        .edge_ids()
        .into_iter()
        .filter(|&id| {
            let plus = Letter { id, sign: Sign::Plus };
            bijection[&plus] == plus.inverse()
        })
        .collect();
    debug_assert_eq!(reversed.len(), r);

    // circle of each position: parity of radial (reversed-edge) sides
    // crossed since position 0
    let mut circle = vec![0u8; n];
    for i in 1..n {
        let crossed = reversed.contains(&word.letter(i - 1).id) as u8;
        circle[i] = (circle[i - 1] + crossed) % 2;
    }

    // orbit representatives: the smaller edge id of each orbit
    let mut orbit_rep: BTreeMap<Letter, Letter> = BTreeMap::new();
    for id in word.edge_ids() {
        let plus = Letter { id, sign: Sign::Plus };
        let image = bijection[&plus];
        if image.id >= id {
            orbit_rep.insert(plus, plus);
            orbit_rep.insert(plus.inverse(), plus.inverse());
            orbit_rep.insert(image, plus);
            orbit_rep.insert(image.inverse(), plus.inverse());
        }
    }

    let mut values = BTreeMap::new();
    for (&l, &rep) in &orbit_rep {
        if l.sign == Sign::Plus && rep == l {
            let (p_plus, p_minus) = word.occurrences(l.id).expect("edge occurs");
            values.insert(l.id, (circle[p_plus] + circle[p_minus]) % 2);
        }
    }

    let half = n / 2;
    let letters: Vec<Letter> = (0..half)
        .map(|i| word.letter(i))
        .filter(|l| !reversed.contains(&l.id))
        .map(|l| orbit_rep[&l])
        .collect();

    let mut cleanup = Cleanup {
        letters,
        values,
        modulus: 2,
    };
    cleanup.run()?;
    finish_quotient(cleanup, params, f, 2)
}

/// Quotient of a maximal word of genus > 1 by an order-3 automorphism
/// with no fixed negative vertices.
///
/// Keeps the first third of the word, removes the edge orbits at fixed
/// positive vertices (the leaves of the quotient graph), suppresses the
/// resulting degree-2 vertices, and carries the Z/3 flow read off the
/// three-circle picture: passing a fixed vertex's corner steps the
/// circle index by ±1 according to how the rotation turns there.
pub fn quotient_by_order3(word: &WicksWord, shift: usize) -> Result<QuotientData> {
    word.require_valid()?;
    let surface = SurfaceMap::build_unchecked(word);
    surface.require_maximal()?;
    let genus = surface.genus();
    if genus < 2 {
        return Err(Error::GenusTooSmall {
            min: 2,
            got: genus,
        });
    }
    let n = word.len();
    let shift = shift % n;
    if shift_order(n, shift) != 3 {
        return Err(Error::UnsupportedOrder {
            order: shift_order(n, shift),
            expected: "3",
        });
    }
    let params = symmetry_parameters(word, shift)?;
    let SymmetryParams::Order3 { s, t } = params else {
        return Err(Error::Internal("order-3 parameters expected".to_string()));
    };
    if t != 0 {
        return Err(Error::FixedNegativeVertices { t });
    }
    debug_assert_eq!((genus + 1 - s) % 3, 0);
    let f = (genus + 1 - s) / 3;

    let bijection = letter_bijection(word, shift)?;

    // fixed vertices and the direction the automorphism turns at each
    let mut fixed_vertex_of_corner: Vec<Option<usize>> = vec![None; n];
    let mut turn: Vec<i8> = Vec::new();
    let mut radial_edges: BTreeSet<EdgeId> = BTreeSet::new();
    for (vi, v) in surface.vertices().iter().enumerate() {
        let image_vertex = surface.vertex_of_corner((v.corners[0] + shift) % n);
        if image_vertex != vi {
            continue;
        }
        debug_assert_eq!(v.sign, VertexSign::Positive);
        for &c in &v.corners {
            fixed_vertex_of_corner[c] = Some(turn.len());
        }
        // τ(c) = c + shift equals σ or σ² on the three fixed corners
        let c0 = v.corners[0];
        let tau = (c0 + shift) % n;
        let direction = if tau == surface.next_corner(c0) {
            1
        } else {
            debug_assert_eq!(tau, surface.next_corner(surface.next_corner(c0)));
            -1
        };
        turn.push(direction);
        radial_edges.extend(surface.incident_edges(vi));
    }
    debug_assert_eq!(turn.len(), s);

    // circle index of each position over Z/3
    let mut circle = vec![0i64; n];
    for i in 1..n {
        let step = fixed_vertex_of_corner[i - 1].map_or(0, |v| turn[v] as i64);
        circle[i] = circle[i - 1] + step;
    }
    let closing = fixed_vertex_of_corner[n - 1].map_or(0, |v| turn[v] as i64);
    if (circle[n - 1] + closing - circle[0]).rem_euclid(3) != 0 {
        return Err(Error::Internal(
            "circle index does not close up mod 3".to_string(),
        ));
    }

    // oriented orbit representatives: follow the bijection from the
    // smallest edge id of each orbit
    let mut orbit_rep: BTreeMap<Letter, Letter> = BTreeMap::new();
    for id in word.edge_ids() {
        let plus = Letter { id, sign: Sign::Plus };
        if orbit_rep.contains_key(&plus) {
            continue;
        }
        let mut member = plus;
        for _ in 0..3 {
            orbit_rep.insert(member, plus);
            orbit_rep.insert(member.inverse(), plus.inverse());
            member = bijection[&member];
        }
        debug_assert_eq!(member, plus);
    }

    let mut values = BTreeMap::new();
    for (&l, &rep) in &orbit_rep {
        if l.sign == Sign::Plus && rep == l {
            let (p_plus, p_minus) = word.occurrences(l.id).expect("edge occurs");
            values.insert(l.id, (circle[p_minus] - circle[p_plus]).rem_euclid(3) as u8);
        }
    }

    let third = n / 3;
    let letters: Vec<Letter> = (0..third)
        .map(|i| word.letter(i))
        .map(|l| orbit_rep[&l])
        .filter(|l| !radial_edges.contains(&orbit_rep[&Letter { id: l.id, sign: Sign::Plus }].id))
        .collect();

    let mut cleanup = Cleanup {
        letters,
        values,
        modulus: 3,
    };
    cleanup.run()?;
    finish_quotient(cleanup, params, f, 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canonical_form, equivalent};
    use crate::word::parse_word;

    const SECTION3: &str = "a b c d e a' f b' e' g h c' f' i g' d' h' i'";

    fn word(text: &str) -> WicksWord {
        parse_word(text).unwrap().0
    }

    #[test]
    fn flow_dimension_is_twice_genus() {
        assert_eq!(flow_space_dimension(&word("a1 a2 a3 a1' a2' a3'"), 2).unwrap(), 2);
        assert_eq!(flow_space_dimension(&word("a1 a2 a3 a1' a2' a3'"), 3).unwrap(), 2);
        assert_eq!(flow_space_dimension(&word(SECTION3), 2).unwrap(), 4);
        assert_eq!(flow_space_dimension(&word(SECTION3), 3).unwrap(), 4);
        // one vertex, two edges: every assignment conserves
        assert_eq!(flow_space_dimension(&word("a b a' b'"), 2).unwrap(), 2);
    }

    #[test]
    fn section3_quotient_matches_the_worked_example() {
        let w = word(SECTION3);
        let q = quotient_by_involution(&w, 9).unwrap();
        assert_eq!(q.params, SymmetryParams::Order2 { r: 1 });
        assert_eq!(q.quotient_genus, 1);
        let reduced = q.reduced.unwrap();
        assert!(equivalent(&reduced, &word("a b e a' b' e'")));

        // flow after canonical relabeling: (1, 1, 0)
        let flow = q.flow.unwrap();
        let canon = canonical_form(&reduced);
        let mut canonical_values = BTreeMap::new();
        for (id, value) in &flow.values {
            let (canon_id, _) = canon.edge_map[id];
            canonical_values.insert(canon_id, *value);
        }
        assert_eq!(
            canonical_values.values().copied().collect::<Vec<_>>(),
            vec![1, 1, 0]
        );
    }

    #[test]
    fn theta_involution_quotient_is_empty() {
        let w = word("a1 a2 a3 a1' a2' a3'");
        let q = quotient_by_involution(&w, 3).unwrap();
        assert_eq!(q.params, SymmetryParams::Order2 { r: 3 });
        assert_eq!(q.quotient_genus, 0);
        assert!(q.reduced.is_none());
        assert!(q.flow.is_none());
    }

    #[test]
    fn invariant_flow_dimension_genus_one() {
        let w = word("a1 a2 a3 a1' a2' a3'");
        // (h+1−s−t)/3 = (1+1−0−2)/3 = 0
        assert_eq!(invariant_flow_dimension(&w, 2, 2).unwrap(), 0);
    }

    #[test]
    fn invariant_dimension_requires_order_three() {
        let w = word(SECTION3);
        assert!(matches!(
            invariant_flow_dimension(&w, 9, 2),
            Err(Error::UnsupportedOrder { .. })
        ));
    }

    #[test]
    fn quotient_by_order3_rejects_fixed_negative_vertices() {
        // the genus-1 word's order-3 automorphism fixes both negative
        // vertices, and genus 1 is below the procedure's range anyway
        let w = word("a1 a2 a3 a1' a2' a3'");
        assert!(quotient_by_order3(&w, 2).is_err());
    }
}

//! Canonical forms of cyclic words and their rotation automorphisms.
//!
//! Two words are equivalent iff some rotation of one relabels to the
//! other; the canonical representative is the lexicographically least
//! first-occurrence relabeling over all rotations. Reversal is never
//! applied: equivalence is orientation-preserving.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{SurfaceMap, VertexSign};
use crate::word::{EdgeId, Letter, WicksWord};

/// Canonical representative of a word together with the relabeling that
/// produced it.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub word: WicksWord,
    /// Winning rotation amount (smallest among ties).
    pub shift: usize,
    /// Original edge id → (canonical id, orientation flipped).
    pub edge_map: BTreeMap<EdgeId, (EdgeId, bool)>,
}

/// Rotations of the linear word that realize automorphisms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutGroup {
    pub word_length: usize,
    pub order: usize,
    /// Smallest nonzero member shift; 0 iff the group is trivial.
    pub generator_shift: usize,
    /// All member shifts, ascending, starting with 0.
    pub member_shifts: Vec<usize>,
}

/// Fixed-structure counts of an automorphism of order 2, 3 or 6.
///
/// For order 6 the stored `(r, s, t)` are the unscaled parameters: the
/// order-2 power reverses `3r` edges and the order-3 power fixes `2s`
/// positive and `2t` negative vertices.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "order")]
pub enum SymmetryParams {
    #[serde(rename = "2")]
    Order2 { r: usize },
    #[serde(rename = "3")]
    Order3 { s: usize, t: usize },
    #[serde(rename = "6")]
    Order6 { r: usize, s: usize, t: usize },
}

/// Lexicographically least relabeled rotation, with the edge mapping.
pub fn canonical_form(word: &WicksWord) -> Canonical {
    let n = word.len();
    let mut best: Option<(Vec<Letter>, usize)> = None;
    for shift in 0..n {
        let candidate = crate::word::relabel(word.rotated(shift).letters());
        match &best {
            Some((b, _)) if *b <= candidate => {}
            _ => best = Some((candidate, shift)),
        }
    }
    let (letters, shift) = best.expect("words are nonempty");

    let rotated = word.rotated(shift);
    let mut edge_map = BTreeMap::new();
    for (pos, orig) in rotated.letters().iter().enumerate() {
        let canon = letters[pos];
        edge_map
            .entry(orig.id)
            .or_insert((canon.id, orig.sign != canon.sign));
    }
    Canonical {
        word: WicksWord::new(letters).expect("relabeling preserves condition (i)"),
        shift,
        edge_map,
    }
}

/// Canonical string form, used as the class key everywhere.
pub fn canonical_string(word: &WicksWord) -> String {
    canonical_form(word).word.to_string()
}

pub fn equivalent(a: &WicksWord, b: &WicksWord) -> bool {
    canonical_form(a).word == canonical_form(b).word
}

/// All rotations `k` with `relabel(rotate(w, k)) = relabel(w)`.
pub fn automorphisms(word: &WicksWord) -> AutGroup {
    let n = word.len();
    let base = word.relabeled();
    let mut member_shifts = Vec::new();
    for shift in 0..n {
        if word.rotated(shift).relabeled() == base {
            member_shifts.push(shift);
        }
    }
    let order = member_shifts.len();
    debug_assert_eq!(n % order, 0, "Aut(w) must be a subgroup of Z/2eZ");
    debug_assert!(member_shifts
        .iter()
        .enumerate()
        .all(|(i, &s)| s == i * (n / order)));
    AutGroup {
        word_length: n,
        order,
        generator_shift: if order == 1 { 0 } else { n / order },
        member_shifts,
    }
}

/// The letter bijection realized by an automorphic rotation: the letter at
/// position `i` maps to the letter at position `i + shift`.
///
/// Fails if the positionwise mapping is inconsistent, i.e. the shift is
/// not an automorphism.
pub fn letter_bijection(word: &WicksWord, shift: usize) -> Result<BTreeMap<Letter, Letter>> {
    let n = word.len();
    let mut map = BTreeMap::new();
    for i in 0..n {
        let from = word.letter(i);
        let to = word.letter((i + shift) % n);
        for (f, t) in [(from, to), (from.inverse(), to.inverse())] {
            if let Some(prev) = map.insert(f, t) {
                if prev != t {
                    return Err(Error::NotAnAutomorphism { shift });
                }
            }
        }
    }
    Ok(map)
}

/// Order of the rotation subgroup element `shift` in Z/nZ.
pub fn shift_order(n: usize, shift: usize) -> usize {
    if shift == 0 {
        1
    } else {
        n / num_integer::gcd(n, shift)
    }
}

/// Number of edges reversed by an order-2 automorphism: ids whose two
/// occurrences are exactly half the word apart.
fn reversed_edge_count(word: &WicksWord) -> usize {
    let n = word.len();
    let matching = word.matching();
    (0..n).filter(|&i| matching[i] == (i + n / 2) % n).count() / 2
}

/// Fixed positive/negative vertex counts under the corner rotation
/// `c ↦ c + shift`.
fn fixed_vertex_counts(map: &SurfaceMap, shift: usize) -> (usize, usize) {
    let n = map.word().len();
    let mut s = 0;
    let mut t = 0;
    for v in map.vertices() {
        let fixed = v
            .corners
            .iter()
            .all(|&c| map.vertex_of_corner((c + shift) % n) == map.vertex_of_corner(v.corners[0]));
        if fixed {
            match v.sign {
                VertexSign::Positive => s += 1,
                VertexSign::Negative => t += 1,
                VertexSign::Unsigned => {}
            }
        }
    }
    (s, t)
}

/// Symmetry parameters of an automorphic shift of order 2, 3 or 6.
pub fn symmetry_parameters(word: &WicksWord, shift: usize) -> Result<SymmetryParams> {
    word.require_valid()?;
    let n = word.len();
    let shift = shift % n;
    let aut = automorphisms(word);
    if !aut.member_shifts.contains(&shift) {
        return Err(Error::NotAnAutomorphism { shift });
    }
    let order = shift_order(n, shift);
    match order {
        2 => Ok(SymmetryParams::Order2 {
            r: reversed_edge_count(word),
        }),
        3 => {
            let map = SurfaceMap::build(word)?;
            let (s, t) = fixed_vertex_counts(&map, shift);
            Ok(SymmetryParams::Order3 { s, t })
        }
        6 => {
            let map = SurfaceMap::build(word)?;
            let r3 = reversed_edge_count(word);
            let (s2, t2) = fixed_vertex_counts(&map, (2 * shift) % n);
            if r3 % 3 != 0 || s2 % 2 != 0 || t2 % 2 != 0 {
                return Err(Error::Internal(format!(
                    "order-6 parameters not divisible: 3r = {r3}, 2s = {s2}, 2t = {t2}"
                )));
            }
            Ok(SymmetryParams::Order6 {
                r: r3 / 3,
                s: s2 / 2,
                t: t2 / 2,
            })
        }
        other => Err(Error::UnsupportedOrder {
            order: other,
            expected: "2, 3 or 6",
        }),
    }
}

/// Symmetry parameters for every non-identity member of Aut(w) whose
/// order is 2, 3 or 6, keyed by shift.
pub fn all_symmetry_parameters(word: &WicksWord) -> Result<BTreeMap<usize, SymmetryParams>> {
    let aut = automorphisms(word);
    let mut out = BTreeMap::new();
    for &shift in &aut.member_shifts {
        if shift == 0 {
            continue;
        }
        if matches!(shift_order(word.len(), shift), 2 | 3 | 6) {
            out.insert(shift, symmetry_parameters(word, shift)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{parse_word, Sign};

    fn word(text: &str) -> WicksWord {
        parse_word(text).unwrap().0
    }

    const SECTION3: &str = "a b c d e a' f b' e' g h c' f' i g' d' h' i'";

    #[test]
    fn canonical_invariant_under_rotation() {
        let w = word(SECTION3);
        let canon = canonical_string(&w);
        for shift in 0..w.len() {
            assert_eq!(canonical_string(&w.rotated(shift)), canon);
        }
    }

    #[test]
    fn canonical_invariant_under_relabeling() {
        let a = word("b c a b' c' a'");
        let b = word("a1 a2 a3 a1' a2' a3'");
        assert_eq!(canonical_string(&a), canonical_string(&b));
        assert!(equivalent(&a, &b));
    }

    #[test]
    fn canonical_is_idempotent() {
        let w = word(SECTION3);
        let c1 = canonical_form(&w).word;
        let c2 = canonical_form(&c1).word;
        assert_eq!(c1, c2);
    }

    #[test]
    fn theta_word_has_order_six() {
        let aut = automorphisms(&word("a1 a2 a3 a1' a2' a3'"));
        assert_eq!(aut.order, 6);
        assert_eq!(aut.generator_shift, 1);
        assert_eq!(aut.member_shifts, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn section3_word_has_shift_nine() {
        let w = word(SECTION3);
        let aut = automorphisms(&w);
        assert!(aut.member_shifts.contains(&9));
        assert_eq!(aut.order % 2, 0);
    }

    #[test]
    fn section3_word_reverses_one_edge() {
        let w = word(SECTION3);
        match symmetry_parameters(&w, 9).unwrap() {
            SymmetryParams::Order2 { r } => assert_eq!(r, 1),
            other => panic!("expected an order-2 automorphism, got {other:?}"),
        }
    }

    #[test]
    fn theta_word_order3_and_order6_parameters() {
        let w = word("a1 a2 a3 a1' a2' a3'");
        // shift 2 has order 3: both (negative) vertices fixed
        assert_eq!(
            symmetry_parameters(&w, 2).unwrap(),
            SymmetryParams::Order3 { s: 0, t: 2 }
        );
        // shift 1 has order 6: (3r; 2s, 2t) = (3; 0, 2)
        assert_eq!(
            symmetry_parameters(&w, 1).unwrap(),
            SymmetryParams::Order6 { r: 1, s: 0, t: 1 }
        );
        // shift 3 has order 2 and reverses all three edges
        assert_eq!(
            symmetry_parameters(&w, 3).unwrap(),
            SymmetryParams::Order2 { r: 3 }
        );
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let w = word(SECTION3);
        assert!(matches!(
            symmetry_parameters(&w, 1),
            Err(Error::NotAnAutomorphism { shift: 1 })
        ));
    }

    #[test]
    fn square_word_aut_is_full_rotation_group() {
        // non-maximal words may have orders outside {1,2,3,6}
        let aut = automorphisms(&word("a b a' b'"));
        assert_eq!(aut.order, 4);
    }

    #[test]
    fn letter_bijection_of_section3_shift9() {
        let w = word(SECTION3);
        let bij = letter_bijection(&w, 9).unwrap();
        // μ(c) = c⁻¹: the edge c (id 2) is reversed
        let c = Letter::new(2, Sign::Plus);
        assert_eq!(bij[&c], c.inverse());
    }
}

//! Structural rewrites on maximal words: classification of negative
//! vertices, reductions to genus g−1, constructions to genus g+1, and
//! IH-transformations.
//!
//! Reductions and constructions are implemented as surgeries on the
//! rotation system. A construction subdivides the chosen edges, attaches
//! the gadget for its kind with every possible rotation at the new
//! vertices, and keeps a candidate only if the result is a valid maximal
//! word of genus g+1 whose designated new vertex is negative of the
//! intended type. A reduction deletes the gadget edges around the chosen
//! negative vertex and merges the edge pairs through the vertices left
//! with degree 2, which inverts every accepted construction exactly.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::CombMap;
use crate::surface::{SurfaceMap, VertexSign};
use crate::word::{EdgeId, Letter, WicksWord};

/// Local configuration at a negative vertex of a maximal word of genus
/// greater than 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NegativeVertexType {
    /// Two distinct neighbours, adjacent to each other.
    Alpha,
    /// Two distinct neighbours, non-adjacent.
    Beta,
    /// Three distinct neighbours.
    Gamma,
}

/// Which IH substitution applies at an edge.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum IHKind {
    Type1,
    Type2a,
    Type2b,
}

/// One emitted construction candidate.
#[derive(Clone, Debug)]
pub struct Construction {
    pub kind: NegativeVertexType,
    /// Spliced edges of the base word, ascending, with multiplicity.
    pub edges: Vec<EdgeId>,
    /// Index of the rotation/attachment choice within this parameter.
    pub variant: u32,
    pub word: WicksWord,
}

fn vertex_context(word: &WicksWord, vertex: usize) -> Result<(SurfaceMap, Vec<(EdgeId, usize)>)> {
    let map = SurfaceMap::build(word)?;
    map.require_maximal()?;
    if vertex >= map.vertex_count() {
        return Err(Error::VertexNotFound(vertex));
    }
    if map.genus() < 2 {
        return Err(Error::GenusTooSmall {
            min: 2,
            got: map.genus(),
        });
    }
    if map.vertices()[vertex].sign != VertexSign::Negative {
        return Err(Error::VertexNotNegative(vertex));
    }
    // the three incident edges with their far endpoints
    let mut incident = Vec::new();
    for (id, head, tail) in map.edge_endpoints() {
        if head == vertex {
            incident.push((id, tail));
        }
        if tail == vertex {
            incident.push((id, head));
        }
    }
    debug_assert_eq!(incident.len(), 3, "maximal words are trivalent");
    Ok((map, incident))
}

/// Classifies a negative vertex by its neighbour structure.
pub fn classify_negative_vertex(word: &WicksWord, vertex: usize) -> Result<NegativeVertexType> {
    let (map, incident) = vertex_context(word, vertex)?;
    let mut neighbours: Vec<usize> = incident.iter().map(|&(_, v)| v).collect();
    neighbours.sort_unstable();
    neighbours.dedup();
    match neighbours.len() {
        3 => Ok(NegativeVertexType::Gamma),
        2 => {
            let adjacency = map.adjacency();
            let adjacent = adjacency[neighbours[0]].contains(&neighbours[1]);
            if adjacent {
                Ok(NegativeVertexType::Alpha)
            } else {
                Ok(NegativeVertexType::Beta)
            }
        }
        n => Err(Error::Internal(format!(
            "negative vertex with {n} distinct neighbours in genus > 1"
        ))),
    }
}

/// Gadget edges to delete when reducing at `vertex`.
fn reduction_edge_set(
    word: &WicksWord,
    vertex: usize,
    kind: NegativeVertexType,
) -> Result<BTreeSet<EdgeId>> {
    let (map, incident) = vertex_context(word, vertex)?;
    let mut set: BTreeSet<EdgeId> = incident.iter().map(|&(id, _)| id).collect();
    if kind == NegativeVertexType::Gamma {
        return Ok(set);
    }
    // the doubly-adjacent partner W
    let mut counts = std::collections::BTreeMap::new();
    for &(_, v) in &incident {
        *counts.entry(v).or_insert(0usize) += 1;
    }
    let partner = *counts
        .iter()
        .find(|&(_, &c)| c == 2)
        .ok_or_else(|| Error::Internal("alpha/beta vertex without double edge".to_string()))?
        .0;
    set.extend(map.incident_edges(partner));
    if kind == NegativeVertexType::Alpha {
        let single = *counts
            .iter()
            .find(|&(_, &c)| c == 1)
            .ok_or_else(|| Error::Internal("alpha vertex without single neighbour".to_string()))?
            .0;
        set.extend(map.incident_edges(single));
    }
    Ok(set)
}

/// Reduction at a negative vertex: a maximal word of genus g−1.
pub fn reduce(word: &WicksWord, vertex: usize) -> Result<WicksWord> {
    let kind = classify_negative_vertex(word, vertex)?;
    let edges = reduction_edge_set(word, vertex, kind)?;
    let genus = SurfaceMap::build_unchecked(word).genus();

    let mut map = CombMap::from_word(word);
    map.delete_edges(&edges);
    map.suppress_degree_two()?;
    let (reduced, _) = map.to_word()?;
    reduced.require_valid().map_err(|e| {
        Error::Internal(format!("reduction produced an invalid word: {e}"))
    })?;
    let surface = SurfaceMap::build_unchecked(&reduced);
    if surface.genus() != genus - 1 || !surface.is_maximal() {
        return Err(Error::Internal(format!(
            "reduction produced genus {} length {}, expected maximal genus {}",
            surface.genus(),
            reduced.len(),
            genus - 1
        )));
    }
    Ok(reduced)
}

/// Attachment side at a subdivision vertex: the leg dart goes after the
/// first or the second dart of the degree-2 rotation.
fn insert_leg(map: &mut CombMap, point: (usize, usize), leg: usize, side: bool) {
    let at = if side { point.0 } else { point.1 };
    map.insert_after(at, leg);
}

fn gadget_alpha(map: &mut CombMap, point: (usize, usize), variant: u32) -> usize {
    let [u_a, u_b, u_e] = map.new_darts::<3>();
    let [v_b, v_c, v_d] = map.new_darts::<3>();
    let [w_c, w_d, w_e] = map.new_darts::<3>();
    let leg = map.new_dart();
    if variant & 1 == 0 {
        map.make_vertex(&[u_a, u_b, u_e]);
    } else {
        map.make_vertex(&[u_a, u_e, u_b]);
    }
    if variant & 2 == 0 {
        map.make_vertex(&[v_b, v_c, v_d]);
    } else {
        map.make_vertex(&[v_b, v_d, v_c]);
    }
    if variant & 4 == 0 {
        map.make_vertex(&[w_c, w_d, w_e]);
    } else {
        map.make_vertex(&[w_c, w_e, w_d]);
    }
    insert_leg(map, point, leg, variant & 8 == 0);
    map.make_edge(u_a, leg);
    map.make_edge(u_b, v_b);
    map.make_edge(u_e, w_e);
    map.make_edge(v_c, w_c);
    map.make_edge(v_d, w_d);
    // V2 is one of the doubly-adjacent negative pair
    v_b
}

fn gadget_beta(
    map: &mut CombMap,
    point_x: (usize, usize),
    point_y: (usize, usize),
    variant: u32,
) -> usize {
    let [v_a, v_b, v_c] = map.new_darts::<3>();
    let [w_b, w_c, w_d] = map.new_darts::<3>();
    let leg_x = map.new_dart();
    let leg_y = map.new_dart();
    if variant & 1 == 0 {
        map.make_vertex(&[v_a, v_b, v_c]);
    } else {
        map.make_vertex(&[v_a, v_c, v_b]);
    }
    if variant & 2 == 0 {
        map.make_vertex(&[w_b, w_c, w_d]);
    } else {
        map.make_vertex(&[w_b, w_d, w_c]);
    }
    insert_leg(map, point_x, leg_x, variant & 4 == 0);
    insert_leg(map, point_y, leg_y, variant & 8 == 0);
    map.make_edge(v_a, leg_x);
    map.make_edge(w_d, leg_y);
    map.make_edge(v_b, w_b);
    map.make_edge(v_c, w_c);
    v_a
}

fn gadget_gamma(
    map: &mut CombMap,
    points: [(usize, usize); 3],
    variant: u32,
) -> usize {
    let [v_a, v_b, v_c] = map.new_darts::<3>();
    let legs = [
        map.new_dart(),
        map.new_dart(),
        map.new_dart(),
    ];
    if variant & 1 == 0 {
        map.make_vertex(&[v_a, v_b, v_c]);
    } else {
        map.make_vertex(&[v_a, v_c, v_b]);
    }
    for (k, (&point, &leg)) in points.iter().zip(legs.iter()).enumerate() {
        insert_leg(map, point, leg, variant & (2 << k) == 0);
    }
    map.make_edge(v_a, legs[0]);
    map.make_edge(v_b, legs[1]);
    map.make_edge(v_c, legs[2]);
    v_a
}

/// Subdivides the listed edges (repeats allowed: a repeated edge is
/// subdivided again along its second half) and returns the degree-2
/// vertex darts in order.
fn subdivide_all(map: &mut CombMap, edges: &[EdgeId]) -> Result<Vec<(usize, usize)>> {
    let mut current: std::collections::BTreeMap<EdgeId, EdgeId> = Default::default();
    let mut points = Vec::new();
    for &e in edges {
        let target = *current.get(&e).unwrap_or(&e);
        let (p, q, [_, second_half]) = map.subdivide(target)?;
        current.insert(e, second_half);
        points.push((p, q));
    }
    Ok(points)
}

fn accept_candidate(
    map: &CombMap,
    base_genus: usize,
    kind: NegativeVertexType,
    marker_dart: usize,
) -> Option<WicksWord> {
    let (word, walk) = map.to_word().ok()?;
    if !word.is_valid() {
        return None;
    }
    let surface = SurfaceMap::build_unchecked(&word);
    if surface.genus() != base_genus + 1 || !surface.is_maximal() {
        return None;
    }
    let corner = walk.iter().position(|&d| d == marker_dart)?;
    let vertex = surface.vertex_of_corner(corner);
    if surface.vertices()[vertex].sign != VertexSign::Negative {
        return None;
    }
    if classify_negative_vertex(&word, vertex).ok()? != kind {
        return None;
    }
    Some(word)
}

/// All maximal genus-(g+1) words obtainable from `word` by an α, β or γ
/// substitution. Every splice choice and attachment rotation is tried;
/// candidates failing validation are dropped. Duplicate words may appear
/// under distinct parameter choices.
pub fn construct_all(word: &WicksWord) -> Result<Vec<Construction>> {
    word.require_valid()?;
    let base = SurfaceMap::build_unchecked(word);
    base.require_maximal()?;
    let genus = base.genus();
    let ids = word.edge_ids();
    let mut out = Vec::new();

    for &e in &ids {
        for variant in 0..16u32 {
            let mut map = CombMap::from_word(word);
            let points = subdivide_all(&mut map, &[e])?;
            let marker = gadget_alpha(&mut map, points[0], variant);
            if let Some(candidate) =
                accept_candidate(&map, genus, NegativeVertexType::Alpha, marker)
            {
                out.push(Construction {
                    kind: NegativeVertexType::Alpha,
                    edges: vec![e],
                    variant,
                    word: candidate,
                });
            }
        }
    }

    for (i, &e1) in ids.iter().enumerate() {
        for &e2 in &ids[i..] {
            for variant in 0..16u32 {
                let mut map = CombMap::from_word(word);
                let points = subdivide_all(&mut map, &[e1, e2])?;
                let marker = gadget_beta(&mut map, points[0], points[1], variant);
                if let Some(candidate) =
                    accept_candidate(&map, genus, NegativeVertexType::Beta, marker)
                {
                    out.push(Construction {
                        kind: NegativeVertexType::Beta,
                        edges: vec![e1, e2],
                        variant,
                        word: candidate,
                    });
                }
            }
        }
    }

    for (i, &e1) in ids.iter().enumerate() {
        for (j, &e2) in ids[i..].iter().enumerate() {
            for &e3 in &ids[i + j..] {
                for variant in 0..16u32 {
                    let mut map = CombMap::from_word(word);
                    let points = subdivide_all(&mut map, &[e1, e2, e3])?;
                    let marker =
                        gadget_gamma(&mut map, [points[0], points[1], points[2]], variant);
                    if let Some(candidate) =
                        accept_candidate(&map, genus, NegativeVertexType::Gamma, marker)
                    {
                        out.push(Construction {
                            kind: NegativeVertexType::Gamma,
                            edges: vec![e1, e2, e3],
                            variant,
                            word: candidate,
                        });
                    }
                }
            }
        }
    }

    Ok(out)
}

/// The IH-transformation on an edge: contract it and split the resulting
/// degree-4 vertex the other way.
pub fn ih_transform(word: &WicksWord, edge: EdgeId) -> Result<(IHKind, WicksWord)> {
    word.require_valid()?;
    let surface = SurfaceMap::build_unchecked(word);
    surface.require_maximal()?;
    let n = word.len();
    let (i, j) = word
        .occurrences(edge)
        .ok_or_else(|| Error::EdgeNotFound(edge.to_string()))?;
    let matching = word.matching();

    let a = word.letter((i + n - 1) % n);
    let b = word.letter((i + 1) % n);
    let c = word.letter((j + n - 1) % n);
    let d = word.letter((j + 1) % n);
    debug_assert!(b != a.inverse() && c != b.inverse() && d != a.inverse() && d != c.inverse());
    // (c,d) = (a⁻¹,b⁻¹) happens exactly on the genus-1 triple edge, where
    // both type-2 substitutions apply and give equivalent results; type 2a
    // takes precedence.

    let fresh = {
        let used: BTreeSet<u32> = word.edge_ids().iter().map(|id| id.0).collect();
        let mut y = 0u32;
        while used.contains(&y) && EdgeId(y) != edge {
            y += 1;
        }
        EdgeId(y)
    };
    let y_plus = Letter {
        id: fresh,
        sign: crate::word::Sign::Plus,
    };

    let kind;
    // insertion points: letter y goes right after position `pos_y`,
    // y⁻¹ right after `pos_y_inv`
    let (pos_y, pos_y_inv);
    if c == a.inverse() {
        kind = IHKind::Type2a;
        // b⁻¹ a x b → b⁻¹ y a b and d⁻¹ a⁻¹ x⁻¹ d → d⁻¹ y⁻¹ a⁻¹ d
        let p_b = matching[(i + 1) % n];
        if (p_b + 1) % n != (i + n - 1) % n {
            return Err(Error::Internal("factor b⁻¹a missing for type 2a".into()));
        }
        let p_d = matching[(j + 1) % n];
        if (p_d + 1) % n != (j + n - 1) % n {
            return Err(Error::Internal("factor d⁻¹a⁻¹ missing for type 2a".into()));
        }
        pos_y = p_b;
        pos_y_inv = p_d;
    } else if d == b.inverse() {
        kind = IHKind::Type2b;
        // a x b a⁻¹ → a b y a⁻¹ and c x⁻¹ b⁻¹ c⁻¹ → c b⁻¹ y⁻¹ c⁻¹
        let p_a = matching[(i + n - 1) % n];
        if p_a != (i + 2) % n {
            return Err(Error::Internal("factor ba⁻¹ missing for type 2b".into()));
        }
        let p_c = matching[(j + n - 1) % n];
        if p_c != (j + 2) % n {
            return Err(Error::Internal("factor b⁻¹c⁻¹ missing for type 2b".into()));
        }
        pos_y = (i + 1) % n;
        pos_y_inv = (j + 1) % n;
    } else {
        kind = IHKind::Type1;
        // a x b → a b, c x⁻¹ d → c d, d⁻¹ a⁻¹ → d⁻¹ y a⁻¹,
        // b⁻¹ c⁻¹ → b⁻¹ y⁻¹ c⁻¹
        let p_d = matching[(j + 1) % n];
        if (p_d + 1) % n != matching[(i + n - 1) % n] {
            return Err(Error::Internal("factor d⁻¹a⁻¹ missing for type 1".into()));
        }
        let p_b = matching[(i + 1) % n];
        if (p_b + 1) % n != matching[(j + n - 1) % n] {
            return Err(Error::Internal("factor b⁻¹c⁻¹ missing for type 1".into()));
        }
        pos_y = p_d;
        pos_y_inv = p_b;
    }

    let mut letters = Vec::with_capacity(n);
    for pos in 0..n {
        if pos != i && pos != j {
            letters.push(word.letter(pos));
        }
        if pos == pos_y {
            letters.push(y_plus);
        }
        if pos == pos_y_inv {
            letters.push(y_plus.inverse());
        }
    }
    let result = WicksWord::new(letters)?;
    result
        .require_valid()
        .map_err(|e| Error::Internal(format!("IH produced an invalid word: {e}")))?;
    let out_surface = SurfaceMap::build_unchecked(&result);
    if out_surface.genus() != surface.genus() || !out_surface.is_maximal() {
        return Err(Error::Internal(
            "IH changed genus or maximality".to_string(),
        ));
    }
    Ok((kind, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::{canonical_string, equivalent};
    use crate::word::parse_word;

    const SECTION3: &str = "a b c d e a' f b' e' g h c' f' i g' d' h' i'";

    fn word(text: &str) -> WicksWord {
        parse_word(text).unwrap().0
    }

    fn negative_vertices(w: &WicksWord) -> Vec<usize> {
        let map = SurfaceMap::build(w).unwrap();
        (0..map.vertex_count())
            .filter(|&v| map.vertices()[v].sign == VertexSign::Negative)
            .collect()
    }

    #[test]
    fn classification_covers_section3_word() {
        let w = word(SECTION3);
        for v in negative_vertices(&w) {
            classify_negative_vertex(&w, v).unwrap();
        }
    }

    #[test]
    fn classification_requires_negative_vertex() {
        let w = word(SECTION3);
        let map = SurfaceMap::build(&w).unwrap();
        let positive = (0..map.vertex_count())
            .find(|&v| map.vertices()[v].sign == VertexSign::Positive)
            .unwrap();
        assert!(matches!(
            classify_negative_vertex(&w, positive),
            Err(Error::VertexNotNegative(_))
        ));
    }

    #[test]
    fn classification_rejects_genus_one() {
        let w = word("a1 a2 a3 a1' a2' a3'");
        assert!(matches!(
            classify_negative_vertex(&w, 0),
            Err(Error::GenusTooSmall { .. })
        ));
    }

    #[test]
    fn classification_is_aut_equivariant_on_section3() {
        let w = word(SECTION3);
        let map = SurfaceMap::build(&w).unwrap();
        let n = w.len();
        // shift 9 is an automorphism; vertices map by corner translation
        for v in negative_vertices(&w) {
            let image_corner = (map.vertices()[v].corners[0] + 9) % n;
            let image = map.vertex_of_corner(image_corner);
            assert_eq!(
                classify_negative_vertex(&w, v).unwrap(),
                classify_negative_vertex(&w, image).unwrap()
            );
        }
    }

    #[test]
    fn reduce_section3_yields_the_genus_one_class() {
        let w = word(SECTION3);
        let theta = word("a1 a2 a3 a1' a2' a3'");
        for v in negative_vertices(&w) {
            let reduced = reduce(&w, v).unwrap();
            assert!(
                equivalent(&reduced, &theta),
                "reduction at vertex {v} gave {reduced}"
            );
        }
    }

    #[test]
    fn paired_double_edge_reductions_agree() {
        let w = word(SECTION3);
        let map = SurfaceMap::build(&w).unwrap();
        // group negative vertices by their doubly-adjacent partner
        for v in negative_vertices(&w) {
            let kind = classify_negative_vertex(&w, v).unwrap();
            if kind == NegativeVertexType::Gamma {
                continue;
            }
            let mut counts = std::collections::BTreeMap::new();
            for (id, head, tail) in map.edge_endpoints() {
                let _ = id;
                if head == v {
                    *counts.entry(tail).or_insert(0) += 1;
                }
                if tail == v {
                    *counts.entry(head).or_insert(0) += 1;
                }
            }
            let partner = *counts.iter().find(|&(_, &c)| c == 2).unwrap().0;
            assert_eq!(
                canonical_string(&reduce(&w, v).unwrap()),
                canonical_string(&reduce(&w, partner).unwrap()),
            );
        }
    }

    #[test]
    fn constructions_from_genus_one_cover_nine_classes() {
        let base = word("a1 a2 a3 a1' a2' a3'");
        let mut classes = BTreeSet::new();
        for c in construct_all(&base).unwrap() {
            let s = SurfaceMap::build(&c.word).unwrap();
            assert_eq!(s.genus(), 2);
            assert!(s.is_maximal());
            assert_eq!(s.sign_counts(), (2, 4));
            classes.insert(canonical_string(&c.word));
        }
        assert_eq!(classes.len(), 9);
    }

    #[test]
    fn every_construction_round_trips_through_some_reduction() {
        let base = word("a1 a2 a3 a1' a2' a3'");
        let base_canon = canonical_string(&base);
        for c in construct_all(&base).unwrap() {
            let found = negative_vertices(&c.word).into_iter().any(|v| {
                reduce(&c.word, v)
                    .map(|r| canonical_string(&r) == base_canon)
                    .unwrap_or(false)
            });
            assert!(found, "no reduction inverts the construction {:?}", c.kind);
        }
    }

    #[test]
    fn alpha_construction_creates_paired_alpha_vertices() {
        let base = word("a1 a2 a3 a1' a2' a3'");
        let alpha = construct_all(&base)
            .unwrap()
            .into_iter()
            .find(|c| c.kind == NegativeVertexType::Alpha)
            .unwrap();
        let w = alpha.word;
        let alphas = negative_vertices(&w)
            .into_iter()
            .filter(|&v| {
                classify_negative_vertex(&w, v).unwrap() == NegativeVertexType::Alpha
            })
            .count();
        assert!(alphas >= 2, "alpha constructions create a paired alpha vertex");
    }

    #[test]
    fn ih_on_genus_one_word_is_equivalence() {
        let w = word("a1 a2 a3 a1' a2' a3'");
        for e in w.edge_ids() {
            let (_, out) = ih_transform(&w, e).unwrap();
            assert!(equivalent(&out, &w));
        }
    }

    #[test]
    fn ih_type2_results_are_equivalent_to_input() {
        let w = word(SECTION3);
        for e in w.edge_ids() {
            let (kind, out) = ih_transform(&w, e).unwrap();
            if matches!(kind, IHKind::Type2a | IHKind::Type2b) {
                assert!(equivalent(&out, &w));
            }
        }
    }

    #[test]
    fn ih_preserves_genus_maximality_and_signs() {
        let w = word(SECTION3);
        let before = SurfaceMap::build(&w).unwrap().sign_counts();
        for e in w.edge_ids() {
            let (_, out) = ih_transform(&w, e).unwrap();
            let s = SurfaceMap::build(&out).unwrap();
            assert_eq!(s.genus(), 2);
            assert!(s.is_maximal());
            assert_eq!(s.sign_counts(), before);
        }
    }

    #[test]
    fn ih_missing_edge_errors() {
        let w = word("a1 a2 a3 a1' a2' a3'");
        assert!(matches!(
            ih_transform(&w, EdgeId(7)),
            Err(Error::EdgeNotFound(_))
        ));
    }
}

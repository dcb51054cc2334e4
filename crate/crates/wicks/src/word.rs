//! Cyclic words over signed letters and the Wicks form conditions.
//!
//! A word is stored as a linear sequence of [`Letter`]s with cyclic
//! semantics: every factor and every position index is taken modulo the
//! length. Edge ids are assigned in order of first occurrence when a word
//! is parsed from text.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an edge (an unordered letter/inverse pair).
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize,
)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0 + 1)
    }
}

/// Orientation of a letter occurrence. `Minus` denotes the inverse.
///
/// The derived order puts `Plus` before `Minus`, which is the tie-breaking
/// rule used by canonical forms.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize,
)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// One occurrence of an oriented edge in a word.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize,
)]
pub struct Letter {
    pub id: EdgeId,
    pub sign: Sign,
}

impl Letter {
    pub fn new(id: u32, sign: Sign) -> Letter {
        Letter {
            id: EdgeId(id),
            sign,
        }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            id: self.id,
            sign: self.sign.flip(),
        }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.id == other.id && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.id),
            Sign::Minus => write!(f, "{}'", self.id),
        }
    }
}

/// A cyclic word satisfying condition (i): every edge id occurs exactly
/// twice, once with each sign. Conditions (ii) and (iii) are checked by
/// [`WicksWord::validate`], not by construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct WicksWord {
    letters: Vec<Letter>,
}

/// Where a violation of condition (ii) or (iii) sits in the word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Violation {
    /// Cancelling factor `l l⁻¹` starting at this position.
    Cancellation { position: usize },
    /// Factors `x y` at `position` and `y⁻¹ x⁻¹` at `mirror` form a
    /// substitutable pair.
    SubstitutablePair { position: usize, mirror: usize },
}

/// Outcome of checking conditions (ii) and (iii) on a word.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl WicksWord {
    /// Builds a word from letters, checking condition (i), evenness and
    /// the minimum length of 4.
    pub fn new(letters: Vec<Letter>) -> Result<WicksWord> {
        if letters.len() < 4 {
            return Err(Error::SymbolPairing(format!(
                "word has length {}, need at least 4",
                letters.len()
            )));
        }
        if letters.len() % 2 != 0 {
            return Err(Error::SymbolPairing(format!(
                "word has odd length {}",
                letters.len()
            )));
        }
        let max_id = letters.iter().map(|l| l.id.0).max().unwrap() as usize;
        let mut seen: Vec<[u32; 2]> = vec![[0, 0]; max_id + 1];
        for l in &letters {
            let slot = match l.sign {
                Sign::Plus => 0,
                Sign::Minus => 1,
            };
            seen[l.id.0 as usize][slot] += 1;
        }
        for (id, counts) in seen.iter().enumerate() {
            match counts {
                [0, 0] => {}
                [1, 1] => {}
                [p, m] => {
                    return Err(Error::SymbolPairing(format!(
                        "edge a{} occurs {} time(s) positively and {} time(s) inverted",
                        id + 1,
                        p,
                        m
                    )))
                }
            }
        }
        Ok(WicksWord { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of edges `e`; the length is `2e`.
    pub fn edge_count(&self) -> usize {
        self.letters.len() / 2
    }

    pub fn letter(&self, position: usize) -> Letter {
        self.letters[position % self.letters.len()]
    }

    /// Distinct edge ids, ascending.
    pub fn edge_ids(&self) -> Vec<EdgeId> {
        let mut ids: Vec<EdgeId> = self
            .letters
            .iter()
            .filter(|l| l.sign == Sign::Plus)
            .map(|l| l.id)
            .collect();
        ids.sort();
        ids
    }

    /// Position of the other occurrence of the edge at `position`.
    pub fn partner(&self, position: usize) -> usize {
        let l = self.letters[position];
        self.letters
            .iter()
            .position(|&m| m.is_inverse_of(l))
            .expect("condition (i) guarantees a partner")
    }

    /// For each position, the position of the partner occurrence.
    pub fn matching(&self) -> Vec<usize> {
        let n = self.letters.len();
        let max_id = self.letters.iter().map(|l| l.id.0).max().unwrap() as usize;
        let mut slots: Vec<[usize; 2]> = vec![[usize::MAX; 2]; max_id + 1];
        for (pos, l) in self.letters.iter().enumerate() {
            let s = match l.sign {
                Sign::Plus => 0,
                Sign::Minus => 1,
            };
            slots[l.id.0 as usize][s] = pos;
        }
        let mut m = vec![0usize; n];
        for pair in slots {
            if pair[0] != usize::MAX {
                m[pair[0]] = pair[1];
                m[pair[1]] = pair[0];
            }
        }
        m
    }

    /// Positions of the two occurrences of `id`: `(plus, minus)`.
    pub fn occurrences(&self, id: EdgeId) -> Option<(usize, usize)> {
        let plus = self
            .letters
            .iter()
            .position(|l| l.id == id && l.sign == Sign::Plus)?;
        let minus = self
            .letters
            .iter()
            .position(|l| l.id == id && l.sign == Sign::Minus)?;
        Some((plus, minus))
    }

    /// The linear word starting `shift` positions later on the circle.
    pub fn rotated(&self, shift: usize) -> WicksWord {
        let n = self.letters.len();
        let shift = shift % n;
        let mut letters = Vec::with_capacity(n);
        letters.extend_from_slice(&self.letters[shift..]);
        letters.extend_from_slice(&self.letters[..shift]);
        WicksWord { letters }
    }

    /// Relabels ids by first occurrence: scanning left to right, the first
    /// occurrence of each edge becomes the next fresh id with sign `+`.
    /// Two linear words are isomorphic iff their relabelings are equal.
    pub fn relabeled(&self) -> WicksWord {
        WicksWord {
            letters: relabel(&self.letters),
        }
    }

    /// Checks conditions (ii) and (iii), reporting every violation.
    pub fn validate(&self) -> ValidationReport {
        let n = self.letters.len();
        let mut violations = Vec::new();
        for i in 0..n {
            let a = self.letters[i];
            let b = self.letters[(i + 1) % n];
            if a.is_inverse_of(b) {
                violations.push(Violation::Cancellation { position: i });
            }
        }
        // Condition (iii): factor x y at i, factor y⁻¹ x⁻¹ at j. Report each
        // unordered pair once, keyed by the smaller position.
        for i in 0..n {
            let x = self.letters[i];
            let y = self.letters[(i + 1) % n];
            for j in 0..n {
                if j == i {
                    continue;
                }
                if self.letters[j] == y.inverse() && self.letters[(j + 1) % n] == x.inverse() {
                    if i < j {
                        violations.push(Violation::SubstitutablePair {
                            position: i,
                            mirror: j,
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Requires validity, for operations whose preconditions demand it.
    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        if let Some(v) = report.violations.first() {
            let msg = match v {
                Violation::Cancellation { position } => {
                    format!("condition (ii) violated at position {position}")
                }
                Violation::SubstitutablePair { position, mirror } => format!(
                    "condition (iii) violated by factors at positions {position} and {mirror}"
                ),
            };
            return Err(Error::InvalidWord(msg));
        }
        Ok(())
    }
}

/// First-occurrence relabeling of a letter slice.
pub(crate) fn relabel(letters: &[Letter]) -> Vec<Letter> {
    let max_id = letters.iter().map(|l| l.id.0).max().unwrap_or(0) as usize;
    let mut assigned: Vec<Option<(u32, Sign)>> = vec![None; max_id + 1];
    let mut next = 0u32;
    let mut out = Vec::with_capacity(letters.len());
    for l in letters {
        let entry = &mut assigned[l.id.0 as usize];
        let (fresh, first_sign) = match *entry {
            Some(pair) => pair,
            None => {
                let pair = (next, l.sign);
                *entry = Some(pair);
                next += 1;
                pair
            }
        };
        let sign = if l.sign == first_sign {
            Sign::Plus
        } else {
            Sign::Minus
        };
        out.push(Letter::new(fresh, sign));
    }
    out
}

impl fmt::Display for WicksWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Edge names as written in the parsed source text, indexed by `EdgeId`.
#[derive(Clone, Debug, Default)]
pub struct EdgeNames(pub Vec<String>);

impl EdgeNames {
    pub fn name(&self, id: EdgeId) -> String {
        self.0
            .get(id.0 as usize)
            .cloned()
            .unwrap_or_else(|| id.to_string())
    }

    pub fn lookup(&self, name: &str) -> Option<EdgeId> {
        self.0
            .iter()
            .position(|n| n == name)
            .map(|i| EdgeId(i as u32))
    }
}

/// Parses the word grammar: tokens separated by whitespace or commas, each
/// an identifier optionally suffixed by `'` or `^-1` for the inverse.
///
/// Ids are assigned in order of first occurrence; the sign of each token is
/// recorded as written.
pub fn parse_word(text: &str) -> Result<(WicksWord, EdgeNames)> {
    let mut names: Vec<String> = Vec::new();
    let mut letters = Vec::new();
    let mut offset = 0usize;
    for raw in text.split(|c: char| c.is_whitespace() || c == ',') {
        let token_offset = offset;
        offset += raw.len() + 1;
        if raw.is_empty() {
            continue;
        }
        let (base, sign) = if let Some(stripped) = raw.strip_suffix("^-1") {
            (stripped, Sign::Minus)
        } else if let Some(stripped) = raw.strip_suffix('\'') {
            (stripped, Sign::Minus)
        } else {
            (raw, Sign::Plus)
        };
        let mut chars = base.chars();
        let valid = match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {
                chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            }
            _ => false,
        };
        if !valid {
            return Err(Error::Syntax {
                offset: token_offset,
                message: format!("invalid token {raw:?}"),
            });
        }
        let id = match names.iter().position(|n| n == base) {
            Some(i) => i as u32,
            None => {
                names.push(base.to_string());
                (names.len() - 1) as u32
            }
        };
        letters.push(Letter::new(id, sign));
    }
    if letters.is_empty() {
        return Err(Error::Syntax {
            offset: 0,
            message: "empty word".to_string(),
        });
    }
    let word = WicksWord::new(letters)?;
    Ok((word, EdgeNames(names)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_smallest_valid_word() {
        let (w, names) = parse_word("a b a' b'").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.edge_count(), 2);
        assert_eq!(names.0, vec!["a", "b"]);
        assert!(w.is_valid());
    }

    #[test]
    fn parse_rejects_unpaired_symbols() {
        // b occurs once, a twice with the same sign
        let err = parse_word("a a b").unwrap_err();
        assert!(matches!(err, Error::SymbolPairing(_)));
    }

    #[test]
    fn parse_section3_example() {
        let (w, names) = parse_word("a b c d e a' f b' e' g h c' f' i g' d' h' i'").unwrap();
        assert_eq!(w.len(), 18);
        assert_eq!(w.edge_count(), 9);
        assert_eq!(names.0.len(), 9);
        assert!(w.is_valid());
    }

    #[test]
    fn parse_caret_inverse_and_commas() {
        let (w, _) = parse_word("a,b,a^-1,b^-1").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.letter(2), Letter::new(0, Sign::Minus));
    }

    #[test]
    fn parse_reports_syntax_offset() {
        let err = parse_word("a b 1c").unwrap_err();
        match err {
            Error::Syntax { offset, .. } => assert_eq!(offset, 4),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn validate_detects_cancellation() {
        let (w, _) = parse_word("a b b' a'").unwrap();
        let report = w.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Cancellation { position: 1 })));
        // the wrap-around pair a' a is also a cancellation
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Cancellation { position: 3 })));
    }

    #[test]
    fn validate_detects_substitutable_pair() {
        let (w, _) = parse_word("a b x b' a' x'").unwrap();
        let report = w.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::SubstitutablePair { position: 0, mirror: 3 })));
    }

    #[test]
    fn torus_word_is_valid() {
        let (w, _) = parse_word("a b a' b'").unwrap();
        assert!(w.validate().is_valid());
    }

    #[test]
    fn relabel_is_rotation_compatible() {
        let (w, _) = parse_word("b c a b' c' a'").unwrap();
        let r = w.relabeled();
        let expected = parse_word("a1 a2 a3 a1' a2' a3'").unwrap().0;
        assert_eq!(r, expected);
    }

    #[test]
    fn relabel_first_occurrence_of_inverse_gets_plus() {
        let (w, _) = parse_word("a' b a b'").unwrap();
        let r = w.relabeled();
        assert_eq!(r.letter(0), Letter::new(0, Sign::Plus));
        assert_eq!(r.letter(2), Letter::new(0, Sign::Minus));
    }

    #[test]
    fn display_uses_canonical_names() {
        let (w, _) = parse_word("x y x^-1 y^-1").unwrap();
        assert_eq!(w.to_string(), "a1 a2 a1' a2'");
    }
}

//! Independent enumeration oracles and census building.
//!
//! The gluing enumerator walks all perfect matchings of the polygon
//! sides with early pruning of conditions (ii) and (iii); each valid
//! labeled gluing corresponds to one linear word up to relabeling. The
//! recursive generator iterates the α/β/γ constructions from the unique
//! genus-1 form with canonical-form deduplication.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{all_symmetry_parameters, automorphisms, canonical_form, SymmetryParams};
use crate::count::Rational;
use crate::error::{Error, Result};
use crate::surface::SurfaceMap;
use crate::transform::construct_all;
use crate::word::{Letter, Sign, WicksWord};

/// Largest genus served by the exhaustive gluing enumerator. The search
/// space is `(12g−7)!!` matchings; genus 3 would be 29!! ≈ 6×10¹⁵.
pub const MAX_GLUING_GENUS: usize = 2;

/// Largest genus served by the recursive generator (1726 classes; the
/// next level has about 1.3 million).
pub const MAX_RECURSIVE_GENUS: usize = 3;

/// One equivalence class of a census.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusClass {
    pub canonical: String,
    pub aut_order: usize,
    pub positive: usize,
    pub negative: usize,
    /// Symmetry parameters of the non-identity automorphisms, keyed by
    /// shift.
    pub symmetry: BTreeMap<usize, SymmetryParams>,
}

/// Deduplicated equivalence classes of one genus.
#[derive(Clone, Debug)]
pub struct Census {
    pub genus: usize,
    pub classes: Vec<CensusClass>,
}

impl Census {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Σ 1/|Aut| over the classes.
    pub fn mass(&self) -> Rational {
        self.classes
            .iter()
            .map(|c| Rational::new(BigInt::from(1), BigInt::from(c.aut_order as i64)))
            .sum()
    }

    /// `(12g−6)·mass`, the number of pointed forms.
    pub fn pointed_count(&self) -> Result<BigInt> {
        let mass = self.mass() * Rational::from_integer(BigInt::from(12 * self.genus as i64 - 6));
        if mass.is_integer() {
            Ok(mass.to_integer())
        } else {
            Err(Error::Integrality(format!("(12g-6)·census mass = {mass}")))
        }
    }

    /// Classes per automorphism order (1, 2, 3, 6).
    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist: BTreeMap<usize, usize> = [(1, 0), (2, 0), (3, 0), (6, 0)].into();
        for c in &self.classes {
            *hist.entry(c.aut_order).or_insert(0) += 1;
        }
        hist
    }

    /// Classes having an order-2 automorphism reversing exactly `r`
    /// edges: `(count, mass)`.
    pub fn sub_census_order2(&self, r: usize) -> (usize, Rational) {
        let mut count = 0;
        let mut mass = Rational::zero();
        for c in &self.classes {
            let in_set = c.symmetry.values().any(
                |p| matches!(p, SymmetryParams::Order2 { r: pr } if *pr == r),
            );
            if in_set {
                count += 1;
                mass += Rational::new(BigInt::from(1), BigInt::from(c.aut_order as i64));
            }
        }
        (count, mass)
    }

    /// Classes having an order-3 automorphism fixing `s` positive and `t`
    /// negative vertices: `(count, mass)`.
    pub fn sub_census_order3(&self, s: usize, t: usize) -> (usize, Rational) {
        let mut count = 0;
        let mut mass = Rational::zero();
        for c in &self.classes {
            let in_set = c.symmetry.values().any(
                |p| matches!(p, SymmetryParams::Order3 { s: ps, t: pt } if *ps == s && *pt == t),
            );
            if in_set {
                count += 1;
                mass += Rational::new(BigInt::from(1), BigInt::from(c.aut_order as i64));
            }
        }
        (count, mass)
    }
}

fn class_from_word(word: &WicksWord) -> Result<CensusClass> {
    let canonical = canonical_form(word).word;
    let surface = SurfaceMap::build(&canonical)?;
    let (positive, negative) = surface.sign_counts();
    let aut = automorphisms(&canonical);
    Ok(CensusClass {
        canonical: canonical.to_string(),
        aut_order: aut.order,
        positive,
        negative,
        symmetry: all_symmetry_parameters(&canonical)?,
    })
}

/// Groups words by canonical form and computes per-class data.
pub fn build_census<I>(genus: usize, words: I) -> Result<Census>
where
    I: IntoIterator<Item = WicksWord>,
{
    let mut keys: BTreeMap<String, WicksWord> = BTreeMap::new();
    for word in words {
        let surface = SurfaceMap::build(&word)?;
        if surface.genus() != genus {
            return Err(Error::MixedGenus(genus, surface.genus()));
        }
        let canonical = canonical_form(&word).word;
        keys.entry(canonical.to_string()).or_insert(canonical);
    }
    let classes = keys
        .values()
        .map(class_from_word)
        .collect::<Result<Vec<_>>>()?;
    Ok(Census { genus, classes })
}

/// Backtracking enumeration state over polygon side matchings.
struct MatchSearch {
    n: usize,
    partner: Vec<usize>,
    out: Vec<Vec<usize>>,
}

const UNMATCHED: usize = usize::MAX;

impl MatchSearch {
    fn new(n: usize) -> MatchSearch {
        MatchSearch {
            n,
            partner: vec![UNMATCHED; n],
            out: Vec::new(),
        }
    }

    /// Condition (ii): the pair may not join cyclically adjacent sides.
    /// Condition (iii): adding `{p, q}` may not complete a configuration
    /// `m(i) = j+1, m(i+1) = j` with an existing pair.
    fn pair_allowed(&self, p: usize, q: usize) -> bool {
        let n = self.n;
        if (p + 1) % n == q || (q + 1) % n == p {
            return false;
        }
        if self.partner[(p + 1) % n] == (q + n - 1) % n {
            return false;
        }
        if self.partner[(p + n - 1) % n] == (q + 1) % n {
            return false;
        }
        true
    }

    fn genus_matches(&self, genus: usize) -> bool {
        // count σ-cycles: σ(i) = partner[(i+1) % n]
        let n = self.n;
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                c = self.partner[(c + 1) % n];
            }
        }
        cycles == 4 * genus - 2
    }

    fn search(&mut self, genus: usize) {
        let n = self.n;
        let first = match (0..n).find(|&i| self.partner[i] == UNMATCHED) {
            Some(i) => i,
            None => {
                if self.genus_matches(genus) {
                    self.out.push(self.partner.clone());
                }
                return;
            }
        };
        for q in (first + 1)..n {
            if self.partner[q] != UNMATCHED || !self.pair_allowed(first, q) {
                continue;
            }
            self.partner[first] = q;
            self.partner[q] = first;
            self.search(genus);
            self.partner[first] = UNMATCHED;
            self.partner[q] = UNMATCHED;
        }
    }
}

fn word_from_matching(partner: &[usize]) -> WicksWord {
    let mut letters = vec![Letter::new(0, Sign::Plus); partner.len()];
    let mut next_id = 0u32;
    for i in 0..partner.len() {
        if partner[i] > i {
            letters[i] = Letter::new(next_id, Sign::Plus);
            letters[partner[i]] = Letter::new(next_id, Sign::Minus);
            next_id += 1;
        }
    }
    let word = WicksWord::new(letters).expect("matchings satisfy condition (i)");
    debug_assert!(word.is_valid());
    word
}

/// Exhaustively enumerates the valid labeled gluings of the `12g−6`-gon:
/// all perfect matchings of the sides surviving conditions (ii) and
/// (iii) whose glued surface has genus exactly `g`. Each valid gluing is
/// one pointed form, so the count is `(12g−6)·m₁^g`.
///
/// `jobs > 1` splits the search over the first matching decision.
pub fn enumerate_gluings(genus: usize, jobs: usize) -> Result<Vec<WicksWord>> {
    if genus < 1 {
        return Err(Error::GenusTooSmall { min: 1, got: genus });
    }
    if genus > MAX_GLUING_GENUS {
        return Err(Error::Capacity {
            requested: genus,
            bound: MAX_GLUING_GENUS,
            what: "exhaustive gluing enumeration",
        });
    }
    let n = 12 * genus - 6;

    let matchings: Vec<Vec<usize>> = if jobs <= 1 {
        let mut search = MatchSearch::new(n);
        search.search(genus);
        search.out
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(|| {
            (1..n)
                .into_par_iter()
                .map(|q| {
                    let mut search = MatchSearch::new(n);
                    if !search.pair_allowed(0, q) {
                        return Vec::new();
                    }
                    search.partner[0] = q;
                    search.partner[q] = 0;
                    search.search(genus);
                    search.out
                })
                .reduce(Vec::new, |mut a, mut b| {
                    a.append(&mut b);
                    a
                })
        })
    };

    Ok(matchings.iter().map(|m| word_from_matching(m)).collect())
}

/// Census of genus `g_target` built by iterating `construct_all` from the
/// genus-1 form with canonical deduplication at every level.
pub fn generate_recursive(g_target: usize) -> Result<Census> {
    if g_target < 1 {
        return Err(Error::GenusTooSmall {
            min: 1,
            got: g_target,
        });
    }
    if g_target > MAX_RECURSIVE_GENUS {
        return Err(Error::Capacity {
            requested: g_target,
            bound: MAX_RECURSIVE_GENUS,
            what: "recursive generation",
        });
    }
    let mut level: BTreeMap<String, WicksWord> = BTreeMap::new();
    let base = crate::genus_one_word();
    level.insert(canonical_form(&base).word.to_string(), base);
    for _ in 1..g_target {
        let mut next: BTreeMap<String, WicksWord> = BTreeMap::new();
        for word in level.values() {
            for c in construct_all(word)? {
                let canonical = canonical_form(&c.word).word;
                next.entry(canonical.to_string()).or_insert(canonical);
            }
        }
        level = next;
    }
    build_census(g_target, level.into_values())
}

/// Serializable census record stream: a header, one record per class,
/// and a summary.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CensusRecord {
    Header {
        version: u32,
        genus: usize,
        mode: String,
    },
    Class {
        word: String,
        aut_order: usize,
        positive: usize,
        negative: usize,
        symmetry: Vec<SymmetryParams>,
    },
    Summary {
        class_count: usize,
        mass: String,
        pointed_count: String,
        order_histogram: BTreeMap<String, usize>,
    },
}

pub const CENSUS_FORMAT_VERSION: u32 = 1;

/// Flattens a census into its record stream.
pub fn census_records(census: &Census, mode: &str) -> Result<Vec<CensusRecord>> {
    let mut records = vec![CensusRecord::Header {
        version: CENSUS_FORMAT_VERSION,
        genus: census.genus,
        mode: mode.to_string(),
    }];
    for class in &census.classes {
        records.push(CensusRecord::Class {
            word: class.canonical.clone(),
            aut_order: class.aut_order,
            positive: class.positive,
            negative: class.negative,
            symmetry: class.symmetry.values().copied().collect(),
        });
    }
    records.push(CensusRecord::Summary {
        class_count: census.class_count(),
        mass: census.mass().to_string(),
        pointed_count: census.pointed_count()?.to_string(),
        order_histogram: census
            .order_histogram()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
    });
    Ok(records)
}

//! Oriented maximal Wicks forms: the cyclic words dual to 1-vertex
//! triangulations of closed oriented surfaces.
//!
//! The crate provides word parsing and validation, reconstruction of the
//! glued surface, canonical forms and automorphism groups, the structural
//! rewrites (IH-transformations, reductions, constructions), exact
//! rational evaluation of the mass and count formulas, independent
//! enumeration oracles, and the flow-space machinery for quotients of
//! symmetric forms.

pub mod canon;
pub mod census;
pub mod count;
pub mod error;
pub mod flows;
pub mod map;
pub mod surface;
pub mod transform;
pub mod word;

pub use canon::{
    all_symmetry_parameters, automorphisms, canonical_form, canonical_string, equivalent,
    AutGroup, Canonical, SymmetryParams,
};

pub use count::{
    feasible_params, mass_m1, mass_m2, mass_m3, mass_m6, pointed_count, recursion_check, report,
    table, MassReport, ParamTuple, Rational,
};
pub use census::{build_census, enumerate_gluings, generate_recursive, Census, CensusClass};
pub use error::{Error, Result};
pub use flows::{
    flow_space_dimension, invariant_flow_dimension, quotient_by_involution, quotient_by_order3,
    FlowVector, QuotientData,
};
pub use transform::{
    classify_negative_vertex, construct_all, ih_transform, reduce, Construction, IHKind,
    NegativeVertexType,
};

pub use surface::{SurfaceMap, Vertex, VertexSign};

pub use word::{parse_word, EdgeId, EdgeNames, Letter, Sign, ValidationReport, WicksWord};

/// The unique oriented maximal Wicks form of genus 1.
pub fn genus_one_word() -> WicksWord {
    parse_word("a1 a2 a3 a1' a2' a3'")
        .expect("the genus-1 word parses")
        .0
}

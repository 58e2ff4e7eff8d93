//! Brute-force finite-field oracles: exhaustive enumeration over small fields
//! that recomputes the combinatorics the closed formulas rely on.

pub mod census;
pub mod field;
pub mod matrices;
pub mod poly;
pub mod unitary;

pub use census::{census_types_gl, census_types_gu, self_dual_census, type_census, CensusReport, Check};
pub use field::{field_of_size, make_field, FFElement, FieldDesc, FieldTower};
pub use matrices::{
    census_regular_matrices, count_regular_elements, verify_det_index, MatrixCensus, DEFAULT_SAMPLE_CAP,
};
pub use poly::{factor, is_irreducible, FqPoly};
pub use unitary::{gu_factors, gu_type_of, tilde, GuFactor, GuFactorKind};

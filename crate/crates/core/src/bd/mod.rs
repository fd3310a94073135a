//! Bonahon–Dreyer coordinates on the Fuchsian locus.

mod closed_leaf;
mod invariants;
mod slice;
mod vector;

pub use invariants::{
    bd_vector, gluing_invariant, shearing_invariant, triangle_invariant, veronese_double_ratio,
    veronese_triple_ratio,
};
pub use vector::{expected_len, interior_triples, json_f64, BDLayout, BDVector, Coord};
pub use closed_leaf::{
    closed_leaf_report, closed_leaf_sum, closed_leaf_terms, dimension_audit, polytope_membership,
    slice_membership, ClosedLeafEntry, ClosedLeafReport, DimensionAudit, PolytopeReport, Side,
    VertexConvention, BD_ATOL,
};
pub use slice::{random_slice_point, realize_slice, twist_residuals, SliceInput, SlicePoint};

//! Simplicial complexes, boundary operators, Betti numbers, Rips and
//! witness constructions, and persistence by boundary-matrix reduction.

mod complex;
mod filtered;
mod rips;
mod witness;

pub use complex::{
    betti_numbers, betti_via_hodge, betti_via_integer_rank, betti_via_rank, boundary_matrix,
    hodge_laplacian, BoundaryOperator, SimplicialComplex, HODGE_TOLERANCE,
};
pub use filtered::{persistence, FilteredComplex};
pub use rips::{rips_complex, rips_filtration, MAX_SIMPLICES, RIPS_MAX_DIM, RIPS_MAX_POINTS};
pub use witness::{
    dtm, maxmin_landmarks, maxmin_landmarks_from, witness_complex, witness_filtration,
};

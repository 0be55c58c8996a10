//! Exact verification laboratory for Kempe equivalence of 4-colourings on the
//! polar plane triangulations G_n and their pole-deleted graphs H_n.
//!
//! G_n consists of two non-adjacent poles `a`, `b` of degree n and two rings
//! of degree-5 vertices: N_a = {u_0..u_{n-1}} around `a` and
//! N_b = {v_0..v_{n-1}} around `b`, joined into an antiprism band. H_n is G_n
//! with pole `b` deleted. The crate enumerates proper 4-colourings, computes
//! Kempe chains and the (a, b, c, d) invariant vector, partitions colourings
//! into Kempe classes, and evaluates the exact counting formulas, so that
//! every claim can be machine-checked at desk scale.

pub mod colouring;
pub mod invariants;
pub mod kempe;
pub mod polar;
pub mod reconfig;

pub use colouring::{
    are_equal, distinct_colourings, enumerate_proper_colourings, ColourPermutation, Colouring,
    ColouringError,
};
pub use invariants::{
    bar, check_identities, class_count_formula, class_size_formula, colouring_count_formula,
    construct_q, construct_q_ke, d_value, invariant_vector, is_constant_colouring, is_singular,
    lift_minus, lift_plus, p_set, restrict, InvariantError, InvariantVector, SingularityTag,
};
pub use kempe::{
    apply_change, bicoloured_components, classify_chain, kempe_neighbours, ChainClass, ChainKind,
    ChainShape, ChainTag, KempeChain, KempeError,
};
pub use polar::{EdgeClass, GraphError, PolarTriangulation, VertexId, MAX_RING, MIN_RING};
pub use reconfig::{
    build_reconfiguration_graph, hn_diameter_bound, kempe_classes, verify_alignment_distance,
    AlignmentCheck, BuildOptions, KempeClass, KempeClassPartition, MoveWitness, ReconfigError,
    ReconfigReport, ReconfigurationGraph,
};

//! Clique complexes of undirected networks, their GF(2) homology, and
//! minimal cycles ("cavities") that witness each Betti number.

pub mod cavity;
pub mod complex;
pub mod error;
pub mod export;
pub mod fixtures;
pub mod gf2;
pub mod graph;
pub mod homology;
pub mod solver;

pub use cavity::{
    cavities_of_order, enumerate_cycles, find_cavities, find_cycle, select_spanning_and_generators,
    select_with_tree, verify_certificate, CavityCertificate, CavityConfig, Constraint, CycleMode,
    Formulation, LengthSchedule, SpanningSelection, Verification,
};
pub use complex::{
    cross_polytope_face_count, cross_polytope_network, enumerate_cliques, euler_characteristic,
    max_clique_order, maximal_cliques, smallest_cavity_complex, CliqueComplex, CliqueLevel,
    EulerNumber, MAX_CAVITY_ORDER,
};
pub use error::{Error, Result};
pub use export::{cavity_dot, sha256_hex, CertificateRecord, ComplexCache};
pub use gf2::{BitVector, ColumnSpace, Gf2Matrix, RankResult};
pub use graph::{
    computability_gate, k_core_decomposition, load_edge_list, random_gnm, Computability,
    CorenessReport, Delimiter, GateConfig, HeaderPolicy, LoadOptions, Network, NodeId, NodeLabel,
};
pub use homology::{build_boundary_matrix, clique_boundary, homology_profile, HomologyProfile};
pub use solver::{enumerate, solve, Branching, Outcome, SolverConfig, ZeroOneProgram};

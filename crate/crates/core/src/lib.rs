//! Entanglement families of symmetric N-qubit states.
//!
//! Symmetric pure states are written in the Dicke basis and converted to and
//! from their Majorana constellations, the multiset of Bloch-sphere points
//! whose symmetrized product reproduces the state. The coincidence pattern of
//! those points is an integer partition of N that names the state's SLOCC
//! entanglement family. On top of that this crate provides
//!
//! - the descendant order between families and its Hasse graph ([`families`]),
//! - projector-based witnesses `alpha * 1 - |psi><psi|` with `alpha` the maximal
//!   overlap with a family ([`witness`]),
//! - the separable operator basis of the symmetric Hermitian operator space and
//!   affine decompositions over it ([`sepbasis`]),
//! - constructive sampling of pure and mixed states inside a family ([`sampler`]),
//! - a command-line front end with stable file formats ([`cli`], [`io`]).

pub mod cli;
pub mod error;
pub mod families;
pub mod io;
pub mod majorana;
mod poly;
pub mod rng;
pub mod sampler;
pub mod sepbasis;
mod simplex;
pub mod state;
pub mod witness;

pub use error::{Error, Result};
pub use families::{
    classify_pure, descends, enumerate_partitions, hasse_graph, DegeneracyConfiguration,
    FamilyGraph,
};
pub use majorana::{from_constellation, to_constellation, BlochPoint, Constellation};
pub use state::{dicke, ghz, mix, tetrahedron_state, DensityMatrix, SymmetricState, C64};
pub use witness::{build_witness, max_overlap, witness_battery, OptimizerConfig, Witness};

/// Default chordal distance below which Majorana points are treated as coincident.
pub const DEFAULT_COINCIDENCE_TOL: f64 = 1e-6;

//! Graph curves of trivalent planar graphs, the coordinate plane
//! configurations they span, degenerations of pairs of scrolls onto those
//! configurations, and exact Gaussian map coranks.
//!
//! Linear algebra is generic over the scalar ([`exact::Matrix`]); the
//! aliases below fix the types the rest of the crate uses.

pub mod connectivity;
pub mod cycles;
pub mod degeneration;
pub mod exact;
pub mod faces;
pub mod families;
pub mod gauss;
pub mod graph;
pub mod numerology;
pub mod planes;

use num_bigint::BigInt;

pub use connectivity::edge_connectivity;
pub use cycles::{cycle_basis, CycleBasis};
pub use degeneration::{DoubleCorrespondence, GenusData, SurvivorSet};
pub use exact::Matrix;
pub use faces::FaceSet;
pub use families::{
    ab_decomposition, prism_graph, standard_graph, tilde_graph, ChainDecomposition, Part,
};
pub use gauss::{CorankCertificate, GaussianMatrix};
pub use graph::{validate, TrivalentPlanarGraph, ValidationReport};
pub use planes::{PlaneConfig, SpanTable};

/// Version tag carried by every JSON payload.
pub const SCHEMA: &str = "gcg/1";

/// Arbitrary-precision integer matrix; the scalar for certified ranks.
pub type IntMatrix = Matrix<BigInt>;
/// Fixed-width matrix, enough for entries and small eliminations.
pub type SmallMatrix = Matrix<i64>;
pub type IntGaussianMatrix = GaussianMatrix<BigInt>;

//! Locally linear embedding with exact and regularized reconstruction
//! weights, the linear "projection pattern" solutions that exist whenever
//! every point is exactly reconstructed by its neighbors, and diagnostics
//! that tell the two apart.
//!
//! The pipeline is [`neighbors::knn`] → [`weights::compute_weight_set`] →
//! [`spectral::build_alignment`] → [`spectral::bottom_eigs`], wrapped by
//! [`spectral::lle_embed`]. [`oracle::projection_pattern`] builds the
//! linear competitor independently of the eigensolver.

pub use nalgebra;

pub mod dataset;
pub mod diagnostics;
pub mod error;
pub mod neighbors;
pub mod oracle;
pub mod spectral;
pub mod weights;

pub use dataset::{PointCloud, StandardEmbedding};
pub use diagnostics::DiagnosticsReport;
pub use error::{LleError, Result};
pub use neighbors::NeighborGraph;
pub use oracle::{Certificate, ProjectionPattern};
pub use spectral::{AlignmentMatrix, EmbeddingResult, LleRun};
pub use weights::{LocalGram, WeightMode, WeightSet};

//! Spectral theory of pure simplicial complexes.
//!
//! Boundary and signless boundary matrices, up/down Laplacians, exact Betti
//! numbers, Perron vectors of the signless up Laplacian, named complex
//! families, and exhaustive extremal search over small 2-complexes with a
//! prescribed second Betti number.

pub mod acceptance;
pub mod chains;
pub mod complex;
pub mod error;
pub mod extremal;
pub mod families;
pub mod homology;
pub mod rank;
pub mod rng;
pub mod spectra;

pub use chains::{BoundaryMatrix, LaplacianKind, LaplacianOperator};
pub use complex::{Face, SimplicialComplex, Vertex};
pub use error::{Error, Result};
pub use homology::BettiProfile;
pub use spectra::{Normalization, SpectralOptions, SpectralResult};

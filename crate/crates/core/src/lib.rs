//! Restrained chromatic polynomials.
//!
//! A *restraint* assigns each vertex a finite set of forbidden colours. This
//! crate computes the polynomial counting proper colourings that avoid every
//! vertex's forbidden set, enumerates restraints up to graph automorphism and
//! colour renaming, and searches for the restraints that permit the fewest
//! and the most colourings for all large `x`.

pub mod catalog;
pub mod chroma;
pub mod coefficients;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod polynomial;
pub mod restraint;
pub mod store;

pub use chroma::{chromatic_poly, restrained_poly, ChromaEngine, PivotRule};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, SubgraphCensus};
pub use polynomial::{Eventually, IntPolynomial};
pub use restraint::{Restraint, RestraintClass};

//! Discrete Morse theory on finite posets with exact integer homology.
//!
//! Posets are given by their Hasse diagrams. Matchings on the diagram are
//! checked for acyclicity and homological admissibility, and for cellular
//! posets the cellular chain complex, the gradient flow and the Morse
//! complex of critical cells are computed over the integers.

pub mod cellular;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod matching;
pub mod par;
pub mod poset;
pub mod random;
pub mod search;
pub mod simplicial;

pub use error::{Error, Result};
pub use matching::Matching;
pub use poset::Poset;

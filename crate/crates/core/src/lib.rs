//! Positroids of interval matrices `M_w`, their decomposition along
//! 123-avoiding permutations, Tutte polynomials, and diagram matroids.
//!
//! Every construction has an independent check: basis families and ranks
//! computed from the combinatorial descriptions can be compared against a
//! bipartite-matching oracle on the generic matrices themselves
//! ([`transversal::SupportPattern`]).

pub mod catalan;
pub mod config;
pub mod diagram;
pub mod error;
pub mod family;
pub mod iso;
pub mod order;
pub mod path;
pub mod perm;
pub mod poly;
pub mod positroid;
pub mod subset;
pub mod transversal;
pub mod tutte;
pub mod verify;

pub use config::Bounds;
pub use error::{Error, Result};
pub use family::SetFamily;
pub use perm::Permutation;
pub use poly::BivariatePoly;
pub use subset::Subset;
pub use transversal::SupportPattern;

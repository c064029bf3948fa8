//! Exact representation theory of `SL_n` and `Sp_2g` aimed at Torelli-group
//! homology computations: characters, plethysm, free Lie algebras, explicit
//! symplectic multilinear algebra, Johnson homomorphism spans and
//! Morita–Mumford class counts.

pub mod char_ring;
pub mod error;
pub mod expr;
pub mod free_lie;
pub mod johnson;
pub mod linalg;
pub mod mmclasses;
pub mod rep_core;
pub mod suite;
pub mod symp_linalg;

pub use char_ring::{decompose, std_char, Decomposition, FormalCharacter};
pub use error::{Error, Result};
pub use rep_core::{part, GroupFamily, Partition, Weight};

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "replab/1";

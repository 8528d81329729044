//! Operator algebra on finite bounded lattices: quasi-overlap functions and
//! their residuated implications, Scott topology, Galois connections, and
//! automorphism conjugation.
//!
//! Everything works on an explicit finite carrier, so order-theoretic claims
//! are checked exhaustively rather than proved: each check either holds or
//! returns a concrete violating tuple.

pub mod automorphism;
pub mod error;
pub mod format;
pub mod galois;
pub mod generators;
pub mod lattice;
pub mod ops;
pub mod scott;

pub use error::{Error, Result};
pub use lattice::{Elem, FiniteNet, Lattice};
pub use ops::{AxiomReport, BinaryOp, Implication, Verdict};
pub use galois::MonotoneMap;
pub use automorphism::Automorphism;

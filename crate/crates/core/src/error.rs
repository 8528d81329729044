//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong while building or querying the structures
/// in this crate. Witness tokens are always reported in element order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cover relation has a cycle through '{0}'")]
    Cycle(String),

    #[error("duplicate element token '{0}'")]
    DuplicateElement(String),

    #[error("duplicate cover pair ({0}, {1})")]
    DuplicateCover(String, String),

    #[error("redundant cover pair ({lower}, {upper}): '{via}' lies strictly between them")]
    RedundantCover {
        lower: String,
        upper: String,
        via: String,
    },

    #[error("not a lattice: elements '{x}' and '{y}' have no {kind}")]
    NotALattice {
        x: String,
        y: String,
        /// "meet" or "join".
        kind: &'static str,
    },

    #[error("no unique {0} element")]
    NoBound(&'static str),

    #[error("unknown element '{0}'")]
    UnknownElement(String),

    #[error("empty net has no limit")]
    EmptyNet,

    #[error("size {size} exceeds the guard of {limit} for this operation")]
    TooLarge { size: usize, limit: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("degenerate lattice: bottom equals top")]
    DegenerateLattice,

    #[error("operator is not a quasi-overlap: axiom {0} fails")]
    NotQuasiOverlap(String),

    #[error("map is not monotone")]
    NotMonotone,

    #[error("operator is not residuated")]
    NotResiduated,

    #[error("lattice mismatch: '{0}' vs '{1}'")]
    LatticeMismatch(String, String),

    #[error("table has {got} entries but the lattice needs {want}")]
    NotTotal { want: usize, got: usize },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
}

pub type Result<T> = std::result::Result<T, Error>;

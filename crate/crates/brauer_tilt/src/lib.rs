//! Exact combinatorics of Brauer tree algebras.
//!
//! A Brauer tree is a plane tree (a tree with a counterclockwise cyclic
//! ordering of the edges at every vertex) together with a multiplicity and an
//! exceptional vertex.  It determines a symmetric algebra whose two-term
//! tilting theory is entirely combinatorial: indecomposable two-term
//! pretilting complexes correspond to alternating signed walks in the tree,
//! compatible sets of them form a simplicial sphere, and their g-vectors cut
//! out a centrally symmetric lattice polytope with a unimodular
//! triangulation.
//!
//! The crate computes all of this exactly (integer / rational arithmetic
//! only) at desk scale:
//!
//! * [`tree`] — plane trees, validation, enumeration, Kauer moves, JSON I/O;
//! * [`algebra`] — the Brauer quiver and the Hom-space basis of the
//!   multiplicity-one algebra, with structure constants and Cartan matrices;
//! * [`walks`] — alternating signed walks, g-vectors, and the two-term
//!   complexes they define;
//! * [`homotopy`] — exact Hom-space dimensions between shifted two-term
//!   complexes; the authoritative compatibility and order predicates;
//! * [`simplicial`] — the face complex, f/h-vectors, closed-form reference
//!   polynomials, halfspace counts, and sphere checks;
//! * [`polytope`] — the g-polytope: membership, Ehrhart counts, h*-vector,
//!   symmetry and convexity certificates, OFF export;
//! * [`mutation_poset`] — the two-term tilting poset and its mutation quiver,
//!   algebra-level left mutation, and Kauer-move cross-checks;
//! * [`bicambrian`] — weak order on symmetric groups, Cambrian and
//!   biCambrian congruences, quotient posets, poset isomorphism;
//! * [`verify`] — the runnable verification suite behind `brauer-tilt
//!   verify` and the `acceptance` test target.
//!
//! The `examples/` directory has one runnable example per capability; start
//! with `cargo run --example fvector`.

pub mod algebra;
pub mod bicambrian;
pub mod homotopy;
mod linalg;
pub mod mutation_poset;
pub mod polytope;
pub mod simplicial;
pub mod tree;
pub mod verify;
pub mod walks;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A tree failed validation; all violations are listed.
    #[error("invalid Brauer tree: {0:?}")]
    InvalidTree(Vec<tree::TreeError>),
    /// Requested edge count outside the supported enumeration range.
    #[error("edge count {0} out of range {1}..={2}")]
    OutOfRange(usize, usize, usize),
    /// An edge id that does not exist in the tree.
    #[error("unknown edge id {0}")]
    UnknownEdge(usize),
    /// Tree text could not be parsed; carries a human-readable location.
    #[error("parse error at {location}: {message}")]
    ParseError { location: String, message: String },
    /// The Hom oracle only covers multiplicity-one trees.
    #[error("multiplicity {0} unsupported: the Hom oracle requires multiplicity 1")]
    MultiplicityUnsupported(u32),
    /// Two complexes over different algebras were mixed.
    #[error("algebra mismatch between complexes")]
    AlgebraMismatch,
    /// An operation that requires a two-term tilting complex got something else.
    #[error("not a two-term tilting complex: {0}")]
    NotTilting(String),
    /// Vector length does not match the polytope dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// Lattice-point scan would enumerate too many candidates.
    #[error("lattice box of {0} candidate points exceeds the 10^8 guard")]
    BoxTooLarge(u128),
    /// Convexity certification is limited to small dimension.
    #[error("dimension {0} too large for the exhaustive convexity certificate (max {1})")]
    DimensionTooLarge(usize, usize),
    /// Weak-order rank bound.
    #[error("rank {0} too large: the weak order is built only up to rank {1}")]
    RankTooLarge(usize, usize),
    /// Poset isomorphism search size bound.
    #[error("poset with {0} elements too large for isomorphism search (max {1})")]
    TooLarge(usize, usize),
    #[error("io error: {0}")]
    IoError(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

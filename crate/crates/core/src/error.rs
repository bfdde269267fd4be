//! Error taxonomy shared by the whole library.
//!
//! Variants are grouped by how a caller should react:
//! input/construction problems (`InvalidInput`, `InvalidDatum`, `InfiniteType`),
//! honest negative answers that carry structure (`KappaMismatch`, `NotMinuscule`,
//! `SuperbasicUnsupported`, `EmptyClass`), resource guards (`ResourceExhausted`,
//! `PrecisionExhausted`), and `Internal` for postcondition failures that indicate
//! a bug rather than bad input.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent user input (dimensions, unknown names, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The root-datum axioms fail (pairing not Cartan-like, sigma not an
    /// automorphism, dependent simple roots, ...).
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),

    /// The reflection closure does not terminate: not a finite root system.
    #[error("not a finite root system: {0}")]
    InfiniteType(String),

    /// A vector that must lie in the coroot lattice does not.
    #[error("vector is not an integral combination of the required coroots: {0}")]
    NotInLattice(String),

    /// Integral dominance comparison was requested on non-integral input.
    #[error("integral dominance comparison requires integral data: {0}")]
    NonIntegral(String),

    /// A Weyl-group membership precondition fails (e.g. w not in W_L).
    #[error("Weyl element outside the required subgroup: {0}")]
    NotInWeylSubgroup(String),

    /// The two Kottwitz classes that must agree do not.
    #[error("Kottwitz class mismatch: {0}")]
    KappaMismatch(String),

    /// A cocharacter violates a minusculity precondition.
    #[error("not minuscule: {0}")]
    NotMinuscule(String),

    /// Superbasic classes cannot exist for this group shape (non-type-A factor).
    #[error("superbasic test unsupported here: {0}")]
    SuperbasicUnsupported(String),

    /// Requested standard form cannot be realized on this cocharacter lattice.
    #[error("standard form unavailable: {0}")]
    StandardFormUnavailable(String),

    /// A precondition of an operation fails (documented per operation).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The pair (mu, b) is not admissible, so the object asked about is empty.
    #[error("empty class: {0}")]
    EmptyClass(String),

    /// A configured iteration/size cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    ResourceExhausted(String),

    /// Power-series working precision ran out (should be unreachable with the
    /// default modulus headroom).
    #[error("series precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// A connectivity statement that must hold failed on concrete data.
    #[error("connectivity failure: {0}")]
    Disconnected(String),

    /// Internal invariant or postcondition failed: a bug, not bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

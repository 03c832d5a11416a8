//! Exact computational homological algebra over small prime fields.
//!
//! The crate is organized in layers:
//!
//! * [`exactlin`] — dense matrices over `F_p` with exact kernels, solving
//!   and quotient constructions;
//! * [`algmod`] — finite-dimensional algebras given by structure constants,
//!   their modules, Hom/tensor/duality, radicals, projective covers and
//!   Ext/Tor via resolutions;
//! * [`trivext`] — trivial extension algebras, modules-as-pairs, stable
//!   Hom spaces, suspensions and triangles;
//! * [`cotorsion`] — computable complete hereditary cotorsion pairs,
//!   special preenvelopes of modules and of short exact sequences;
//! * [`wakfun`] — the stable functor between trivial extension algebras
//!   induced by a faithfully balanced bimodule, together with its
//!   triangle data and equivalence checks.
//!
//! Everything is deterministic: all constructions pick the first solution
//! of the relevant linear system under a fixed basis order, and callers may
//! request an independent second solution through [`choice::Chooser`].
//!
//! The crate is `no_std` (with `alloc`); all values are immutable after
//! construction and context structs follow a build-once-then-share
//! discipline (`&mut` while building caches, plain `&` afterwards).

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algmod;
pub mod check;
pub mod choice;
pub mod cotorsion;
pub mod exactlin;
pub mod trivext;
pub mod wakfun;

use alloc::string::String;
use core::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The characteristic is not a prime in the supported range.
    NotPrime(u64),
    /// Two values over different primes were mixed.
    FieldMismatch,
    /// A dimension precondition failed; the payload names the operation.
    DimMismatch(&'static str),
    /// `quotient` was handed a spanning set with dependent columns.
    DependentColumns,
    /// A linear system that must be solvable was not; usually this means
    /// an instance violates a hypothesis (for example hereditarity).
    Unsolvable(&'static str),
    /// A multiplication table failed associativity or the unit law.
    InvalidAlgebra(String),
    /// Action matrices do not satisfy the module laws.
    InvalidModule(&'static str),
    /// A pair module's structure map is not square-zero or not linear.
    PairStructure(&'static str),
    /// A constructed object exceeded the configured dimension cap.
    CapExceeded { dim: usize, cap: usize },
    /// A brute-force enumeration would be too large to run.
    EnumerationTooLarge,
    /// The preenvelope iteration did not converge within the round cap.
    NonConvergent { rounds: usize },
    /// An Ext-vanishing hypothesis needed by a construction failed.
    NotHereditary(&'static str),
    /// A cotorsion backend is inconsistent with its declared variant.
    BackendInvalid(String),
    /// Internal invariant violation; indicates a bug, not bad input.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{} is not a prime in [2, 2^31)", p),
            Error::FieldMismatch => write!(f, "values over different prime fields were mixed"),
            Error::DimMismatch(op) => write!(f, "dimension mismatch in {}", op),
            Error::DependentColumns => write!(f, "subspace basis has dependent columns"),
            Error::Unsolvable(what) => write!(f, "required linear system unsolvable: {}", what),
            Error::InvalidAlgebra(why) => write!(f, "invalid algebra: {}", why),
            Error::InvalidModule(why) => write!(f, "invalid module: {}", why),
            Error::PairStructure(why) => write!(f, "invalid pair module: {}", why),
            Error::CapExceeded { dim, cap } => {
                write!(f, "construction of dimension {} exceeds cap {}", dim, cap)
            }
            Error::EnumerationTooLarge => write!(f, "brute-force enumeration too large"),
            Error::NonConvergent { rounds } => {
                write!(f, "preenvelope iteration did not converge in {} rounds", rounds)
            }
            Error::NotHereditary(what) => {
                write!(f, "Ext-vanishing hypothesis failed: {}", what)
            }
            Error::BackendInvalid(why) => write!(f, "invalid cotorsion backend: {}", why),
            Error::Internal(what) => write!(f, "internal invariant violated: {}", what),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

/// Global construction limits, threaded through contexts.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Upper bound on the dimension of any constructed module.
    pub max_dim: usize,
    /// Upper bound on `p^n` for brute-force vector enumerations.
    pub max_enum: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_dim: 64, max_enum: 1 << 22 }
    }
}

impl Limits {
    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if dim > self.max_dim {
            Err(Error::CapExceeded { dim, cap: self.max_dim })
        } else {
            Ok(())
        }
    }
}

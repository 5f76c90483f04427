//! Row-column factorial design toolkit.
//!
//! A row-column factorial design of type `I_k(m, n, q, t)` arranges every
//! vector of `[q]^k` (each repeated `lambda = m*n / q^k` times) into an
//! `m x n` grid so that the vectors in every row form an orthogonal array of
//! strength `t`, and likewise for every column.
//!
//! The crate provides:
//!
//! - exact finite-field linear algebra over GF(q) for prime powers ([`gf`]),
//! - the core array types and brute-force verifiers ([`array`]),
//! - Hadamard matrices and the derived binary orthogonal arrays ([`hadamard`]),
//! - strength-preserving combinators ([`combinators`]),
//! - linear-algebraic grid constructions ([`linear`]),
//! - the binary strength-2 and strength-3 machinery ([`strength2`], [`strength3`]),
//! - an existence oracle returning replayable construction plans ([`oracle`]),
//! - embedded reference designs ([`fixtures`]) and text formats ([`textio`]).
//!
//! Everything is deterministic: no randomness is used anywhere, and all
//! parallel code paths merge their results in a fixed order.
//!
//! ```
//! use rcfd_core::array::{rcfd_check, DesignSpec};
//! use rcfd_core::oracle::{decide, execute, Status};
//!
//! let verdict = decide(DesignSpec::new(4, 9, 9, 3, 2)).unwrap();
//! assert_eq!(verdict.status, Status::Exists);
//! let design = execute(verdict.plan.as_ref().unwrap()).unwrap().design;
//! assert!(rcfd_check(&design, 2).unwrap().pass());
//!
//! let refused = decide(DesignSpec::new(3, 4, 4, 2, 2)).unwrap();
//! assert_eq!(refused.status, Status::NotExists);
//! assert_eq!(refused.citation, "Lemma 4.3");
//! ```

pub mod array;
pub mod combinators;
pub mod error;
pub mod fixtures;
pub mod gf;
pub mod hadamard;
pub mod linear;
pub mod oracle;
pub mod strength2;
pub mod strength3;
pub mod textio;
pub(crate) mod util;

pub use array::{
    AdmissibilityVerdict, DesignSpec, EquivalenceOp, OrthArray, RcDesign, VerifyReport,
};
pub use error::{Error, Result};
pub use gf::{FieldSpec, GfMatrix};

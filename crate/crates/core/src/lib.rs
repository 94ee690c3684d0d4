//! Prime divisors of the index `[O_K : Z[θ]]` for quadrinomials
//! `f(x) = x^n + a x^(n-1) + b x + c`.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: exact integer kernels (modular powers, Miller–Rabin,
//!   trial division + Pollard rho, Tonelli–Shanks, valuations).
//! * [`zpoly`]: dense integer polynomials, the [`Quadrinomial`] type,
//!   resultants and the two discriminant routes.
//! * [`fppoly`]: polynomials over `F_p` and their complete factorization.
//! * [`dedekind`]: the general Dedekind criterion, used as an oracle.
//! * [`quadtheorem`]: closed-form per-prime classification for
//!   quadrinomials, monogenicity and the exclusion predicates.
//! * [`batch`]: range scans and the oracle-equivalence verifier, parallel
//!   over tuples when the `parallel` feature is on.

pub mod arith;
pub mod batch;
pub mod dedekind;
mod error;
pub mod fppoly;
pub mod irreducibility;
pub mod quadtheorem;
pub mod report;
pub mod zpoly;

pub use error::{Error, Result};
pub use zpoly::{IntPoly, Quadrinomial, TheoremScope};

/// Seed used wherever an API does not take one explicitly.
pub const DEFAULT_SEED: u64 = 0x05ee_d0f1_dea1;

/// Tool version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

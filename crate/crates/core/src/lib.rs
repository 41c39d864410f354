//! High-precision numerics for series whose coefficients combine central
//! binomial coefficients, harmonic numbers and alternating harmonic numbers.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`] exact integers and rationals, harmonic numbers, binomials,
//!   Bernoulli numbers and the binomial transform;
//! * [`hpreal`] configurable-precision fixed-point reals, elementary
//!   functions and the constants π, log 2, log 3, γ, ζ(2) and Catalan's G;
//! * [`special`] the dilogarithm on [−1, 1] and digamma at half-integers;
//! * [`genfun`] closed forms and truncated power series for the generating
//!   functions;
//! * [`transform`] Euler's series transformation and its binomial variant;
//! * [`accel`] the summation engine (geometric tails, Euler–Maclaurin tails
//!   and generalized Richardson extrapolation);
//! * [`catalog`] the identity inventory and its verifier.

pub mod accel;
pub mod catalog;
pub mod error;
pub mod exact;
pub mod genfun;
pub mod hpreal;
pub mod special;
pub mod transform;

pub use error::{Error, Result};
pub use exact::{ExactInt, ExactRational};
pub use hpreal::{HPReal, PrecisionContext};
pub use accel::{BoundKind, DecayClass, Method, SeriesSpec, SumOptions, SumResult, TermShape};
pub use catalog::{inventory, verify, Identity, Status, VerificationReport};

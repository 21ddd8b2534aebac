//! Serre weights of two-dimensional mod-p Galois representations over
//! totally ramified extensions of the p-adic numbers.
//!
//! The crate computes, for a residual representation given by its
//! restriction to tame inertia, the predicted set of Serre weights, and
//! derives as much of that set as the crystalline-lift method proves:
//!
//! * [`tame`] — tame inertial characters of niveau one and two;
//! * [`gl2`] — irreducible mod-p weights of `GL₂(F_p)`, inertial types
//!   and their Jordan–Hölder factors;
//! * [`predicted`] — the predicted weight set attached to a residual
//!   inertial datum, with explicit witnesses;
//! * [`breuil`] — exact Breuil-module computations: rank-one
//!   classification and the rank-two family giving niveau-two reductions;
//! * [`lifts`] — crystalline lift descriptors of niveau one and two for
//!   each predicted weight;
//! * [`engine`] — the derivation engine combining lifts, companions and
//!   factor elimination, plus the consistency sweeps;
//! * [`report`] — serialisable reports for the command-line interface.

mod arith;
pub mod breuil;
pub mod engine;
pub mod error;
pub mod gl2;
pub mod lifts;
pub mod predicted;
pub mod report;
pub mod tame;

pub use error::{Error, Result};

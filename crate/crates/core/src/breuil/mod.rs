//! Exact computations with Breuil modules with tame descent data.
//!
//! The ambient ring is `(k₂ ⊗ k)[u]/(u^{e₂p})` where `k₂` is the residue
//! field of the unramified quadratic extension and `k = F_{p²}` the
//! coefficient field; the tensor splits into two "slots" indexed by the
//! embeddings `k₂ ↪ k`.  [`ring`] implements this ring and the two
//! semilinear twists that drive everything (the Frobenius `φ`, which
//! swaps slots and stretches `u ↦ u^p`, and the tame descent twist
//! `u ↦ ζu` / `u ↦ ζ^p u`), [`module`] the finitely presented modules
//! and their axiom checker, [`rank_one`] the rank-one classification and
//! [`family`] the rank-two family used to compute niveau-two reductions.

pub mod family;
pub mod fp2;
pub mod module;
pub mod rank_one;
pub mod ring;

pub use family::{kernel_genericity, RankTwoFamily};
pub use module::{BreuilCtx, BreuilModule, Violation};
pub use rank_one::{allowed_kappas, congruence_holds, necessary_subchars, RankOneData};

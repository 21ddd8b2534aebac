//! Rank-one Breuil modules with descent data and their generic fibres.
//!
//! A rank-one module with generator `w` is determined by two integers:
//! the filtration height `r` (so `Fil¹ = u^r·M`, `φ₁(u^r w) = w`) and the
//! descent exponent `κ` (so `ĝ₀(w) = (ζ^κ ⊗ 1)·w`, acting on the slots as
//! `(ζ^κ, ζ^{pκ})`).  Commutation of `ĝ₀` with `φ₁` pins the pair down to
//! a single congruence,
//!
//! ```text
//!     κ ≡ p(κ + r)   equivalently   r ≡ (p−1)·κ   (mod p² − 1),
//! ```
//!
//! so `r` is automatically divisible by `p − 1` and the generic fibre of
//! the module is the unramified-twist class of `ω₂^{κ + p·r/(p−1)}`, an
//! exponent always divisible by `p + 1` — rank-one objects over the
//! totally ramified quadratic-coefficient setting restrict to powers of
//! the niveau-one fundamental character.
//!
//! For a fixed symmetric-power degree `n` only two descent exponents can
//! appear on the socle or cosocle of the relevant rank-two objects; the
//! possible restrictions to inertia of a rank-one subobject are then a
//! short explicit list (`necessary_subchars`), which is what the
//! derivation engine consumes.

use std::collections::BTreeSet;

use super::module::{BreuilCtx, BreuilModule};
use super::ring::{Elt, Poly};
use crate::error::{Error, Result};
use crate::tame::{FieldParams, Niveau1Char, Niveau2Char};

/// The `(κ, r)` presentation data of a rank-one module, already checked
/// to satisfy the commutation congruence.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RankOneData {
    kappa: u64,
    r: u64,
}

impl RankOneData {
    /// Validates ranges (`κ ∈ [0, p²−1)`, `r ∈ [0, e₂]`) and the
    /// congruence `r ≡ (p−1)κ mod p²−1`.
    pub fn new(params: &FieldParams, kappa: u64, r: u64) -> Result<Self> {
        if kappa >= params.q2() {
            return Err(Error::OutOfRange {
                what: "descent exponent kappa",
                lo: 0,
                hi: params.q2() - 1,
                got: kappa,
            });
        }
        if r > params.e2() {
            return Err(Error::OutOfRange {
                what: "filtration height r",
                lo: 0,
                hi: params.e2(),
                got: r,
            });
        }
        if !congruence_holds(params, kappa, r) {
            return Err(Error::RankOneCongruence { kappa, r });
        }
        Ok(RankOneData { kappa, r })
    }

    pub fn kappa(&self) -> u64 {
        self.kappa
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// The inertial character of the generic fibre, as a niveau-two
    /// exponent: `ω₂^{κ + p·r/(p−1)}`.
    pub fn generic_fibre(&self, params: &FieldParams) -> Niveau2Char {
        // The congruence forces (p−1) | r over the integers.
        debug_assert_eq!(self.r % params.q1(), 0);
        let t = (self.r / params.q1()) as i64;
        Niveau2Char::new(params, self.kappa as i64 + params.p() as i64 * t)
    }

    /// The generic fibre restricted to niveau one; total ramification
    /// makes this restriction always defined.
    pub fn fibre_niveau1(&self, params: &FieldParams) -> Niveau1Char {
        self.generic_fibre(params)
            .restrict_niveau1(params)
            .expect("rank-one fibre exponent is divisible by p + 1")
    }

    /// Builds the concrete module: `Fil¹ = u^r·M`, `φ₁(u^r w) = w`,
    /// `ĝ₀(w) = (ζ^κ ⊗ 1)·w`.
    pub fn build_module(&self, ctx: &BreuilCtx) -> BreuilModule {
        let n = ctx.trunc();
        let one = ctx.ring.fp2.one();
        let p = ctx.params().p() as i64;
        let mut desc = Elt::zero(n, 1);
        desc.coords[0][0] = Poly::constant(n, ctx.zeta_pow(self.kappa as i64));
        desc.coords[1][0] = Poly::constant(n, ctx.zeta_pow(p * self.kappa as i64));
        BreuilModule::new(
            1,
            vec![Elt::monomial(n, 1, 0, self.r as usize, one)],
            vec![Elt::generator(n, 1, 0, one)],
            vec![desc],
        )
    }
}

/// Whether `(κ, r)` satisfies the commutation congruence
/// `r ≡ (p−1)·κ mod p²−1` (no range checks).
pub fn congruence_holds(params: &FieldParams, kappa: u64, r: u64) -> bool {
    params.residue2(r as i64) == params.residue2(params.q1() as i64 * kappa as i64)
}

/// The descent exponents that can occur for a rank-one subquotient of a
/// rank-two object with symmetric-power degree `n`:
/// `κ ∈ {n + p² − p, pn + p − 1}` mod `p² − 1` (the two collapse to `{0}`
/// at `n = p − 1`).
pub fn allowed_kappas(params: &FieldParams, n: u64) -> Vec<u64> {
    assert!(n < params.p(), "symmetric-power degree out of range");
    let p = params.p() as i64;
    let n = n as i64;
    let mut out = vec![
        params.residue2(n + p * p - p),
        params.residue2(p * n + p - 1),
    ];
    out.sort_unstable();
    out.dedup();
    out
}

/// All inertial characters that a rank-one subobject of a rank-two object
/// of weight `σ_{m,n}` can have on its generic fibre: both allowed descent
/// exponents, all compatible filtration heights `r ≤ e₂`, twisted by
/// `det^m`.
pub fn necessary_subchars(
    params: &FieldParams,
    m: u64,
    n: u64,
) -> BTreeSet<Niveau1Char> {
    let mut out = BTreeSet::new();
    for kappa in allowed_kappas(params, n) {
        let r0 = params.residue2(params.q1() as i64 * kappa as i64);
        // Every height r ≡ r₀ mod p²−1 inside [0, e₂]; the top end r = e₂
        // itself occurs exactly when r₀ = 0.
        let mut r = r0;
        while r <= params.e2() {
            let data = RankOneData::new(params, kappa, r)
                .expect("r is built from the congruence");
            out.insert(data.fibre_niveau1(params).twist(params, m as i64));
            r += params.q2();
        }
    }
    out
}

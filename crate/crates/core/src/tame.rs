//! Fundamental characters of tame inertia over a totally ramified base.
//!
//! The base field is a totally ramified extension `F/Q_p` of degree `e` with
//! residue field `F_p`.  Characters of the inertia group that factor through
//! tame quotients are powers of two fundamental characters:
//!
//! * `ω`, the niveau-1 character, of order `p − 1`;
//! * `ω_{σ₁}`, a niveau-2 character of order `p² − 1`, with Frobenius
//!   conjugate `ω_{σ₂} = ω_{σ₁}^p`.
//!
//! The two niveaux are compatible: `ω = ω_{σ₁}^{p+1}`.  All characters are
//! represented by their exponent with respect to the relevant fundamental
//! character, so this module is exponent arithmetic in `Z/(p−1)` and
//! `Z/(p²−1)` plus the maps between the two.
//!
//! The reduction mod p of the cyclotomic character is `ω^e`; in particular it
//! is trivial exactly when `(p − 1) | e`.

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Largest supported prime; keeps every product formed by the crate inside
/// `i64` without case analysis.
const MAX_P: u64 = 997;
/// Largest supported ramification index.
const MAX_E: u64 = 10_000;

/// Ambient parameters: an odd prime `p` and the ramification index `e ≥ 1`
/// of the totally ramified base field.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FieldParams {
    p: u64,
    e: u64,
}

impl FieldParams {
    /// Validates `p` (odd prime) and `e ≥ 1`.
    pub fn new(p: u64, e: u64) -> Result<Self> {
        if !(3..=MAX_P).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if e == 0 || e > MAX_E {
            return Err(Error::InvalidRamification { e, max: MAX_E });
        }
        Ok(FieldParams { p, e })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    /// Order `p − 1` of the group of niveau-1 characters.
    pub fn q1(&self) -> u64 {
        self.p - 1
    }

    /// Order `p² − 1` of the group of niveau-2 characters.
    pub fn q2(&self) -> u64 {
        self.p * self.p - 1
    }

    /// `e₁ = (p − 1)·e`.
    pub fn e1(&self) -> u64 {
        (self.p - 1) * self.e
    }

    /// `e₂ = (p² − 1)·e`, the absolute ramification index of the field cut
    /// out by a `(p² − 1)`-st root of a uniformizer.
    pub fn e2(&self) -> u64 {
        (self.p * self.p - 1) * self.e
    }

    /// Canonical representative of `k` in `[0, p − 1)`.
    pub fn residue1(&self, k: i64) -> u64 {
        k.rem_euclid(self.q1() as i64) as u64
    }

    /// Canonical representative of `k` in `[0, p² − 1)`.
    pub fn residue2(&self, k: i64) -> u64 {
        k.rem_euclid(self.q2() as i64) as u64
    }
}

/// A power of the niveau-1 fundamental character `ω`, stored by its exponent
/// in `[0, p − 1)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Niveau1Char {
    exp: u64,
}

impl Niveau1Char {
    /// `ω^k`, with `k` reduced mod `p − 1`.
    pub fn new(params: &FieldParams, k: i64) -> Self {
        Niveau1Char {
            exp: params.residue1(k),
        }
    }

    pub fn exp(&self) -> u64 {
        self.exp
    }

    /// Multiplies by `ω^t`.
    pub fn twist(&self, params: &FieldParams, t: i64) -> Self {
        Niveau1Char::new(params, self.exp as i64 + t)
    }

    /// The same character viewed at niveau 2 through `ω = ω_{σ₁}^{p+1}`.
    pub fn inflate(&self, params: &FieldParams) -> Niveau2Char {
        Niveau2Char::new(params, (self.exp * (params.p() + 1)) as i64)
    }
}

impl std::fmt::Display for Niveau1Char {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "omega^{}", self.exp)
    }
}

/// A power of the niveau-2 fundamental character `ω_{σ₁}`, stored by its
/// exponent in `[0, p² − 1)`.
///
/// The conjugate embedding gives `ω_{σ₂} = ω_{σ₁}^p`, so a character written
/// as `ω_{σ₁}^a ω_{σ₂}^b` has exponent `a + p·b` here.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Niveau2Char {
    exp: u64,
}

impl Niveau2Char {
    /// `ω_{σ₁}^k`, with `k` reduced mod `p² − 1`.
    pub fn new(params: &FieldParams, k: i64) -> Self {
        Niveau2Char {
            exp: params.residue2(k),
        }
    }

    /// `ω_{σ₁}^a ω_{σ₂}^b`, i.e. exponent `a + p·b`.
    pub fn from_pair(params: &FieldParams, a: i64, b: i64) -> Self {
        Niveau2Char::new(params, a + params.p() as i64 * b)
    }

    pub fn exp(&self) -> u64 {
        self.exp
    }

    /// Conjugate by Frobenius; an involution sending exponent `k` to `p·k`.
    pub fn frobenius(&self, params: &FieldParams) -> Self {
        Niveau2Char::new(params, (self.exp * params.p()) as i64)
    }

    /// Whether the character equals its own Frobenius conjugate, equivalently
    /// whether the exponent is divisible by `p + 1`.
    pub fn is_frobenius_fixed(&self, params: &FieldParams) -> bool {
        self.exp.is_multiple_of(params.p() + 1)
    }

    /// Expresses the character as a power of `ω` when possible.
    ///
    /// `ω = ω_{σ₁}^{p+1}`, so exponent `k` comes from niveau 1 exactly when
    /// `(p + 1) | k`, in which case the niveau-1 exponent is `k/(p+1)` mod
    /// `p − 1`.  This happens if and only if the character is fixed by
    /// Frobenius.
    pub fn restrict_niveau1(&self, params: &FieldParams) -> Option<Niveau1Char> {
        if !self.is_frobenius_fixed(params) {
            return None;
        }
        Some(Niveau1Char::new(
            params,
            (self.exp / (params.p() + 1)) as i64,
        ))
    }

    /// Multiplies by `ω^t` (a niveau-1 twist).
    pub fn twist(&self, params: &FieldParams, t: i64) -> Self {
        Niveau2Char::new(params, self.exp as i64 + (params.p() as i64 + 1) * t)
    }
}

impl std::fmt::Display for Niveau2Char {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "omega_s1^{}", self.exp)
    }
}

/// Reduction mod p of the cyclotomic character of the base field: `ω^e`.
pub fn cyclotomic_exponent(params: &FieldParams) -> Niveau1Char {
    Niveau1Char::new(params, params.e() as i64)
}

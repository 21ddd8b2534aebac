//! The predicted weight set `W?(ρ̄)` of a tame mod-p inertial datum.
//!
//! For a totally ramified base of ramification index `e`, a weight
//! `σ_{m,n}` is predicted for a semisimple residual datum exactly when some
//! `x` with `1 ≤ x ≤ e` matches the restriction to inertia:
//!
//! * irreducible datum `χ ⊕ χ^p`:
//!   `χ ∈ { ω_{σ₁}^{m+n+x} ω_{σ₂}^{m+e−x}, conjugate }`;
//! * reducible split datum `ω^a ⊕ ω^b`:
//!   `{a, b} = {m+n+x, m+e−x}` as multisets of residues mod `p − 1`.
//!
//! Every match is recorded together with its witnesses `x`; the witnesses
//! drive the construction of crystalline lifts later on.  Both orderings of
//! the reducible diagonal are covered by the multiset comparison, and
//! distinct orderings may contribute distinct witnesses for the same weight.
//!
//! Determinants give a cheap sanity law: any predicted `σ_{m,n}` satisfies
//! `2m + n + e ≡ a + b` (resp. the niveau-1 exponent of `χ^{1+p}`) mod
//! `p − 1`, and once `e ≥ p − 1` the determinant law is the *only*
//! constraint: every weight with the right central character is predicted.

use crate::error::{Error, Result};
use crate::gl2::SerreWeight;
use crate::tame::{FieldParams, Niveau2Char};
use std::collections::BTreeMap;

/// A semisimple residual inertial datum, restricted to inertia.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ResidualInertial {
    /// `ω^a ⊕ ω^b` (unordered; canonicalized with `a ≤ b`).
    ReducibleSplit { a: u64, b: u64 },
    /// `χ ⊕ χ^p` with `χ = ω_{σ₁}^c` not Frobenius-fixed.  The exponent is
    /// kept as given (no conjugate canonicalization); predictions do not
    /// depend on the choice.
    Irreducible { c: u64 },
}

impl ResidualInertial {
    /// Reducible split datum `ω^a ⊕ ω^b`.
    pub fn reducible(params: &FieldParams, a: i64, b: i64) -> Self {
        let (a, b) = (params.residue1(a), params.residue1(b));
        ResidualInertial::ReducibleSplit {
            a: a.min(b),
            b: a.max(b),
        }
    }

    /// Irreducible datum with niveau-2 exponent `c`; rejects Frobenius-fixed
    /// exponents (those are reducible, not irreducible).
    pub fn irreducible(params: &FieldParams, c: i64) -> Result<Self> {
        let c = Niveau2Char::new(params, c);
        if c.is_frobenius_fixed(params) {
            return Err(Error::FrobeniusFixed(c.exp()));
        }
        Ok(ResidualInertial::Irreducible { c: c.exp() })
    }

    /// Twists the datum by `ω^t`.
    pub fn twist(&self, params: &FieldParams, t: i64) -> Self {
        match *self {
            ResidualInertial::ReducibleSplit { a, b } => {
                ResidualInertial::reducible(params, a as i64 + t, b as i64 + t)
            }
            ResidualInertial::Irreducible { c } => ResidualInertial::Irreducible {
                c: Niveau2Char::new(params, c as i64).twist(params, t).exp(),
            },
        }
    }

    /// Exponent of `det ρ̄|_I` as a power of `ω`.
    pub fn det_exponent(&self, params: &FieldParams) -> u64 {
        match *self {
            ResidualInertial::ReducibleSplit { a, b } => params.residue1((a + b) as i64),
            ResidualInertial::Irreducible { c } => {
                // chi^{1+p} is Frobenius-fixed, hence niveau 1.
                Niveau2Char::new(params, (c * (params.p() + 1)) as i64)
                    .restrict_niveau1(params)
                    .expect("(1+p)c is divisible by p+1")
                    .exp()
            }
        }
    }
}

impl std::fmt::Display for ResidualInertial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            ResidualInertial::ReducibleSplit { a, b } => write!(f, "red({a},{b})"),
            ResidualInertial::Irreducible { c } => write!(f, "irr({c})"),
        }
    }
}

/// A set of weights, each carrying its sorted list of witnesses `x`.
///
/// Iteration order is the canonical weight order (by `(m, n)`), so sweeps
/// and serialized reports are deterministic.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WeightSet {
    inner: BTreeMap<SerreWeight, Vec<u64>>,
}

impl WeightSet {
    pub fn new() -> Self {
        WeightSet::default()
    }

    /// Records `x` as a witness for `w` (idempotent, keeps the list sorted).
    pub fn insert_witness(&mut self, w: SerreWeight, x: u64) {
        let xs = self.inner.entry(w).or_default();
        if let Err(pos) = xs.binary_search(&x) {
            xs.insert(pos, x);
        }
    }

    /// Adds a weight with no new witnesses (used for set algebra).
    pub fn insert(&mut self, w: SerreWeight, xs: &[u64]) {
        for &x in xs {
            self.insert_witness(w, x);
        }
        self.inner.entry(w).or_default();
    }

    pub fn contains(&self, w: &SerreWeight) -> bool {
        self.inner.contains_key(w)
    }

    /// Witnesses recorded for `w` (empty if absent).
    pub fn witnesses(&self, w: &SerreWeight) -> &[u64] {
        self.inner.get(w).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    /// Weights in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&SerreWeight, &[u64])> {
        self.inner.iter().map(|(w, xs)| (w, xs.as_slice()))
    }

    pub fn weights(&self) -> Vec<SerreWeight> {
        self.inner.keys().copied().collect()
    }
}

impl std::fmt::Display for WeightSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        write!(f, "{{")?;
        for (w, _) in self.iter() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// Serialized as an ordered list of `{weight, witnesses}` entries.
#[derive(serde::Serialize, serde::Deserialize)]
struct WeightEntry {
    weight: SerreWeight,
    witnesses: Vec<u64>,
}

impl serde::Serialize for WeightSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.inner.iter().map(|(w, xs)| WeightEntry {
            weight: *w,
            witnesses: xs.clone(),
        }))
    }
}

impl<'de> serde::Deserialize<'de> for WeightSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<WeightEntry>::deserialize(deserializer)?;
        let mut out = WeightSet::new();
        for entry in entries {
            out.insert(entry.weight, &entry.witnesses);
        }
        Ok(out)
    }
}

/// Whether `x` witnesses `σ_{m,n} ∈ W?(ρ̄)`, by direct substitution into the
/// matching congruences.
pub fn is_witness(params: &FieldParams, rho: &ResidualInertial, w: &SerreWeight, x: u64) -> bool {
    if x < 1 || x > params.e() {
        return false;
    }
    let up = (w.m() + w.n() + x) as i64;
    let low = (w.m() + params.e() - x) as i64;
    match *rho {
        ResidualInertial::ReducibleSplit { a, b } => {
            let pair = [params.residue1(up), params.residue1(low)];
            let mut sorted = pair;
            sorted.sort_unstable();
            sorted == [a.min(b), a.max(b)]
        }
        ResidualInertial::Irreducible { c } => {
            let e = Niveau2Char::from_pair(params, up, low);
            let c = Niveau2Char::new(params, c as i64);
            e == c || e == c.frobenius(params)
        }
    }
}

/// The predicted weight set `W?(ρ̄)` with all witnesses.
pub fn predicted_weights(params: &FieldParams, rho: &ResidualInertial) -> WeightSet {
    let mut out = WeightSet::new();
    for m in 0..params.q1() {
        for n in 0..=params.q1() {
            let w = SerreWeight::new(params, m as i64, n).expect("in range");
            for x in 1..=params.e() {
                if is_witness(params, rho, &w, x) {
                    out.insert_witness(w, x);
                }
            }
        }
    }
    out
}

/// Exponent of the central character law for `σ_{m,n}`: any Barsotti–Tate
/// lift of type `ω̃^{m+n} ⊕ ω̃^m` has inertial determinant reducing to
/// `ω^{2m+n+e}` (the `ω^e` factor being the reduction of the cyclotomic
/// character).
pub fn weight_det_exponent(params: &FieldParams, w: &SerreWeight) -> u64 {
    params.residue1((2 * w.m() + w.n() + params.e()) as i64)
}

/// `W?` determines `det ρ̄|_I`; check helper used by the determinant law
/// tests and the report layer.
pub fn det_law_holds(params: &FieldParams, rho: &ResidualInertial) -> bool {
    let d = rho.det_exponent(params);
    predicted_weights(params, rho)
        .iter()
        .all(|(w, _)| weight_det_exponent(params, w) == d)
}

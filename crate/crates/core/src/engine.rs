//! The derivation engine: which predicted weights are provably modular.
//!
//! Two mechanisms produce weights, both driven by the crystalline lifts
//! of [`crate::lifts`]:
//!
//! * **Non-ordinary lifts.**  A non-ordinary crystalline lift realising
//!   `σ_{m,n}` proves both `σ_{m,n}` and its companion `σ_{m+n, p−1−n}`.
//!   The companion is always predicted when the lift exists — a failure
//!   of that containment would contradict the classification and is
//!   surfaced as a hard [`Error::Consistency`].
//!
//! * **Ordinary lifts under the ordinary hypothesis.**  When the global
//!   input is assumed to satisfy the ordinary-types modularity statement,
//!   an ordinary lift of `σ_{m,n}` (witness `x = e`) proves modularity of
//!   *some* Jordan–Hölder factor of the reduction of its attached tame
//!   type.  For `n ≤ p−2` that factor list is `{σ_{m,n}, companion}`
//!   (a single weight when `n = 0`), so whenever exactly one member is
//!   predicted the disjunction collapses and yields a derivation.
//!
//! The weights still predicted but not derived are the *unresolved* set;
//! its exact shape is pinned down by [`exceptional_weights`] and checked
//! wholesale by the consistency sweep ([`verify_cell`]).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gl2::{bt_type, companion, jh_factors, SerreWeight};
use crate::lifts::{niveau1_lifts, niveau2_lift, LiftDescriptor};
use crate::predicted::{predicted_weights, ResidualInertial, WeightSet};
use crate::tame::FieldParams;

/// Global assumptions the derivation may rely on.
#[derive(Clone, Copy, Default, Debug, Serialize, Deserialize)]
pub struct GlobalHypotheses {
    /// Assume the ordinary-types modularity statement: an ordinary
    /// crystalline lift makes the input modular of some Jordan–Hölder
    /// factor of its type reduction.
    pub ordinary_types: bool,
}

/// Why a weight was derived.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Justification {
    /// Directly from a non-ordinary crystalline lift.
    NonOrdinaryLift { lift: LiftDescriptor },
    /// As the companion of a weight derived from a non-ordinary lift.
    CompanionOf { weight: SerreWeight },
    /// By elimination in the factor list of an ordinary type.
    TypeElimination {
        witness: u64,
        candidates: Vec<SerreWeight>,
    },
}

impl std::fmt::Display for Justification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Justification::NonOrdinaryLift { lift } => write!(f, "{lift}"),
            Justification::CompanionOf { weight } => write!(f, "companion of {weight}"),
            Justification::TypeElimination { witness, candidates } => {
                let cs: Vec<String> = candidates.iter().map(|w| w.to_string()).collect();
                write!(
                    f,
                    "sole predicted factor of the ordinary type (x={witness}) among {{{}}}",
                    cs.join(", ")
                )
            }
        }
    }
}

/// One derivation step: a weight and its justification, in the order the
/// engine produced them.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TraceEntry {
    pub weight: SerreWeight,
    pub justification: Justification,
}

/// Outcome of a derivation run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerivationResult {
    /// The full predicted set, with witnesses.
    pub predicted: WeightSet,
    /// Derived weights in derivation order, each with its justification.
    pub trace: Vec<TraceEntry>,
    /// Predicted weights the engine could not derive.
    pub unresolved: Vec<SerreWeight>,
}

impl DerivationResult {
    pub fn derived_weights(&self) -> BTreeSet<SerreWeight> {
        self.trace.iter().map(|t| t.weight).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Runs the derivation for one residual inertial datum.
pub fn derive(
    params: &FieldParams,
    rho: &ResidualInertial,
    hyp: &GlobalHypotheses,
) -> Result<DerivationResult> {
    let predicted = predicted_weights(params, rho);
    let mut trace: Vec<TraceEntry> = Vec::new();
    let mut done: BTreeSet<SerreWeight> = BTreeSet::new();

    // Pass 1: non-ordinary lifts, and their companions.  The weight order
    // and the ascending witness order make the run deterministic.
    for (w, witnesses) in predicted.iter() {
        if done.contains(w) {
            continue;
        }
        let non_ordinary = witnesses.iter().find_map(|&x| {
            let lifts = match rho {
                ResidualInertial::ReducibleSplit { .. } => {
                    niveau1_lifts(params, w.m(), w.n(), x)
                }
                ResidualInertial::Irreducible { .. } => {
                    vec![niveau2_lift(params, w.n(), x)]
                }
            };
            lifts.into_iter().find(|l| !l.ordinary)
        });
        let Some(lift) = non_ordinary else { continue };
        let comp = companion(params, w);
        if !predicted.contains(&comp) {
            return Err(Error::Consistency(format!(
                "weight {w} has a non-ordinary lift but its companion {comp} is not predicted"
            )));
        }
        done.insert(*w);
        trace.push(TraceEntry {
            weight: *w,
            justification: Justification::NonOrdinaryLift { lift },
        });
        if done.insert(comp) {
            trace.push(TraceEntry {
                weight: comp,
                justification: Justification::CompanionOf { weight: *w },
            });
        }
    }

    // Pass 2: ordinary types under the global hypothesis.  Ordinary lifts
    // exist exactly at witness x = e; the factor list of their type is
    // {weight, companion} (just {weight} for n = 0), and degenerates for
    // n = p−1, where the rule does not apply.
    if hyp.ordinary_types {
        let e = params.e();
        for (w, witnesses) in predicted.iter() {
            if w.n() == params.q1() || !witnesses.contains(&e) {
                continue;
            }
            let candidates = jh_factors(params, &bt_type(params, w))?;
            let present: Vec<SerreWeight> = candidates
                .iter()
                .copied()
                .filter(|c| predicted.contains(c))
                .collect();
            if let [sole] = present[..] {
                if done.insert(sole) {
                    trace.push(TraceEntry {
                        weight: sole,
                        justification: Justification::TypeElimination {
                            witness: e,
                            candidates: candidates.clone(),
                        },
                    });
                }
            }
        }
    }

    let unresolved: Vec<SerreWeight> = predicted
        .weights()
        .into_iter()
        .filter(|w| !done.contains(w))
        .collect();
    Ok(DerivationResult {
        predicted,
        trace,
        unresolved,
    })
}

/// The predicted weights for which *every* crystalline lift of the
/// residual is ordinary, so that no unconditional derivation exists:
/// nonempty only for split reducible residuals with `e ≤ p−1`, where it
/// consists of the `σ_{m,n}` whose sole witness is `x = e`
/// (`{m+n+e, m} ≡ {a, b}` with `n+e ≤ p−1` or `n = p−1`).
pub fn exceptional_weights(
    params: &FieldParams,
    rho: &ResidualInertial,
) -> BTreeSet<SerreWeight> {
    let mut out = BTreeSet::new();
    let ResidualInertial::ReducibleSplit { .. } = rho else {
        return out;
    };
    let (p, e, q1) = (params.p(), params.e(), params.q1());
    if e > q1 {
        // A witness-e lift can always shed p−1 ones: nothing is exceptional.
        return out;
    }
    for m in 0..q1 {
        for n in 0..p {
            if n + e <= q1 || n == q1 {
                let w = SerreWeight::new(params, m as i64, n).expect("in range");
                if crate::predicted::is_witness(params, rho, &w, e) {
                    out.insert(w);
                }
            }
        }
    }
    out
}

/// A single `(p, e)` cell of the consistency sweep: every residual class
/// (up to twist and symmetry), both with and without the ordinary
/// hypothesis, checked against the structural expectations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellReport {
    pub p: u64,
    pub e: u64,
    /// Residual classes examined.
    pub residuals: u64,
    /// Derivation runs performed (two per residual).
    pub runs: u64,
    /// Human-readable descriptions of failed expectations; empty = pass.
    pub failures: Vec<String>,
}

impl CellReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sweeps one `(p, e)` cell.
///
/// Reducible residuals are covered by `{0, d}` for `0 ≤ d ≤ (p−1)/2`
/// (twisting and swapping reach every split class), irreducible ones by
/// the fundamental-character exponents `c ∈ [1, p]`.  Expectations:
///
/// * irreducible residuals never leave anything unresolved;
/// * reducible residuals with `e ≥ p` never leave anything unresolved;
/// * without the ordinary hypothesis and `e ≤ p−1`, the unresolved set
///   equals [`exceptional_weights`] exactly;
/// * with the ordinary hypothesis, only top-degree exceptional weights
///   (`n = p−1`) may remain.
pub fn verify_cell(params: &FieldParams) -> CellReport {
    let mut failures = Vec::new();
    let mut residuals = 0;
    let (p, e, q1) = (params.p(), params.e(), params.q1());

    for d in 0..=q1 / 2 {
        residuals += 1;
        let rho = ResidualInertial::reducible(params, 0, d as i64);
        check_residual(params, &rho, &format!("p={p} e={e} red(0,{d})"), &mut failures);
    }
    for c in 1..=p {
        residuals += 1;
        let rho = ResidualInertial::irreducible(params, c as i64)
            .expect("exponents in [1, p] are never Frobenius-fixed");
        check_residual(params, &rho, &format!("p={p} e={e} irr({c})"), &mut failures);
    }

    CellReport {
        p,
        e,
        residuals,
        runs: 2 * residuals,
        failures,
    }
}

/// Both derivation runs (with and without the ordinary hypothesis) for
/// one residual, appending any unmet expectation to `failures`.
fn check_residual(
    params: &FieldParams,
    rho: &ResidualInertial,
    label: &str,
    failures: &mut Vec<String>,
) {
    let (p, e, q1) = (params.p(), params.e(), params.q1());
    for ordinary_types in [false, true] {
        let hyp = GlobalHypotheses { ordinary_types };
        let result = match derive(params, rho, &hyp) {
            Ok(r) => r,
            Err(err) => {
                failures.push(format!("{label}: derivation failed: {err}"));
                continue;
            }
        };
        let derived = result.derived_weights();
        let unresolved: BTreeSet<SerreWeight> = result.unresolved.iter().copied().collect();
        if derived.len() + unresolved.len() != result.predicted.len() {
            failures.push(format!("{label}: derived and unresolved do not partition"));
        }
        match rho {
            ResidualInertial::Irreducible { .. } => {
                if !unresolved.is_empty() {
                    failures.push(format!(
                        "{label}: irreducible residual left {} weights unresolved",
                        unresolved.len()
                    ));
                }
            }
            ResidualInertial::ReducibleSplit { .. } => {
                if e >= p && !unresolved.is_empty() {
                    failures.push(format!(
                        "{label}: e >= p but {} weights unresolved",
                        unresolved.len()
                    ));
                }
                if e <= q1 && !ordinary_types {
                    let expected = exceptional_weights(params, rho);
                    if unresolved != expected {
                        failures.push(format!(
                            "{label}: unresolved set does not match the exceptional weights \
                             ({} vs {})",
                            unresolved.len(),
                            expected.len()
                        ));
                    }
                }
                if ordinary_types {
                    let allowed = exceptional_weights(params, rho);
                    if !unresolved
                        .iter()
                        .all(|w| w.n() == q1 && allowed.contains(w))
                    {
                        failures.push(format!(
                            "{label}: ordinary hypothesis left a non-top-degree weight unresolved"
                        ));
                    }
                }
            }
        }
    }
}

/// Verifies every rank-two family module over one `(p, e)` cell: axioms,
/// character maps, and the Frobenius-pair shape of the reduction.
/// Returns the number of family members checked.
pub fn breuil_sweep_cell(params: &FieldParams) -> Result<u64> {
    let ctx = crate::breuil::BreuilCtx::new(*params)?;
    let mut checked = 0;
    for j in 0..=params.e1() {
        let family = crate::breuil::RankTwoFamily::new(&ctx, j)?;
        let (a, b) = family.reduction(&ctx)?;
        if a.frobenius(params) != b {
            return Err(Error::Consistency(format!(
                "family j={j}: reduction is not a Frobenius pair"
            )));
        }
        if a.exp() != params.residue2(j as i64 + params.e() as i64) {
            return Err(Error::Consistency(format!(
                "family j={j}: unexpected reduction exponent {}",
                a.exp()
            )));
        }
        checked += 1;
    }
    Ok(checked)
}

//! Crystalline lift descriptors attached to predicted weights.
//!
//! Each predicted weight `σ_{m,n}` with witness exponent `x` gives rise to
//! crystalline lifts of the residual representation whose labelled
//! Hodge–Tate weights realise `σ_{m,n}`; the derivation engine only needs
//! a small amount of data about each lift, recorded here:
//!
//! * **niveau one** (split reducible residuals): a sum of two crystalline
//!   characters.  Each character is described by how many of the `e`
//!   labelled Hodge–Tate weights equal one (the rest are zero) together
//!   with an unramified-normalised twist; its reduction on inertia is
//!   `ω^{ones + twist}`.  The *standard* lift puts `x` ones on the first
//!   character (twist `m+n`) and the complementary `e−x` on the second
//!   (twist `m`).  It is ordinary exactly when `x = e`, i.e. when the two
//!   one-vectors are constant; in that border case two non-ordinary
//!   *alternate* lifts with the same reduction exist in favourable ranges
//!   and are produced as well.
//!
//! * **niveau two** (irreducible residuals): an induction from the
//!   unramified quadratic extension, described by the single family
//!   parameter `j = n + (p−1)(e−x)`.  These lifts are never ordinary, and
//!   their reductions are not read off from a formula but *computed*, via
//!   the rank-two Breuil module family ([`verify_niveau2_reduction`]).

use serde::{Deserialize, Serialize};

use crate::breuil::{BreuilCtx, RankTwoFamily};
use crate::error::{Error, Result};
use crate::tame::{FieldParams, Niveau1Char, Niveau2Char};

/// A crystalline character of the base field: `ones` of the `e` labelled
/// Hodge–Tate weights are 1, and the character is twisted by `ω^twist`
/// on the reduction.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CrysChar {
    pub ones: u64,
    pub twist: u64,
}

impl CrysChar {
    /// Reduction on inertia: `ω^{ones + twist}`.
    pub fn reduction(&self, params: &FieldParams) -> Niveau1Char {
        Niveau1Char::new(params, self.ones as i64 + self.twist as i64)
    }
}

/// The shape of a crystalline lift.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftKind {
    /// Sum of two crystalline characters.
    Niveau1 { a: CrysChar, b: CrysChar },
    /// Induction from the quadratic unramified extension, by family
    /// parameter.
    Niveau2 { j: u64 },
}

/// One crystalline lift realising a predicted weight.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LiftDescriptor {
    /// The witness exponent `x ∈ [1, e]` the lift was built from.
    pub witness: u64,
    /// Whether the lift is ordinary.
    pub ordinary: bool,
    pub kind: LiftKind,
}

impl std::fmt::Display for LiftDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            LiftKind::Niveau1 { a, b } => write!(
                f,
                "niveau-1 lift (x={}): [{} ones, twist {}] + [{} ones, twist {}]{}",
                self.witness,
                a.ones,
                a.twist,
                b.ones,
                b.twist,
                if self.ordinary { ", ordinary" } else { "" },
            ),
            LiftKind::Niveau2 { j } => {
                write!(f, "niveau-2 lift (x={}): family parameter j={j}", self.witness)
            }
        }
    }
}

/// All niveau-one lifts of a split reducible residual realising the
/// weight `σ_{m,n}` through the witness `x`: the standard lift first,
/// then any alternates (the latter only exist when the standard lift is
/// ordinary, i.e. at `x = e`).
pub fn niveau1_lifts(params: &FieldParams, m: u64, n: u64, witness: u64) -> Vec<LiftDescriptor> {
    let e = params.e();
    assert!((1..=e).contains(&witness), "witness out of range");
    let q1 = params.q1();
    let twist_top = params.residue1(m as i64 + n as i64);
    let twist_bot = params.residue1(m as i64);

    let mut out = vec![LiftDescriptor {
        witness,
        ordinary: witness == e,
        kind: LiftKind::Niveau1 {
            a: CrysChar {
                ones: witness,
                twist: twist_top,
            },
            b: CrysChar {
                ones: e - witness,
                twist: twist_bot,
            },
        },
    }];

    if witness == e {
        // Shift e ones down to e − (p−1): same reduction, no longer
        // constant provided e > p − 1.
        if e > q1 {
            out.push(LiftDescriptor {
                witness,
                ordinary: false,
                kind: LiftKind::Niveau1 {
                    a: CrysChar {
                        ones: e - q1,
                        twist: twist_top,
                    },
                    b: CrysChar {
                        ones: q1,
                        twist: twist_bot,
                    },
                },
            });
        }
        // Trade n + e − (p−1) ones against swapped twists: valid when the
        // count lands strictly inside (0, e), i.e. n + e > p − 1 and
        // n ≠ p − 1.
        if e <= q1 && n + e > q1 && n != q1 {
            out.push(LiftDescriptor {
                witness,
                ordinary: false,
                kind: LiftKind::Niveau1 {
                    a: CrysChar {
                        ones: n + e - q1,
                        twist: twist_bot,
                    },
                    b: CrysChar {
                        ones: q1 - n,
                        twist: twist_top,
                    },
                },
            });
        }
    }
    out
}

/// The reductions on inertia of the two characters of a niveau-one lift.
pub fn niveau1_reduction(params: &FieldParams, lift: &LiftDescriptor) -> (Niveau1Char, Niveau1Char) {
    match &lift.kind {
        LiftKind::Niveau1 { a, b } => (a.reduction(params), b.reduction(params)),
        LiftKind::Niveau2 { .. } => panic!("niveau-2 lift has no niveau-1 reduction"),
    }
}

/// The niveau-two lift of an irreducible residual realising `σ_{m,n}`
/// through the witness `x`: induction with family parameter
/// `j = n + (p−1)(e−x)`.  Never ordinary.
pub fn niveau2_lift(params: &FieldParams, n: u64, witness: u64) -> LiftDescriptor {
    let e = params.e();
    assert!((1..=e).contains(&witness), "witness out of range");
    assert!(n < params.p(), "symmetric-power degree out of range");
    let j = n + params.q1() * (e - witness);
    // The family parameter satisfies j + e = (n + x) + p(e − x) as
    // integers, which is how the reduction recovers the witness exponent.
    debug_assert_eq!(
        j + e,
        (n + witness) + params.p() * (e - witness),
    );
    LiftDescriptor {
        witness,
        ordinary: false,
        kind: LiftKind::Niveau2 { j },
    }
}

/// Computes the reduction of a niveau-two lift through the Breuil module
/// family and checks it is `ω_{σ₁}^c ⊕ ω_{σ₁}^{pc}` after the `det^m`
/// twist.  This is the expensive, fully verified path: the family module
/// is rebuilt, its axioms checked, and the character maps exhibited.
pub fn verify_niveau2_reduction(
    params: &FieldParams,
    m: u64,
    lift: &LiftDescriptor,
    c: Niveau2Char,
) -> Result<()> {
    let LiftKind::Niveau2 { j } = lift.kind else {
        return Err(Error::Consistency(
            "reduction check requires a niveau-2 lift".into(),
        ));
    };
    let ctx = BreuilCtx::new(*params)?;
    let family = RankTwoFamily::new(&ctx, j)?;
    let (x1, x2) = family.reduction(&ctx)?;
    let mut got = [x1.twist(params, m as i64), x2.twist(params, m as i64)];
    got.sort();
    let mut want = [c, c.frobenius(params)];
    want.sort();
    if got != want {
        return Err(Error::Consistency(format!(
            "niveau-2 reduction mismatch for j={j}, m={m}: computed exponents ({}, {}), residual has ({}, {})",
            got[0].exp(),
            got[1].exp(),
            want[0].exp(),
            want[1].exp(),
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicted::{predicted_weights, ResidualInertial};

    fn params(p: u64, e: u64) -> FieldParams {
        FieldParams::new(p, e).unwrap()
    }

    #[test]
    fn standard_lift_shape() {
        let pr = params(5, 3);
        let lifts = niveau1_lifts(&pr, 2, 1, 1);
        assert_eq!(lifts.len(), 1);
        assert_eq!(
            lifts[0],
            LiftDescriptor {
                witness: 1,
                ordinary: false,
                kind: LiftKind::Niveau1 {
                    a: CrysChar { ones: 1, twist: 3 },
                    b: CrysChar { ones: 2, twist: 2 },
                },
            }
        );
    }

    #[test]
    fn ordinary_exactly_at_top_witness() {
        let pr = params(5, 3);
        for x in 1..=3 {
            let lifts = niveau1_lifts(&pr, 0, 2, x);
            assert_eq!(lifts[0].ordinary, x == 3, "x={x}");
        }
    }

    #[test]
    fn reductions_match_the_witness_characters() {
        // Whatever the shape, a lift built from witness x for sigma_{m,n}
        // must reduce to {omega^{m+n+x}, omega^{m+e-x}}.
        for (p, e) in [(3, 2), (5, 1), (5, 4), (7, 8)] {
            let pr = params(p, e);
            for m in 0..pr.q1() {
                for n in 0..pr.p() {
                    for x in 1..=e {
                        let mut want = [
                            Niveau1Char::new(&pr, (m + n + x) as i64),
                            Niveau1Char::new(&pr, m as i64 + e as i64 - x as i64),
                        ];
                        want.sort();
                        for lift in niveau1_lifts(&pr, m, n, x) {
                            let (a, b) = niveau1_reduction(&pr, &lift);
                            let mut got = [a, b];
                            got.sort();
                            assert_eq!(got, want, "p={p} e={e} m={m} n={n} x={x} {lift}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn high_ramification_alternate() {
        // e > p−1: the top witness has a second, non-ordinary lift.
        let pr = params(3, 4);
        let lifts = niveau1_lifts(&pr, 1, 1, 4);
        assert_eq!(lifts.len(), 2);
        assert!(lifts[0].ordinary);
        assert!(!lifts[1].ordinary);
        assert_eq!(
            lifts[1].kind,
            LiftKind::Niveau1 {
                // twist m+n = 2 reduces to 0 mod p−1 at p = 3
                a: CrysChar { ones: 2, twist: 0 },
                b: CrysChar { ones: 2, twist: 1 },
            }
        );
    }

    #[test]
    fn swapped_twist_alternate() {
        // e ≤ p−1 but n + e > p−1 (and n ≠ p−1): the alternate trades
        // ones against the two twists.
        let pr = params(5, 2);
        let lifts = niveau1_lifts(&pr, 0, 3, 2);
        assert_eq!(lifts.len(), 2);
        assert!(lifts[0].ordinary);
        assert_eq!(
            lifts[1],
            LiftDescriptor {
                witness: 2,
                ordinary: false,
                kind: LiftKind::Niveau1 {
                    a: CrysChar { ones: 1, twist: 0 },
                    b: CrysChar { ones: 1, twist: 3 },
                },
            }
        );
    }

    #[test]
    fn no_alternate_in_the_exceptional_range() {
        // e ≤ p−1 and n + e ≤ p−1: the top witness only has its ordinary
        // lift.  This is the source of underivable predicted weights.
        let pr = params(5, 1);
        let lifts = niveau1_lifts(&pr, 0, 1, 1);
        assert_eq!(lifts.len(), 1);
        assert!(lifts[0].ordinary);
        // n = p−1 also admits no alternate even when n + e > p−1.
        let lifts = niveau1_lifts(&pr, 0, 4, 1);
        assert_eq!(lifts.len(), 1);
    }

    #[test]
    fn family_parameter_identity() {
        for (p, e) in [(3, 2), (5, 3), (7, 10)] {
            let pr = params(p, e);
            for n in 0..p {
                for x in 1..=e {
                    let lift = niveau2_lift(&pr, n, x);
                    let LiftKind::Niveau2 { j } = lift.kind else {
                        panic!()
                    };
                    assert!(j <= pr.e1());
                    assert_eq!(j + e, (n + x) + p * (e - x));
                    assert!(!lift.ordinary);
                }
            }
        }
    }

    #[test]
    fn niveau2_reductions_verify_against_the_family() {
        // For every predicted weight of every irreducible residual in a
        // small box, the claimed lift reduction is confirmed by the
        // Breuil module computation.
        for (p, e) in [(3, 1), (3, 2)] {
            let pr = params(p, e);
            for c in 1..=p {
                let Ok(rho) = ResidualInertial::irreducible(&pr, c as i64) else {
                    continue; // Frobenius-fixed exponent
                };
                let cchar = Niveau2Char::new(&pr, c as i64);
                let weights = predicted_weights(&pr, &rho);
                assert!(!weights.is_empty());
                for (w, witnesses) in weights.iter() {
                    for &x in witnesses {
                        let lift = niveau2_lift(&pr, w.n(), x);
                        verify_niveau2_reduction(&pr, w.m(), &lift, cchar).unwrap_or_else(
                            |err| panic!("p={p} e={e} c={c} weight={w} x={x}: {err}"),
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn niveau2_reduction_mismatch_is_reported() {
        let pr = params(3, 1);
        let lift = niveau2_lift(&pr, 0, 1);
        // The j=0 family reduces to exponents {1, 3}; claiming residual
        // exponent 2 must fail.
        let bogus = Niveau2Char::new(&pr, 2);
        assert!(verify_niveau2_reduction(&pr, 0, &lift, bogus).is_err());
    }
}

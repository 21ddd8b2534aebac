//! Randomized invariants.
//!
//! Each property re-checks a structural law of the library on parameters
//! drawn from the supported range, complementing the exhaustive sweeps in
//! the acceptance suite with coverage at arbitrary twists, orderings, and
//! ramification indices.

mod common;

use proptest::prelude::*;
use serre_weights::engine::{derive, GlobalHypotheses};
use serre_weights::gl2::{bt_type, companion, jh_factors, SerreWeight};
use serre_weights::lifts::{niveau1_lifts, niveau1_reduction, niveau2_lift, LiftKind};
use serre_weights::predicted::{is_witness, predicted_weights, ResidualInertial};
use serre_weights::report::{derive_report, predict_report, ReportDocument};
use serre_weights::tame::FieldParams;

fn small_prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5), Just(7), Just(11)]
}

prop_compose! {
    fn field_params()(p in small_prime(), e in 1u64..=12) -> FieldParams {
        FieldParams::new(p, e).unwrap()
    }
}

proptest! {
    /// Library membership agrees with the raw-arithmetic oracle at split
    /// data in arbitrary order (not just the canonical `{0, d}` classes).
    #[test]
    fn split_membership_matches_oracle(
        pr in field_params(),
        a in 0i64..64,
        b in 0i64..64,
        m in 0u64..64,
        n in 0u64..64,
    ) {
        let m = m % pr.q1();
        let n = n % pr.p();
        let rho = ResidualInertial::reducible(&pr, a, b);
        let w = SerreWeight::new(&pr, m as i64, n).unwrap();
        let lib = predicted_weights(&pr, &rho).contains(&w);
        let raw = common::reducible_member(
            pr.p(), pr.e(), pr.residue1(a), pr.residue1(b), m, n,
        );
        prop_assert_eq!(lib, raw);
        for x in 1..=pr.e() {
            prop_assert_eq!(
                is_witness(&pr, &rho, &w, x),
                common::reducible_witnessed_at(
                    pr.p(), pr.e(), pr.residue1(a), pr.residue1(b), m, n, x,
                ),
                "x={}", x
            );
        }
    }

    /// Same agreement for niveau-two data, including the conjugate
    /// presentation of the same class.
    #[test]
    fn niveau_two_membership_matches_oracle(
        pr in field_params(),
        i in 0u64..64,
        j in 0u64..64,
        m in 0u64..64,
        n in 0u64..64,
    ) {
        let c = (1 + i % pr.p()) + (pr.p() + 1) * (j % pr.q1());
        let m = m % pr.q1();
        let n = n % pr.p();
        let rho = ResidualInertial::irreducible(&pr, c as i64).unwrap();
        let conj = ResidualInertial::irreducible(&pr, (c * pr.p()) as i64).unwrap();
        let w = SerreWeight::new(&pr, m as i64, n).unwrap();
        let lib = predicted_weights(&pr, &rho).contains(&w);
        prop_assert_eq!(lib, common::irreducible_member(pr.p(), pr.e(), c, m, n));
        prop_assert_eq!(lib, predicted_weights(&pr, &conj).contains(&w));
    }

    /// Twisting the datum shifts every predicted weight by the same
    /// determinant power and keeps the witnesses.
    #[test]
    fn predictions_are_twist_equivariant(
        pr in field_params(),
        a in 0i64..64,
        b in 0i64..64,
        t in 0i64..64,
    ) {
        let rho = ResidualInertial::reducible(&pr, a, b);
        let base = predicted_weights(&pr, &rho);
        let twisted = predicted_weights(&pr, &rho.twist(&pr, t));
        prop_assert_eq!(twisted.len(), base.len());
        for (w, xs) in base.iter() {
            let shifted = SerreWeight::new(&pr, w.m() as i64 + t, w.n()).unwrap();
            prop_assert_eq!(twisted.witnesses(&shifted), xs);
        }
    }

    /// Every recorded witness resubstitutes into the matching rule.
    #[test]
    fn recorded_witnesses_resubstitute(
        pr in field_params(),
        a in 0i64..64,
        b in 0i64..64,
    ) {
        let rho = ResidualInertial::reducible(&pr, a, b);
        for (w, xs) in predicted_weights(&pr, &rho).iter() {
            prop_assert!(!xs.is_empty());
            for &x in xs {
                prop_assert!((1..=pr.e()).contains(&x));
                prop_assert!(is_witness(&pr, &rho, w, x));
            }
        }
    }

    /// The companion map is a fixed-point-free involution, and for
    /// `0 < n < p−1` the weight and its companion are exactly the factor
    /// list of their shared Barsotti–Tate type.
    #[test]
    fn companion_involution_and_shared_type(
        pr in field_params(),
        m in 0u64..64,
        n in 0u64..64,
    ) {
        let m = m % pr.q1();
        let n = n % pr.p();
        let w = SerreWeight::new(&pr, m as i64, n).unwrap();
        let c = companion(&pr, &w);
        prop_assert_eq!(companion(&pr, &c), w);
        prop_assert_ne!(c, w);
        if n >= 1 && n < pr.q1() {
            let mut expected = vec![w, c];
            expected.sort();
            prop_assert_eq!(jh_factors(&pr, &bt_type(&pr, &w)).unwrap(), expected);
        }
    }

    /// Every lift returned for a witness reduces to the witness pair
    /// `{ω^{m+n+x}, ω^{m+e−x}}`, is flagged ordinary only at the top
    /// witness, and a niveau-two lift encodes the same witness through its
    /// family parameter.
    #[test]
    fn lifts_reduce_to_their_witness_characters(
        pr in field_params(),
        m in 0u64..64,
        n in 0u64..64,
        xr in 0u64..64,
    ) {
        let m = m % pr.q1();
        let n = n % pr.p();
        let x = 1 + xr % pr.e();
        let mut want = [
            pr.residue1((m + n + x) as i64),
            pr.residue1((m + pr.e() - x) as i64),
        ];
        want.sort_unstable();
        let lifts = niveau1_lifts(&pr, m, n, x);
        prop_assert!(!lifts.is_empty());
        for lift in lifts {
            prop_assert_eq!(lift.witness, x);
            if lift.ordinary {
                prop_assert_eq!(x, pr.e());
            }
            let (top, bot) = niveau1_reduction(&pr, &lift);
            let mut got = [top.exp(), bot.exp()];
            got.sort_unstable();
            prop_assert_eq!(got, want);
            let LiftKind::Niveau1 { a, b } = lift.kind else {
                return Err(TestCaseError::fail("niveau-1 lift expected"));
            };
            prop_assert!(a.ones <= pr.e());
            prop_assert!(b.ones <= pr.e());
        }

        let two = niveau2_lift(&pr, n, x);
        prop_assert!(!two.ordinary);
        let LiftKind::Niveau2 { j } = two.kind else {
            return Err(TestCaseError::fail("niveau-2 lift expected"));
        };
        prop_assert_eq!(j, n + pr.q1() * (pr.e() - x));
        prop_assert!(j <= pr.e1());
    }

    /// Derivations partition the predicted set, never invent weights, and
    /// are deterministic.
    #[test]
    fn derivations_partition_and_repeat(
        pr in field_params(),
        a in 0i64..64,
        b in 0i64..64,
        ordinary_types in any::<bool>(),
    ) {
        let rho = ResidualInertial::reducible(&pr, a, b);
        let hyp = GlobalHypotheses { ordinary_types };
        let result = derive(&pr, &rho, &hyp).unwrap();
        let predicted = predicted_weights(&pr, &rho);
        prop_assert_eq!(&result.predicted, &predicted);
        let derived = result.derived_weights();
        prop_assert_eq!(derived.len(), result.trace.len(), "no duplicate steps");
        for w in &derived {
            prop_assert!(predicted.contains(w));
        }
        for w in &result.unresolved {
            prop_assert!(predicted.contains(w));
            prop_assert!(!derived.contains(w));
        }
        prop_assert_eq!(derived.len() + result.unresolved.len(), predicted.len());

        let again = derive(&pr, &rho, &hyp).unwrap();
        prop_assert_eq!(result.trace, again.trace);
        prop_assert_eq!(result.unresolved, again.unresolved);
    }

    /// Report documents survive a serialize → parse → serialize cycle
    /// byte for byte.
    #[test]
    fn reports_round_trip(
        pr in field_params(),
        a in 0i64..64,
        b in 0i64..64,
        ordinary_lift in any::<bool>(),
    ) {
        let spec = format!("red:{},{}", pr.residue1(a), pr.residue1(b));
        for doc in [
            predict_report(&pr, &spec).unwrap(),
            derive_report(&pr, &spec, ordinary_lift).unwrap(),
        ] {
            let json = doc.to_json();
            let back = ReportDocument::from_json(&json).unwrap();
            prop_assert_eq!(back.to_json(), json);
        }
    }
}

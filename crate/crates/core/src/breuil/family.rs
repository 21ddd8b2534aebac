//! The one-parameter family of rank-two Breuil modules whose generic
//! fibres realise the niveau-two crystalline lifts, and the computation
//! of their reductions.
//!
//! For `0 ≤ j ≤ (p−1)e` the module `M(j)` is free of rank two over
//! `R = (F_{p²} × F_{p²})[u]/(u^{e₂p})` with generators `g₁, g₂` and
//!
//! ```text
//!     Fil¹ = ⟨ u^{(p+1)j}·g₁ ,  u^{e₂−(p+1)j}·g₂ ⟩,
//!     φ₁:  u^{(p+1)j}·g₁ ↦ g₂,   u^{e₂−(p+1)j}·g₂ ↦ g₁,
//!     ĝ₀:  g₁ ↦ g₁,   g₂ ↦ ζ^{(p+1)n}·g₂     (n = j mod p−1).
//! ```
//!
//! The reduction of its generic fibre is read off from explicit maps out
//! of rank-one character modules: for each of the two embeddings of the
//! unramified quadratic coefficient field there is a map whose image is
//!
//! ```text
//!     u^{p(j+e)}·e_slot·g₁  +  u^{p(pe−j)}·e_other·g₂,
//! ```
//!
//! fixed by `φ₁` on the nose and scaled by `ĝ₀` exactly as the character
//! `ω_{σ}^{j+e}` of the corresponding embedding.  The two characters are
//! Frobenius conjugates, so the reduction restricted to inertia is
//! `ω_{σ₁}^{j+e} ⊕ ω_{σ₂}^{j+e}`.  Everything is verified by direct
//! computation in the truncated ring rather than assumed.

use super::module::{BreuilCtx, BreuilModule};
use super::ring::Elt;
use crate::error::{Error, Result};
use crate::tame::Niveau2Char;

/// The rank-two module `M(j)` together with its parameter.
pub struct RankTwoFamily {
    j: u64,
    module: BreuilModule,
}

/// One verified map from a rank-one character module into `M(j)`: the
/// inertial character of the source and the image of its generator.
pub struct HomWitness {
    pub character: Niveau2Char,
    pub image: Elt,
}

/// Whether a comparison map whose image involves the given `u`-exponents
/// detects the full source character on generic fibres.  The kernel of
/// such a map contains no free submodule of the truncated ring exactly
/// when every exponent is strictly below the truncation order `e₂·p`.
pub fn kernel_genericity(exponents: &[u64], ctx: &BreuilCtx) -> bool {
    exponents.iter().all(|&d| (d as usize) < ctx.trunc())
}

impl RankTwoFamily {
    /// Builds `M(j)`; requires `j ≤ (p−1)e` so the filtration heights stay
    /// inside `[0, e₂]`.
    pub fn new(ctx: &BreuilCtx, j: u64) -> Result<Self> {
        let params = ctx.params();
        if j > params.e1() {
            return Err(Error::OutOfRange {
                what: "family parameter j",
                lo: 0,
                hi: params.e1(),
                got: j,
            });
        }
        let n = ctx.trunc();
        let one = ctx.ring.fp2.one();
        let height = ((params.p() + 1) * j) as usize;
        let e2 = params.e2() as usize;
        let sym = params.residue1(j as i64) as i64;
        let descent_scalar = ctx.zeta_pow((params.p() as i64 + 1) * sym);

        let fil = vec![
            Elt::monomial(n, 2, 0, height, one),
            Elt::monomial(n, 2, 1, e2 - height, one),
        ];
        let phi = vec![
            Elt::generator(n, 2, 1, one),
            Elt::generator(n, 2, 0, one),
        ];
        let descent = vec![
            Elt::generator(n, 2, 0, one),
            Elt::monomial(n, 2, 1, 0, descent_scalar),
        ];
        Ok(RankTwoFamily {
            j,
            module: BreuilModule::new(2, fil, phi, descent),
        })
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn module(&self) -> &BreuilModule {
        &self.module
    }

    /// The `u`-exponents appearing in the image of either character map:
    /// `p(j+e)` on the first generator and `p(pe−j)` on the second.
    pub fn image_exponents(&self, ctx: &BreuilCtx) -> [u64; 2] {
        let params = ctx.params();
        let (p, j, e) = (params.p(), self.j, params.e());
        [p * (j + e), p * (p * e - j)]
    }

    /// The map attached to one embedding (`slot` 0 or 1): its source
    /// character has exponent `p(j+e)` for slot 0 and `j+e` for slot 1,
    /// and its image is `u^{p(j+e)}·e_slot·g₁ + u^{p(pe−j)}·e_other·g₂`.
    pub fn hom_witness(&self, ctx: &BreuilCtx, slot: usize) -> HomWitness {
        assert!(slot < 2);
        let params = ctx.params();
        let n = ctx.trunc();
        let one = ctx.ring.fp2.one();
        let p = params.p() as i64;
        let (j, e) = (self.j as i64, params.e() as i64);
        let exp_char = if slot == 0 { p * (j + e) } else { j + e };
        let deg1 = (p * (j + e)) as usize;
        let deg2 = (p * (p * e - j)) as usize;
        let image = ctx.ring.elt_add(
            &Elt::slot_monomial(n, 2, slot, 0, deg1, one),
            &Elt::slot_monomial(n, 2, 1 - slot, 1, deg2, one),
        );
        HomWitness {
            character: Niveau2Char::new(params, exp_char),
            image,
        }
    }

    /// Verifies that a witness really is a map of Breuil modules with
    /// nonzero image: the image is fixed by `φ₁` and scaled by `ĝ₀`
    /// exactly as the source character.
    pub fn verify_hom(&self, ctx: &BreuilCtx, witness: &HomWitness) -> Result<()> {
        if witness.image.is_zero() {
            return Err(Error::Consistency(
                "character map has zero image".into(),
            ));
        }
        let phi = self
            .module
            .phi1_apply(ctx, &witness.image)
            .ok_or_else(|| Error::Consistency("image does not lie in Fil^1".into()))?;
        if phi != witness.image {
            return Err(Error::Consistency(
                "image is not fixed by phi_1".into(),
            ));
        }
        let moved = self.module.g0_apply(ctx, &witness.image);
        let scaled = ctx
            .ring
            .elt_scale_field(&witness.image, ctx.zeta_pow(witness.character.exp() as i64));
        if moved != scaled {
            return Err(Error::Consistency(
                "descent action does not scale the image by the source character".into(),
            ));
        }
        Ok(())
    }

    /// Computes the inertial reduction of the generic fibre of `M(j)`:
    /// checks the module axioms, verifies both character maps, and
    /// returns the Frobenius-conjugate pair `(ω_{σ₁}^{j+e}, ω_{σ₂}^{j+e})`
    /// by their `σ₁`-exponents.
    pub fn reduction(&self, ctx: &BreuilCtx) -> Result<(Niveau2Char, Niveau2Char)> {
        let violations = self.module.check_axioms(ctx);
        if !violations.is_empty() {
            let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(Error::Consistency(format!(
                "family module fails axioms: {}",
                msgs.join("; ")
            )));
        }
        if !kernel_genericity(&self.image_exponents(ctx), ctx) {
            return Err(Error::Consistency(
                "character map image vanishes in the truncated ring".into(),
            ));
        }
        let mut chars = Vec::with_capacity(2);
        for slot in 0..2 {
            let witness = self.hom_witness(ctx, slot);
            self.verify_hom(ctx, &witness)?;
            chars.push(witness.character);
        }
        // Slot 1 carries sigma_1-exponent j+e, slot 0 its Frobenius twin.
        let params = ctx.params();
        debug_assert_eq!(chars[1].frobenius(params), chars[0]);
        Ok((chars[1], chars[0]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tame::FieldParams;

    fn ctx(p: u64, e: u64) -> BreuilCtx {
        BreuilCtx::new(FieldParams::new(p, e).unwrap()).unwrap()
    }

    #[test]
    fn whole_family_satisfies_the_axioms() {
        for (p, e) in [(3, 1), (3, 2), (5, 1)] {
            let c = ctx(p, e);
            for j in 0..=c.params().e1() {
                let fam = RankTwoFamily::new(&c, j).unwrap();
                assert_eq!(fam.module().check_axioms(&c), vec![], "p={p} e={e} j={j}");
            }
        }
    }

    #[test]
    fn parameter_out_of_range_is_rejected() {
        let c = ctx(3, 2);
        assert!(RankTwoFamily::new(&c, 5).is_err());
    }

    #[test]
    fn both_character_maps_verify() {
        for (p, e) in [(3, 1), (3, 2), (5, 1)] {
            let c = ctx(p, e);
            for j in 0..=c.params().e1() {
                let fam = RankTwoFamily::new(&c, j).unwrap();
                for slot in 0..2 {
                    let w = fam.hom_witness(&c, slot);
                    fam.verify_hom(&c, &w)
                        .unwrap_or_else(|err| panic!("p={p} e={e} j={j} slot={slot}: {err}"));
                }
            }
        }
    }

    #[test]
    fn reduction_example() {
        let c = ctx(3, 2);
        let fam = RankTwoFamily::new(&c, 1).unwrap();
        let (a, b) = fam.reduction(&c).unwrap();
        assert_eq!(a.exp(), 3);
        assert_eq!(b.exp(), 1); // 3·3 = 9 ≡ 1 mod 8
    }

    #[test]
    fn reduction_is_a_frobenius_pair() {
        let c = ctx(5, 1);
        for j in 0..=c.params().e1() {
            let fam = RankTwoFamily::new(&c, j).unwrap();
            let (a, b) = fam.reduction(&c).unwrap();
            assert_eq!(a.frobenius(c.params()), b);
            assert_eq!(a.exp(), c.params().residue2(j as i64 + 1));
        }
    }

    #[test]
    fn image_exponents_stay_below_truncation() {
        for (p, e) in [(3, 1), (3, 3), (5, 2), (7, 1)] {
            let c = ctx(p, e);
            for j in 0..=c.params().e1() {
                let fam = RankTwoFamily::new(&c, j).unwrap();
                assert!(kernel_genericity(&fam.image_exponents(&c), &c));
            }
        }
        // An exponent at or past the truncation order fails the criterion.
        let c = ctx(3, 1);
        assert!(!kernel_genericity(&[0, c.trunc() as u64], &c));
    }

    #[test]
    fn corrupted_descent_constant_is_caught() {
        // Shift the descent scalar on g2 by one power of zeta: the descent
        // action no longer commutes with phi_1 (and the character maps
        // break too).
        let c = ctx(3, 2);
        let n = c.trunc();
        let params = *c.params();
        let one = c.ring.fp2.one();
        let j = 1u64;
        let height = ((params.p() + 1) * j) as usize;
        let bad_scalar = c.zeta_pow((params.p() as i64 + 1) * (j as i64) + 1);
        let module = BreuilModule::new(
            2,
            vec![
                Elt::monomial(n, 2, 0, height, one),
                Elt::monomial(n, 2, 1, params.e2() as usize - height, one),
            ],
            vec![Elt::generator(n, 2, 1, one), Elt::generator(n, 2, 0, one)],
            vec![
                Elt::generator(n, 2, 0, one),
                Elt::monomial(n, 2, 1, 0, bad_scalar),
            ],
        );
        assert!(!module.check_axioms(&c).is_empty());
    }
}

//! Dense arithmetic in the truncated ring `A = F_{p²}[u]/(u^N)` and in free
//! modules over `R = A × A`.
//!
//! The coefficient ring of a Breuil module with tame descent data is
//! `k₂ ⊗_{F_p} k_E` with `k₂ = k_E = F_{p²}`.  The two embeddings
//! `σ₁ = id, σ₂ = Frob` split the tensor product into a product of two
//! copies of `k_E` ("slots"), so every ring element is a pair of
//! polynomials and every module element a pair of coordinate vectors.
//! Three semilinear twists recur:
//!
//! * `φ` (Frobenius on `k₂ ⊗ 1` together with `u ↦ u^p`): on slot values
//!   this is a pure *swap* of the two slots — the `k_E`-components are
//!   untouched because `σ₂ = σ₁ ∘ Frob` — combined with the substitution
//!   `u ↦ u^p` in each polynomial;
//! * the descent twist for the chosen generator `g₀` of the tame cyclic
//!   group: trivial on coefficients, `u ↦ ζu` in slot 1 and `u ↦ ζ^p u` in
//!   slot 2 (where `ζ = ω₂(g₀)` is the fixed generator of `F_{p²}^×`);
//! * plain `k_E`-scalars, acting equally on both slots.
//!
//! Division, membership, and syzygy computations all rely on `A` being a
//! chain ring: every nonzero element is a unit times a power of `u`, so a
//! minimal-valuation pivot divides everything it needs to eliminate.

use super::fp2::{Fp2, Fp2Ctx};

/// A dense polynomial of fixed length `N` over `F_{p²}`; index = degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub c: Vec<Fp2>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            c: vec![Fp2 { a: 0, b: 0 }; n],
        }
    }

    pub fn monomial(n: usize, deg: usize, coef: Fp2) -> Self {
        let mut p = Poly::zero(n);
        if deg < n {
            p.c[deg] = coef;
        }
        p
    }

    pub fn constant(n: usize, coef: Fp2) -> Self {
        Poly::monomial(n, 0, coef)
    }

    /// Truncation length `N`, fixed per ring; a polynomial is never
    /// "empty", so no `is_empty` counterpart exists.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.a == 0 && x.b == 0)
    }

    /// `u`-adic valuation; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| x.a != 0 || x.b != 0)
    }

    fn nonzero_terms(&self) -> Vec<(usize, Fp2)> {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, x)| x.a != 0 || x.b != 0)
            .map(|(d, &x)| (d, x))
            .collect()
    }
}

/// Ring operations on `A = F_{p²}[u]/(u^N)`.
pub struct RingCtx {
    pub fp2: Fp2Ctx,
    /// Truncation order `N`.
    pub n: usize,
}

impl RingCtx {
    pub fn new(fp2: Fp2Ctx, n: usize) -> Self {
        RingCtx { fp2, n }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = a.clone();
        for (o, x) in out.c.iter_mut().zip(&b.c) {
            *o = self.fp2.add(*o, *x);
        }
        out
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = a.clone();
        for (o, x) in out.c.iter_mut().zip(&b.c) {
            *o = self.fp2.sub(*o, *x);
        }
        out
    }

    /// Truncated product, iterating over the sparser factor's support; the
    /// elements showing up in practice are (sums of a few) monomials, so
    /// this is effectively linear in `N`.
    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let (small, big) = if a.nonzero_terms().len() <= b.nonzero_terms().len() {
            (a, b)
        } else {
            (b, a)
        };
        let mut out = Poly::zero(self.n);
        for (d, coef) in small.nonzero_terms() {
            for (d2, coef2) in big.nonzero_terms() {
                if d + d2 < self.n {
                    out.c[d + d2] = self.fp2.add(out.c[d + d2], self.fp2.mul(coef, coef2));
                }
            }
        }
        out
    }

    pub fn scale(&self, a: &Poly, s: Fp2) -> Poly {
        let mut out = a.clone();
        for o in out.c.iter_mut() {
            *o = self.fp2.mul(*o, s);
        }
        out
    }

    /// Multiplication by `u^k`.
    pub fn shift_up(&self, a: &Poly, k: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for d in 0..self.n.saturating_sub(k) {
            out.c[d + k] = a.c[d];
        }
        out
    }

    /// Exact division by `u^k`; requires valuation ≥ `k`.
    fn shift_down(&self, a: &Poly, k: usize) -> Poly {
        debug_assert!(a.c[..k].iter().all(|x| x.a == 0 && x.b == 0));
        let mut out = Poly::zero(self.n);
        for d in k..self.n {
            out.c[d - k] = a.c[d];
        }
        out
    }

    /// The substitution `u ↦ u^p` (terms pushed past `u^N` vanish).
    pub fn stretch_p(&self, a: &Poly) -> Poly {
        let p = self.fp2.p() as usize;
        let mut out = Poly::zero(self.n);
        for (d, coef) in a.nonzero_terms() {
            if d * p < self.n {
                out.c[d * p] = coef;
            }
        }
        out
    }

    /// The substitution `u ↦ gu`, i.e. coefficient at degree `d` scaled by
    /// `g^d`.
    pub fn twist_u(&self, a: &Poly, g: Fp2) -> Poly {
        let mut out = a.clone();
        let mut gp = self.fp2.one();
        for d in 0..self.n {
            if d > 0 {
                gp = self.fp2.mul(gp, g);
            }
            out.c[d] = self.fp2.mul(out.c[d], gp);
        }
        out
    }

    /// Inverse of a unit (nonzero constant term) by series inversion.
    pub fn invert_unit(&self, w: &Poly) -> Poly {
        let w0 = self.fp2.inv(w.c[0]);
        let support: Vec<(usize, Fp2)> = w.nonzero_terms().into_iter().skip(1).collect();
        let mut inv = Poly::zero(self.n);
        inv.c[0] = w0;
        if support.is_empty() {
            return inv;
        }
        for d in 1..self.n {
            let mut acc = self.fp2.zero();
            for &(t, wt) in support.iter().take_while(|&&(t, _)| t <= d) {
                acc = self.fp2.add(acc, self.fp2.mul(wt, inv.c[d - t]));
            }
            inv.c[d] = self.fp2.neg(self.fp2.mul(w0, acc));
        }
        inv
    }

    /// Quotient `q` with `q·b = a` exactly in `A`, when one exists (i.e.
    /// when `val(a) ≥ val(b)`); `a = 0` gives `q = 0`.
    pub fn divide_exact(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        if a.is_zero() {
            return Some(Poly::zero(self.n));
        }
        let vb = b.valuation().expect("division by zero polynomial");
        let va = a.valuation().expect("nonzero");
        if va < vb {
            return None;
        }
        let unit = self.shift_down(b, vb);
        let q = self.mul(&self.shift_down(a, vb), &self.invert_unit(&unit));
        debug_assert_eq!(self.mul(&q, b), *a);
        Some(q)
    }
}

/// A ring scalar in `R = A × A` (one polynomial per slot).
pub type RingPair = [Poly; 2];

/// An element of the free module `M = R^rank`: `coords[slot][generator]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Elt {
    pub coords: [Vec<Poly>; 2],
}

impl Elt {
    pub fn zero(n: usize, rank: usize) -> Self {
        Elt {
            coords: [vec![Poly::zero(n); rank], vec![Poly::zero(n); rank]],
        }
    }

    /// `coef · u^deg · e_slot · g_gen` — a single term living in one slot.
    pub fn slot_monomial(
        n: usize,
        rank: usize,
        slot: usize,
        gen: usize,
        deg: usize,
        coef: Fp2,
    ) -> Self {
        let mut e = Elt::zero(n, rank);
        e.coords[slot][gen] = Poly::monomial(n, deg, coef);
        e
    }

    /// `coef · u^deg · g_gen` with the same coefficient in both slots
    /// (i.e. a `k_E[u]`-term).
    pub fn monomial(n: usize, rank: usize, gen: usize, deg: usize, coef: Fp2) -> Self {
        let mut e = Elt::zero(n, rank);
        e.coords[0][gen] = Poly::monomial(n, deg, coef);
        e.coords[1][gen] = Poly::monomial(n, deg, coef);
        e
    }

    pub fn generator(n: usize, rank: usize, gen: usize, one: Fp2) -> Self {
        Elt::monomial(n, rank, gen, 0, one)
    }

    pub fn rank(&self) -> usize {
        self.coords[0].len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().flatten().all(Poly::is_zero)
    }

    /// The ring scalar carried by one generator.
    pub fn gen_scalar(&self, gen: usize) -> RingPair {
        [self.coords[0][gen].clone(), self.coords[1][gen].clone()]
    }
}

impl RingCtx {
    pub fn elt_add(&self, a: &Elt, b: &Elt) -> Elt {
        let mut out = a.clone();
        for (slot, rhs) in out.coords.iter_mut().zip(&b.coords) {
            for (coord, r) in slot.iter_mut().zip(rhs) {
                *coord = self.add(coord, r);
            }
        }
        out
    }

    pub fn elt_sub(&self, a: &Elt, b: &Elt) -> Elt {
        let mut out = a.clone();
        for (slot, rhs) in out.coords.iter_mut().zip(&b.coords) {
            for (coord, r) in slot.iter_mut().zip(rhs) {
                *coord = self.sub(coord, r);
            }
        }
        out
    }

    /// Module action of a ring scalar: slot-wise polynomial multiplication.
    pub fn elt_scale(&self, a: &Elt, s: &RingPair) -> Elt {
        let mut out = a.clone();
        for (slot, scalar) in out.coords.iter_mut().zip(s) {
            for coord in slot.iter_mut() {
                *coord = self.mul(coord, scalar);
            }
        }
        out
    }

    /// Scalar from `k_E` (equal in both slots).
    pub fn elt_scale_field(&self, a: &Elt, s: Fp2) -> Elt {
        let mut out = a.clone();
        for slot in &mut out.coords {
            for coord in slot.iter_mut() {
                *coord = self.scale(coord, s);
            }
        }
        out
    }

    /// `φ` on a ring scalar: swap the slots and substitute `u ↦ u^p`.
    pub fn phi_scalar(&self, s: &RingPair) -> RingPair {
        [self.stretch_p(&s[1]), self.stretch_p(&s[0])]
    }

    /// Descent twist of a ring scalar for the group generator: `u ↦ ζu` in
    /// slot 1, `u ↦ ζ^p u` in slot 2.
    pub fn descent_scalar(&self, s: &RingPair, zeta: Fp2) -> RingPair {
        [
            self.twist_u(&s[0], zeta),
            self.twist_u(&s[1], self.fp2.frobenius(zeta)),
        ]
    }
}

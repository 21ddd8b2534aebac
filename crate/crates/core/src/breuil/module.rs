//! Finitely presented Breuil modules with tame descent data, and the
//! axiom checker.
//!
//! A module is given by finite data over `R = A × A`, `A = F_{p²}[u]/(u^N)`
//! with `N = e₂·p`:
//!
//! * a free rank (1 or 2 in practice, arbitrary here);
//! * generators of the submodule `Fil¹M`;
//! * the image of each `Fil¹` generator under `φ₁`;
//! * the image of each module generator under the descent action `ĝ₀` of
//!   the fixed generator `g₀` of the tame cyclic group of order `p² − 1`.
//!
//! `φ₁` extends `φ`-semilinearly (slot swap and `u ↦ u^p`), and `ĝ₀`
//! extends semilinearly for the twist `u ↦ ζu` / `u ↦ ζ^p u`; both
//! extensions are computed here, together with the checks that the data
//! actually defines a Breuil module with descent data:
//!
//! 1. `u^{e₂}·M ⊆ Fil¹M`;
//! 2. `φ₁(Fil¹M)` generates `M` (Nakayama: full rank mod `u`);
//! 3. `φ₁` is well defined on the given generators, i.e. kills the syzygy
//!    module of the `Fil¹` presentation;
//! 4. `ĝ₀` has order dividing `p² − 1` (the descent data is a group
//!    action of the cyclic group);
//! 5. `ĝ₀` preserves `Fil¹M`;
//! 6. `ĝ₀` commutes with `φ₁`.
//!
//! All checks are exact computations in the truncated ring; chain-ring
//! linear algebra (minimal-valuation pivots, Smith form for syzygies) keeps
//! them cheap at the ranks that occur.

use super::fp2::Fp2;
use super::ring::{Elt, Poly, RingCtx, RingPair};
use crate::error::{Error, Result};
use crate::tame::FieldParams;

/// Shared context: parameters, the coefficient field, the fixed root of
/// unity `ζ = ω₂(g₀)`, and the truncation order `N = e₂·p`.
pub struct BreuilCtx {
    params: FieldParams,
    pub ring: RingCtx,
}

/// Cap on the truncation order so accidental huge parameters fail fast
/// instead of allocating gigabytes.
const MAX_TRUNC: u64 = 4_000_000;

impl BreuilCtx {
    pub fn new(params: FieldParams) -> Result<Self> {
        let n = params.e2() * params.p();
        if n > MAX_TRUNC {
            return Err(Error::OutOfRange {
                what: "truncation order e2*p",
                lo: 1,
                hi: MAX_TRUNC,
                got: n,
            });
        }
        let fp2 = super::fp2::Fp2Ctx::new(params.p());
        Ok(BreuilCtx {
            params,
            ring: RingCtx::new(fp2, n as usize),
        })
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    /// Truncation order `N = e₂·p`.
    pub fn trunc(&self) -> usize {
        self.ring.n
    }

    pub fn zeta(&self) -> Fp2 {
        self.ring.fp2.zeta()
    }

    /// `ζ^k` with the exponent reduced mod `p² − 1`.
    pub fn zeta_pow(&self, k: i64) -> Fp2 {
        self.ring.fp2.zeta_pow(k)
    }
}

/// A finitely presented Breuil module with descent data.
#[derive(Clone, Debug)]
pub struct BreuilModule {
    rank: usize,
    fil_gens: Vec<Elt>,
    phi1_images: Vec<Elt>,
    descent_gens: Vec<Elt>,
}

/// A failed axiom, reported by the checker.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    /// `u^{e₂}·g_i` does not lie in `Fil¹M`.
    FiltrationTooSmall { gen: usize },
    /// The image of `φ₁` does not generate `M`.
    ImageDoesNotGenerate,
    /// `φ₁` does not kill a syzygy of the `Fil¹` presentation.
    PhiNotWellDefined { slot: usize, syzygy: usize },
    /// `ĝ₀^{p²−1}` is not the identity on a generator.
    DescentOrder { gen: usize },
    /// `ĝ₀` maps a `Fil¹` generator outside `Fil¹M`.
    DescentFiltration { fil_gen: usize },
    /// `ĝ₀ ∘ φ₁ ≠ φ₁ ∘ ĝ₀` on a `Fil¹` generator.
    DescentPhiCommutation { fil_gen: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::FiltrationTooSmall { gen } => {
                write!(f, "u^e2 * g_{gen} is not in Fil^1")
            }
            Violation::ImageDoesNotGenerate => write!(f, "image does not generate"),
            Violation::PhiNotWellDefined { slot, syzygy } => {
                write!(f, "phi_1 is inconsistent on syzygy {syzygy} of slot {slot}")
            }
            Violation::DescentOrder { gen } => {
                write!(f, "descent action has wrong order on g_{gen}")
            }
            Violation::DescentFiltration { fil_gen } => {
                write!(f, "descent action does not preserve Fil^1 (generator {fil_gen})")
            }
            Violation::DescentPhiCommutation { fil_gen } => {
                write!(f, "descent action does not commute with phi_1 (generator {fil_gen})")
            }
        }
    }
}

impl BreuilModule {
    /// Assembles a presentation; lengths must agree (`phi1_images` with
    /// `fil_gens`, `descent_gens` with the rank).
    pub fn new(
        rank: usize,
        fil_gens: Vec<Elt>,
        phi1_images: Vec<Elt>,
        descent_gens: Vec<Elt>,
    ) -> Self {
        assert_eq!(fil_gens.len(), phi1_images.len());
        assert_eq!(descent_gens.len(), rank);
        BreuilModule {
            rank,
            fil_gens,
            phi1_images,
            descent_gens,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn fil_gens(&self) -> &[Elt] {
        &self.fil_gens
    }

    /// Coordinates of `Fil¹` generators in one slot, as columns.
    fn slot_columns(&self, slot: usize) -> Vec<Vec<Poly>> {
        self.fil_gens
            .iter()
            .map(|e| e.coords[slot].clone())
            .collect()
    }

    /// Writes `target` as an `R`-combination of the `Fil¹` generators;
    /// `None` if it is not in `Fil¹M`.
    pub fn express_in_fil(&self, ctx: &BreuilCtx, target: &Elt) -> Option<Vec<RingPair>> {
        let k = self.fil_gens.len();
        let mut out: Vec<RingPair> = (0..k)
            .map(|_| [Poly::zero(ctx.trunc()), Poly::zero(ctx.trunc())])
            .collect();
        for (slot, target_slot) in target.coords.iter().enumerate() {
            let ech = Echelon::build(&ctx.ring, self.slot_columns(slot));
            let coefs = ech.reduce(&ctx.ring, target_slot.clone())?;
            for (t, c) in coefs.into_iter().enumerate() {
                out[t][slot] = c;
            }
        }
        Some(out)
    }

    /// `φ₁` of an element of `Fil¹M` (semilinear extension of the generator
    /// table); `None` if the element is not in `Fil¹M`.
    pub fn phi1_apply(&self, ctx: &BreuilCtx, target: &Elt) -> Option<Elt> {
        let coefs = self.express_in_fil(ctx, target)?;
        let mut acc = Elt::zero(ctx.trunc(), self.rank);
        for (t, s) in coefs.iter().enumerate() {
            let twisted = ctx.ring.phi_scalar(s);
            acc = ctx
                .ring
                .elt_add(&acc, &ctx.ring.elt_scale(&self.phi1_images[t], &twisted));
        }
        Some(acc)
    }

    /// `ĝ₀` of an arbitrary element (semilinear extension of the generator
    /// table by the `u ↦ ζu` twist).
    pub fn g0_apply(&self, ctx: &BreuilCtx, target: &Elt) -> Elt {
        let mut acc = Elt::zero(ctx.trunc(), self.rank);
        for i in 0..self.rank {
            let s = ctx.ring.descent_scalar(&target.gen_scalar(i), ctx.zeta());
            acc = ctx
                .ring
                .elt_add(&acc, &ctx.ring.elt_scale(&self.descent_gens[i], &s));
        }
        acc
    }

    /// Runs all six axiom checks; an empty list means the data is a Breuil
    /// module with descent data.
    pub fn check_axioms(&self, ctx: &BreuilCtx) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = ctx.trunc();
        let one = ctx.ring.fp2.one();
        let e2 = ctx.params().e2() as usize;

        // 1. u^{e2} M ⊆ Fil¹M.
        for i in 0..self.rank {
            let mut target = Elt::monomial(n, self.rank, i, e2, one);
            if e2 >= n {
                target = Elt::zero(n, self.rank); // u^{e2} = 0 here
            }
            if self.express_in_fil(ctx, &target).is_none() {
                out.push(Violation::FiltrationTooSmall { gen: i });
            }
        }

        // 2. phi_1(Fil¹M) generates M: full rank mod u in each slot.
        for slot in 0..2 {
            let const_cols: Vec<Vec<Fp2>> = self
                .phi1_images
                .iter()
                .map(|e| e.coords[slot].iter().map(|p| p.c[0]).collect())
                .collect();
            if rank_over_field(&ctx.ring, &const_cols, self.rank) < self.rank {
                out.push(Violation::ImageDoesNotGenerate);
                break;
            }
        }

        // 3. phi_1 kills the syzygies of the presentation.
        for slot in 0..2 {
            let syz = syzygy_generators(&ctx.ring, self.slot_columns(slot), self.rank);
            for (si, z) in syz.iter().enumerate() {
                let mut acc = Elt::zero(n, self.rank);
                for (t, zt) in z.iter().enumerate() {
                    let mut pair: RingPair = [Poly::zero(n), Poly::zero(n)];
                    pair[slot] = zt.clone();
                    let twisted = ctx.ring.phi_scalar(&pair);
                    acc = ctx
                        .ring
                        .elt_add(&acc, &ctx.ring.elt_scale(&self.phi1_images[t], &twisted));
                }
                if !acc.is_zero() {
                    out.push(Violation::PhiNotWellDefined { slot, syzygy: si });
                }
            }
        }

        // 4. The descent action has order dividing p^2 - 1.
        let q2 = ctx.params().q2();
        for i in 0..self.rank {
            let start = Elt::generator(n, self.rank, i, one);
            let mut x = start.clone();
            for _ in 0..q2 {
                x = self.g0_apply(ctx, &x);
            }
            if x != start {
                out.push(Violation::DescentOrder { gen: i });
            }
        }

        // 5 & 6. Descent preserves Fil¹ and commutes with phi_1.
        for (t, fgen) in self.fil_gens.iter().enumerate() {
            let moved = self.g0_apply(ctx, fgen);
            let Some(phi_of_moved) = self.phi1_apply(ctx, &moved) else {
                out.push(Violation::DescentFiltration { fil_gen: t });
                continue;
            };
            let phi_here = self
                .phi1_apply(ctx, fgen)
                .expect("fil generator lies in Fil^1");
            let moved_phi = self.g0_apply(ctx, &phi_here);
            if phi_of_moved != moved_phi {
                out.push(Violation::DescentPhiCommutation { fil_gen: t });
            }
        }

        out
    }
}

/// Column echelon form over the chain ring `A`, with tracking of each
/// column as a combination of the original generators.
struct Echelon {
    cols: Vec<Vec<Poly>>,
    track: Vec<Vec<Poly>>,
    /// `(row, col)` pairs, by increasing row.
    pivots: Vec<(usize, usize)>,
}

impl Echelon {
    // Elimination steps update one column in place against another at a
    // different index, so index loops are used throughout.
    #[allow(clippy::needless_range_loop)]
    fn build(ring: &RingCtx, mut cols: Vec<Vec<Poly>>) -> Echelon {
        let k = cols.len();
        let rank = cols.first().map(Vec::len).unwrap_or(0);
        let mut track: Vec<Vec<Poly>> = (0..k)
            .map(|j| {
                (0..k)
                    .map(|t| {
                        if t == j {
                            Poly::constant(ring.n, ring.fp2.one())
                        } else {
                            Poly::zero(ring.n)
                        }
                    })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut active: Vec<usize> = (0..k).collect();
        for row in 0..rank {
            // Minimal-valuation entry of this row among the active columns
            // divides every other entry of the row: it can serve as pivot.
            let Some(&jp) = active
                .iter()
                .filter(|&&j| !cols[j][row].is_zero())
                .min_by_key(|&&j| cols[j][row].valuation().unwrap())
            else {
                continue;
            };
            let pivot = cols[jp][row].clone();
            for &j in active.iter().filter(|&&j| j != jp) {
                if cols[j][row].is_zero() {
                    continue;
                }
                let q = ring
                    .divide_exact(&cols[j][row], &pivot)
                    .expect("pivot has minimal valuation in its row");
                for r in 0..rank {
                    let d = ring.mul(&q, &cols[jp][r]);
                    cols[j][r] = ring.sub(&cols[j][r], &d);
                }
                for t in 0..k {
                    let d = ring.mul(&q, &track[jp][t]);
                    track[j][t] = ring.sub(&track[j][t], &d);
                }
            }
            pivots.push((row, jp));
            active.retain(|&j| j != jp);
        }
        Echelon {
            cols,
            track,
            pivots,
        }
    }

    /// Reduces `target` against the echelon columns; on success returns the
    /// coefficients with respect to the *original* generators.
    #[allow(clippy::needless_range_loop)]
    fn reduce(&self, ring: &RingCtx, mut target: Vec<Poly>) -> Option<Vec<Poly>> {
        let k = self.track.len();
        let mut coefs = vec![Poly::zero(ring.n); k];
        for &(row, j) in &self.pivots {
            if target[row].is_zero() {
                continue;
            }
            let q = ring.divide_exact(&target[row], &self.cols[j][row])?;
            for r in 0..target.len() {
                let d = ring.mul(&q, &self.cols[j][r]);
                target[r] = ring.sub(&target[r], &d);
            }
            for t in 0..k {
                let d = ring.mul(&q, &self.track[j][t]);
                coefs[t] = ring.add(&coefs[t], &d);
            }
        }
        if target.iter().all(Poly::is_zero) {
            Some(coefs)
        } else {
            None
        }
    }
}

/// Generators of the syzygy module `{x : Σ x_j·col_j = 0}` of a family of
/// columns over `A`, via Smith normal form with column tracking.
// Pivoting reads and writes rows/columns of `d` and `track` at paired indices,
// so index loops are used throughout.
#[allow(clippy::needless_range_loop)]
fn syzygy_generators(ring: &RingCtx, cols: Vec<Vec<Poly>>, rank: usize) -> Vec<Vec<Poly>> {
    let k = cols.len();
    // d[r][j]: row-major copy of the matrix.
    let mut d: Vec<Vec<Poly>> = (0..rank)
        .map(|r| (0..k).map(|j| cols[j][r].clone()).collect())
        .collect();
    // Column tracker: c[j] expresses current column j in the original ones.
    let mut c: Vec<Vec<Poly>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|t| {
                    if t == j {
                        Poly::constant(ring.n, ring.fp2.one())
                    } else {
                        Poly::zero(ring.n)
                    }
                })
                .collect()
        })
        .collect();

    let steps = rank.min(k);
    let mut s = 0;
    while s < steps {
        // Global minimal-valuation entry of the remaining submatrix.
        let mut best: Option<(usize, usize, usize)> = None;
        for i in s..rank {
            for j in s..k {
                if let Some(v) = d[i][j].valuation() {
                    if best.map(|(_, _, bv)| v < bv).unwrap_or(true) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((bi, bj, _)) = best else { break };
        d.swap(s, bi);
        for row in d.iter_mut() {
            row.swap(s, bj);
        }
        c.swap(s, bj);
        let pivot = d[s][s].clone();
        // Clear the rest of row s by column operations (tracked)...
        for j in s + 1..k {
            if d[s][j].is_zero() {
                continue;
            }
            let q = ring
                .divide_exact(&d[s][j], &pivot)
                .expect("pivot has global minimal valuation");
            for i in 0..rank {
                let del = ring.mul(&q, &d[i][s]);
                d[i][j] = ring.sub(&d[i][j], &del);
            }
            for t in 0..k {
                let del = ring.mul(&q, &c[s][t]);
                c[j][t] = ring.sub(&c[j][t], &del);
            }
        }
        // ...and the rest of column s by row operations (untracked: row
        // operations do not change the column span relations).
        for i in s + 1..rank {
            if d[i][s].is_zero() {
                continue;
            }
            let q = ring
                .divide_exact(&d[i][s], &pivot)
                .expect("pivot has global minimal valuation");
            for j in 0..k {
                let del = ring.mul(&q, &d[s][j]);
                d[i][j] = ring.sub(&d[i][j], &del);
            }
        }
        s += 1;
    }

    // Kernel of the diagonal form: u^{N - v_t} on each pivot, everything on
    // the zero columns; push through the tracker.
    let mut out = Vec::new();
    for t in 0..s {
        let v = d[t][t].valuation().expect("pivot is nonzero");
        if v > 0 {
            out.push(
                c[t].iter()
                    .map(|poly| ring.shift_up(poly, ring.n - v))
                    .collect(),
            );
        }
        // v == 0: the pivot is a unit, u^N * col = 0 identically — skip.
    }
    for j in s..k {
        out.push(c[j].clone());
    }
    out
}

/// Rank over `F_{p²}` of a matrix given by columns of field scalars.
#[allow(clippy::needless_range_loop)]
fn rank_over_field(ring: &RingCtx, cols: &[Vec<Fp2>], rows: usize) -> usize {
    let f = &ring.fp2;
    let mut mat: Vec<Vec<Fp2>> = cols.to_vec();
    let mut rank = 0;
    for row in 0..rows {
        let Some(jp) = (rank..mat.len()).find(|&j| !f.is_zero(mat[j][row])) else {
            continue;
        };
        mat.swap(rank, jp);
        let inv = f.inv(mat[rank][row]);
        for j in 0..mat.len() {
            if j == rank || f.is_zero(mat[j][row]) {
                continue;
            }
            let q = f.mul(mat[j][row], inv);
            for r in 0..rows {
                let d = f.mul(q, mat[rank][r]);
                mat[j][r] = f.sub(mat[j][r], d);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

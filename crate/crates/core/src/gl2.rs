//! Irreducible mod-p weights of `GL₂(F_p)` and tame inertial types.
//!
//! The irreducible `F̄_p`-representations of `GL₂(F_p)` are
//!
//! ```text
//! σ_{m,n} = det^m ⊗ Sym^n F̄_p²,   0 ≤ m < p − 1,  0 ≤ n ≤ p − 1,
//! ```
//!
//! of dimension `n + 1`.  Tame inertial types come in three flavours —
//! principal series `χ₁ ⊕ χ₂` with `χ₁ ≠ χ₂` both niveau 1, scalar
//! `χ ⊕ χ`, and cuspidal `χ ⊕ χ^p` with `χ` of niveau 2 not fixed by
//! Frobenius — and each has an attached finite `GL₂(F_p)`-representation
//! whose Jordan–Hölder factors this module computes:
//!
//! | type                  | JH factors                                        |
//! |-----------------------|---------------------------------------------------|
//! | scalar `ω̃^m`          | `σ_{m,0}`                                         |
//! | twisted Steinberg     | `σ_{m,p−1}`                                       |
//! | `I(ω̃^{m₁}, ω̃^{m₂})`   | `σ_{m₂,{m₁−m₂}}` and `σ_{m₁,{m₂−m₁}}`             |
//! | cuspidal, `χ ↦ i, j`  | `σ_{1+j,i−2}` and `σ_{i+j,p−1−i}` (see below)     |
//!
//! where `{m}` denotes the representative of `m` in `(0, p−1)`.  In the
//! cuspidal row the niveau-2 exponent of `χ` is written `i + (p+1)j` with
//! `1 ≤ i ≤ p`; both factors occur when `1 < i < p`, while for `i = p` only
//! the first and for `i = 1` only the second survives, each degenerating to
//! `σ_{1+j,p−2}`.

use crate::error::{Error, Result};
use crate::tame::{FieldParams, Niveau2Char};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// The irreducible representation `det^m ⊗ Sym^n` with `0 ≤ m < p − 1`,
/// `0 ≤ n ≤ p − 1`.
///
/// Note that `n` is a genuine integer, not a residue: `σ_{m,0}` and
/// `σ_{m,p−1}` are distinct (non-isomorphic) weights.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SerreWeight {
    m: u64,
    n: u64,
}

impl SerreWeight {
    /// Builds `σ_{m,n}`, reducing `m` mod `p − 1` and validating
    /// `0 ≤ n ≤ p − 1`.
    pub fn new(params: &FieldParams, m: i64, n: u64) -> Result<Self> {
        if n > params.q1() {
            return Err(Error::SymDegreeOutOfRange(n));
        }
        Ok(SerreWeight {
            m: params.residue1(m),
            n,
        })
    }

    /// Twist exponent `m` of the determinant factor.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// Degree `n` of the symmetric power.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `dim σ_{m,n} = n + 1`.
    pub fn dim(&self) -> u64 {
        self.n + 1
    }
}

impl std::fmt::Display for SerreWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "sigma_({},{})", self.m, self.n)
    }
}

// Weights travel through reports as two-element arrays `[m, n]`.
impl Serialize for SerreWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.m, self.n).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SerreWeight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (m, n) = <(u64, u64)>::deserialize(d)?;
        Ok(SerreWeight { m, n })
    }
}

/// A tame inertial type `χ₁ ⊕ χ₂`, stored in canonical form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum InertialType {
    /// `ω̃^{m₁} ⊕ ω̃^{m₂}` with `m₁ ≢ m₂`; canonicalized so `m1 < m2`.
    PrincipalSeries { m1: u64, m2: u64 },
    /// `ω̃^m ⊕ ω̃^m`.
    Scalar { m: u64 },
    /// `χ ⊕ χ^p` with `χ` of niveau 2, canonicalized by the smaller of the
    /// two conjugate exponents; the `(i, j)` coordinates are recomputed on
    /// demand by [`InertialType::cuspidal_ij`].
    Cuspidal { exp: u64 },
}

impl InertialType {
    /// Scalar type `ω̃^m ⊕ ω̃^m`.
    pub fn scalar(params: &FieldParams, m: i64) -> Self {
        InertialType::Scalar {
            m: params.residue1(m),
        }
    }

    /// Principal series `ω̃^{m₁} ⊕ ω̃^{m₂}`; the two characters must be
    /// distinct mod `p − 1`.
    pub fn principal_series(params: &FieldParams, m1: i64, m2: i64) -> Result<Self> {
        let (a, b) = (params.residue1(m1), params.residue1(m2));
        if a == b {
            return Err(Error::EqualCharacters(a));
        }
        Ok(InertialType::PrincipalSeries {
            m1: a.min(b),
            m2: a.max(b),
        })
    }

    /// Cuspidal type attached to the niveau-2 character with the given
    /// exponent; rejects Frobenius-fixed exponents.
    pub fn cuspidal(params: &FieldParams, exp: i64) -> Result<Self> {
        let c = Niveau2Char::new(params, exp);
        if c.is_frobenius_fixed(params) {
            return Err(Error::FrobeniusFixed(c.exp()));
        }
        let conj = c.frobenius(params);
        Ok(InertialType::Cuspidal {
            exp: c.exp().min(conj.exp()),
        })
    }

    /// Cuspidal type from coordinates `(i, j)`, meaning the character of
    /// exponent `i + (p+1)j` with `1 ≤ i ≤ p`.
    pub fn cuspidal_from_ij(params: &FieldParams, i: u64, j: i64) -> Result<Self> {
        if i < 1 || i > params.p() {
            return Err(Error::CuspidalParameter(i));
        }
        let exp = i as i64 + (params.p() as i64 + 1) * j;
        InertialType::cuspidal(params, exp)
    }

    /// Recovers the `(i, j)` coordinates of the canonical exponent: the
    /// unique `1 ≤ i ≤ p`, `0 ≤ j < p − 1` with `exp ≡ i + (p+1)j`.
    ///
    /// Because the stored exponent is not divisible by `p + 1`, the residue
    /// `i = exp mod (p+1)` lies in `[1, p]` and `j = (exp − i)/(p+1)`.
    pub fn cuspidal_ij(&self, params: &FieldParams) -> Option<(u64, u64)> {
        match self {
            InertialType::Cuspidal { exp } => {
                let i = exp % (params.p() + 1);
                debug_assert!(i >= 1);
                let j = ((exp - i) / (params.p() + 1)) % params.q1();
                Some((i, j))
            }
            _ => None,
        }
    }

    /// Exponent of the determinant character `det τ = χ₁χ₂` as a power of
    /// `ω` (the determinant of a tame type is always niveau 1).
    pub fn det_exponent(&self, params: &FieldParams) -> u64 {
        match self {
            InertialType::PrincipalSeries { m1, m2 } => params.residue1((m1 + m2) as i64),
            InertialType::Scalar { m } => params.residue1(2 * *m as i64),
            InertialType::Cuspidal { exp } => {
                // chi * chi^p = omega_{s1}^{(p+1) exp}, always niveau 1.
                Niveau2Char::new(params, (exp * (params.p() + 1)) as i64)
                    .restrict_niveau1(params)
                    .expect("(p+1) * exp is divisible by p+1")
                    .exp()
            }
        }
    }
}

impl std::fmt::Display for InertialType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InertialType::PrincipalSeries { m1, m2 } => write!(f, "ps({m1},{m2})"),
            InertialType::Scalar { m } => write!(f, "scalar({m})"),
            InertialType::Cuspidal { exp } => write!(f, "cuspidal({exp})"),
        }
    }
}

/// Representative of a nonzero residue class in the open interval
/// `(0, p − 1)`; errors on the zero class.
pub fn nonzero_rep(params: &FieldParams, k: i64) -> Result<u64> {
    let r = params.residue1(k);
    if r == 0 {
        return Err(Error::ZeroResidue(k));
    }
    Ok(r)
}

/// Jordan–Hölder factors (with multiplicity, sorted) of the finite
/// `GL₂(F_p)`-representation attached to a tame type.
pub fn jh_factors(params: &FieldParams, t: &InertialType) -> Result<Vec<SerreWeight>> {
    let mut out = match *t {
        InertialType::Scalar { m } => vec![SerreWeight::new(params, m as i64, 0)?],
        InertialType::PrincipalSeries { m1, m2 } => {
            let d12 = nonzero_rep(params, m1 as i64 - m2 as i64)?;
            let d21 = nonzero_rep(params, m2 as i64 - m1 as i64)?;
            vec![
                SerreWeight::new(params, m2 as i64, d12)?,
                SerreWeight::new(params, m1 as i64, d21)?,
            ]
        }
        InertialType::Cuspidal { .. } => {
            let (i, j) = t.cuspidal_ij(params).expect("cuspidal");
            let p = params.p();
            let mut v = Vec::new();
            if i != 1 {
                v.push(SerreWeight::new(params, 1 + j as i64, i - 2)?);
            }
            if i != p {
                v.push(SerreWeight::new(params, (i + j) as i64, p - 1 - i)?);
            }
            v
        }
    };
    out.sort();
    Ok(out)
}

/// The Steinberg-twist factor: `sp ⊗ ω̃^m` contributes `σ_{m,p−1}`.
pub fn steinberg_factor(params: &FieldParams, m: i64) -> Result<SerreWeight> {
    SerreWeight::new(params, m, params.q1())
}

/// The companion weight `σ_{m+n, p−1−n}`; an involution on weights.
///
/// `σ_{m,n}` and its companion are exactly the two Jordan–Hölder factors
/// that a weight shares a Barsotti–Tate type with.
pub fn companion(params: &FieldParams, w: &SerreWeight) -> SerreWeight {
    SerreWeight::new(params, (w.m() + w.n()) as i64, params.q1() - w.n())
        .expect("p-1-n is in range")
}

/// Sub and quotient of the mod-p reduction of the induced representation
/// attached to `Sym^n` for `0 < n < p − 1`: the short exact sequence
/// has sub `σ_{0,n}` and quotient `σ_{n,p−1−n}`.
pub fn induction_factors(params: &FieldParams, n: u64) -> Result<(SerreWeight, SerreWeight)> {
    if n == 0 || n >= params.q1() {
        return Err(Error::OutOfRange {
            what: "n",
            lo: 1,
            hi: params.q1() - 1,
            got: n,
        });
    }
    Ok((
        SerreWeight::new(params, 0, n)?,
        SerreWeight::new(params, n as i64, params.q1() - n)?,
    ))
}

/// The Barsotti–Tate (principal series or scalar) type `ω̃^{m+n} ⊕ ω̃^m`
/// attached to the weight `σ_{m,n}`.
///
/// The type is scalar exactly when `n ≡ 0 mod p − 1`, i.e. `n ∈ {0, p−1}`.
pub fn bt_type(params: &FieldParams, w: &SerreWeight) -> InertialType {
    if w.n().is_multiple_of(params.q1()) {
        InertialType::scalar(params, w.m() as i64)
    } else {
        InertialType::principal_series(params, (w.m() + w.n()) as i64, w.m() as i64)
            .expect("n is nonzero mod p-1")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, e: u64) -> FieldParams {
        FieldParams::new(p, e).unwrap()
    }

    fn w(params: &FieldParams, m: i64, n: u64) -> SerreWeight {
        SerreWeight::new(params, m, n).unwrap()
    }

    #[test]
    fn weight_validation() {
        let pr = params(5, 1);
        assert_eq!(w(&pr, 6, 1).m(), 2); // m reduced mod 4
        assert!(SerreWeight::new(&pr, 0, 5).is_err()); // n > p-1
        assert_ne!(w(&pr, 0, 0), w(&pr, 0, 4)); // trivial != Steinberg
    }

    #[test]
    fn nonzero_rep_picks_open_interval() {
        let pr = params(5, 1);
        assert_eq!(nonzero_rep(&pr, -2).unwrap(), 2);
        assert_eq!(nonzero_rep(&pr, 7).unwrap(), 3);
        assert_eq!(nonzero_rep(&pr, 4), Err(Error::ZeroResidue(4)));
    }

    #[test]
    fn nonzero_rep_complements_sum_to_p_minus_one() {
        let pr = params(11, 1);
        for k in 1..pr.q1() as i64 {
            assert_eq!(
                nonzero_rep(&pr, k).unwrap() + nonzero_rep(&pr, -k).unwrap(),
                pr.q1()
            );
        }
    }

    #[test]
    fn principal_series_factors() {
        let pr = params(5, 1);
        let t = InertialType::principal_series(&pr, 3, 1).unwrap();
        assert_eq!(
            jh_factors(&pr, &t).unwrap(),
            vec![w(&pr, 1, 2), w(&pr, 3, 2)]
        );
    }

    #[test]
    fn scalar_factor_is_one_dimensional() {
        let pr = params(5, 1);
        let t = InertialType::scalar(&pr, 2);
        assert_eq!(jh_factors(&pr, &t).unwrap(), vec![w(&pr, 2, 0)]);
    }

    #[test]
    fn cuspidal_degenerate_at_i_equals_p() {
        let pr = params(5, 1);
        let t = InertialType::cuspidal_from_ij(&pr, 5, 0).unwrap();
        assert_eq!(jh_factors(&pr, &t).unwrap(), vec![w(&pr, 1, 3)]);
    }

    #[test]
    fn cuspidal_degenerate_at_i_equals_one() {
        let pr = params(5, 1);
        let t = InertialType::cuspidal_from_ij(&pr, 1, 0).unwrap();
        assert_eq!(jh_factors(&pr, &t).unwrap(), vec![w(&pr, 1, 3)]);
    }

    #[test]
    fn cuspidal_factors_ignore_conjugate_presentation() {
        // chi and chi^p present the same type with different (i, j); the
        // factor multiset must not depend on the choice.
        for p in [3u64, 5, 7, 11] {
            let pr = params(p, 1);
            for i in 1..=p {
                for j in 0..pr.q1() {
                    let exp = (i + (p + 1) * j) as i64;
                    let t1 = InertialType::cuspidal(&pr, exp).unwrap();
                    let t2 =
                        InertialType::cuspidal(&pr, exp * p as i64).unwrap();
                    assert_eq!(t1, t2);
                    assert_eq!(jh_factors(&pr, &t1), jh_factors(&pr, &t2));
                }
            }
        }
    }

    #[test]
    fn cuspidal_rejects_frobenius_fixed() {
        let pr = params(3, 1);
        assert_eq!(
            InertialType::cuspidal(&pr, 4),
            Err(Error::FrobeniusFixed(4))
        );
        assert_eq!(InertialType::cuspidal(&pr, 0), Err(Error::FrobeniusFixed(0)));
    }

    #[test]
    fn jh_dimension_sums() {
        // scalar: 1; principal series: p+1; cuspidal: p-1.
        for p in [3u64, 5, 7] {
            let pr = params(p, 1);
            let s = InertialType::scalar(&pr, 1);
            assert_eq!(total_dim(&pr, &s), 1);
            let ps = InertialType::principal_series(&pr, 1, 0).unwrap();
            assert_eq!(total_dim(&pr, &ps), p + 1);
            for i in 1..=p {
                let c = InertialType::cuspidal_from_ij(&pr, i, 1).unwrap();
                assert_eq!(total_dim(&pr, &c), p - 1, "p={p} i={i}");
            }
        }
    }

    fn total_dim(pr: &FieldParams, t: &InertialType) -> u64 {
        jh_factors(pr, t).unwrap().iter().map(|w| w.dim()).sum()
    }

    #[test]
    fn companion_pair_example() {
        let pr = params(5, 1);
        assert_eq!(companion(&pr, &w(&pr, 0, 1)), w(&pr, 1, 3));
        assert_eq!(companion(&pr, &w(&pr, 1, 3)), w(&pr, 0, 1));
    }

    #[test]
    fn companion_is_involution() {
        for p in [3u64, 5, 7, 11] {
            let pr = params(p, 1);
            for m in 0..pr.q1() {
                for n in 0..=pr.q1() {
                    let x = w(&pr, m as i64, n);
                    assert_eq!(companion(&pr, &companion(&pr, &x)), x);
                }
            }
        }
    }

    #[test]
    fn induction_factors_example() {
        let pr = params(5, 1);
        assert_eq!(
            induction_factors(&pr, 1).unwrap(),
            (w(&pr, 0, 1), w(&pr, 1, 3))
        );
        assert!(induction_factors(&pr, 0).is_err());
        assert!(induction_factors(&pr, 4).is_err());
    }

    #[test]
    fn induction_factors_match_bt_type_jh() {
        // For 0 < n < p-1 the induced representation and the Barsotti-Tate
        // type of sigma_{0,n} have the same factor multiset.
        for p in [5u64, 7] {
            let pr = params(p, 1);
            for n in 1..pr.q1() {
                let (sub, quot) = induction_factors(&pr, n).unwrap();
                let mut expected = vec![sub, quot];
                expected.sort();
                let t = bt_type(&pr, &w(&pr, 0, n));
                assert_eq!(jh_factors(&pr, &t).unwrap(), expected);
            }
        }
    }

    #[test]
    fn bt_type_scalar_cases() {
        let pr = params(5, 1);
        assert_eq!(bt_type(&pr, &w(&pr, 0, 4)), InertialType::scalar(&pr, 0));
        assert_eq!(bt_type(&pr, &w(&pr, 2, 0)), InertialType::scalar(&pr, 2));
        assert_eq!(
            bt_type(&pr, &w(&pr, 0, 1)),
            InertialType::principal_series(&pr, 1, 0).unwrap()
        );
    }

    #[test]
    fn weight_and_companion_share_bt_type() {
        for p in [5u64, 7] {
            let pr = params(p, 1);
            for m in 0..pr.q1() {
                for n in 1..pr.q1() {
                    let x = w(&pr, m as i64, n);
                    let t = bt_type(&pr, &x);
                    let factors = jh_factors(&pr, &t).unwrap();
                    let mut expected = vec![x, companion(&pr, &x)];
                    expected.sort();
                    assert_eq!(factors, expected);
                }
            }
        }
    }

    #[test]
    fn det_exponent_of_types() {
        let pr = params(5, 1);
        let ps = InertialType::principal_series(&pr, 3, 1).unwrap();
        assert_eq!(ps.det_exponent(&pr), 0);
        let c = InertialType::cuspidal_from_ij(&pr, 2, 1).unwrap();
        // chi has exponent 2 + 6 = 8; det = omega^{8/(p+1) = ...}:
        // (p+1)*8 = 48 = 2*24, so omega^{8 mod 4} = omega^0... computed:
        assert_eq!(c.det_exponent(&pr), 0);
        let c2 = InertialType::cuspidal_from_ij(&pr, 3, 0).unwrap();
        assert_eq!(c2.det_exponent(&pr), 3); // exp 3, det omega^3
    }

    #[test]
    fn weight_serializes_as_pair() {
        let pr = params(5, 1);
        let x = w(&pr, 2, 1);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "[2,1]");
        let back: SerreWeight = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }
}

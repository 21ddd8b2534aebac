//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while validating inputs or running a
/// computation.  Invariant violations that mathematics forbids (as opposed to
/// bad user input) are reported through [`Error::Consistency`] and should be
/// treated as bugs.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("p must be an odd prime, got {0}")]
    InvalidPrime(u64),

    #[error("ramification index must satisfy 1 <= e <= {max}, got {e}")]
    InvalidRamification { e: u64, max: u64 },

    #[error("residue class of {0} mod p-1 is zero; no representative in (0, p-1)")]
    ZeroResidue(i64),

    #[error("principal series requires two distinct characters, both reduce to {0}")]
    EqualCharacters(u64),

    #[error("Frobenius-fixed exponent: not irreducible")]
    FrobeniusFixed(u64),

    #[error("cuspidal parameter i must lie in [1, p], got {0}")]
    CuspidalParameter(u64),

    #[error("weight index n must lie in [0, p-1], got {0}")]
    SymDegreeOutOfRange(u64),

    #[error("weight index n must lie in [0, p-2] here, got {0}")]
    SymDegreeNotGeneric(u64),

    #[error("witness x must lie in [1, e], got {0}")]
    WitnessOutOfRange(u64),

    #[error("{what} must lie in [{lo}, {hi}], got {got}")]
    OutOfRange {
        what: &'static str,
        lo: u64,
        hi: u64,
        got: u64,
    },

    #[error("congruence r = (p-1)*kappa mod (p^2-1) fails for kappa={kappa}, r={r}")]
    RankOneCongruence { kappa: u64, r: u64 },

    #[error("weight ({m},{n}) is not predicted for this inertial datum")]
    NotPredicted { m: u64, n: u64 },

    #[error("expected a reducible split inertial datum")]
    ExpectedReducible,

    #[error("expected an irreducible inertial datum")]
    ExpectedIrreducible,

    #[error("consistency fault: {0}")]
    Consistency(String),

    #[error("invalid inertial datum spec '{0}': expected 'red:a,b' or 'irr:c'")]
    InertiaSpec(String),
}

/// Shorthand used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

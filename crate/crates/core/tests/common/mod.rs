//! Shared helpers for the integration suites.
//!
//! The membership oracle here is deliberately primitive: it re-derives
//! predicted-set membership from the defining congruences using nothing
//! but remainder arithmetic on machine integers — no character types, no
//! canonicalization — so that agreement with the library is a genuine
//! cross-check rather than a tautology.
#![allow(dead_code)]

use std::process::{Command, Output};

/// Does `x` witness `σ_{m,n}` for the split datum `ω^a ⊕ ω^b`?  Raw form
/// of the matching rule: `{a, b} = {m+n+x, m+e−x}` as multisets mod `p−1`.
pub fn reducible_witnessed_at(p: u64, e: u64, a: u64, b: u64, m: u64, n: u64, x: u64) -> bool {
    if x < 1 || x > e {
        return false;
    }
    let q = p - 1;
    let up = (m + n + x) % q;
    let low = (m + e - x) % q;
    let (a, b) = (a % q, b % q);
    (up == a && low == b) || (up == b && low == a)
}

/// Does `x` witness `σ_{m,n}` for the niveau-two datum with exponent `c`?
/// Raw form: `(m+n+x) + p·(m+e−x) ∈ {c, pc}` mod `p²−1`.
pub fn irreducible_witnessed_at(p: u64, e: u64, c: u64, m: u64, n: u64, x: u64) -> bool {
    if x < 1 || x > e {
        return false;
    }
    let q = p * p - 1;
    let exp = ((m + n + x) + p * (m + e - x)) % q;
    exp == c % q || exp == (c * p) % q
}

/// Brute-force membership for the split datum: some `x ∈ [1, e]` works.
pub fn reducible_member(p: u64, e: u64, a: u64, b: u64, m: u64, n: u64) -> bool {
    (1..=e).any(|x| reducible_witnessed_at(p, e, a, b, m, n, x))
}

/// Brute-force membership for the niveau-two datum.
pub fn irreducible_member(p: u64, e: u64, c: u64, m: u64, n: u64) -> bool {
    (1..=e).any(|x| irreducible_witnessed_at(p, e, c, m, n, x))
}

/// Runs the command-line binary with the given arguments.
pub fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_serre-weights"))
        .args(args)
        .output()
        .expect("binary runs")
}

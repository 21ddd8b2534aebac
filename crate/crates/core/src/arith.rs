//! Small integer helpers: primality, factorization, modular powers.
//!
//! Everything here runs on desk-scale inputs (p a few dozen at most), so
//! trial division is plenty.

/// Trial-division primality test.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub(crate) fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `base^exp mod m` by square-and-multiply; `m` must fit in 32 bits so the
/// intermediate products stay inside `u64`.
pub(crate) fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    debug_assert!(m < (1 << 32));
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_on_small_numbers() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn factors_of_p_squared_minus_one() {
        assert_eq!(distinct_prime_factors(24), vec![2, 3]); // 5^2 - 1
        assert_eq!(distinct_prime_factors(48), vec![2, 3]); // 7^2 - 1
        assert_eq!(distinct_prime_factors(168), vec![2, 3, 7]); // 13^2 - 1
    }

    #[test]
    fn mod_pow_agrees_with_naive() {
        for b in 0..12u64 {
            let mut acc = 1u64;
            for e in 0..10u64 {
                assert_eq!(mod_pow(b, e, 97), acc);
                acc = acc * b % 97;
            }
        }
    }
}

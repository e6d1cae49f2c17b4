//! Small integer helpers.

use std::sync::atomic::{AtomicUsize, Ordering};

/// Default cap on closure enumeration.
pub const DEFAULT_CAP: usize = 5_000_000;

/// Environment variable overriding the default cap.
pub const CAP_ENV: &str = "SOLWEIGHTS_CAP";

static CAP: AtomicUsize = AtomicUsize::new(0);

/// The process-wide enumeration cap: explicit setting, then the environment, then the default.
pub fn cap() -> usize {
    let c = CAP.load(Ordering::Relaxed);
    if c != 0 {
        return c;
    }
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v: &usize| v > 0)
        .unwrap_or(DEFAULT_CAP)
}

pub fn set_cap(c: usize) {
    CAP.store(c, Ordering::Relaxed);
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == vec![n]
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    while n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Exact log base `p`, if `n` is a power of `p`.
pub fn log_exact(n: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    let mut m = n;
    while m > 1 {
        if !m.is_multiple_of(p) {
            return None;
        }
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_helpers() {
        assert_eq!(prime_factors(20160), vec![2, 3, 5, 7]);
        assert_eq!(p_part(20160, 2), 64);
        assert_eq!(log_exact(81, 3), Some(4));
        assert_eq!(log_exact(18, 3), None);
        assert!(is_prime(7) && !is_prime(9));
    }
}

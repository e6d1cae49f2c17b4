//! Quadratic extension tower over GF(5).
//!
//! Level `k` is GF(5^(2^k)). Level `k+1` adjoins `z_k` with `z_k^2 = w_k`,
//! where `w_0 = 2` and `w_{k+1} = z_k`, so `w_k` has multiplicative order
//! `2^(k+2)`. An element `a + b*z_k` of level `k+1` is packed as the integer
//! `a + b * 5^(2^k)`; the prime field sits at the bottom as `0..5`, and every
//! level embeds in the next without re-encoding.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Packed field element.
pub type Fe = u64;

/// Highest supported tower level (GF(5^16)).
pub const MAX_LEVEL: u32 = 4;

const TABLE_LEVEL: u32 = 2;

/// Number of elements at `level`.
pub const fn size(level: u32) -> u64 {
    let mut s = 5u64;
    let mut i = 0;
    while i < level {
        s *= s;
        i += 1;
    }
    s
}

fn split(level: u32, a: Fe) -> (Fe, Fe) {
    let h = size(level - 1);
    (a % h, a / h)
}

fn join(level: u32, a0: Fe, a1: Fe) -> Fe {
    a0 + a1 * size(level - 1)
}

fn add_raw(level: u32, a: Fe, b: Fe) -> Fe {
    if level == 0 {
        return (a + b) % 5;
    }
    let (a0, a1) = split(level, a);
    let (b0, b1) = split(level, b);
    join(level, add_raw(level - 1, a0, b0), add_raw(level - 1, a1, b1))
}

fn neg_raw(level: u32, a: Fe) -> Fe {
    if level == 0 {
        return (5 - a) % 5;
    }
    let (a0, a1) = split(level, a);
    join(level, neg_raw(level - 1, a0), neg_raw(level - 1, a1))
}

/// The designated `w_level` in packed form.
pub const fn omega(level: u32) -> Fe {
    if level == 0 {
        2
    } else {
        size(level - 1)
    }
}

fn mul_omega(level: u32, a: Fe) -> Fe {
    if level == 0 {
        return (2 * a) % 5;
    }
    // w_level = z_{level-1}: (a0 + a1 z) z = a1 w_{level-1} + a0 z
    let (a0, a1) = split(level, a);
    join(level, mul_omega(level - 1, a1), a0)
}

fn mul_raw(level: u32, a: Fe, b: Fe) -> Fe {
    if level == 0 {
        return (a * b) % 5;
    }
    let (a0, a1) = split(level, a);
    let (b0, b1) = split(level, b);
    let l = level - 1;
    let c0 = add_raw(l, mul_raw(l, a0, b0), mul_omega(l, mul_raw(l, a1, b1)));
    let c1 = add_raw(l, mul_raw(l, a0, b1), mul_raw(l, a1, b0));
    join(level, c0, c1)
}

fn inv_raw(level: u32, a: Fe) -> Fe {
    assert!(a != 0, "inverse of zero");
    if level == 0 {
        return [0, 1, 3, 2, 4][a as usize];
    }
    let (a0, a1) = split(level, a);
    let l = level - 1;
    let norm = add_raw(
        l,
        mul_raw(l, a0, a0),
        neg_raw(l, mul_omega(l, mul_raw(l, a1, a1))),
    );
    let ni = inv_raw(l, norm);
    join(level, mul_raw(l, a0, ni), mul_raw(l, neg_raw(l, a1), ni))
}

struct Tables {
    n: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

fn tables(level: u32) -> &'static Tables {
    static T: [OnceLock<Tables>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    T[level as usize].get_or_init(|| {
        let n = size(level) as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = add_raw(level, a as Fe, b as Fe) as u16;
                mul[a * n + b] = mul_raw(level, a as Fe, b as Fe) as u16;
            }
        }
        let neg = (0..n).map(|a| neg_raw(level, a as Fe) as u16).collect();
        let inv = (0..n)
            .map(|a| if a == 0 { 0 } else { inv_raw(level, a as Fe) as u16 })
            .collect();
        Tables { n, add, mul, neg, inv }
    })
}

/// One level of the tower, with table-driven arithmetic up to GF(625).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    level: u32,
}

impl FiniteField {
    pub fn new(level: u32) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(Error::Precondition(format!(
                "field level {level} exceeds {MAX_LEVEL}"
            )));
        }
        Ok(FiniteField { level })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn order(&self) -> u64 {
        size(self.level)
    }

    pub fn characteristic(&self) -> u64 {
        5
    }

    /// `w` at this level.
    pub fn omega(&self) -> Fe {
        omega(self.level)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.level <= TABLE_LEVEL {
            let t = tables(self.level);
            t.add[a as usize * t.n + b as usize] as Fe
        } else {
            add_raw(self.level, a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.level <= TABLE_LEVEL {
            tables(self.level).neg[a as usize] as Fe
        } else {
            neg_raw(self.level, a)
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if self.level <= TABLE_LEVEL {
            let t = tables(self.level);
            t.mul[a as usize * t.n + b as usize] as Fe
        } else {
            mul_raw(self.level, a, b)
        }
    }

    /// Panics on zero.
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a != 0, "inverse of zero");
        if self.level <= TABLE_LEVEL {
            tables(self.level).inv[a as usize] as Fe
        } else {
            inv_raw(self.level, a)
        }
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fe) -> u64 {
        assert!(a != 0);
        let n = self.order() - 1;
        let mut ord = n;
        for p in crate::util::prime_factors(n) {
            while ord.is_multiple_of(p) && self.pow(a, ord / p) == 1 {
                ord /= p;
            }
        }
        ord
    }

    pub fn is_square(&self, a: Fe) -> bool {
        a == 0 || self.pow(a, (self.order() - 1) / 2) == 1
    }

    /// Base-5 coefficients, lowest first.
    pub fn coeffs(&self, mut a: Fe) -> Vec<u8> {
        let n = 1usize << self.level;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push((a % 5) as u8);
            a /= 5;
        }
        out
    }

    pub fn from_coeffs(&self, c: &[u8]) -> Fe {
        c.iter().rev().fold(0, |acc, &d| acc * 5 + (d as Fe % 5))
    }

    /// Reduces a signed integer into the prime field.
    pub fn from_i64(&self, v: i64) -> Fe {
        v.rem_euclid(5) as Fe
    }
}

/// `F_q = GF(5^(2^l))`, `F_{q^2}` over it via `z^2 = w`, and the two marked elements.
#[derive(Clone, Debug)]
pub struct FieldTower {
    pub l: u32,
    pub fq: FiniteField,
    pub fq2: FiniteField,
    pub omega: Fe,
    pub z: Fe,
}

/// Builds the tower for `l <= 3` and checks irreducibility of `z^2 - w` and the order of `w`.
pub fn field_tower(l: u32) -> Result<FieldTower> {
    if l > 3 {
        return Err(Error::Precondition(format!("l = {l} > 3")));
    }
    let fq = FiniteField::new(l)?;
    let fq2 = FiniteField::new(l + 1)?;
    let omega = fq.omega();
    let z = size(l);
    if fq.is_square(omega) {
        return Err(Error::Internal("z^2 - w is reducible".into()));
    }
    let want = 1u64 << (l + 2);
    if fq.mult_order(omega) != want {
        return Err(Error::Internal("w has the wrong order".into()));
    }
    if fq2.mul(z, z) != omega {
        return Err(Error::Internal("z^2 != w".into()));
    }
    Ok(FieldTower { l, fq, fq2, omega, z })
}

/// Prime field GF(p) for the auxiliary characteristics 2 and 3 (and 5).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !crate::util::is_prime(p as u64) || p > 7 {
            return Err(Error::Precondition(format!("unsupported prime field GF({p})")));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.p - a % self.p) % self.p
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    /// Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        (1..self.p).find(|&b| self.mul(a, b) == 1).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level0_is_integers_mod_5() {
        let f = FiniteField::new(0).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(f.add(a, b), (a + b) % 5);
                assert_eq!(f.mul(a, b), (a * b) % 5);
            }
        }
        assert_eq!(f.mult_order(2), 4);
    }

    #[test]
    fn inverses_exhaustive_low_levels() {
        for level in 0..=2 {
            let f = FiniteField::new(level).unwrap();
            for a in 1..f.order() {
                assert_eq!(f.mul(a, f.inv(a)), 1, "level {level} a {a}");
            }
        }
    }

    #[test]
    fn table_and_raw_agree() {
        let f = FiniteField::new(2).unwrap();
        for a in (0..625).step_by(7) {
            for b in (0..625).step_by(11) {
                assert_eq!(f.mul(a, b), mul_raw(2, a, b));
                assert_eq!(f.add(a, b), add_raw(2, a, b));
            }
        }
    }

    #[test]
    fn towers_up_to_three() {
        for l in 0..=3 {
            let t = field_tower(l).unwrap();
            let ord = 1u64 << (l + 2);
            assert_eq!(t.fq.pow(t.omega, ord), 1);
            assert_ne!(t.fq.pow(t.omega, ord / 2), 1);
            assert_eq!(t.fq2.mult_order(t.z), 2 * ord);
        }
        assert!(field_tower(4).is_err());
    }

    #[test]
    fn small_prime_fields() {
        for p in [2u32, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
        assert!(PrimeField::new(4).is_err());
    }

    #[test]
    fn coefficient_roundtrip() {
        let f = FiniteField::new(3).unwrap();
        for a in [0u64, 1, 77, 390_624, 123_456] {
            assert_eq!(f.from_coeffs(&f.coeffs(a)), a);
        }
    }
}

//! Group elements: permutations, matrices over the GF(5) tower, and elements of
//! the wreath-type group built from three 2x2 blocks and a permutation of them.
//!
//! Products act on the right: `a.mul(b)` applies `a` first.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fe, FiniteField};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(Box<[u16]>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u16).collect())
    }

    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return Err(Error::Precondition("images do not form a permutation".into()));
            }
            seen[i as usize] = true;
        }
        Ok(Perm(images.into_boxed_slice()))
    }

    /// Zero-based cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut img: Vec<u16> = (0..n as u16).collect();
        for c in cycles {
            for k in 0..c.len() {
                img[c[k]] = c[(k + 1) % c.len()] as u16;
            }
        }
        Perm::from_images(img).expect("disjoint cycles")
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inv(&self) -> Perm {
        let mut out = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u16;
        }
        Perm(out.into_boxed_slice())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Nontrivial cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut j = self.image(s);
            while j != s {
                seen[j] = true;
                c.push(j);
                j = self.image(j);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// Lengths of nontrivial cycles, descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Perm {
    /// One-based cycle notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let s: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

/// Square matrix over one level of the tower, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Matrix {
    level: u8,
    dim: u8,
    e: Box<[Fe]>,
}

impl Matrix {
    pub fn new(level: u32, dim: usize, entries: Vec<Fe>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        let f = FiniteField::new(level).expect("level");
        assert!(entries.iter().all(|&x| x < f.order()));
        Matrix { level: level as u8, dim: dim as u8, e: entries.into_boxed_slice() }
    }

    pub fn identity(level: u32, dim: usize) -> Self {
        let mut e = vec![0; dim * dim];
        for i in 0..dim {
            e[i * dim + i] = 1;
        }
        Matrix::new(level, dim, e)
    }

    pub fn field(&self) -> FiniteField {
        FiniteField::new(self.level as u32).unwrap()
    }

    pub fn level(&self) -> u32 {
        self.level as u32
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn entry(&self, i: usize, j: usize) -> Fe {
        self.e[i * self.dim as usize + j]
    }

    pub fn entries(&self) -> &[Fe] {
        &self.e
    }

    /// Re-reads the same entries at a higher level (subfields embed verbatim).
    pub fn lift(&self, level: u32) -> Matrix {
        assert!(level >= self.level as u32);
        Matrix { level: level as u8, dim: self.dim, e: self.e.clone() }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert!(self.level == o.level && self.dim == o.dim, "matrix shape mismatch");
        let f = self.field();
        let n = self.dim as usize;
        let mut e = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = f.add(acc, f.mul(self.e[i * n + k], o.e[k * n + j]));
                }
                e[i * n + j] = acc;
            }
        }
        Matrix { level: self.level, dim: self.dim, e: e.into_boxed_slice() }
    }

    pub fn det(&self) -> Fe {
        let f = self.field();
        let n = self.dim as usize;
        let mut a: Vec<Fe> = self.e.to_vec();
        let mut det = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return 0;
            };
            if p != c {
                for k in 0..n {
                    a.swap(p * n + k, c * n + k);
                }
                det = f.neg(det);
            }
            let piv = a[c * n + c];
            det = f.mul(det, piv);
            let pinv = f.inv(piv);
            for r in c + 1..n {
                let factor = f.mul(a[r * n + c], pinv);
                if factor == 0 {
                    continue;
                }
                for k in c..n {
                    a[r * n + k] = f.sub(a[r * n + k], f.mul(factor, a[c * n + k]));
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; panics on singular input.
    pub fn inv(&self) -> Matrix {
        let f = self.field();
        let n = self.dim as usize;
        if n == 2 {
            let d = f.inv(self.det());
            let e = vec![
                f.mul(self.e[3], d),
                f.neg(f.mul(self.e[1], d)),
                f.neg(f.mul(self.e[2], d)),
                f.mul(self.e[0], d),
            ];
            return Matrix { level: self.level, dim: self.dim, e: e.into_boxed_slice() };
        }
        let mut a: Vec<Fe> = self.e.to_vec();
        let mut b: Vec<Fe> = Matrix::identity(self.level as u32, n).e.to_vec();
        for c in 0..n {
            let p = (c..n).find(|&r| a[r * n + c] != 0).expect("singular matrix");
            for k in 0..n {
                a.swap(p * n + k, c * n + k);
                b.swap(p * n + k, c * n + k);
            }
            let pinv = f.inv(a[c * n + c]);
            for k in 0..n {
                a[c * n + k] = f.mul(a[c * n + k], pinv);
                b[c * n + k] = f.mul(b[c * n + k], pinv);
            }
            for r in 0..n {
                if r == c || a[r * n + c] == 0 {
                    continue;
                }
                let factor = a[r * n + c];
                for k in 0..n {
                    a[r * n + k] = f.sub(a[r * n + k], f.mul(factor, a[c * n + k]));
                    b[r * n + k] = f.sub(b[r * n + k], f.mul(factor, b[c * n + k]));
                }
            }
        }
        Matrix { level: self.level, dim: self.dim, e: b.into_boxed_slice() }
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field();
        Matrix {
            level: self.level,
            dim: self.dim,
            e: self.e.iter().map(|&x| f.neg(x)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.level as u32, self.dim as usize)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim as usize;
        let rows: Vec<String> = (0..n)
            .map(|i| {
                let r: Vec<String> = (0..n).map(|j| self.entry(i, j).to_string()).collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// A 2x2 block, row-major, entries packed in a field of order at most 625.
pub type Block = [u16; 4];

fn block_mul(f: &FiniteField, a: &Block, b: &Block) -> Block {
    let m = |x: u16, y: u16| f.mul(x as Fe, y as Fe);
    let s = |x: Fe, y: Fe| f.add(x, y) as u16;
    [
        s(m(a[0], b[0]), m(a[1], b[2])),
        s(m(a[0], b[1]), m(a[1], b[3])),
        s(m(a[2], b[0]), m(a[3], b[2])),
        s(m(a[2], b[1]), m(a[3], b[3])),
    ]
}

fn block_inv(f: &FiniteField, a: &Block) -> Block {
    let det = f.sub(f.mul(a[0] as Fe, a[3] as Fe), f.mul(a[1] as Fe, a[2] as Fe));
    let d = f.inv(det);
    [
        f.mul(a[3] as Fe, d) as u16,
        f.neg(f.mul(a[1] as Fe, d)) as u16,
        f.neg(f.mul(a[2] as Fe, d)) as u16,
        f.mul(a[0] as Fe, d) as u16,
    ]
}

fn block_neg(f: &FiniteField, a: &Block) -> Block {
    [
        f.neg(a[0] as Fe) as u16,
        f.neg(a[1] as Fe) as u16,
        f.neg(a[2] as Fe) as u16,
        f.neg(a[3] as Fe) as u16,
    ]
}

/// Block-monomial element `[m1,m2,m3]` followed by a permutation of the three
/// blocks, taken modulo the central element `(-1,-1,-1)`. Block `i` of the
/// underlying 6x6 matrix sits in block column `p[i]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct KElem {
    level: u8,
    m: [Block; 3],
    p: [u8; 3],
}

impl KElem {
    /// Stores the lexicographically smaller of the two central representatives.
    pub fn new(level: u32, m: [Block; 3], p: [u8; 3]) -> Self {
        assert!(level <= 2, "block entries must fit a table-driven field");
        let mut s = [false; 3];
        for &i in &p {
            assert!((i as usize) < 3 && !s[i as usize], "not a permutation of 3 blocks");
            s[i as usize] = true;
        }
        let f = FiniteField::new(level).unwrap();
        let n = [block_neg(&f, &m[0]), block_neg(&f, &m[1]), block_neg(&f, &m[2])];
        let m = if n < m { n } else { m };
        KElem { level: level as u8, m, p }
    }

    pub fn identity(level: u32) -> Self {
        KElem::new(level, [[1, 0, 0, 1]; 3], [0, 1, 2])
    }

    /// Diagonal element from three 2x2 matrices.
    pub fn diag(a: &Matrix, b: &Matrix, c: &Matrix) -> Self {
        let lv = a.level();
        let blk = |x: &Matrix| -> Block {
            assert!(x.dim() == 2 && x.level() == lv);
            [x.e[0] as u16, x.e[1] as u16, x.e[2] as u16, x.e[3] as u16]
        };
        KElem::new(lv, [blk(a), blk(b), blk(c)], [0, 1, 2])
    }

    /// Pure block permutation: block `i` moves to position `p[i]`.
    pub fn perm(level: u32, p: [u8; 3]) -> Self {
        KElem::new(level, [[1, 0, 0, 1]; 3], p)
    }

    pub fn level(&self) -> u32 {
        self.level as u32
    }

    pub fn blocks(&self) -> &[Block; 3] {
        &self.m
    }

    pub fn block_perm(&self) -> [u8; 3] {
        self.p
    }

    pub fn block_matrix(&self, i: usize) -> Matrix {
        Matrix::new(self.level as u32, 2, self.m[i].iter().map(|&x| x as Fe).collect())
    }

    pub fn mul(&self, o: &KElem) -> KElem {
        debug_assert_eq!(self.level, o.level);
        let f = FiniteField::new(self.level as u32).unwrap();
        let mut m = [[0u16; 4]; 3];
        for (i, blk) in m.iter_mut().enumerate() {
            *blk = block_mul(&f, &self.m[i], &o.m[self.p[i] as usize]);
        }
        let p = [o.p[self.p[0] as usize], o.p[self.p[1] as usize], o.p[self.p[2] as usize]];
        KElem::new(self.level as u32, m, p)
    }

    pub fn inv(&self) -> KElem {
        let f = FiniteField::new(self.level as u32).unwrap();
        let mut pinv = [0u8; 3];
        for i in 0..3 {
            pinv[self.p[i] as usize] = i as u8;
        }
        let mut m = [[0u16; 4]; 3];
        for (i, blk) in m.iter_mut().enumerate() {
            *blk = block_inv(&f, &self.m[pinv[i] as usize]);
        }
        KElem::new(self.level as u32, m, pinv)
    }

    pub fn is_identity(&self) -> bool {
        *self == KElem::identity(self.level as u32)
    }

    /// Injective 125-bit code.
    pub fn key(&self) -> u128 {
        let mut k: u128 = 0;
        for blk in &self.m {
            for &x in blk {
                k = (k << 10) | x as u128;
            }
        }
        let pi = self.p[0] as u128 * 9 + self.p[1] as u128 * 3 + self.p[2] as u128;
        (k << 5) | pi
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = (0..3).map(|i| self.block_matrix(i).to_string()).collect();
        write!(f, "[{}]·({},{},{})", b.join(";"), self.p[0] + 1, self.p[1] + 1, self.p[2] + 1)
    }
}

/// Element of one of the supported kinds.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum GroupElement {
    Perm(Perm),
    Mat(Matrix),
    K(KElem),
}

impl GroupElement {
    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        match (self, o) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => GroupElement::Perm(a.mul(b)),
            (GroupElement::Mat(a), GroupElement::Mat(b)) => GroupElement::Mat(a.mul(b)),
            (GroupElement::K(a), GroupElement::K(b)) => GroupElement::K(a.mul(b)),
            _ => panic!("product of elements of different kinds"),
        }
    }

    pub fn inv(&self) -> GroupElement {
        match self {
            GroupElement::Perm(a) => GroupElement::Perm(a.inv()),
            GroupElement::Mat(a) => GroupElement::Mat(a.inv()),
            GroupElement::K(a) => GroupElement::K(a.inv()),
        }
    }

    pub fn identity_like(&self) -> GroupElement {
        match self {
            GroupElement::Perm(a) => GroupElement::Perm(Perm::identity(a.degree())),
            GroupElement::Mat(a) => GroupElement::Mat(Matrix::identity(a.level(), a.dim())),
            GroupElement::K(a) => GroupElement::K(KElem::identity(a.level())),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Perm(a) => a.is_identity(),
            GroupElement::Mat(a) => a.is_identity(),
            GroupElement::K(a) => a.is_identity(),
        }
    }

    /// Same kind and same ambient action (degree, dimension, field).
    pub fn compatible(&self, o: &GroupElement) -> bool {
        match (self, o) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => a.degree() == b.degree(),
            (GroupElement::Mat(a), GroupElement::Mat(b)) => {
                a.level() == b.level() && a.dim() == b.dim()
            }
            (GroupElement::K(a), GroupElement::K(b)) => a.level() == b.level(),
            _ => false,
        }
    }

    /// `g^-1 self g`.
    pub fn conj(&self, g: &GroupElement) -> GroupElement {
        g.inv().mul(self).mul(g)
    }

    /// `g^-1 self g` with `g^-1` supplied.
    #[inline]
    pub fn conj_with(&self, g: &GroupElement, g_inv: &GroupElement) -> GroupElement {
        g_inv.mul(self).mul(g)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &GroupElement, b: &GroupElement) -> GroupElement {
        a.inv().mul(&b.inv()).mul(a).mul(b)
    }

    pub fn pow(&self, e: i64) -> GroupElement {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.identity_like();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self);
            k += 1;
        }
        k
    }

    /// Injective integer code when one fits in 128 bits.
    pub fn exact_key(&self) -> Option<u128> {
        match self {
            GroupElement::Perm(p) if p.degree() <= 25 => {
                Some(p.images().iter().fold(0u128, |k, &i| (k << 5) | i as u128))
            }
            GroupElement::Mat(m) if m.dim() == 2 && m.level() <= 2 => {
                Some(m.entries().iter().fold(0u128, |k, &x| (k << 10) | x as u128))
            }
            GroupElement::K(k) => Some(k.key()),
            _ => None,
        }
    }

    pub fn as_perm(&self) -> Option<&Perm> {
        match self {
            GroupElement::Perm(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_mat(&self) -> Option<&Matrix> {
        match self {
            GroupElement::Mat(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_k(&self) -> Option<&KElem> {
        match self {
            GroupElement::K(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => p.fmt(f),
            GroupElement::Mat(m) => m.fmt(f),
            GroupElement::K(k) => k.fmt(f),
        }
    }
}

impl From<Perm> for GroupElement {
    fn from(p: Perm) -> Self {
        GroupElement::Perm(p)
    }
}

impl From<Matrix> for GroupElement {
    fn from(m: Matrix) -> Self {
        GroupElement::Mat(m)
    }
}

impl From<KElem> for GroupElement {
    fn from(k: KElem) -> Self {
        GroupElement::K(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_product_applies_left_first() {
        let a = Perm::from_cycles(3, &[&[0, 1]]);
        let b = Perm::from_cycles(3, &[&[1, 2]]);
        // 0 -> 1 -> 2
        assert_eq!(a.mul(&b).image(0), 2);
        assert!(a.mul(&a.inv()).is_identity());
        assert_eq!(a.mul(&b).to_string(), "(1,3,2)");
    }

    #[test]
    fn cycle_types() {
        let p = Perm::from_cycles(7, &[&[0, 1, 2], &[3, 4, 5]]);
        assert_eq!(p.cycle_type(), vec![3, 3]);
        assert!(p.is_even());
    }

    #[test]
    fn matrix_inverse_and_det() {
        let m = Matrix::new(1, 3, vec![1, 2, 0, 0, 1, 7, 3, 0, 1]);
        let i = m.inv();
        assert!(m.mul(&i).is_identity());
        let d = m.det();
        assert_ne!(d, 0);
    }

    #[test]
    fn kelem_canonical_sign() {
        let f = FiniteField::new(1).unwrap();
        let m1 = f.neg(1) as u16;
        let a = KElem::new(1, [[m1, 0, 0, m1], [m1, 0, 0, m1], [1, 0, 0, 1]], [0, 1, 2]);
        let b = KElem::new(1, [[1, 0, 0, 1], [1, 0, 0, 1], [m1, 0, 0, m1]], [0, 1, 2]);
        assert_eq!(a, b);
        let minus = KElem::new(1, [[m1, 0, 0, m1]; 3], [0, 1, 2]);
        assert!(minus.is_identity());
    }

    #[test]
    fn kelem_inverse_and_associativity() {
        let x = KElem::new(1, [[2, 0, 0, 3], [1, 0, 0, 1], [0, 4, 1, 0]], [1, 2, 0]);
        let y = KElem::new(1, [[1, 1, 0, 1], [0, 4, 1, 0], [2, 0, 0, 3]], [1, 0, 2]);
        let z = KElem::new(1, [[1, 0, 1, 1], [1, 0, 0, 1], [1, 2, 0, 1]], [0, 2, 1]);
        assert!(x.mul(&x.inv()).is_identity());
        assert!(x.inv().mul(&x).is_identity());
        assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }
}

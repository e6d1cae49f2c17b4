//! Exact linear algebra over GF(2) (bit-packed rows) and GF(p).

/// Dense matrix over GF(2) with rows packed into `u64` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// `self * other^T`: entry (i, j) is the parity of the AND of rows i and j.
    pub fn mul_transpose(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = BitMatrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                let par = self
                    .row(i)
                    .iter()
                    .zip(other.row(j))
                    .map(|(a, b)| (a & b).count_ones())
                    .sum::<u32>()
                    & 1;
                out.set(i, j, par == 1);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Rank by row reduction on packed words.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let w = self.words;
        let mut rank = 0;
        for c in 0..self.cols {
            let (wi, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..self.rows).find(|&r| m[r * w + wi] & bit != 0) else {
                continue;
            };
            if p != rank {
                for k in 0..w {
                    m.swap(p * w + k, rank * w + k);
                }
            }
            for r in 0..self.rows {
                if r != rank && m[r * w + wi] & bit != 0 {
                    for k in 0..w {
                        m[r * w + k] ^= m[rank * w + k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) as u8).collect())
            .collect()
    }
}

/// Dense matrix over GF(p), `p` prime and small.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = FpMatrix::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v.rem_euclid(p as i64) as u32);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn mul(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, o.rows);
        assert_eq!(self.p, o.p);
        let p = self.p as u64;
        let mut out = FpMatrix::zeros(self.p, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u64 * o.get(k, j) as u64;
                }
                out.data[i * o.cols + j] = (acc % p) as u32;
            }
        }
        out
    }

    pub fn sub(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&o.data) {
            *a = (*a + self.p - b) % self.p;
        }
        out
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let s: u64 = (0..self.cols).map(|j| self.get(i, j) as u64 * v[j] as u64).sum();
                (s % self.p as u64) as u32
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Stacks `self` on top of `o`.
    pub fn vstack(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        FpMatrix { p: self.p, rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            for k in 0..m.cols {
                m.data.swap(pr * m.cols + k, r * m.cols + k);
            }
            let inv = inv_mod(m.get(r, c), p);
            for k in 0..m.cols {
                let v = (m.get(r, k) as u64 * inv as u64 % p as u64) as u32;
                m.set(r, k, v);
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i != r && f != 0 {
                    for k in 0..m.cols {
                        let v = (m.get(i, k) + p - (f as u64 * m.get(r, k) as u64 % p as u64) as u32) % p;
                        m.set(i, k, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Basis of `{v : self v = 0}`, in reduced form (each vector has a 1 at a free column).
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        if self.rows == 0 {
            return (0..self.cols)
                .map(|i| {
                    let mut v = vec![0; self.cols];
                    v[i] = 1;
                    v
                })
                .collect();
        }
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let p = self.p;
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.cols];
                v[fc] = 1;
                for (i, &pc) in piv.iter().enumerate() {
                    v[pc] = (p - r.get(i, fc)) % p;
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut out = FpMatrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j));
            }
        }
        Some(out)
    }
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut nt, mut r, mut nr) = (0i64, 1i64, p as i64, a as i64 % p as i64);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    assert_eq!(r, 1, "not invertible mod p");
    t.rem_euclid(p as i64) as u32
}

/// Fixed subspace of a set of matrices acting on column vectors, as a reduced basis.
pub fn fixed_space(p: u32, dim: usize, gens: &[FpMatrix]) -> Vec<Vec<u32>> {
    let mut stacked = FpMatrix::zeros(p, 0, dim);
    for g in gens {
        stacked = stacked.vstack(&g.sub(&FpMatrix::identity(p, dim)));
    }
    canonical_basis(p, &stacked.kernel())
}

/// Row-reduced basis of the span of `vs`.
pub fn canonical_basis(p: u32, vs: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<i64>> = vs.iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect();
    let (r, piv) = FpMatrix::from_rows(p, &rows).rref();
    (0..piv.len())
        .map(|i| (0..r.cols).map(|j| r.get(i, j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_rank_small() {
        let mut m = BitMatrix::zeros(3, 3);
        for (r, c) in [(0, 0), (0, 1), (1, 1), (1, 2), (2, 0), (2, 2)] {
            m.set(r, c, true);
        }
        assert_eq!(m.rank(), 2);
        let mut wide = BitMatrix::zeros(2, 130);
        wide.set(0, 129, true);
        wide.set(1, 129, true);
        wide.set(1, 3, true);
        assert_eq!(wide.rank(), 2);
        assert_eq!(wide.mul_transpose(&wide).to_rows(), vec![vec![1, 1], vec![1, 0]]);
    }

    #[test]
    fn fp_kernel_and_inverse() {
        let m = FpMatrix::from_rows(3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(|&x| x == 0));
        let a = FpMatrix::from_rows(5, &[vec![2, 1], vec![1, 1]]);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai), FpMatrix::identity(5, 2));
        assert!(FpMatrix::from_rows(3, &[vec![1, 2], vec![2, 1]]).inverse().is_none());
    }

    #[test]
    fn fixed_space_of_swap() {
        let swap = FpMatrix::from_rows(3, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(fixed_space(3, 2, &[swap]), vec![vec![1, 1]]);
    }
}

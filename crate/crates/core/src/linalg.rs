//! Dense matrices over `F_p` with row reduction, rank, nullspace and solving.
//!
//! This is the workhorse of the oracle engine and of all degreewise
//! computations (Hom spaces, relation extraction). Everything is exact.

use crate::field;

#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u32>,
}

impl std::fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FpMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: Vec<Vec<u32>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let mut out = FpMatrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j) as u64;
                    out.set(i, j, ((cur + a * other.get(k, j) as u64) % p) as u32);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = field::add(self.p, self.data[i], other.data[i]);
        }
        out
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = field::mul(self.p, *v, c);
        }
        out
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = FpMatrix::zero(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            // swap rows r, pr
            if pr != r {
                for j in 0..self.cols {
                    let a = self.get(r, j);
                    self.set(r, j, self.get(pr, j));
                    self.set(pr, j, a);
                }
            }
            let inv = field::inv(p, self.get(r, c));
            for j in c..self.cols {
                self.set(r, j, field::mul(p, self.get(r, j), inv));
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) != 0 {
                    let f = self.get(i, c);
                    for j in c..self.cols {
                        let v = field::sub(p, self.get(i, j), field::mul(p, f, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace, one column vector per basis element.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = field::neg(p, m.get(ri, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = b`; returns any solution if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMatrix::zero(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i] % self.p);
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![0u32; self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(ri, self.cols);
        }
        Some(x)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = (acc + self.get(i, j) as u64 * v[j] as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    /// Does `v` lie in the column span of `self`?
    pub fn col_span_contains(&self, v: &[u32]) -> bool {
        self.solve(v).is_some()
    }

    /// Try to invert; `None` if singular.
    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = self.hcat(&FpMatrix::identity(self.p, n));
        let pivots = aug.rref();
        if pivots.len() != n {
            return None;
        }
        let mut inv = FpMatrix::zero(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// Columns spanning a complement-free generating set: returns indices of a
/// maximal linearly independent subset of the given column vectors.
pub fn independent_subset(p: u32, vectors: &[Vec<u32>], dim: usize) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut span = FpMatrix::zero(p, dim, 0);
    for (idx, v) in vectors.iter().enumerate() {
        if span.cols == 0 {
            if v.iter().any(|&x| x != 0) {
                span = column_matrix(p, &[v.clone()]);
                kept.push(idx);
            }
            continue;
        }
        if !span.col_span_contains(v) {
            let vm = column_matrix(p, &[v.clone()]);
            span = span.hcat(&vm);
            kept.push(idx);
        }
    }
    kept
}

pub fn column_matrix(p: u32, cols: &[Vec<u32>]) -> FpMatrix {
    let rows = cols.first().map_or(0, Vec::len);
    let mut m = FpMatrix::zero(p, rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        assert_eq!(c.len(), rows);
        for (i, &v) in c.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_rank_nullspace() {
        let m = FpMatrix::from_rows(5, vec![vec![1, 2, 3], vec![2, 4, 2], vec![3, 6, 4]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(m.apply(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = FpMatrix::from_rows(3, vec![vec![1, 1], vec![0, 1]]);
        let x = m.solve(&[2, 1]).unwrap();
        assert_eq!(m.apply(&x), vec![2, 1]);
        let sing = FpMatrix::from_rows(3, vec![vec![1, 1], vec![2, 2]]);
        assert!(sing.solve(&[0, 1]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = FpMatrix::from_rows(7, vec![vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(7, 2));
    }

    #[test]
    fn independent_subset_picks_basis() {
        let cols = vec![vec![1, 0], vec![2, 0], vec![0, 1], vec![1, 1]];
        let kept = independent_subset(5, &cols, 2);
        assert_eq!(kept, vec![0, 2]);
    }
}

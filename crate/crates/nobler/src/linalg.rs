//! Dense matrices over a small finite field.
//!
//! Entries are `Fel` indices into the field's enumeration; the field itself
//! is passed into every operation. Row elimination has a fast path for the
//! prime field of two elements, where a row operation is a plain xor.

use crate::field::{Fel, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fel>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fel>>) -> Matrix {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fel {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fel) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn row(&self, r: usize) -> &[Fel] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Fel> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn add(&self, f: &FiniteField, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, f: &FiniteField, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, f: &FiniteField, s: Fel) -> Matrix {
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, f: &FiniteField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let out_row = &mut out.data[r * other.cols..(r + 1) * other.cols];
                if f.q == 2 {
                    for (o, &b) in out_row.iter_mut().zip(orow) {
                        *o ^= b;
                    }
                } else {
                    for (o, &b) in out_row.iter_mut().zip(orow) {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &FiniteField, v: &[Fel]) -> Vec<Fel> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![0; self.rows];
        for r in 0..self.rows {
            let mut acc: Fel = 0;
            let row = self.row(r);
            for (&a, &x) in row.iter().zip(v) {
                if a != 0 && x != 0 {
                    acc = f.add(acc, f.mul(a, x));
                }
            }
            out[r] = acc;
        }
        out
    }

    pub fn pow(&self, f: &FiniteField, e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Kronecker product: (A ⊗ B)[(i1,i2),(j1,j2)] = A[i1,j1] B[i2,j2],
    /// with row-major pair ordering (i1 major).
    pub fn kron(&self, f: &FiniteField, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a == 0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if b != 0 {
                            out.set(
                                i1 * other.rows + i2,
                                j1 * other.cols + j2,
                                f.mul(a, b),
                            );
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal direct sum.
    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(ro + r, co + c, b.get(r, c));
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// In-place reduction to reduced row echelon form.
    /// Returns the pivot columns.
    pub fn rref(&mut self, f: &FiniteField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut piv = None;
            for i in r..self.rows {
                if self.get(i, c) != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(piv) = piv else { continue };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            if inv != 1 {
                for j in c..self.cols {
                    let v = f.mul(self.get(r, j), inv);
                    self.set(r, j, v);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                if f.q == 2 {
                    let (lo, hi) = if i < r { (i, r) } else { (r, i) };
                    let (top, bottom) = self.data.split_at_mut(hi * self.cols);
                    let src_row;
                    let dst_row;
                    if i < r {
                        dst_row = &mut top[lo * self.cols..(lo + 1) * self.cols];
                        src_row = &bottom[..self.cols];
                    } else {
                        src_row = &top[lo * self.cols..(lo + 1) * self.cols];
                        dst_row = &mut bottom[..self.cols];
                    }
                    for (d, &s) in dst_row[c..].iter_mut().zip(&src_row[c..]) {
                        *d ^= s;
                    }
                } else {
                    for j in c..self.cols {
                        let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// Basis of the right kernel, one column vector per basis element,
    /// in deterministic echelon order.
    pub fn kernel_basis(&self, f: &FiniteField) -> Vec<Vec<Fel>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix, or None if singular.
    pub fn inverse(&self, f: &FiniteField) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Some(inv)
    }

    /// One solution x of self * x = b, or None if inconsistent.
    pub fn solve(&self, f: &FiniteField, b: &[Fel]) -> Option<Vec<Fel>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None; // pivot in the constant column
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }

    /// Column-space basis as column vectors: the pivot columns of the
    /// original matrix, in echelon order.
    pub fn column_space_basis(&self, f: &FiniteField) -> Vec<Vec<Fel>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        pivots.iter().map(|&c| self.col(c)).collect()
    }

    /// Solve self · X = rhs for all columns of rhs at once; None if any
    /// column is inconsistent.
    pub fn solve_columns(&self, f: &FiniteField, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            for c in 0..rhs.cols {
                aug.set(r, self.cols + c, rhs.get(r, c));
            }
        }
        let pivots = aug.rref(f);
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(c, j, aug.get(r, self.cols + j));
            }
        }
        Some(x)
    }

    /// Horizontal concatenation.
    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        let rows = parts.first().map_or(0, |m| m.rows);
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            for r in 0..rows {
                for c in 0..m.cols {
                    out.set(r, off + c, m.get(r, c));
                }
            }
            off += m.cols;
        }
        out
    }

    /// Build a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Fel>], rows: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (i, &x) in v.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }
}

//! Dense exact-rational matrices.
//!
//! Small, deterministic linear algebra over `Q` used by every other module:
//! row reduction, rank, kernels, solves, Kronecker products and quotient
//! (cokernel) bookkeeping. Matrices are row-major `Vec<BigRational>`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMat { rows, cols, data }
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        QMat::from_fn(r, c, |i, j| rat(rows[i][j]))
    }

    /// Permutation matrix sending basis vector `j` to basis vector `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = QMat::zero(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, Rat::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.at(r, c).is_one()
                    } else {
                        self.at(r, c).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn neg(&self) -> QMat {
        QMat::from_fn(self.rows, self.cols, |r, c| -self.at(r, c).clone())
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + other.at(r, c))
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - other.at(r, c))
    }

    pub fn scale(&self, s: &Rat) -> QMat {
        QMat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = QMat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c) + a * b;
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    /// Apply to a column vector given as a slice.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Rat::zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.at(r, c);
                if a.is_zero() || v[c].is_zero() {
                    continue;
                }
                out[r] = &out[r] + a * &v[c];
            }
        }
        out
    }

    /// Kronecker product; block `(i,j)` of the result is `self[i][j] * other`.
    pub fn kron(&self, other: &QMat) -> QMat {
        let mut out = QMat::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.at(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i * other.rows + k, j * other.cols + l, a * b);
                    }
                }
            }
        }
        out
    }

    /// Stack vertically: `[self; other]`.
    pub fn vstack(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        QMat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Concatenate horizontally: `[self | other]`.
    pub fn hstack(&self, other: &QMat) -> QMat {
        assert_eq!(self.rows, other.rows);
        QMat::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// Overwrite the block with upper-left corner `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &QMat) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.at(r, c).clone());
            }
        }
    }

    pub fn column_matrix(&self, c: usize) -> QMat {
        QMat::from_fn(self.rows, 1, |r, _| self.at(r, c).clone())
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Rat>]) -> QMat {
        QMat::from_fn(rows, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn direct_sum(&self, other: &QMat) -> QMat {
        let mut out = QMat::zero(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.at(r, c).clone());
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // pick the first nonzero pivot, preferring +-1 entries
            let mut best: Option<usize> = None;
            for r in row..m.rows {
                if m.at(r, col).is_zero() {
                    continue;
                }
                if best.is_none() {
                    best = Some(r);
                }
                if m.at(r, col).abs().is_one() {
                    best = Some(r);
                    break;
                }
            }
            let Some(p) = best else { continue };
            m.swap_rows(row, p);
            let inv = {
                let piv = m.at(row, col).clone();
                piv.recip()
            };
            if !inv.is_one() {
                for c in col..m.cols {
                    if !m.at(row, c).is_zero() {
                        let v = m.at(row, c) * &inv;
                        m.set(row, c, v);
                    }
                }
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone();
                for c in col..m.cols {
                    if m.at(row, c).is_zero() {
                        continue;
                    }
                    let v = m.at(r, c) - &f * m.at(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Canonical (RREF-derived) basis of the kernel, returned as the columns
    /// of a `cols x k` matrix.
    pub fn kernel_basis(&self) -> QMat {
        let (r, pivots) = self.rref();
        let mut free: Vec<usize> = Vec::new();
        for c in 0..self.cols {
            if !pivots.contains(&c) {
                free.push(c);
            }
        }
        let mut out = QMat::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, Rat::one());
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, -r.at(pr, fc).clone());
            }
        }
        out
    }

    /// Canonical basis of the column space, as columns (the pivot columns of
    /// the original matrix re-expressed through RREF of the transpose for a
    /// deterministic echelon basis).
    pub fn column_space_basis(&self) -> QMat {
        let (r, pivots) = self.transpose().rref();
        // rows 0..rank of r are an echelon basis of the column space
        QMat::from_fn(self.rows, pivots.len(), |i, j| r.at(j, i).clone())
    }

    /// Solve `self * x = rhs` column-by-column. Returns `None` when some
    /// column is not in the image.
    pub fn solve(&self, rhs: &QMat) -> Option<QMat> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        // any pivot in the rhs block means inconsistency
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut out = QMat::zero(self.cols, rhs.cols);
        for (pr, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                out.set(pc, c, r.at(pr, self.cols + c).clone());
            }
        }
        Some(out)
    }

    pub fn inverse(&self) -> Option<QMat> {
        if self.rows != self.cols {
            return None;
        }
        let inv = self.solve(&QMat::identity(self.rows))?;
        if self.mul(&inv).is_identity() {
            Some(inv)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Canonical complement data for a subspace `U = span(columns of sub)` of
/// `Q^n`: a projection to coordinates on `Q^n / U` and a section.
pub struct Quotient {
    /// `(n - r) x n` matrix of the canonical projection.
    pub proj: QMat,
    /// `n x (n - r)` section picking representatives (standard basis vectors
    /// at the non-pivot coordinates).
    pub section: QMat,
    /// Dimension of the quotient.
    pub dim: usize,
}

/// Quotient of `Q^n` by the span of the columns of `sub`.
pub fn quotient_by_columns(n: usize, sub: &QMat) -> Quotient {
    assert_eq!(sub.rows(), n);
    let (r, pivots) = sub.transpose().rref();
    // rows of r: echelon basis of U in coordinates of Q^n; pivots are the
    // leading coordinates. Quotient coordinates: the non-pivot positions.
    let mut free: Vec<usize> = Vec::new();
    for c in 0..n {
        if !pivots.contains(&c) {
            free.push(c);
        }
    }
    let mut proj = QMat::zero(free.len(), n);
    for (k, &fc) in free.iter().enumerate() {
        proj.set(k, fc, Rat::one());
        // eliminate pivot coordinates: x - sum over pivot rows
        for (pr, &pc) in pivots.iter().enumerate() {
            // a vector with coordinate v_pc contributes -v_pc * r[pr][fc] at fc
            let coeff = -r.at(pr, fc).clone();
            if !coeff.is_zero() {
                proj.set(k, pc, coeff);
            }
        }
    }
    let mut section = QMat::zero(n, free.len());
    for (k, &fc) in free.iter().enumerate() {
        section.set(fc, k, Rat::one());
    }
    Quotient {
        dim: free.len(),
        proj,
        section,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_rank_kernel() {
        let m = QMat::from_rows_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let m = QMat::from_rows_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        let b = QMat::from_rows_i64(&[&[3], &[2]]);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul(&x), b);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = QMat::from_rows_i64(&[&[1, 2], &[2, 4]]);
        let b = QMat::from_rows_i64(&[&[1], &[3]]);
        assert!(m.solve(&b).is_none());
    }

    #[test]
    fn kron_dims_and_values() {
        let a = QMat::from_rows_i64(&[&[1, 2], &[0, 1]]);
        let b = QMat::from_rows_i64(&[&[3]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k.at(0, 1), &rat(6));
    }

    #[test]
    fn quotient_bookkeeping() {
        // U = span{(1,1,0)}; quotient is 2-dimensional
        let sub = QMat::from_rows_i64(&[&[1], &[1], &[0]]);
        let q = quotient_by_columns(3, &sub);
        assert_eq!(q.dim, 2);
        // the generator of U projects to zero
        let z = q.proj.mul(&sub);
        assert!(z.is_zero());
        // proj . section = identity on the quotient
        assert!(q.proj.mul(&q.section).is_identity());
    }

    #[test]
    fn column_space_basis_spans() {
        let m = QMat::from_rows_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        let b = m.column_space_basis();
        assert_eq!(b.cols(), 2);
        // every original column is solvable against the basis
        assert!(b.solve(&m).is_some());
    }
}

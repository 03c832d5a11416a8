//! Exact dense linear algebra over a prime field `F_p`.
//!
//! Matrices are row-major with entries reduced mod `p`. Every operation is
//! exact; there is no pivot tolerance anywhere. `p` may be any prime with
//! `2 <= p < 2^31`, so products of reduced entries fit in `u64`.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A prime field, carrying just the characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field {
    p: u64,
}

impl Field {
    pub fn new(p: u64) -> Result<Field> {
        if !(2..(1u64 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b { a - b } else { a + self.p - b }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 { 0 } else { self.p - a }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat; `a` must be nonzero mod `p`.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Dense matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    p: u64,
    data: Vec<u64>,
}

impl core::fmt::Debug for Mat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "Mat {}x{} mod {} [", self.rows, self.cols, self.p)?;
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

impl Mat {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Mat {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from raw entries (reduced mod `p`).
    pub fn from_entries(p: u64, rows: usize, cols: usize, entries: &[u64]) -> Result<Mat> {
        if entries.len() != rows * cols {
            return Err(Error::DimMismatch("from_entries"));
        }
        Ok(Mat { rows, cols, p, data: entries.iter().map(|&e| e % p).collect() })
    }

    /// Builds from signed entries, mapping negatives into `F_p`.
    pub fn from_signed(p: u64, rows: usize, cols: usize, entries: &[i64]) -> Result<Mat> {
        if entries.len() != rows * cols {
            return Err(Error::DimMismatch("from_signed"));
        }
        let pi = p as i64;
        Ok(Mat {
            rows,
            cols,
            p,
            data: entries.iter().map(|&e| (e.rem_euclid(pi)) as u64).collect(),
        })
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimMismatch("from_rows"));
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend(row.iter().map(|&e| e % p));
        }
        Ok(Mat { rows: r, cols: c, p, data })
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Mat {
        let mut m = Mat::zeros(p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// A column vector from a slice.
    pub fn col_vec(p: u64, v: &[u64]) -> Mat {
        Mat { rows: v.len(), cols: 1, p, data: v.iter().map(|&e| e % p).collect() }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn field(&self) -> Field {
        Field { p: self.p }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c));
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.check_same_shape(other, "add")?;
        let fp = self.field();
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| fp.add(a, b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, p: self.p, data })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.check_same_shape(other, "sub")?;
        let fp = self.field();
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| fp.sub(a, b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, p: self.p, data })
    }

    pub fn neg(&self) -> Mat {
        let fp = self.field();
        let data = self.data.iter().map(|&a| fp.neg(a)).collect();
        Mat { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn scale(&self, s: u64) -> Mat {
        let fp = self.field();
        let s = s % self.p;
        let data = self.data.iter().map(|&a| fp.mul(a, s)).collect();
        Mat { rows: self.rows, cols: self.cols, p: self.p, data }
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.p != other.p {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimMismatch("mul"));
        }
        let mut out = Mat::zeros(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let cur = out.at(r, c);
                    out.set(r, c, (cur + a * other.at(k, c)) % self.p);
                }
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &Mat, op: &'static str) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch(op));
        }
        Ok(())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        if self.p != other.p {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows {
            return Err(Error::DimMismatch("hstack"));
        }
        let mut out = Mat::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.at(r, c));
            }
        }
        Ok(out)
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        if self.p != other.p {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimMismatch("vstack"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat { rows: self.rows + other.rows, cols: self.cols, p: self.p, data })
    }

    pub fn hstack_all(p: u64, rows: usize, mats: &[&Mat]) -> Result<Mat> {
        let mut acc = Mat::zeros(p, rows, 0);
        for m in mats {
            acc = acc.hstack(m)?;
        }
        Ok(acc)
    }

    pub fn vstack_all(p: u64, cols: usize, mats: &[&Mat]) -> Result<Mat> {
        let mut acc = Mat::zeros(p, 0, cols);
        for m in mats {
            acc = acc.vstack(m)?;
        }
        Ok(acc)
    }

    pub fn block_diag(p: u64, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(p, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(ro + r, co + c, b.at(r, c));
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// Kronecker product; `(a ⊗ b)(x ⊗ y) = (a x) ⊗ (b y)` under the
    /// index convention `(i, j) ↦ i * b.rows + j`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.p, self.rows * other.rows, self.cols * other.cols);
        for ra in 0..self.rows {
            for ca in 0..self.cols {
                let a = self.at(ra, ca);
                if a == 0 {
                    continue;
                }
                for rb in 0..other.rows {
                    for cb in 0..other.cols {
                        let v = a * other.at(rb, cb) % self.p;
                        out.set(ra * other.rows + rb, ca * other.cols + cb, v);
                    }
                }
            }
        }
        out
    }

    /// Column-major vectorization as a column vector.
    pub fn vec_cols(&self) -> Mat {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.at(r, c));
            }
        }
        Mat { rows: self.rows * self.cols, cols: 1, p: self.p, data }
    }

    /// Inverse of [`Mat::vec_cols`].
    pub fn unvec_cols(p: u64, rows: usize, cols: usize, v: &Mat) -> Result<Mat> {
        if v.cols != 1 || v.rows != rows * cols {
            return Err(Error::DimMismatch("unvec_cols"));
        }
        let mut out = Mat::zeros(p, rows, cols);
        for c in 0..cols {
            for r in 0..rows {
                out.set(r, c, v.at(c * rows + r, 0));
            }
        }
        Ok(out)
    }

    pub fn col(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.at(r, c)).collect()
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.p, self.rows, idx.len());
        for (j, &c) in idx.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.at(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.p, idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, self.at(r, c));
            }
        }
        out
    }

    pub fn apply_to_col(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimMismatch("apply_to_col"));
        }
        let mut out = vec![0u64; self.rows];
        for r in 0..self.rows {
            let mut acc = 0u64;
            for c in 0..self.cols {
                acc = (acc + self.at(r, c) * (v[c] % self.p)) % self.p;
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let fp = self.field();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.at(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let (a, b) = (m.at(row, c), m.at(pr, c));
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let inv = fp.inv(m.at(row, col));
            for c in col..m.cols {
                m.set(row, c, fp.mul(m.at(row, c), inv));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.at(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = fp.sub(m.at(r, c), fp.mul(factor, m.at(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns spanning the kernel; the result has `cols - rank` columns.
    pub fn kernel_basis(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(self.p, self.cols, free.len());
        let fp = self.field();
        for (j, &fc) in free.iter().enumerate() {
            out.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(pc, j, fp.neg(r.at(i, fc)));
            }
        }
        out
    }

    /// A basis of the column space: the pivot columns of the original matrix.
    pub fn column_space_basis(&self) -> Mat {
        let (_, pivots) = self.rref();
        self.select_cols(&pivots)
    }

    /// Solves `self · x = rhs` for a matrix `x`, if consistent.
    pub fn solve(&self, rhs: &Mat) -> Result<Option<Mat>> {
        Ok(self.solve_affine(rhs)?.map(|s| s.particular))
    }

    /// Solves `self · x = rhs` returning a particular solution and the
    /// kernel, so callers can sample alternative solutions.
    pub fn solve_affine(&self, rhs: &Mat) -> Result<Option<AffineSolutions>> {
        if self.p != rhs.p {
            return Err(Error::FieldMismatch);
        }
        if self.rows != rhs.rows {
            return Err(Error::DimMismatch("solve"));
        }
        let aug = self.hstack(rhs)?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let fp = self.field();
        let mut x = Mat::zeros(self.p, self.cols, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, r.at(i, self.cols + c));
            }
        }
        // verify in debug builds; pivot bookkeeping errors are fatal
        debug_assert!({
            let prod = self.mul(&x).unwrap();
            prod.data.iter().zip(&rhs.data).all(|(&a, &b)| a == b % fp.p())
        });
        Ok(Some(AffineSolutions { particular: x, kernel: self.kernel_basis() }))
    }

    /// Inverse of a square matrix, if invertible.
    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let id = Mat::identity(self.p, self.rows);
        match self.solve(&id) {
            Ok(Some(x)) => {
                if self.mul(&x).ok()? == id && x.mul(self).ok()? == id {
                    Some(x)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Whether the columns of `other` lie in the column space of `self`.
    pub fn spans(&self, other: &Mat) -> bool {
        matches!(self.solve(other), Ok(Some(_)))
    }
}

/// Solution set of a linear system `A x = b`: one particular solution plus
/// a basis of `ker A`.
#[derive(Debug, Clone)]
pub struct AffineSolutions {
    pub particular: Mat,
    pub kernel: Mat,
}

/// Presentation of a quotient space `F_p^ambient / col(sub)`:
/// `proj ∘ sect = id` on the quotient and `ker proj = col(sub)`.
#[derive(Debug, Clone)]
pub struct QuotientMaps {
    pub proj: Mat,
    pub sect: Mat,
}

/// Quotient of the ambient space by the column space of `sub`, whose
/// columns must be independent.
pub fn quotient(p: u64, ambient: usize, sub: &Mat) -> Result<QuotientMaps> {
    if sub.rows != ambient {
        return Err(Error::DimMismatch("quotient"));
    }
    let k = sub.cols;
    if sub.rank() != k {
        return Err(Error::DependentColumns);
    }
    let id = Mat::identity(p, ambient);
    let aug = sub.hstack(&id)?;
    let (_, pivots) = aug.rref();
    // sub's columns come first, so all k of them are pivots
    let extra: Vec<usize> = pivots.iter().filter(|&&c| c >= k).map(|&c| c - k).collect();
    debug_assert_eq!(extra.len(), ambient - k);
    let basis = sub.hstack(&id.select_cols(&extra))?;
    let inv = basis.inverse().ok_or(Error::Internal("quotient basis not invertible"))?;
    let proj = inv.select_rows(&(k..ambient).collect::<Vec<_>>());
    let sect = basis.select_cols(&(k..ambient).collect::<Vec<_>>());
    Ok(QuotientMaps { proj, sect })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_rejects_composites() {
        assert!(Field::new(4).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(2).is_ok());
        assert!(Field::new(5).is_ok());
    }

    #[test]
    fn rref_rank_one_over_f2() {
        let m = Mat::from_entries(2, 2, 2, &[1, 1, 1, 1]).unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(r, Mat::from_entries(2, 2, 2, &[1, 1, 0, 0]).unwrap());
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn rref_empty() {
        let m = Mat::zeros(2, 0, 0);
        let (r, pivots) = m.rref();
        assert_eq!(r.rows, 0);
        assert_eq!(r.cols, 0);
        assert!(pivots.is_empty());
    }

    #[test]
    fn rref_mod_three() {
        // hand row-reduction: [[2,1],[1,2]] -> [[1,2],[0,0]] over F_3
        let m = Mat::from_entries(3, 2, 2, &[2, 1, 1, 2]).unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(r, Mat::from_entries(3, 2, 2, &[1, 2, 0, 0]).unwrap());
        assert_eq!(pivots, vec![0]);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let a = Mat::identity(5, 2);
        let b = Mat::from_entries(5, 2, 1, &[3, 4]).unwrap();
        assert_eq!(a.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn solve_underdetermined_validates() {
        let a = Mat::from_entries(2, 1, 2, &[1, 1]).unwrap();
        let b = Mat::from_entries(2, 1, 1, &[1]).unwrap();
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
    }

    #[test]
    fn solve_inconsistent() {
        let a = Mat::zeros(2, 2, 2);
        let b = Mat::from_entries(2, 2, 1, &[1, 0]).unwrap();
        assert!(a.solve(&b).unwrap().is_none());
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = Mat::identity(2, 3).kernel_basis();
        assert_eq!(k.cols, 0);
        assert_eq!(k.rows, 3);
    }

    #[test]
    fn kernel_of_zero_is_identity_sized() {
        let k = Mat::zeros(2, 2, 2).kernel_basis();
        assert_eq!(k.cols, 2);
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn kernel_enumeration_oracle_f2() {
        // enumerate F_2^2 by hand: kernel of [1 1] is {0, (1,1)}
        let a = Mat::from_entries(2, 1, 2, &[1, 1]).unwrap();
        let k = a.kernel_basis();
        assert_eq!(k.cols, 1);
        assert_eq!(k.col(0), vec![1, 1]);
    }

    #[test]
    fn quotient_by_nothing_is_identity() {
        let q = quotient(2, 3, &Mat::zeros(2, 3, 0)).unwrap();
        assert_eq!(q.proj, Mat::identity(2, 3));
        assert_eq!(q.sect, Mat::identity(2, 3));
    }

    #[test]
    fn quotient_kills_subspace() {
        let sub = Mat::from_entries(2, 2, 1, &[1, 0]).unwrap();
        let q = quotient(2, 2, &sub).unwrap();
        assert_eq!(q.proj.rows, 1);
        assert!(q.proj.mul(&sub).unwrap().is_zero());
        assert_eq!(q.proj.mul(&q.sect).unwrap(), Mat::identity(2, 1));
    }

    #[test]
    fn quotient_of_full_subspace_is_zero_dim() {
        let sub = Mat::identity(3, 2);
        let q = quotient(3, 2, &sub).unwrap();
        assert_eq!(q.proj.rows, 0);
    }

    #[test]
    fn quotient_rejects_dependent_columns() {
        let sub = Mat::from_entries(2, 2, 2, &[1, 1, 1, 1]).unwrap();
        assert!(matches!(quotient(2, 2, &sub), Err(Error::DependentColumns)));
    }

    #[test]
    fn kron_vec_identity() {
        // vec(A X B) = (B^T ⊗ A) vec(X), column-major
        let a = Mat::from_entries(5, 2, 2, &[1, 2, 3, 4]).unwrap();
        let x = Mat::from_entries(5, 2, 3, &[0, 1, 2, 3, 4, 0]).unwrap();
        let b = Mat::from_entries(5, 3, 2, &[1, 0, 2, 1, 0, 3]).unwrap();
        let lhs = a.mul(&x).unwrap().mul(&b).unwrap().vec_cols();
        let rhs = b.transpose().kron(&a).mul(&x.vec_cols()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Mat::from_entries(3, 2, 2, &[1, 1, 0, 2]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Mat::identity(3, 2));
    }
}

//! Dense matrices with deterministic exact row reduction.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::scalar::{Field, Scalar};

/// A dense row-major matrix over a fixed field.
///
/// Construction validates that every entry belongs to the matrix's field, so
/// arithmetic methods may assume field agreement (and panic if an internal
/// invariant is ever violated). Shape mismatches in arithmetic are likewise
/// programming errors and panic; fallible, data-driven operations (`solve`,
/// `inverse`, `new`) return `Result`/`Option` instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    /// Builds a matrix from row-major data, validating length and fields.
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix data has {} entries, expected {}x{} = {}",
                data.len(),
                rows,
                cols,
                rows * cols
            )));
        }
        for (i, s) in data.iter().enumerate() {
            if s.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "entry {} belongs to {}, matrix is over {}",
                    i,
                    s.field(),
                    field
                )));
            }
        }
        Ok(Mat {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    /// Builds a matrix from rows of vectors, validating shape and fields.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Mat> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has length {}, expected {}",
                    i,
                    r.len(),
                    cols
                )));
            }
            data.extend(r);
        }
        Mat::new(field, nrows, cols, data)
    }

    /// Test/corpus helper: builds a matrix from integer literals.
    ///
    /// Panics on ragged rows; intended for statically known data.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Mat {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert!(r.len() == ncols, "ragged integer matrix literal");
            for &x in *r {
                data.push(Scalar::from_i64(field, x));
            }
        }
        Mat {
            field,
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    /// A single column vector from a slice.
    pub fn column(field: Field, entries: &[Scalar]) -> Result<Mat> {
        Mat::new(field, entries.len(), 1, entries.to_vec())
    }

    /// A single row vector from a slice.
    pub fn row_vector(field: Field, entries: &[Scalar]) -> Result<Mat> {
        Mat::new(field, 1, entries.len(), entries.to_vec())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        assert!(
            v.field() == self.field,
            "matrix entry field mismatch: internal invariant violated"
        );
        self.data[i * self.cols + j] = v;
    }

    pub fn row_slice(&self, i: usize) -> &[Scalar] {
        assert!(i < self.rows, "row index out of range");
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col_vec(&self, j: usize) -> Vec<Scalar> {
        assert!(j < self.cols, "column index out of range");
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// All rows as owned vectors.
    pub fn rows_vec(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row_slice(i).to_vec()).collect()
    }

    /// All entries, row-major.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// The matrix flattened to a single row-major coordinate vector.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_same_shape(&self, other: &Mat, op: &str) {
        assert!(
            self.field == other.field && self.rows == other.rows && self.cols == other.cols,
            "{op}: shape or field mismatch ({}x{} over {} vs {}x{} over {})",
            self.rows,
            self.cols,
            self.field,
            other.rows,
            other.cols,
            other.field
        );
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.check_same_shape(other, "matrix addition");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.check_same_shape(other, "matrix subtraction");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> Mat {
        let data = self.data.iter().map(Scalar::neg).collect();
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        assert!(
            s.field() == self.field,
            "scale: scalar field mismatch with matrix field"
        );
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix product, skipping zero entries of the left factor (most
    /// matrices in this crate — actions, differentials — are sparse).
    pub fn mul(&self, other: &Mat) -> Mat {
        assert!(
            self.field == other.field,
            "matrix product: field mismatch ({} vs {})",
            self.field,
            other.field
        );
        assert!(
            self.cols == other.rows,
            "matrix product: inner dimensions differ ({}x{} times {}x{})",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert!(
            self.field == other.field && self.rows == other.rows,
            "hstack: row count or field mismatch"
        );
        let mut out = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j).clone());
            }
        }
        out
    }

    /// Vertical concatenation `[self; other]`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert!(
            self.field == other.field && self.cols == other.cols,
            "vstack: column count or field mismatch"
        );
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Kronecker product: block `(i, j)` of the result is `self[i][j] * other`.
    pub fn kron(&self, other: &Mat) -> Mat {
        assert!(
            self.field == other.field,
            "kron: field mismatch ({} vs {})",
            self.field,
            other.field
        );
        let mut out = Mat::zeros(
            self.field,
            self.rows * other.rows,
            self.cols * other.cols,
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for r in 0..other.rows {
                    for c in 0..other.cols {
                        let b = other.at(r, c);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i * other.rows + r, j * other.cols + c, a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// Extracts the submatrix with the given rows and columns.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, row_idx.len(), col_idx.len());
        for (oi, &i) in row_idx.iter().enumerate() {
            for (oj, &j) in col_idx.iter().enumerate() {
                out.set(oi, oj, self.at(i, j).clone());
            }
        }
        out
    }

    /// Deterministic reduced row echelon form restricted to the first
    /// `limit` columns: pivots are searched leftmost column first, and within
    /// a column the topmost available row is used. Columns at index >= limit
    /// are carried along (they are never pivot columns), which is exactly
    /// what augmented-system solving and coordinate-transform tracking need.
    ///
    /// Returns the reduced matrix and the pivot column indices in increasing
    /// order.
    pub fn rref_with_limit(&self, limit: usize) -> (Mat, Vec<usize>) {
        assert!(limit <= self.cols, "rref limit exceeds column count");
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..limit {
            if pivot_row == m.rows {
                break;
            }
            // Topmost row at or below pivot_row with a nonzero entry here.
            let Some(r) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, r);
            // Normalize the pivot row.
            let inv = m
                .at(pivot_row, col)
                .inv()
                .expect("pivot entry is nonzero by choice");
            if !inv.is_one() {
                for j in col..m.cols {
                    let v = m.at(pivot_row, j).mul(&inv);
                    m.set(pivot_row, j, v);
                }
            }
            // Eliminate the column everywhere else.
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.at(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let p = m.at(pivot_row, j);
                    if p.is_zero() {
                        continue;
                    }
                    let v = m.at(r, j).sub(&factor.mul(p));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form over all columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        self.rref_with_limit(self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : self * x = 0}`, as column-coordinate
    /// vectors of length `cols`. Deterministic: one basis vector per free
    /// column, in increasing free-column order, with a 1 in the free slot.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (pi, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(pi);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(self.field); self.cols];
            v[free] = Scalar::one(self.field);
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = r.at(pi, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the left kernel `{x : x * self = 0}`, as row vectors of
    /// length `rows`.
    pub fn left_kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.transpose().kernel_basis()
    }

    /// Solves `self * x = b` for a column vector `x`; returns the solution
    /// with all free variables set to zero, or `None` if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert!(b.len() == self.rows, "solve: right-hand side length mismatch");
        let rhs = Mat::column(self.field, b).expect("validated entries");
        let x = self.solve_mat(&rhs)?;
        Some(x.col_vec(0))
    }

    /// Solves `self * X = B` column by column (single elimination pass);
    /// returns the solution with free variables zero, or `None` if any
    /// column is inconsistent.
    pub fn solve_mat(&self, b: &Mat) -> Option<Mat> {
        assert!(
            b.rows == self.rows && b.field == self.field,
            "solve_mat: right-hand side shape or field mismatch"
        );
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref_with_limit(self.cols);
        // Inconsistent iff some row is zero on the coefficient side but not
        // on the right-hand side.
        let rank = pivots.len();
        for row in rank..r.rows {
            for j in self.cols..aug.cols {
                if !r.at(row, j).is_zero() {
                    return None;
                }
            }
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (pi, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.at(pi, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// The inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_mat(&Mat::identity(self.field, self.rows))?;
        // solve_mat found *a* preimage of the identity; for square matrices
        // that succeeds only at full rank, where it is the two-sided inverse.
        if x.mul(self) == Mat::identity(self.field, self.rows) {
            Some(x)
        } else {
            None
        }
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut t = Scalar::zero(self.field);
        for i in 0..self.rows {
            t = t.add(self.at(i, i));
        }
        t
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn rref_rank_one_matrix() {
        // Frozen by hand: [[2,4],[1,2]] reduces to [[1,2],[0,0]], rank 1.
        let m = Mat::from_i64(Q, &[&[2, 4], &[1, 2]]);
        let (r, pivots) = m.rref();
        assert_eq!(r, Mat::from_i64(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rref_with_fractions() {
        // Frozen by hand: [[1,2,3],[4,5,6]] -> [[1,0,-1],[0,1,2]].
        let m = Mat::from_i64(Q, &[&[1, 2, 3], &[4, 5, 6]]);
        let (r, pivots) = m.rref();
        assert_eq!(r, Mat::from_i64(Q, &[&[1, 0, -1], &[0, 1, 2]]));
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn kernel_of_row_vector() {
        // Kernel of [1 1] is spanned by (-1, 1) with the free slot set to 1.
        let m = Mat::from_i64(Q, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![Scalar::from_i64(Q, -1), Scalar::from_i64(Q, 1)]);
        // And indeed m * k = 0.
        let kv = Mat::column(Q, &k[0]).unwrap();
        assert!(m.mul(&kv).is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Mat::from_i64(Q, &[&[1, 2], &[2, 4]]);
        // 1*x + 2*y = 3 ; 2x + 4y = 6: consistent, free y = 0 -> x = 3.
        let b = vec![Scalar::from_i64(Q, 3), Scalar::from_i64(Q, 6)];
        let x = m.solve(&b).unwrap();
        assert_eq!(x, vec![Scalar::from_i64(Q, 3), Scalar::from_i64(Q, 0)]);
        // Inconsistent right-hand side.
        let b_bad = vec![Scalar::from_i64(Q, 3), Scalar::from_i64(Q, 7)];
        assert!(m.solve(&b_bad).is_none());
    }

    #[test]
    fn inverse_and_singular() {
        let m = Mat::from_i64(Q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, Mat::from_i64(Q, &[&[1, -1], &[-1, 2]]));
        assert_eq!(m.mul(&inv), Mat::identity(Q, 2));
        assert!(Mat::from_i64(Q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kron_mixed_product_identity() {
        // (A kron B)(C kron D) = (AC) kron (BD), frozen instance.
        let a = Mat::from_i64(Q, &[&[1, 2], &[0, 1]]);
        let b = Mat::from_i64(Q, &[&[0, 1], &[1, 0]]);
        let c = Mat::from_i64(Q, &[&[1, 1], &[1, -1]]);
        let d = Mat::from_i64(Q, &[&[2, 0], &[0, 3]]);
        let lhs = a.kron(&b).mul(&c.kron(&d));
        let rhs = a.mul(&c).kron(&b.mul(&d));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn prime_field_rref() {
        let f5 = Field::prime(5).unwrap();
        // [[2,1],[1,3]] over F5: det = 6-1 = 5 = 0, so rank 1.
        let m = Mat::from_i64(f5, &[&[2, 1], &[1, 3]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let kv = Mat::column(f5, &k[0]).unwrap();
        assert!(m.mul(&kv).is_zero());
    }

    #[test]
    fn solve_mat_multiple_rhs() {
        let m = Mat::from_i64(Q, &[&[1, 0], &[1, 1]]);
        let b = Mat::from_i64(Q, &[&[1, 2], &[1, 5]]);
        let x = m.solve_mat(&b).unwrap();
        assert_eq!(m.mul(&x), b);
        assert_eq!(x, Mat::from_i64(Q, &[&[1, 2], &[0, 3]]));
    }
}

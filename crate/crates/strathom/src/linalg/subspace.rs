//! Canonical subspaces of coordinate space and coordinate solvers.

use crate::linalg::mat::Mat;
use crate::linalg::scalar::{Field, Scalar};

/// A subspace of `F^ambient`, stored as the unique reduced-row-echelon basis
/// of its row space. Two `Subspace` values are equal as Rust values exactly
/// when they are equal as subspaces, so subspace comparison is `==`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    /// Nonzero reduced rows, pivot columns strictly increasing.
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a, I>(field: Field, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = &'a [Scalar]>,
    {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        let mut s = Subspace::zero(field, ambient);
        for i in 0..ambient {
            let mut v = vec![Scalar::zero(field); ambient];
            v[i] = Scalar::one(field);
            s.insert(&v);
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Reduces `v` modulo the subspace: subtracts the unique combination of
    /// stored rows matching `v` on the pivot columns. The result is zero iff
    /// `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert!(v.len() == self.ambient, "vector length mismatch");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            for (wj, rj) in w.iter_mut().zip(row) {
                if !rj.is_zero() {
                    *wj = wj.sub(&c.mul(rj));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Inserts `v`, keeping the basis in reduced row echelon form. Returns
    /// `true` if the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut w = self.reduce(v);
        let Some(lead) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        // Normalize the new row.
        let inv = w[lead].inv().expect("leading entry is nonzero");
        if !inv.is_one() {
            for x in w.iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        // Back-eliminate the new pivot from existing rows.
        for row in self.rows.iter_mut() {
            let c = row[lead].clone();
            if c.is_zero() {
                continue;
            }
            for (rj, wj) in row.iter_mut().zip(&w) {
                if !wj.is_zero() {
                    *rj = rj.sub(&c.mul(wj));
                }
            }
        }
        // Insert preserving increasing pivot order.
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, w);
        true
    }

    /// Adds every row of `other`; returns `true` if the dimension grew.
    pub fn insert_all(&mut self, other: &Subspace) -> bool {
        let before = self.dim();
        for r in &other.rows {
            self.insert(r);
        }
        self.dim() > before
    }

    /// Standard basis vectors at the non-pivot coordinates; together with
    /// this subspace they span the ambient space.
    pub fn complement_basis(&self) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for j in 0..self.ambient {
            if !is_pivot[j] {
                let mut v = vec![Scalar::zero(self.field); self.ambient];
                v[j] = Scalar::one(self.field);
                out.push(v);
            }
        }
        out
    }

    /// The intersection with another subspace of the same ambient space,
    /// computed via the kernel of the stacked coefficient matrix.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert!(
            self.field == other.field && self.ambient == other.ambient,
            "intersect: ambient space mismatch"
        );
        // x in both spaces: x = a * self_rows = b * other_rows. Solve
        // [self_rows^T | -other_rows^T] (a, b)^T = 0.
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.field, self.ambient);
        }
        let m1 = Mat::from_rows(self.field, self.rows.clone(), self.ambient)
            .expect("canonical rows are valid")
            .transpose();
        let m2 = Mat::from_rows(self.field, other.rows.clone(), self.ambient)
            .expect("canonical rows are valid")
            .transpose()
            .neg();
        let stacked = m1.hstack(&m2);
        let mut out = Subspace::zero(self.field, self.ambient);
        for k in stacked.kernel_basis() {
            // Reconstruct x from the `a` part.
            let mut x = vec![Scalar::zero(self.field); self.ambient];
            for (i, row) in self.rows.iter().enumerate() {
                let c = &k[i];
                if c.is_zero() {
                    continue;
                }
                for (xj, rj) in x.iter_mut().zip(row) {
                    if !rj.is_zero() {
                        *xj = xj.add(&c.mul(rj));
                    }
                }
            }
            out.insert(&x);
        }
        out
    }
}

/// Expresses vectors as combinations of a fixed generating family.
///
/// Built once from `gens` (not necessarily independent), then `coords(v)`
/// returns coefficients in the *original* generators with `v = sum c_i g_i`,
/// or `None` when `v` is outside their span. Free choices are resolved
/// deterministically by the row-reduction transform, so equal inputs always
/// give equal coordinates.
#[derive(Debug, Clone)]
pub struct CoordSolver {
    field: Field,
    ambient: usize,
    n_gens: usize,
    /// Reduced rows spanning the generators' span (rank many).
    rref_rows: Vec<Vec<Scalar>>,
    /// `rref_rows[i] = sum_j transform[i][j] * gens[j]`.
    transform: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl CoordSolver {
    pub fn new(field: Field, ambient: usize, gens: &[Vec<Scalar>]) -> CoordSolver {
        let n_gens = gens.len();
        for g in gens {
            assert!(g.len() == ambient, "generator length mismatch");
        }
        // Reduce [gens | I], restricting pivots to the generator columns.
        let gen_mat = Mat::from_rows(field, gens.to_vec(), ambient).expect("validated above");
        let aug = gen_mat.hstack(&Mat::identity(field, n_gens));
        let (red, pivots) = aug.rref_with_limit(ambient);
        let rank = pivots.len();
        let mut rref_rows = Vec::with_capacity(rank);
        let mut transform = Vec::with_capacity(rank);
        for i in 0..rank {
            rref_rows.push(red.row_slice(i)[..ambient].to_vec());
            transform.push(red.row_slice(i)[ambient..].to_vec());
        }
        CoordSolver {
            field,
            ambient,
            n_gens,
            rref_rows,
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    /// Coefficients of `v` in the original generators, or `None` if `v` is
    /// not in their span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert!(v.len() == self.ambient, "vector length mismatch");
        // Read off candidate coefficients on the reduced rows from the pivot
        // coordinates, then verify the residual vanishes.
        let cs: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in cs.iter().zip(&self.rref_rows) {
            if c.is_zero() {
                continue;
            }
            for (rj, bj) in residual.iter_mut().zip(row) {
                if !bj.is_zero() {
                    *rj = rj.sub(&c.mul(bj));
                }
            }
        }
        if residual.iter().any(|x| !x.is_zero()) {
            return None;
        }
        // Pull the reduced-row coefficients back to the original generators.
        let mut out = vec![Scalar::zero(self.field); self.n_gens];
        for (c, trow) in cs.iter().zip(&self.transform) {
            if c.is_zero() {
                continue;
            }
            for (oj, tj) in out.iter_mut().zip(trow) {
                if !tj.is_zero() {
                    *oj = oj.add(&c.mul(tj));
                }
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_i64(Q, x)).collect()
    }

    #[test]
    fn insert_and_contains() {
        let mut s = Subspace::zero(Q, 3);
        assert!(s.insert(&v(&[1, 1, 0])));
        assert!(s.insert(&v(&[0, 1, 1])));
        assert!(!s.insert(&v(&[1, 2, 1]))); // dependent on the first two
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[2, 3, 1])));
        assert!(!s.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn canonical_equality() {
        // Two different generating sets of the same plane compare equal.
        let a = Subspace::from_vectors(Q, 3, [v(&[1, 1, 0]).as_slice(), &v(&[0, 1, 1])]);
        let b = Subspace::from_vectors(Q, 3, [v(&[1, 2, 1]).as_slice(), &v(&[2, 1, -1])]);
        assert_eq!(a, b);
        let c = Subspace::from_vectors(Q, 3, [v(&[1, 0, 0]).as_slice()]);
        assert_ne!(a, c);
    }

    #[test]
    fn complement_spans_with_subspace() {
        let s = Subspace::from_vectors(Q, 3, [v(&[1, 2, 3]).as_slice()]);
        let comp = s.complement_basis();
        assert_eq!(comp.len(), 2);
        let mut full = s.clone();
        for c in &comp {
            full.insert(c);
        }
        assert_eq!(full.dim(), 3);
    }

    #[test]
    fn intersection_of_planes() {
        // Two distinct planes in F^3 meet in a line.
        let a = Subspace::from_vectors(Q, 3, [v(&[1, 0, 0]).as_slice(), &v(&[0, 1, 0])]);
        let b = Subspace::from_vectors(Q, 3, [v(&[0, 1, 0]).as_slice(), &v(&[0, 0, 1])]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0, 1, 0])));
    }

    #[test]
    fn coord_solver_roundtrip() {
        // Dependent generators: g2 = 2*g0 + g1 is redundant.
        let gens = vec![v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[2, 1, 3])];
        let cs = CoordSolver::new(Q, 3, &gens);
        assert_eq!(cs.rank(), 2);
        let target = v(&[3, 2, 5]); // 3*g0 + 2*g1
        let coeffs = cs.coords(&target).unwrap();
        // Verify the linear combination reproduces the target.
        let mut acc = vec![Scalar::zero(Q); 3];
        for (c, g) in coeffs.iter().zip(&gens) {
            for (aj, gj) in acc.iter_mut().zip(g) {
                *aj = aj.add(&c.mul(gj));
            }
        }
        assert_eq!(acc, target);
        assert!(cs.coords(&v(&[1, 0, 0])).is_none());
    }
}

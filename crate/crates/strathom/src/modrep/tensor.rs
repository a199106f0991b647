//! Left modules, bimodules, tensor products, and restriction along ring
//! homomorphisms.

use std::sync::Arc;

use crate::algebra::{Algebra, CornerAlgebra, RingHom};
use crate::error::{Error, Result};
use crate::linalg::{CoordSolver, Field, Mat, Scalar, Subspace};
use crate::modrep::module::{Check, ModuleMap, RightModule};

/// A finite-dimensional left module, stored as a right module over the
/// opposite algebra. In row convention `action[i]` is the matrix of
/// `v -> b_i . v`, so `action` is anti-homomorphic in the algebra index.
#[derive(Debug)]
pub struct LeftModule {
    algebra: Arc<Algebra>,
    inner: Arc<RightModule>,
}

impl LeftModule {
    /// Validating constructor for untrusted data.
    pub fn new(algebra: &Arc<Algebra>, dim: usize, action: Vec<Mat>) -> Result<Arc<LeftModule>> {
        LeftModule::build(algebra, dim, action, Check::Full)
    }

    pub(crate) fn build(
        algebra: &Arc<Algebra>,
        dim: usize,
        action: Vec<Mat>,
        check: Check,
    ) -> Result<Arc<LeftModule>> {
        let opposite = algebra.opposite()?;
        let inner = RightModule::build(opposite, dim, action, check)?;
        Ok(Arc::new(LeftModule {
            algebra: Arc::clone(algebra),
            inner,
        }))
    }

    /// The algebra as a left module over itself.
    pub fn regular(algebra: &Arc<Algebra>) -> Arc<LeftModule> {
        let action = (0..algebra.dim())
            .map(|i| algebra.left_mult_matrix(&algebra.basis_vec(i)))
            .collect();
        LeftModule::build(algebra, algebra.dim(), action, Check::Sampled)
            .expect("the left regular module always satisfies the axioms")
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    /// The same data viewed as a right module over the opposite algebra.
    pub fn as_right_over_opposite(&self) -> &Arc<RightModule> {
        &self.inner
    }

    pub fn field(&self) -> Field {
        self.inner.field()
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn action(&self, i: usize) -> &Mat {
        self.inner.action(i)
    }

    pub fn action_of(&self, elem: &[Scalar]) -> Mat {
        self.inner.action_of(elem)
    }

    /// Canonical basis of the slice `e . N` for an idempotent `e`.
    pub fn slice_basis(&self, e: &[Scalar]) -> Vec<Vec<Scalar>> {
        self.inner.idempotent_slice_basis(e)
    }

    pub fn slice_dim(&self, e: &[Scalar]) -> usize {
        self.slice_basis(e).len()
    }
}

/// The target of a ring homomorphism as a left module over the source:
/// `a . x = hom(a) x`.
pub fn restrict_left_regular(hom: &RingHom) -> Result<Arc<LeftModule>> {
    let src = hom.source();
    let tgt = hom.target();
    let action = (0..src.dim())
        .map(|i| tgt.left_mult_matrix(&hom.apply(&src.basis_vec(i))))
        .collect();
    LeftModule::build(src, tgt.dim(), action, Check::Sampled)
}

/// Restriction of a right module along a ring homomorphism: the same space
/// with `v . a = v . hom(a)`.
pub fn restrict_along(hom: &RingHom, m: &Arc<RightModule>) -> Result<Arc<RightModule>> {
    if !hom.target().same_as(m.algebra()) {
        return Err(Error::AlgebraMismatch(
            "restriction: the module is not over the homomorphism's target".into(),
        ));
    }
    let src = hom.source();
    let action = (0..src.dim())
        .map(|i| m.action_of(&hom.apply(&src.basis_vec(i))))
        .collect();
    RightModule::build(Arc::clone(src), m.dim(), action, Check::Sampled)
}

/// A (C, A)-bimodule: commuting left C-action and right A-action on one
/// coordinate space.
#[derive(Debug)]
pub struct Bimodule {
    left_algebra: Arc<Algebra>,
    right_algebra: Arc<Algebra>,
    left: Arc<LeftModule>,
    right: Arc<RightModule>,
}

impl Bimodule {
    /// Validating constructor for untrusted data.
    pub fn new(
        left_algebra: &Arc<Algebra>,
        right_algebra: &Arc<Algebra>,
        dim: usize,
        left_action: Vec<Mat>,
        right_action: Vec<Mat>,
    ) -> Result<Bimodule> {
        Bimodule::build(
            left_algebra,
            right_algebra,
            dim,
            left_action,
            right_action,
            Check::Full,
        )
    }

    pub(crate) fn build(
        left_algebra: &Arc<Algebra>,
        right_algebra: &Arc<Algebra>,
        dim: usize,
        left_action: Vec<Mat>,
        right_action: Vec<Mat>,
        check: Check,
    ) -> Result<Bimodule> {
        let left = LeftModule::build(left_algebra, dim, left_action, check)?;
        let right = RightModule::build(Arc::clone(right_algebra), dim, right_action, check)?;
        // The two actions must commute; checking generator pairs suffices.
        for &gc in &left_algebra.generating_indices() {
            for &ga in &right_algebra.generating_indices() {
                let lhs = left.action(gc).mul(right.action(ga));
                let rhs = right.action(ga).mul(left.action(gc));
                if lhs != rhs {
                    return Err(Error::BadModuleAction(format!(
                        "bimodule actions do not commute at generators ({gc}, {ga})"
                    )));
                }
            }
        }
        Ok(Bimodule {
            left_algebra: Arc::clone(left_algebra),
            right_algebra: Arc::clone(right_algebra),
            left,
            right,
        })
    }

    /// The algebra as a bimodule over itself.
    pub fn regular(algebra: &Arc<Algebra>) -> Bimodule {
        let left: Vec<Mat> = (0..algebra.dim())
            .map(|i| algebra.left_mult_matrix(&algebra.basis_vec(i)))
            .collect();
        let right: Vec<Mat> = (0..algebra.dim())
            .map(|i| algebra.right_mult_matrix(&algebra.basis_vec(i)))
            .collect();
        Bimodule::build(algebra, algebra, algebra.dim(), left, right, Check::Sampled)
            .expect("the regular bimodule always satisfies the axioms")
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left_algebra
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right_algebra
    }

    pub fn dim(&self) -> usize {
        self.right.dim()
    }

    pub fn field(&self) -> Field {
        self.right.field()
    }

    pub fn left_module(&self) -> &Arc<LeftModule> {
        &self.left
    }

    pub fn right_module(&self) -> &Arc<RightModule> {
        &self.right
    }

    pub fn left_action(&self, i: usize) -> &Mat {
        self.left.action(i)
    }

    pub fn right_action(&self, i: usize) -> &Mat {
        self.right.action(i)
    }
}

/// The slice `e A` of a corner `e A e <= A`, as an (eAe, A)-bimodule on the
/// canonical basis of the row space of left multiplication by `e`.
pub fn slice_bimodule_right(corner: &CornerAlgebra) -> Result<Bimodule> {
    let a = &corner.parent;
    let field = a.field();
    let lm = a.left_mult_matrix(&corner.idempotent);
    let mut span = Subspace::zero(field, a.dim());
    for i in 0..a.dim() {
        span.insert(lm.row_slice(i));
    }
    let basis = span.basis().to_vec();
    let solver = CoordSolver::new(field, a.dim(), &basis);
    let dim = basis.len();
    let in_coords = |transform: &Mat| -> Result<Mat> {
        let mut m = Mat::zeros(field, dim, dim);
        for (r, row) in basis.iter().enumerate() {
            let img = Mat::row_vector(field, row)
                .expect("validated")
                .mul(transform);
            let coords = solver.coords(img.row_slice(0)).ok_or_else(|| {
                Error::InternalConsistency("corner slice is not stable".into())
            })?;
            for (c, s) in coords.into_iter().enumerate() {
                if !s.is_zero() {
                    m.set(r, c, s);
                }
            }
        }
        Ok(m)
    };
    let mut right_action = Vec::with_capacity(a.dim());
    for j in 0..a.dim() {
        right_action.push(in_coords(&a.right_mult_matrix(&a.basis_vec(j)))?);
    }
    let calg = &corner.algebra;
    let mut left_action = Vec::with_capacity(calg.dim());
    for t in 0..calg.dim() {
        left_action.push(in_coords(&a.left_mult_matrix(&corner.basis_in_parent[t]))?);
    }
    Bimodule::build(calg, a, dim, left_action, right_action, Check::Sampled)
}

/// The slice `A e` of a corner `e A e <= A`, as an (A, eAe)-bimodule on the
/// canonical basis of the row space of right multiplication by `e`.
pub fn slice_bimodule_left(corner: &CornerAlgebra) -> Result<Bimodule> {
    let a = &corner.parent;
    let field = a.field();
    let rm = a.right_mult_matrix(&corner.idempotent);
    let mut span = Subspace::zero(field, a.dim());
    for i in 0..a.dim() {
        span.insert(rm.row_slice(i));
    }
    let basis = span.basis().to_vec();
    let solver = CoordSolver::new(field, a.dim(), &basis);
    let dim = basis.len();
    let in_coords = |transform: &Mat| -> Result<Mat> {
        let mut m = Mat::zeros(field, dim, dim);
        for (r, row) in basis.iter().enumerate() {
            let img = Mat::row_vector(field, row)
                .expect("validated")
                .mul(transform);
            let coords = solver.coords(img.row_slice(0)).ok_or_else(|| {
                Error::InternalConsistency("corner slice is not stable".into())
            })?;
            for (c, s) in coords.into_iter().enumerate() {
                if !s.is_zero() {
                    m.set(r, c, s);
                }
            }
        }
        Ok(m)
    };
    let calg = &corner.algebra;
    let mut right_action = Vec::with_capacity(calg.dim());
    for t in 0..calg.dim() {
        right_action.push(in_coords(&a.right_mult_matrix(&corner.basis_in_parent[t]))?);
    }
    let mut left_action = Vec::with_capacity(a.dim());
    for j in 0..a.dim() {
        left_action.push(in_coords(&a.left_mult_matrix(&a.basis_vec(j)))?);
    }
    Bimodule::build(a, calg, dim, left_action, right_action, Check::Sampled)
}

/// The tensor product `X (x)_C B` of a right C-module with a (C, A)-
/// bimodule, as a right A-module. Returns the module together with the
/// projection matrix from the ambient pure-tensor space (row-major pairs
/// `(x-index, b-index)`) onto its coordinates.
///
/// Built as the quotient of the vector-space tensor by the balancing
/// relations; cost grows with `dim X * dim B`, so this is meant for small
/// inputs — dimension-only questions on large inputs should go through
/// resolutions instead.
pub fn tensor_module(
    x: &Arc<RightModule>,
    b: &Bimodule,
) -> Result<(Arc<RightModule>, Mat)> {
    if !x.algebra().same_as(b.left_algebra()) {
        return Err(Error::AlgebraMismatch(
            "tensor product: module algebra differs from the bimodule's left algebra".into(),
        ));
    }
    let field = x.field();
    let (xd, bd) = (x.dim(), b.dim());
    let a = b.right_algebra();
    let ambient_dim = xd * bd;
    // Ambient right A-module on pure tensors: the action only touches the
    // bimodule leg.
    let ambient_action: Vec<Mat> = (0..a.dim())
        .map(|j| Mat::identity(field, xd).kron(b.right_action(j)))
        .collect();
    let ambient = RightModule::build(Arc::clone(a), ambient_dim, ambient_action, Check::Sampled)?;
    // Balancing relations (x . c) (x) v - x (x) (c . v), for c running over
    // a generating set of C.
    let mut relations = Subspace::zero(field, ambient_dim);
    let zero = Scalar::zero(field);
    for &k in &x.algebra().generating_indices() {
        let xc = x.action(k);
        let cb = b.left_action(k);
        for i in 0..xd {
            for j in 0..bd {
                let mut rel = vec![zero.clone(); ambient_dim];
                for r in 0..xd {
                    let s = xc.at(i, r);
                    if !s.is_zero() {
                        rel[r * bd + j] = rel[r * bd + j].add(s);
                    }
                }
                for s_idx in 0..bd {
                    let s = cb.at(j, s_idx);
                    if !s.is_zero() {
                        rel[i * bd + s_idx] = rel[i * bd + s_idx].sub(s);
                    }
                }
                relations.insert(&rel);
            }
        }
    }
    let (quotient, projection) = ambient.quotient(&relations)?;
    Ok((quotient, projection.matrix().clone()))
}

/// `dim (X (x)_C B)`.
pub fn tensor_dim(x: &Arc<RightModule>, b: &Bimodule) -> Result<usize> {
    Ok(tensor_module(x, b)?.0.dim())
}

/// The map `X (x) B -> Y (x) B` induced by `f: X -> Y` on tensor products
/// with the same bimodule.
pub fn tensor_map(
    f: &ModuleMap,
    b: &Bimodule,
    source_tensor: &(Arc<RightModule>, Mat),
    target_tensor: &(Arc<RightModule>, Mat),
) -> Result<ModuleMap> {
    let field = f.source().field();
    let bd = b.dim();
    let (src, src_proj) = source_tensor;
    let (tgt, tgt_proj) = target_tensor;
    // On pure tensors the induced map is f (x) id; conjugate through the
    // projections. Sections: pick preimages of the quotient bases via the
    // projections' pseudo-solve — rows of the source projection span the
    // quotient, so solve for a right inverse.
    let ambient_map = f.matrix().kron(&Mat::identity(field, bd));
    // src_proj: (xd*bd) x dim(src); find section s: dim(src) x (xd*bd) with
    // s * src_proj = identity.
    let section = src_proj
        .transpose()
        .solve_mat(&Mat::identity(field, src.dim()))
        .ok_or_else(|| {
            Error::InternalConsistency("tensor projection has no section".into())
        })?
        .transpose();
    let matrix = section.mul(&ambient_map).mul(tgt_proj);
    ModuleMap::build(Arc::clone(src), Arc::clone(tgt), matrix, Check::Sampled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{from_quiver, QuiverSpec};
    use crate::modrep::module::projective_of_idempotent;

    const Q: Field = Field::Rationals;

    fn kronecker() -> Arc<Algebra> {
        from_quiver(
            Q,
            &QuiverSpec {
                vertices: vec!["1".into(), "2".into()],
                arrows: vec![
                    ("a".into(), "2".into(), "1".into()),
                    ("b".into(), "2".into(), "1".into()),
                ],
                relations: vec![],
            },
        )
        .unwrap()
    }

    #[test]
    fn tensor_with_regular_bimodule_is_identity_on_dimension() {
        let a = kronecker();
        let reg = RightModule::regular(&a);
        let bim = Bimodule::regular(&a);
        let (t, _) = tensor_module(&reg, &bim).unwrap();
        assert_eq!(t.dim(), 4);
        // And for a projective: e1A (x)_A A = e1A.
        let prims = a.primitive_idempotents().unwrap().to_vec();
        let (p1, _) = projective_of_idempotent(&a, &prims[0]).unwrap();
        assert_eq!(tensor_dim(&p1, &bim).unwrap(), 3);
        // Dimension vectors survive.
        let (t1, _) = tensor_module(&p1, &bim).unwrap();
        assert_eq!(t1.dimension_vector(), Some(vec![1, 2]));
    }

    #[test]
    fn corner_slices_as_bimodules() {
        let a = kronecker();
        let prims = a.primitive_idempotents().unwrap().to_vec();
        let corner = a.corner(&prims[0]).unwrap();
        // e1 A e1 = span(e1): the corner is one-dimensional.
        assert_eq!(corner.algebra.dim(), 1);
        let ea = slice_bimodule_right(&corner).unwrap();
        assert_eq!(ea.dim(), 3); // e1 A = e1, a, b
        let ae = slice_bimodule_left(&corner).unwrap();
        assert_eq!(ae.dim(), 1); // A e1 = e1
        // Tensoring the regular corner module with e1A returns e1A.
        let creg = RightModule::regular(&corner.algebra);
        let (t, _) = tensor_module(&creg, &ea).unwrap();
        assert_eq!(t.dim(), 3);
        assert_eq!(t.dimension_vector(), Some(vec![1, 2]));
    }

    #[test]
    fn left_regular_slices_count_paths_by_target() {
        let a = kronecker();
        let n = LeftModule::regular(&a);
        let prims = a.primitive_idempotents().unwrap().to_vec();
        // e1 . A = paths with target 1: e1, a, b.
        assert_eq!(n.slice_dim(&prims[0]), 3);
        assert_eq!(n.slice_dim(&prims[1]), 1);
    }

    #[test]
    fn restriction_along_the_radical_quotient() {
        let a = kronecker();
        let rad = a.radical_subspace().unwrap();
        let q = a.quotient_by_ideal(&rad).unwrap();
        let hom = RingHom::new(
            Arc::clone(&a),
            Arc::clone(&q.algebra),
            q.projection.clone(),
        )
        .unwrap();
        // The quotient's regular module restricts to S1 + S2 over A: it has
        // dimension 2 with trivial arrow action.
        let qreg = RightModule::regular(&q.algebra);
        let m = restrict_along(&hom, &qreg).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.dimension_vector(), Some(vec![1, 1]));
        for arrow in 2..4 {
            assert!(m.action(arrow).is_zero());
        }
    }

    #[test]
    fn tensor_map_respects_composition() {
        let a = kronecker();
        let bim = Bimodule::regular(&a);
        let prims = a.primitive_idempotents().unwrap().to_vec();
        let (p1, incl) = projective_of_idempotent(&a, &prims[0]).unwrap();
        let reg = RightModule::regular(&a);
        let tp = tensor_module(&p1, &bim).unwrap();
        let tr = tensor_module(&reg, &bim).unwrap();
        let f = tensor_map(&incl, &bim, &tp, &tr).unwrap();
        assert!(f.is_injective());
        assert_eq!(f.source().dim(), 3);
        assert_eq!(f.target().dim(), 4);
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = kronecker();
        let m2 = Algebra::matrix_algebra(Q, 2).unwrap();
        let bim = Bimodule::regular(&m2);
        let reg = RightModule::regular(&a);
        assert!(tensor_module(&reg, &bim).is_err());
    }
}

//! The six functors attached to an idempotent `e` of an algebra `A`: the
//! quotient and annihilator functors through `A/AeA`, the slice functor to
//! the corner `eAe`, and its two adjoints (induction `- (x)_{eAe} eA` and
//! coinduction `Hom_{eAe}(Ae, -)`).

use std::sync::Arc;

use crate::algebra::{Algebra, CornerAlgebra, QuotientAlgebra, RingHom};
use crate::error::{Error, Result};
use crate::linalg::{CoordSolver, Mat, Scalar};
use crate::modrep::hom::hom_space;
use crate::modrep::module::{Check, RightModule};
use crate::modrep::tensor::{
    restrict_along, slice_bimodule_left, slice_bimodule_right, tensor_module, Bimodule,
};

/// Everything needed to move modules between `A`, the corner `eAe`, and the
/// quotient `A/AeA` for a fixed idempotent `e`.
pub struct StratifyingContext {
    algebra: Arc<Algebra>,
    idempotent: Vec<Scalar>,
    corner: CornerAlgebra,
    quotient: QuotientAlgebra,
    quotient_hom: RingHom,
    /// `eA` as an `(eAe, A)`-bimodule.
    slice_right: Bimodule,
    /// `Ae` as an `(A, eAe)`-bimodule.
    slice_left: Bimodule,
}

impl StratifyingContext {
    /// Requires a proper nonzero idempotent: the corner and the quotient
    /// must both be nonzero algebras.
    pub fn new(a: &Arc<Algebra>, e: &[Scalar]) -> Result<StratifyingContext> {
        let corner = a.corner(e)?;
        let ideal = a.ideal_generated(&[e.to_vec()]);
        let quotient = a.quotient_by_ideal(&ideal)?;
        let quotient_hom = RingHom::new(
            Arc::clone(a),
            Arc::clone(&quotient.algebra),
            quotient.projection.clone(),
        )?;
        let slice_right = slice_bimodule_right(&corner)?;
        let slice_left = slice_bimodule_left(&corner)?;
        Ok(StratifyingContext {
            algebra: Arc::clone(a),
            idempotent: e.to_vec(),
            corner,
            quotient,
            quotient_hom,
            slice_right,
            slice_left,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn idempotent(&self) -> &[Scalar] {
        &self.idempotent
    }

    pub fn corner(&self) -> &CornerAlgebra {
        &self.corner
    }

    pub fn quotient(&self) -> &QuotientAlgebra {
        &self.quotient
    }

    pub fn quotient_hom(&self) -> &RingHom {
        &self.quotient_hom
    }

    pub fn slice_right_bimodule(&self) -> &Bimodule {
        &self.slice_right
    }

    pub fn slice_left_bimodule(&self) -> &Bimodule {
        &self.slice_left
    }

    fn check_algebra(&self, m: &Arc<RightModule>) -> Result<()> {
        if !self.algebra.same_as(m.algebra()) {
            return Err(Error::AlgebraMismatch(
                "module is not over the context's algebra".into(),
            ));
        }
        Ok(())
    }

    fn check_corner(&self, x: &Arc<RightModule>) -> Result<()> {
        if !self.corner.algebra.same_as(x.algebra()) {
            return Err(Error::AlgebraMismatch(
                "module is not over the context's corner algebra".into(),
            ));
        }
        Ok(())
    }

    fn check_quotient(&self, y: &Arc<RightModule>) -> Result<()> {
        if !self.quotient.algebra.same_as(y.algebra()) {
            return Err(Error::AlgebraMismatch(
                "module is not over the context's quotient algebra".into(),
            ));
        }
        Ok(())
    }

    /// Retypes a module over `A` on which `AeA` acts as zero into a module
    /// over `A/AeA`, acting through the section.
    fn retype_over_quotient(&self, m: &Arc<RightModule>) -> Result<Arc<RightModule>> {
        let qalg = &self.quotient.algebra;
        let action = (0..qalg.dim())
            .map(|j| m.action_of(self.quotient.section.row_slice(j)))
            .collect();
        RightModule::build(Arc::clone(qalg), m.dim(), action, Check::Sampled)
    }

    /// `M / M e A` as a module over `A/AeA`, together with the quotient map
    /// out of `M` (rows indexed by `M`'s basis).
    pub fn reduce_mod_ideal(&self, m: &Arc<RightModule>) -> Result<(Arc<RightModule>, Mat)> {
        self.check_algebra(m)?;
        let gens = m.action_of(&self.idempotent).rows_vec();
        let sub = m.submodule_generated(&gens);
        let (q, proj) = m.quotient(&sub)?;
        Ok((self.retype_over_quotient(&q)?, proj.matrix().clone()))
    }

    /// The largest submodule of `M` killed by `AeA`, as a module over
    /// `A/AeA`, together with its basis inside `M` (rows).
    pub fn ideal_annihilator(&self, m: &Arc<RightModule>) -> Result<(Arc<RightModule>, Mat)> {
        self.check_algebra(m)?;
        let a = &self.algebra;
        let field = a.field();
        // v annihilates AeA as soon as v * (b_i e) = 0 for every basis
        // element b_i.
        let mut stacked: Option<Mat> = None;
        for i in 0..a.dim() {
            let gen = a.mul_vec(&a.basis_vec(i), &self.idempotent);
            let mat = m.action_of(&gen);
            stacked = Some(match stacked {
                None => mat,
                Some(s) => s.hstack(&mat),
            });
        }
        let stacked = stacked.ok_or(Error::ZeroAlgebra)?;
        let rows = stacked.left_kernel_basis();
        let kernel = crate::linalg::Subspace::from_vectors(
            field,
            m.dim(),
            rows.iter().map(Vec::as_slice),
        );
        let (sub, incl) = m.submodule(&kernel)?;
        Ok((self.retype_over_quotient(&sub)?, incl.matrix().clone()))
    }

    /// `M e` as a module over the corner `eAe`, together with the slice
    /// basis inside `M` (rows).
    pub fn corner_slice(&self, m: &Arc<RightModule>) -> Result<(Arc<RightModule>, Mat)> {
        self.check_algebra(m)?;
        let field = m.field();
        let basis = m.idempotent_slice_basis(&self.idempotent);
        let dim = basis.len();
        let solver = CoordSolver::new(field, m.dim(), &basis);
        let calg = &self.corner.algebra;
        let mut action = Vec::with_capacity(calg.dim());
        for t in 0..calg.dim() {
            let rho = m.action_of(&self.corner.basis_in_parent[t]);
            let mut mat = Mat::zeros(field, dim, dim);
            for (r, v) in basis.iter().enumerate() {
                let img = Mat::row_vector(field, v).expect("validated").mul(&rho);
                let coords = solver.coords(img.row_slice(0)).ok_or_else(|| {
                    Error::InternalConsistency("corner action leaves the slice".into())
                })?;
                for (c, s) in coords.into_iter().enumerate() {
                    if !s.is_zero() {
                        mat.set(r, c, s);
                    }
                }
            }
            action.push(mat);
        }
        let module = RightModule::build(Arc::clone(calg), dim, action, Check::Sampled)?;
        let basis_mat = Mat::from_rows(field, basis, m.dim())?;
        Ok((module, basis_mat))
    }

    /// `X (x)_{eAe} eA` over `A`, with the pure-tensor projection from the
    /// ambient space of dimension `dim X * dim eA`.
    pub fn induce_from_corner(
        &self,
        x: &Arc<RightModule>,
    ) -> Result<(Arc<RightModule>, Mat)> {
        self.check_corner(x)?;
        tensor_module(x, &self.slice_right)
    }

    /// `Hom_{eAe}(Ae, X)` over `A`, with the basis maps `Ae -> X` returned
    /// as matrices on the slice coordinates of `Ae`.
    pub fn coinduce_from_corner(
        &self,
        x: &Arc<RightModule>,
    ) -> Result<(Arc<RightModule>, Vec<Mat>)> {
        self.check_corner(x)?;
        let field = x.field();
        let ae = self.slice_left.right_module();
        let homs = hom_space(ae, x)?;
        let h = homs.len();
        if h == 0 {
            let zero = RightModule::zero(Arc::clone(&self.algebra));
            return Ok((zero, Vec::new()));
        }
        let flats: Vec<Vec<Scalar>> = homs.iter().map(|f| f.matrix().flatten()).collect();
        let solver = CoordSolver::new(field, ae.dim() * x.dim(), &flats);
        let mut action = Vec::with_capacity(self.algebra.dim());
        for j in 0..self.algebra.dim() {
            // (f * a)(v) = f(a v): precompose with the left action on Ae.
            let lam = self.slice_left.left_action(j);
            let mut mat = Mat::zeros(field, h, h);
            for (r, f) in homs.iter().enumerate() {
                let composed = lam.mul(f.matrix());
                let coords = solver.coords(&composed.flatten()).ok_or_else(|| {
                    Error::InternalConsistency(
                        "precomposition leaves the homomorphism space".into(),
                    )
                })?;
                for (c, s) in coords.into_iter().enumerate() {
                    if !s.is_zero() {
                        mat.set(r, c, s);
                    }
                }
            }
            action.push(mat);
        }
        let module = RightModule::build(Arc::clone(&self.algebra), h, action, Check::Sampled)?;
        let basis = homs.into_iter().map(|f| f.matrix().clone()).collect();
        Ok((module, basis))
    }

    /// Restriction of a module over `A/AeA` back to `A`.
    pub fn inflate(&self, y: &Arc<RightModule>) -> Result<Arc<RightModule>> {
        self.check_quotient(y)?;
        restrict_along(&self.quotient_hom, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{from_quiver, QuiverSpec};
    use crate::linalg::Field;
    use crate::modrep::hom::hom_dim;
    use crate::modrep::iso::is_isomorphic;

    const Q: Field = Field::Rationals;

    fn three_vertex() -> Arc<Algebra> {
        from_quiver(
            Q,
            &QuiverSpec {
                vertices: vec!["1".into(), "2".into(), "3".into()],
                arrows: vec![
                    ("alpha".into(), "1".into(), "2".into()),
                    ("beta".into(), "2".into(), "3".into()),
                    ("gamma".into(), "2".into(), "3".into()),
                    ("delta".into(), "3".into(), "1".into()),
                ],
                relations: vec![
                    vec!["alpha".into(), "beta".into()],
                    vec!["delta".into(), "alpha".into()],
                    vec!["gamma".into(), "delta".into()],
                ],
            },
        )
        .unwrap()
    }

    fn context_at_vertex(a: &Arc<Algebra>, v: usize) -> StratifyingContext {
        let e = a.primitive_idempotents().unwrap()[v].clone();
        StratifyingContext::new(a, &e).unwrap()
    }

    #[test]
    fn slice_and_quotient_dimensions_at_the_middle_vertex() {
        let a = three_vertex();
        let ctx = context_at_vertex(&a, 1);
        assert_eq!(ctx.corner().algebra.dim(), 1);
        // The ideal spanned by the paths through the middle vertex has
        // dimension 6, so the quotient algebra keeps e1, e3, delta.
        assert_eq!(ctx.quotient().algebra.dim(), 3);
        let m = RightModule::regular(&a);
        let (slice, _) = ctx.corner_slice(&m).unwrap();
        assert_eq!(slice.dim(), 4); // e2, beta, gamma, delta*beta
        let (reduced, _) = ctx.reduce_mod_ideal(&m).unwrap();
        assert_eq!(reduced.dim(), 3);
        let (ann, _) = ctx.ideal_annihilator(&m).unwrap();
        assert_eq!(ann.dim(), 2); // alpha, gamma*alpha
    }

    #[test]
    fn induction_and_coinduction_against_the_regular_module() {
        let a = three_vertex();
        let ctx = context_at_vertex(&a, 1);
        let x = RightModule::regular(&ctx.corner().algebra);
        let (ind, _) = ctx.induce_from_corner(&x).unwrap();
        assert_eq!(ind.dim(), 2); // e2 A = {e2, alpha}
        assert_eq!(ind.dimension_vector(), Some(vec![1, 1, 0]));
        let (coind, _) = ctx.coinduce_from_corner(&x).unwrap();
        assert_eq!(coind.dim(), 4); // dual of A e2 = {e2, beta, gamma, delta*beta}
    }

    #[test]
    fn adjunction_dimensions_hold_for_sample_modules() {
        let a = three_vertex();
        let ctx = context_at_vertex(&a, 1);
        let m = RightModule::regular(&a);
        let x = RightModule::regular(&ctx.corner().algebra);
        let y = RightModule::regular(&ctx.quotient().algebra);
        let (slice_m, _) = ctx.corner_slice(&m).unwrap();
        let (ind_x, _) = ctx.induce_from_corner(&x).unwrap();
        let (coind_x, _) = ctx.coinduce_from_corner(&x).unwrap();
        let (red_m, _) = ctx.reduce_mod_ideal(&m).unwrap();
        let (ann_m, _) = ctx.ideal_annihilator(&m).unwrap();
        let infl_y = ctx.inflate(&y).unwrap();
        // induction -| slice
        assert_eq!(
            hom_dim(&ind_x, &m).unwrap(),
            hom_dim(&x, &slice_m).unwrap()
        );
        // slice -| coinduction
        assert_eq!(
            hom_dim(&m, &coind_x).unwrap(),
            hom_dim(&slice_m, &x).unwrap()
        );
        // reduction -| inflation
        assert_eq!(
            hom_dim(&red_m, &y).unwrap(),
            hom_dim(&m, &infl_y).unwrap()
        );
        // inflation -| annihilator
        assert_eq!(
            hom_dim(&infl_y, &m).unwrap(),
            hom_dim(&y, &ann_m).unwrap()
        );
        // The concrete value on this example.
        assert_eq!(hom_dim(&infl_y, &m).unwrap(), 2);
    }

    #[test]
    fn slice_of_induction_recovers_the_corner_module() {
        let a = three_vertex();
        let ctx = context_at_vertex(&a, 1);
        let x = RightModule::regular(&ctx.corner().algebra);
        let (ind, _) = ctx.induce_from_corner(&x).unwrap();
        let (back, _) = ctx.corner_slice(&ind).unwrap();
        assert!(is_isomorphic(&x, &back).unwrap().is_yes());
        let (coind, _) = ctx.coinduce_from_corner(&x).unwrap();
        let (back2, _) = ctx.corner_slice(&coind).unwrap();
        assert!(is_isomorphic(&x, &back2).unwrap().is_yes());
    }

    #[test]
    fn reduction_kills_the_slice_and_keeps_the_rest() {
        let a = three_vertex();
        let ctx = context_at_vertex(&a, 1);
        // The slice projective at the middle vertex reduces to zero.
        let prims = a.primitive_idempotents().unwrap().to_vec();
        let (p2, _) =
            crate::modrep::module::projective_of_idempotent(&a, &prims[1]).unwrap();
        let (red, _) = ctx.reduce_mod_ideal(&p2).unwrap();
        assert_eq!(red.dim(), 0);
        // A module with zero slice is untouched.
        let simples = crate::modrep::resolution::simple_modules(&a).unwrap();
        let (red1, _) = ctx.reduce_mod_ideal(&simples[0]).unwrap();
        assert_eq!(red1.dim(), 1);
        let infl = ctx.inflate(&red1).unwrap();
        assert!(is_isomorphic(&simples[0], &infl).unwrap().is_yes());
    }

    #[test]
    fn wrong_algebra_is_rejected() {
        let a = three_vertex();
        let ctx = context_at_vertex(&a, 1);
        let x = RightModule::regular(&ctx.corner().algebra);
        assert!(ctx.corner_slice(&x).is_err());
        let m = RightModule::regular(&a);
        assert!(ctx.induce_from_corner(&m).is_err());
    }
}

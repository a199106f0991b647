//! Unital algebra homomorphisms.

use std::sync::Arc;

use crate::algebra::core::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar, Subspace};

/// A homomorphism of unital algebras, stored as a row-convention matrix:
/// the image of `v` is `v * matrix`. Construction verifies that the map is
/// linear over the common field, multiplicative, and sends unit to unit.
#[derive(Debug, Clone)]
pub struct RingHom {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    matrix: Mat,
}

impl RingHom {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: Mat) -> Result<RingHom> {
        if source.field() != target.field() || matrix.field() != source.field() {
            return Err(Error::FieldMismatch(
                "ring map endpoints live over different fields".into(),
            ));
        }
        if matrix.rows() != source.dim() || matrix.cols() != target.dim() {
            return Err(Error::DimensionMismatch(format!(
                "ring map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        let hom = RingHom {
            source,
            target,
            matrix,
        };
        if hom.apply(hom.source.unit()) != hom.target.unit() {
            return Err(Error::NotUnital);
        }
        for i in 0..hom.source.dim() {
            let fi = hom.matrix.row_slice(i).to_vec();
            for j in 0..hom.source.dim() {
                let fj = hom.matrix.row_slice(j);
                let lhs = hom.apply(hom.source.structure_row(i, j));
                let rhs = hom.target.mul_vec(&fi, fj);
                if lhs != rhs {
                    return Err(Error::NotMultiplicative(i, j));
                }
            }
        }
        Ok(hom)
    }

    pub fn identity(a: &Arc<Algebra>) -> RingHom {
        RingHom {
            source: Arc::clone(a),
            target: Arc::clone(a),
            matrix: Mat::identity(a.field(), a.dim()),
        }
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        Mat::row_vector(self.source.field(), v)
            .expect("validated input")
            .mul(&self.matrix)
            .row_slice(0)
            .to_vec()
    }

    /// `other` after `self` (first `self`, then `other`).
    pub fn then(&self, other: &RingHom) -> Result<RingHom> {
        if !self.target.same_as(&other.source) {
            return Err(Error::AlgebraMismatch(
                "composition endpoints do not match".into(),
            ));
        }
        Ok(RingHom {
            source: Arc::clone(&self.source),
            target: Arc::clone(&other.target),
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective_linear(&self) -> bool {
        self.rank() == self.target.dim()
    }

    /// Basis of the kernel (row vectors over the source).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.matrix.left_kernel_basis()
    }

    /// The kernel as a canonical subspace of the source.
    pub fn kernel_subspace(&self) -> Subspace {
        let k = self.kernel_basis();
        Subspace::from_vectors(
            self.source.field(),
            self.source.dim(),
            k.iter().map(|v| v.as_slice()),
        )
    }

    /// The image as a canonical subspace of the target.
    pub fn image_subspace(&self) -> Subspace {
        Subspace::from_vectors(
            self.source.field(),
            self.target.dim(),
            (0..self.source.dim()).map(|i| self.matrix.row_slice(i)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::{from_quiver, QuiverSpec};
    use crate::linalg::Field;

    const Q: Field = Field::Rationals;

    fn loop_mod_square() -> Arc<Algebra> {
        from_quiver(
            Q,
            &QuiverSpec {
                vertices: vec!["v".into()],
                arrows: vec![("x".into(), "v".into(), "v".into())],
                relations: vec![vec!["x".into(), "x".into()]],
            },
        )
        .unwrap()
    }

    #[test]
    fn identity_and_composition() {
        let a = loop_mod_square();
        let id = RingHom::identity(&a);
        assert!(id.is_injective());
        assert!(id.is_surjective_linear());
        let again = id.then(&id).unwrap();
        assert_eq!(again.matrix(), id.matrix());
    }

    #[test]
    fn quotient_projection_is_a_ring_map() {
        // Kill the nilpotent x: the projection A -> A/(x) is a ring map.
        let a = loop_mod_square();
        let x = a.basis_vec(1);
        let ideal = a.ideal_generated(&[x]);
        assert_eq!(ideal.dim(), 1);
        let q = a.quotient_by_ideal(&ideal).unwrap();
        let hom = RingHom::new(
            Arc::clone(&a),
            Arc::clone(&q.algebra),
            q.projection.clone(),
        )
        .unwrap();
        assert!(hom.is_surjective_linear());
        assert_eq!(hom.kernel_subspace().dim(), 1);
    }

    #[test]
    fn non_multiplicative_maps_are_rejected() {
        let a = loop_mod_square();
        // Swap unit and nilpotent coordinates: not a ring map.
        let m = Mat::from_i64(Q, &[&[0, 1], &[1, 0]]);
        assert!(RingHom::new(Arc::clone(&a), Arc::clone(&a), m).is_err());
    }

    #[test]
    fn embedding_into_matrices() {
        // k[x]/(x^2) embeds in 2x2 matrices: 1 -> I, x -> E12.
        let a = loop_mod_square();
        let m2 = Algebra::matrix_algebra(Q, 2).unwrap();
        let m = Mat::from_i64(Q, &[&[1, 0, 0, 1], &[0, 1, 0, 0]]);
        let f = RingHom::new(Arc::clone(&a), Arc::clone(&m2), m).unwrap();
        assert!(f.is_injective());
        assert!(!f.is_surjective_linear());
        assert_eq!(f.image_subspace().dim(), 2);
    }
}

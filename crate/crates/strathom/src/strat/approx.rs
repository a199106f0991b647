//! The ring map induced on an endomorphism algebra by an injective left
//! approximation of the regular module.

use std::sync::Arc;

use crate::algebra::RingHom;
use crate::error::{Error, Result};
use crate::linalg::{CoordSolver, Mat, Scalar};
use crate::modrep::{endomorphism_algebra, hom_dim, EndAlgebra, ModuleMap, RightModule};

/// An endomorphism algebra built from a summand list, together with the
/// ring map induced through an approximation; see
/// [`hom_from_left_approximation`].
#[derive(Debug)]
pub struct InducedEndHom {
    pub end: EndAlgebra,
    pub hom: RingHom,
}

/// Builds the ring map `A -> End(T)` determined by an injective module map
/// `u: A -> T` out of the regular module, sending `a` to the unique
/// endomorphism `phi` with `u` following left multiplication by `a` equal
/// to `phi` following `u`.
///
/// `summands` must list the pieces whose direct sum is `u`'s target, in
/// order. Uniqueness of `phi` — and hence well-definedness — needs every
/// map from the cokernel of `u` into each summand to vanish, which is
/// checked first.
pub fn hom_from_left_approximation(
    u: &ModuleMap,
    summands: &[Arc<RightModule>],
) -> Result<InducedEndHom> {
    let a = Arc::clone(u.source().algebra());
    if !u.source().same_data(&RightModule::regular(&a)) {
        return Err(Error::DimensionMismatch(
            "the approximation must start at the regular module".into(),
        ));
    }
    if !u.is_injective() {
        return Err(Error::NotInjective(u.source().dim() - u.rank()));
    }
    let end = endomorphism_algebra(summands)?;
    if !u.target().same_data(end.total()) {
        return Err(Error::DimensionMismatch(
            "the summand list does not assemble to the approximation's target".into(),
        ));
    }
    let (coker, _) = u.cokernel_module()?;
    if coker.dim() > 0 {
        for (k, s) in summands.iter().enumerate() {
            if hom_dim(&coker, s)? > 0 {
                return Err(Error::Input(format!(
                    "maps factoring through the cokernel reach summand {k}, so the \
                     induced endomorphisms are not unique",
                )));
            }
        }
    }
    let field = a.field();
    let total_dim = end.total().dim();
    let dim = end.algebra().dim();
    // Express each composite `u . (left multiplication)` over the flattened
    // images `u . (endomorphism basis)`; the coordinates are the row of the
    // induced ring map.
    let images: Vec<Vec<Scalar>> = (0..dim)
        .map(|t| {
            let mut unit_t = vec![Scalar::zero(field); dim];
            unit_t[t] = Scalar::one(field);
            u.matrix().mul(&end.element_to_endo(&unit_t)).flatten()
        })
        .collect();
    let solver = CoordSolver::new(field, a.dim() * total_dim, &images);
    let mut rows = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        let composite = a
            .left_mult_matrix(&a.basis_vec(i))
            .mul(u.matrix())
            .flatten();
        let coords = solver.coords(&composite).ok_or_else(|| {
            Error::Input(
                "left multiplication does not factor through the target's \
                 endomorphisms; the map is not a left approximation"
                    .into(),
            )
        })?;
        rows.push(coords);
    }
    let hom = RingHom::new(
        Arc::clone(&a),
        Arc::clone(end.algebra()),
        Mat::from_rows(field, rows, dim)?,
    )?;
    Ok(InducedEndHom { end, hom })
}

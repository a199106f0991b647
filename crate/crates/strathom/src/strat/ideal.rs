//! Certification that the two-sided ideal generated by an idempotent is the
//! kernel of a quotient map preserving all higher structure, plus a helper
//! for exhibiting explicit isomorphisms out of path-algebra presentations.

use std::sync::Arc;

use crate::algebra::{Algebra, RingHom};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar};
use crate::modrep::StratifyingContext;

use super::certificate::Certificate;
use super::epi::{check_homological_epi, check_kernel_idempotent, HomologicalEpiReport};

/// Verdict for the ideal generated by an idempotent element: the quotient
/// map is surjective by construction, so the ideal qualifies exactly when
/// the quotient map's torsion spaces all vanish with a complete certificate.
#[derive(Debug)]
pub struct StratifyingReport {
    pub ideal_dim: usize,
    pub quotient_dim: usize,
    pub corner_dim: usize,
    /// The quotient algebra by the ideal.
    pub quotient: Arc<Algebra>,
    /// The corner algebra cut out by the idempotent.
    pub corner: Arc<Algebra>,
    pub hom_report: HomologicalEpiReport,
    pub is_stratifying: bool,
    pub certificate: Certificate,
}

/// Certifies whether the two-sided ideal generated by the idempotent `e`
/// is the kernel of a torsion-free quotient map (checked to the degree
/// bound recorded in the certificate).
///
/// Requires a proper idempotent: both the corner and the quotient must be
/// nonzero.
pub fn check_stratifying_ideal(
    a: &Arc<Algebra>,
    e: &[Scalar],
    cutoff: usize,
) -> Result<StratifyingReport> {
    if e.len() != a.dim() {
        return Err(Error::DimensionMismatch(
            "idempotent coordinate length mismatch".into(),
        ));
    }
    if !a.is_idempotent_elem(e) {
        return Err(Error::NotIdempotentElement);
    }
    let ctx = StratifyingContext::new(a, e)?;
    let hom_report = check_homological_epi(ctx.quotient_hom(), cutoff)?;
    if !hom_report.ring_epi.is_epi {
        return Err(Error::InternalConsistency(
            "a surjective quotient map failed the epimorphism test".into(),
        ));
    }
    let kernel_report = check_kernel_idempotent(ctx.quotient_hom())?;
    if !kernel_report.is_idempotent {
        return Err(Error::InternalConsistency(
            "the ideal generated by an idempotent element does not square to itself".into(),
        ));
    }
    let ideal_dim = ctx.quotient().ideal.dim();
    let quotient_dim = ctx.quotient().algebra.dim();
    let corner_dim = ctx.corner().algebra.dim();
    let is_stratifying = hom_report.is_homological_epi && hom_report.complete;

    let mut certificate = Certificate::new();
    certificate.is_ring_epi = Some(true);
    certificate.is_surjective = Some(true);
    certificate.homological_epi_checked_to_degree = Some(hom_report.degree);
    certificate.is_homological_epi = Some(hom_report.is_homological_epi);
    certificate.kernel_idempotent = Some(kernel_report.is_idempotent);
    certificate.kernel_stratifying = Some(is_stratifying);
    certificate.idempotent_generator = Some(e.iter().map(|s| s.to_string()).collect());
    certificate.absorb(hom_report.complete);
    certificate.witness("ideal_dim", ideal_dim);
    certificate.witness("quotient_dim", quotient_dim);
    certificate.witness("corner_dim", corner_dim);
    certificate.witness("kernel_square_dim", kernel_report.kernel_square_dim);
    certificate.witness("tor1_dim", kernel_report.tor1_dim);
    for (i, d) in hom_report.tor_dims.iter().enumerate() {
        certificate.witness(&format!("tor{}_dim", i + 1), *d);
    }

    Ok(StratifyingReport {
        ideal_dim,
        quotient_dim,
        corner_dim,
        quotient: Arc::clone(&ctx.quotient().algebra),
        corner: Arc::clone(&ctx.corner().algebra),
        hom_report,
        is_stratifying,
        certificate,
    })
}

/// Builds and validates the algebra isomorphism determined by images of the
/// vertices and arrows of a path-algebra presentation.
///
/// `vertex_images[v]` and `arrow_images[k]` give the images in `c` of the
/// trivial path at vertex `v` and of arrow `k`. The images of all basis
/// paths are assembled by multiplying arrow images in composition order;
/// the resulting linear map is then validated to be unital, multiplicative,
/// and bijective.
pub fn path_presentation_iso(
    q: &Arc<Algebra>,
    c: &Arc<Algebra>,
    vertex_images: &[Vec<Scalar>],
    arrow_images: &[Vec<Scalar>],
) -> Result<RingHom> {
    let pres = q
        .presentation()
        .ok_or_else(|| Error::Input("the source algebra carries no path presentation".into()))?;
    if vertex_images.len() != pres.vertices.len() || arrow_images.len() != pres.arrows.len() {
        return Err(Error::DimensionMismatch(
            "one image per vertex and one per arrow are required".into(),
        ));
    }
    if q.dim() != c.dim() {
        return Err(Error::DimensionMismatch(format!(
            "algebras of dimension {} and {} cannot be isomorphic",
            q.dim(),
            c.dim()
        )));
    }
    let mut rows = Vec::with_capacity(q.dim());
    for p in &pres.paths {
        let img = match p.arrows.split_first() {
            None => vertex_images[p.source].clone(),
            Some((&first, rest)) => {
                let mut acc = arrow_images[first].clone();
                for &k in rest {
                    acc = c.mul_vec(&arrow_images[k], &acc);
                }
                acc
            }
        };
        rows.push(img);
    }
    let hom = RingHom::new(
        Arc::clone(q),
        Arc::clone(c),
        Mat::from_rows(c.field(), rows, c.dim())?,
    )?;
    if !hom.is_injective() {
        return Err(Error::NotInjective(q.dim() - hom.rank()));
    }
    Ok(hom)
}

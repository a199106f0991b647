//! From a ring epimorphism with vanishing first torsion, builds the
//! endomorphism algebra of the mapping cone in the derived category and the
//! induced ring map onto it, identifying its kernel and cokernel with
//! explicit Hom and Ext spaces.

use std::sync::Arc;

use crate::algebra::{Algebra, RingHom};
use crate::derived::{cone, derived_hom_dim, BoundedComplex, ChainMap, DerivedEnd};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar, Subspace};
use crate::modrep::{
    endomorphism_algebra, ext_dim, hom_space, restrict_along, restrict_left_regular, tor_dim,
    ModuleMap, Pd, ProjResolution, RightModule,
};

use super::epi::{check_homological_epi, check_ring_epi, HomologicalEpiReport};
use super::ideal::{check_stratifying_ideal, StratifyingReport};
use super::idempotent::find_idempotent_generator;

/// Records the two vanishing hypotheses verified before the cone
/// endomorphism algebra is formed.
#[derive(Debug)]
pub struct HypothesisReport {
    /// First torsion of the target against itself over the source.
    pub tor1_dim: usize,
    /// Derived self-maps of the cone in degree minus one.
    pub neg_ext_dim: usize,
}

/// Optional further certifications of the induced map.
#[derive(Debug)]
pub struct FollowupReport {
    /// Homological-epimorphism check for the induced map.
    pub mu_hom_epi: HomologicalEpiReport,
    /// Projective dimension of the cone algebra as a left module over the
    /// source, restricted along the induced map.
    pub c_left_pd: Pd,
    /// An idempotent generating the kernel ideal, if one was found.
    pub kernel_generator: Option<Vec<Scalar>>,
    /// Whether the kernel ideal is stratifying (absent when no idempotent
    /// generator was found).
    pub kernel_stratifying: Option<bool>,
    /// Full report for the stratifying check, when it ran.
    pub stratifying_report: Option<StratifyingReport>,
}

/// Output of [`construction_two`].
#[derive(Debug)]
pub struct ConstructionTwoResult {
    /// The two-term cone complex of the map, in degrees minus one and zero.
    pub cone_complex: BoundedComplex,
    /// The endomorphism algebra of the cone in the derived category.
    pub c: Arc<Algebra>,
    /// The induced ring map from the source onto the cone algebra.
    pub mu: RingHom,
    pub kernel_dim: usize,
    pub coker_dim: usize,
    /// Dimension of the module maps from the restricted target into the
    /// regular module; this matches `kernel_dim`.
    pub hom_ba_dim: usize,
    /// Dimension of the first extension group of the restricted target by
    /// the regular module; this matches `coker_dim`.
    pub ext1_ba_dim: usize,
    pub hypotheses: HypothesisReport,
    pub followups: Option<FollowupReport>,
}

/// From a ring epimorphism `f: A -> B` with vanishing first torsion of `B`
/// against itself, forms the mapping cone of `f` as a two-term complex of
/// right modules, takes its endomorphism algebra `C` in the derived
/// category, and returns the induced ring map `mu: A -> C` given by acting
/// on both terms by left multiplication. The kernel of `mu` is matched
/// against the space of module maps from `B` to `A`, and its cokernel
/// against the first extension group; both identifications are verified.
pub fn construction_two(
    f: &RingHom,
    cutoff: usize,
    with_followups: bool,
) -> Result<ConstructionTwoResult> {
    let epi = check_ring_epi(f)?;
    if !epi.is_epi {
        return Err(Error::NotRingEpi(epi.coker_tensor_dim));
    }
    let a = Arc::clone(f.source());
    let b = Arc::clone(f.target());
    let field = a.field();
    let a_regular = RightModule::regular(&a);
    let b_module = restrict_along(f, &RightModule::regular(&b))?;
    let b_left = restrict_left_regular(f)?;
    let tor1 = tor_dim(&b_module, &b_left, 1)?;
    if tor1 > 0 {
        return Err(Error::Tor1Nonzero(tor1));
    }

    let u = ModuleMap::new(
        Arc::clone(&a_regular),
        Arc::clone(&b_module),
        f.matrix().clone(),
    )?;
    let cone_complex = cone(&ChainMap::stalk_map(&u, 0))?.complex;

    let neg_ext = derived_hom_dim(&cone_complex, &cone_complex, -1, cutoff)?;
    if neg_ext > 0 {
        return Err(Error::ConeSelfHomBelowZero(neg_ext));
    }

    let end = DerivedEnd::new(&cone_complex, cutoff).map_err(|e| match e {
        Error::ZeroAlgebra => Error::DegenerateCone,
        other => other,
    })?;
    let c = Arc::clone(end.algebra());

    // For an injective map with nonzero cokernel the cone algebra must match
    // the endomorphism algebra of the cokernel module.
    if f.is_injective() {
        let (coker, _) = u.cokernel_module()?;
        if coker.dim() > 0 {
            let plain_end = endomorphism_algebra(&[Arc::clone(&coker)])?;
            if plain_end.algebra().dim() != c.dim() {
                return Err(Error::InternalConsistency(format!(
                    "cone algebra has dimension {}, but the cokernel's endomorphism algebra has dimension {}",
                    c.dim(),
                    plain_end.algebra().dim()
                )));
            }
        }
    }

    // The induced map sends a source element to the class of the chain
    // endomorphism acting by left multiplication in both degrees.
    let mut mu_rows = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        let x = a.basis_vec(i);
        let m_neg = ModuleMap::new(
            cone_complex.module_at(-1),
            cone_complex.module_at(-1),
            a.left_mult_matrix(&x),
        )?;
        let m_zero = ModuleMap::new(
            cone_complex.module_at(0),
            cone_complex.module_at(0),
            b.left_mult_matrix(&f.apply(&x)),
        )?;
        let endo = ChainMap::new(
            cone_complex.clone(),
            cone_complex.clone(),
            vec![(-1, m_neg), (0, m_zero)],
        )?;
        mu_rows.push(end.class_of_endomorphism(&endo)?);
    }
    let mu = RingHom::new(
        Arc::clone(&a),
        Arc::clone(&c),
        Mat::from_rows(field, mu_rows, c.dim())?,
    )?;
    let kernel_dim = a.dim() - mu.rank();
    let coker_dim = c.dim() - mu.rank();

    // Identify the kernel with maps from the restricted target into the
    // regular module: each such map, evaluated at the unit, lands in the
    // kernel, and these evaluations span it.
    let homs = hom_space(&b_module, &a_regular)?;
    let hom_ba_dim = homs.len();
    let ext1_ba_dim = ext_dim(&b_module, &a_regular, 1)?;
    let mut evaluations = Subspace::new(field, a.dim());
    let kernel = mu.kernel_subspace();
    for g in &homs {
        let v = g.apply(b.unit());
        if mu.apply(&v).iter().any(|s| !s.is_zero()) {
            return Err(Error::InternalConsistency(
                "a map evaluated at the unit escapes the kernel of the induced map".into(),
            ));
        }
        evaluations.insert(&v);
    }
    if evaluations.dim() != hom_ba_dim {
        return Err(Error::InternalConsistency(
            "evaluations of the canonical kernel elements are linearly dependent".into(),
        ));
    }
    if !kernel.contains_subspace(&evaluations)
        || kernel_dim != hom_ba_dim
        || coker_dim != ext1_ba_dim
    {
        return Err(Error::InternalConsistency(format!(
            "kernel/cokernel of the induced map (dims {kernel_dim}, {coker_dim}) do not match the Hom/Ext spaces (dims {hom_ba_dim}, {ext1_ba_dim})"
        )));
    }

    let hypotheses = HypothesisReport {
        tor1_dim: tor1,
        neg_ext_dim: neg_ext,
    };

    let followups = if with_followups {
        let mu_hom_epi = check_homological_epi(&mu, cutoff)?;
        let c_left = restrict_left_regular(&mu)?;
        let c_left_pd =
            ProjResolution::of(c_left.as_right_over_opposite(), cutoff.max(2))?.proj_dim();
        let (kernel_generator, kernel_stratifying, stratifying_report) = if kernel_dim == 0 {
            // Zero kernel: generated by the zero idempotent; the quotient
            // map is the identity, which is trivially a homological
            // epimorphism.
            (
                Some(vec![Scalar::zero(field); a.dim()]),
                Some(true),
                None,
            )
        } else {
            match find_idempotent_generator(&a, &kernel)? {
                Some(e) => {
                    let report = check_stratifying_ideal(&a, &e, cutoff)?;
                    let verdict = report.is_stratifying;
                    (Some(e), Some(verdict), Some(report))
                }
                None => (None, None, None),
            }
        };
        Some(FollowupReport {
            mu_hom_epi,
            c_left_pd,
            kernel_generator,
            kernel_stratifying,
            stratifying_report,
        })
    } else {
        None
    };

    Ok(ConstructionTwoResult {
        cone_complex,
        c,
        mu,
        kernel_dim,
        coker_dim,
        hom_ba_dim,
        ext1_ba_dim,
        hypotheses,
        followups,
    })
}

//! Epimorphism tests for ring maps: cokernel-tensor vanishing, torsion
//! vanishing through a degree bound, and the kernel-idempotency
//! biconditional for surjective maps.

use std::sync::Arc;

use crate::algebra::RingHom;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::modrep::{
    gldim, restrict_along, restrict_left_regular, tensor_dim, tor_dim, Bimodule, Pd,
    ProjResolution, RightModule,
};

/// Verdict of the epimorphism test for `f: A -> B`: the map is an
/// epimorphism of rings exactly when the cokernel of `f`, viewed as a right
/// `A`-module, dies after tensoring with `B`.
#[derive(Debug, Clone)]
pub struct RingEpiReport {
    /// Dimension of `B / f(A)`.
    pub coker_dim: usize,
    /// Dimension of `(B / f(A)) (x)_A B`.
    pub coker_tensor_dim: usize,
    pub is_epi: bool,
}

/// The target of `f` as an (source, target)-bimodule: the left action goes
/// through `f`, the right action is multiplication in the target.
pub fn bimodule_along(f: &RingHom) -> Result<Bimodule> {
    let a = f.source();
    let b = f.target();
    let left_action = (0..a.dim())
        .map(|i| b.left_mult_matrix(&f.apply(&a.basis_vec(i))))
        .collect();
    let right_action = (0..b.dim())
        .map(|j| b.right_mult_matrix(&b.basis_vec(j)))
        .collect();
    Bimodule::new(a, b, b.dim(), left_action, right_action)
}

/// Tests whether `f` is an epimorphism in the category of rings.
pub fn check_ring_epi(f: &RingHom) -> Result<RingEpiReport> {
    let b_right = restrict_along(f, &RightModule::regular(f.target()))?;
    let (coker, _) = b_right.quotient(&f.image_subspace())?;
    let coker_dim = coker.dim();
    let coker_tensor_dim = if coker_dim == 0 {
        0
    } else {
        tensor_dim(&coker, &bimodule_along(f)?)?
    };
    Ok(RingEpiReport {
        coker_dim,
        coker_tensor_dim,
        is_epi: coker_tensor_dim == 0,
    })
}

/// Verdict of the torsion-vanishing test on top of the epimorphism test.
///
/// `is_homological_epi` holds when the map is a ring epimorphism and every
/// checked torsion space vanishes. The verdict is definitive when
/// `complete` is set: either the degree bound covers the source's global
/// dimension, or an explicit nonvanishing torsion space was found. With
/// `complete` unset the map merely passed every check up to `degree`.
#[derive(Debug, Clone)]
pub struct HomologicalEpiReport {
    pub ring_epi: RingEpiReport,
    /// Highest homological degree whose torsion space was checked.
    pub degree: usize,
    pub complete: bool,
    /// `dim Tor_i(B, B)` for `i = 1..=degree`.
    pub tor_dims: Vec<usize>,
    pub is_homological_epi: bool,
}

/// Tests whether `f` is a ring epimorphism whose torsion spaces
/// `Tor_i(B, B)` vanish in every positive degree.
///
/// The degrees checked are `1..=d` with `d` the source's global dimension
/// when that is finite, and `cutoff` otherwise (flagged incomplete).
pub fn check_homological_epi(f: &RingHom, cutoff: usize) -> Result<HomologicalEpiReport> {
    let ring_epi = check_ring_epi(f)?;
    if !ring_epi.is_epi {
        return Ok(HomologicalEpiReport {
            ring_epi,
            degree: 0,
            complete: true,
            tor_dims: Vec::new(),
            is_homological_epi: false,
        });
    }
    let (degree, bound_covers) = match gldim(f.source(), cutoff)? {
        Pd::Finite(g) => (g, true),
        Pd::AtLeast(_) => (cutoff, false),
    };
    let mut tor_dims = Vec::with_capacity(degree);
    if degree > 0 {
        let b_right = restrict_along(f, &RightModule::regular(f.target()))?;
        let b_left = restrict_left_regular(f)?;
        let res = ProjResolution::of(&b_right, degree + 1)?;
        for i in 1..=degree {
            tor_dims.push(res.tor_dim(&b_left, i)?);
        }
    }
    let obstructed = tor_dims.iter().any(|&d| d > 0);
    Ok(HomologicalEpiReport {
        ring_epi,
        degree,
        complete: bound_covers || obstructed,
        tor_dims,
        is_homological_epi: !obstructed,
    })
}

/// Verdict of the kernel-idempotency test for a surjective ring map,
/// together with the first torsion dimension that must agree with it.
#[derive(Debug, Clone)]
pub struct KernelIdempotentReport {
    pub kernel_dim: usize,
    pub kernel_square_dim: usize,
    pub is_idempotent: bool,
    /// `dim Tor_1(B, B)`; zero exactly when the kernel squares to itself.
    pub tor1_dim: usize,
}

/// For a surjective ring map, decides whether the kernel ideal squares to
/// itself, and cross-checks the answer against the vanishing of the first
/// torsion space — the two must agree, so a mismatch is reported as an
/// internal inconsistency.
pub fn check_kernel_idempotent(f: &RingHom) -> Result<KernelIdempotentReport> {
    if !f.is_surjective_linear() {
        return Err(Error::NotSurjective {
            rank: f.rank(),
            dim: f.target().dim(),
        });
    }
    let a = f.source();
    let kernel = f.kernel_subspace();
    let mut square = Subspace::zero(a.field(), a.dim());
    for x in kernel.basis() {
        for y in kernel.basis() {
            square.insert(&a.mul_vec(x, y));
        }
    }
    let is_idempotent = square.dim() == kernel.dim();
    let b_right = restrict_along(f, &RightModule::regular(f.target()))?;
    let b_left = restrict_left_regular(f)?;
    let tor1_dim = tor_dim(&b_right, &b_left, 1)?;
    if (tor1_dim == 0) != is_idempotent {
        return Err(Error::InternalConsistency(format!(
            "first torsion dimension {tor1_dim} disagrees with the kernel squaring \
             to itself ({is_idempotent})",
        )));
    }
    Ok(KernelIdempotentReport {
        kernel_dim: kernel.dim(),
        kernel_square_dim: square.dim(),
        is_idempotent,
        tor1_dim,
    })
}

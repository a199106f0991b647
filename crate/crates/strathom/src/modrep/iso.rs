//! Isomorphism testing and direct-sum decomposition of modules.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Field, Mat, Scalar, Subspace};
use crate::modrep::hom::hom_space;
use crate::modrep::module::{direct_sum, Check, ModuleMap, RightModule};

const ISO_SEED: u64 = 0xD15C_0DE5;
const ISO_TRIALS: usize = 32;
const SPLIT_SEED: u64 = 0x5BA1_7011;
const SPLIT_TRIALS: usize = 16;

/// Outcome of an isomorphism test.
///
/// `Yes` carries an explicit isomorphism. `No` is only returned on a sound
/// argument (dimension mismatch, empty Hom space, a common kernel or a
/// proper common image of all homs, a single non-invertible basis map, or
/// an exhaustive evaluation grid that is guaranteed to witness a nonzero
/// determinant polynomial). Otherwise the test reports `Undetermined`.
#[derive(Debug)]
pub enum IsoOutcome {
    Yes(ModuleMap),
    No,
    Undetermined { trials: usize },
}

impl IsoOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoOutcome::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoOutcome::No)
    }
}

fn combo(field: Field, mats: &[&Mat], coeffs: &[Scalar]) -> Mat {
    let mut out = Mat::zeros(field, mats[0].rows(), mats[0].cols());
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

/// Decides whether two modules are isomorphic, producing an explicit
/// isomorphism on success.
pub fn is_isomorphic(m: &Arc<RightModule>, n: &Arc<RightModule>) -> Result<IsoOutcome> {
    let field = m.field();
    if m.dim() != n.dim() {
        return Ok(IsoOutcome::No);
    }
    let d = m.dim();
    if d == 0 {
        return Ok(IsoOutcome::Yes(ModuleMap::zero(m, n)));
    }
    let homs = hom_space(m, n)?;
    if homs.is_empty() {
        return Ok(IsoOutcome::No);
    }
    let k = homs.len();
    let mats: Vec<&Mat> = homs.iter().map(ModuleMap::matrix).collect();

    // Sound obstructions at any dimension: a vector killed by every hom is
    // killed by every combination; a common proper image bounds every
    // combination's rank below d.
    let mut stacked_cols = mats[0].clone();
    for h in &mats[1..] {
        stacked_cols = stacked_cols.hstack(h);
    }
    if !stacked_cols.left_kernel_basis().is_empty() {
        return Ok(IsoOutcome::No);
    }
    let mut joint_image = Subspace::zero(field, d);
    for h in &mats {
        for r in 0..d {
            joint_image.insert(h.row_slice(r));
        }
    }
    if joint_image.dim() < d {
        return Ok(IsoOutcome::No);
    }

    let accept = |mat: Mat| -> Result<IsoOutcome> {
        let map = ModuleMap::build(Arc::clone(m), Arc::clone(n), mat, Check::Sampled)?;
        Ok(IsoOutcome::Yes(map))
    };

    // Basis maps first (deterministic), then seeded random combinations.
    for h in &mats {
        if h.rank() == d {
            return accept((*h).clone());
        }
    }
    if k == 1 {
        // Every candidate is a scalar multiple of the single basis map.
        return Ok(IsoOutcome::No);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
    for _ in 0..ISO_TRIALS {
        let coeffs: Vec<Scalar> = (0..k)
            .map(|_| Scalar::from_i64(field, rng.gen_range(-9..=9)))
            .collect();
        let c = combo(field, &mats, &coeffs);
        if c.rank() == d {
            return accept(c);
        }
    }

    // Exhaustive grid: det of a combination is a polynomial of total degree
    // d, hence degree <= d in each variable; if it vanishes on a grid of
    // d+1 distinct values per variable it is identically zero. Only usable
    // when the field offers d+1 distinct small values.
    let grid_points = d + 1;
    let enough_points = match field {
        Field::Rationals => true,
        Field::Prime(p) => (p as usize) >= grid_points,
    };
    if d <= 4 && k <= 4 && enough_points {
        let mut idx = vec![0usize; k];
        loop {
            let coeffs: Vec<Scalar> = idx
                .iter()
                .map(|&v| Scalar::from_i64(field, v as i64))
                .collect();
            let c = combo(field, &mats, &coeffs);
            if c.rank() == d {
                return accept(c);
            }
            // advance the mixed-radix counter
            let mut pos = 0;
            loop {
                if pos == k {
                    return Ok(IsoOutcome::No);
                }
                idx[pos] += 1;
                if idx[pos] < grid_points {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    Ok(IsoOutcome::Undetermined { trials: ISO_TRIALS })
}

/// Tries to split a copy of `p` off `m`: returns maps `f: p -> m` and
/// `g: m -> p` with `f` followed by `g` the identity of `p`, so that
/// `m = image(f) (+) kernel(g)`. Failure to find a splitting after the
/// seeded trials returns `None` (a sound "no summand" only when the Hom
/// space in either direction vanishes).
pub fn split_off(
    p: &Arc<RightModule>,
    m: &Arc<RightModule>,
) -> Result<Option<(ModuleMap, ModuleMap)>> {
    let field = p.field();
    let d = p.dim();
    if d == 0 || d > m.dim() {
        return Ok(None);
    }
    let hpm = hom_space(p, m)?;
    let hmp = hom_space(m, p)?;
    if hpm.is_empty() || hmp.is_empty() {
        return Ok(None);
    }
    let gmats: Vec<&Mat> = hmp.iter().map(ModuleMap::matrix).collect();
    // For a fixed candidate f, the retraction condition f.g = id_p is
    // linear in the coordinates of g: solve for them exactly.
    let solve_retraction = |fmat: &Mat| -> Option<Mat> {
        let mut cols = Mat::zeros(field, d * d, gmats.len());
        for (j, g) in gmats.iter().enumerate() {
            for (r, s) in fmat.mul(g).flatten().into_iter().enumerate() {
                if !s.is_zero() {
                    cols.set(r, j, s);
                }
            }
        }
        let target = Mat::identity(field, d).flatten();
        let x = cols.solve(&target)?;
        Some(combo(field, &gmats, &x))
    };

    let fmats: Vec<&Mat> = hpm.iter().map(ModuleMap::matrix).collect();
    let mut candidates: Vec<Mat> = fmats.iter().map(|f| (*f).clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    for _ in 0..SPLIT_TRIALS {
        let coeffs: Vec<Scalar> = (0..fmats.len())
            .map(|_| Scalar::from_i64(field, rng.gen_range(-9..=9)))
            .collect();
        candidates.push(combo(field, &fmats, &coeffs));
    }
    for fmat in candidates {
        if fmat.rank() < d {
            continue;
        }
        if let Some(gmat) = solve_retraction(&fmat) {
            let f = ModuleMap::build(Arc::clone(p), Arc::clone(m), fmat, Check::Sampled)?;
            let g = ModuleMap::build(Arc::clone(m), Arc::clone(p), gmat, Check::Sampled)?;
            debug_assert_eq!(
                f.then(&g).expect("endpoints match").matrix(),
                &Mat::identity(field, d)
            );
            return Ok(Some((f, g)));
        }
    }
    Ok(None)
}

/// Greedily decomposes `m` as a direct sum of copies of the pool modules,
/// returning the multiplicity of each pool entry, or `None` when a nonzero
/// remainder admits no further split.
pub fn decompose_into_pool(
    m: &Arc<RightModule>,
    pool: &[Arc<RightModule>],
) -> Result<Option<Vec<usize>>> {
    let mut counts = vec![0usize; pool.len()];
    let mut current = Arc::clone(m);
    'strip: while current.dim() > 0 {
        for (i, p) in pool.iter().enumerate() {
            if let Some((_, g)) = split_off(p, &current)? {
                counts[i] += 1;
                let (rest, _) = g.kernel_module()?;
                current = rest;
                continue 'strip;
            }
        }
        return Ok(None);
    }
    Ok(Some(counts))
}

/// A module written as a direct sum of indecomposable pieces, together with
/// the explicit isomorphisms between the abstract sum and the original.
#[derive(Debug)]
pub struct Decomposition {
    /// The indecomposable pieces, in order.
    pub summands: Vec<Arc<RightModule>>,
    /// The direct sum of `summands`.
    pub total: Arc<RightModule>,
    /// Isomorphism `total -> m`.
    pub to_module: ModuleMap,
    /// Isomorphism `m -> total`, inverse to `to_module`.
    pub from_module: ModuleMap,
}

/// Decomposes a nonzero module into indecomposable direct summands.
///
/// Splittings come from the stabilized kernel/image decomposition of sampled
/// endomorphisms (the Hom basis first, then seeded random combinations).
/// Each piece that refuses to split must present a certificate: its
/// endomorphism ring is local with one-dimensional semisimple part. A piece
/// failing both is reported as an error rather than silently kept.
pub fn indecomposable_decomposition(m: &Arc<RightModule>) -> Result<Decomposition> {
    if m.dim() == 0 {
        return Err(Error::DimensionMismatch(
            "cannot decompose the zero module".into(),
        ));
    }
    let field = m.field();
    let pieces = fitting_pieces(m)?;
    let summands: Vec<Arc<RightModule>> = pieces.iter().map(|(p, _)| Arc::clone(p)).collect();
    let (total, _, _) = direct_sum(&summands)?;
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(total.dim());
    for (_, inc) in &pieces {
        for r in 0..inc.matrix().rows() {
            rows.push(inc.matrix().row_slice(r).to_vec());
        }
    }
    let stacked = Mat::from_rows(field, rows, m.dim())?;
    let inverse = stacked.inverse().ok_or_else(|| {
        Error::InternalConsistency("stacked summand inclusions are not invertible".into())
    })?;
    let to_module = ModuleMap::new(Arc::clone(&total), Arc::clone(m), stacked)?;
    let from_module = ModuleMap::new(Arc::clone(m), Arc::clone(&total), inverse)?;
    Ok(Decomposition {
        summands,
        total,
        to_module,
        from_module,
    })
}

/// Recursively splits `m` along stabilized endomorphisms, returning the
/// pieces with their inclusions into `m`.
fn fitting_pieces(m: &Arc<RightModule>) -> Result<Vec<(Arc<RightModule>, ModuleMap)>> {
    if let Some(psi) = splitting_endo(m)? {
        let (ker, ker_inc) = psi.kernel_module()?;
        let (im, im_inc, _) = psi.image_module()?;
        if ker.dim() + im.dim() != m.dim() {
            return Err(Error::InternalConsistency(
                "kernel and image of a stabilized endomorphism do not fill the module".into(),
            ));
        }
        let mut out = Vec::new();
        for (piece, inc) in fitting_pieces(&ker)? {
            out.push((piece, inc.then(&ker_inc)?));
        }
        for (piece, inc) in fitting_pieces(&im)? {
            out.push((piece, inc.then(&im_inc)?));
        }
        return Ok(out);
    }
    // No splitting found: certify indecomposability through the
    // endomorphism ring being local with scalar semisimple part.
    let end = crate::modrep::hom::endomorphism_algebra(&[Arc::clone(m)])?;
    let rad = end.algebra().radical_basis()?;
    if end.algebra().dim() - rad.len() == 1 {
        return Ok(vec![(Arc::clone(m), ModuleMap::identity(m))]);
    }
    Err(Error::UndecomposableSummand(format!(
        "no splitting endomorphism found for a dimension-{} module whose endomorphism \
         ring has dimension {} over a radical of dimension {}",
        m.dim(),
        end.algebra().dim(),
        rad.len(),
    )))
}

const FITTING_SEED: u64 = 0xF177_1A6B;
const FITTING_TRIALS: usize = 48;

/// Looks for an endomorphism power with proper nonzero stable kernel, so
/// that the module is the direct sum of its kernel and image.
fn splitting_endo(m: &Arc<RightModule>) -> Result<Option<ModuleMap>> {
    let d = m.dim();
    let endos = hom_space(m, m)?;
    if endos.len() <= 1 {
        return Ok(None);
    }
    let field = m.field();
    let emats: Vec<&Mat> = endos.iter().map(ModuleMap::matrix).collect();
    let mut candidates: Vec<Mat> = emats.iter().map(|e| (*e).clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(FITTING_SEED);
    for _ in 0..FITTING_TRIALS {
        let coeffs: Vec<Scalar> = (0..emats.len())
            .map(|_| Scalar::from_i64(field, rng.gen_range(-9..=9)))
            .collect();
        candidates.push(combo(field, &emats, &coeffs));
    }
    for cand in candidates {
        // Square past the dimension so kernel and image stabilize.
        let mut power = cand;
        let mut exponent = 1usize;
        while exponent < d {
            power = power.mul(&power);
            exponent *= 2;
        }
        let r = power.rank();
        if r == 0 || r == d || power.mul(&power).rank() != r {
            continue;
        }
        let psi = ModuleMap::build(Arc::clone(m), Arc::clone(m), power, Check::Sampled)?;
        return Ok(Some(psi));
    }
    Ok(None)
}

/// Whether the action map `A -> End_k(M)` is onto, i.e. the action matrices
/// span the full matrix space — equivalent to `M` staying simple under any
/// field extension.
pub fn is_absolutely_simple(m: &Arc<RightModule>) -> Result<bool> {
    let d = m.dim();
    if d == 0 {
        return Ok(false);
    }
    let mut span = Subspace::zero(m.field(), d * d);
    for i in 0..m.algebra().dim() {
        span.insert(&m.action(i).flatten());
        if span.dim() == d * d {
            return Ok(true);
        }
    }
    Ok(span.dim() == d * d)
}

//! Homs in the derived category: chain maps between projective replacements
//! modulo null-homotopic ones, computed by rank arithmetic on one linear
//! system; derived endomorphism algebras with their composition structure.

use std::sync::Arc;

use crate::algebra::{Algebra, AssocCheck};
use crate::error::{Error, Result};
use crate::linalg::{CoordSolver, Mat, Scalar, Subspace};
use crate::modrep::{hom_space, ModuleMap};

use super::complex::{BoundedComplex, ChainMap};
use super::replace::{proj_resolve_complex, ProjReplacement};

/// Vectorised layout of the space of degreewise maps between two complexes:
/// one matrix block per degree where both sides are nonzero, flattened
/// row-major into a single coordinate vector.
struct BlockLayout {
    /// (degree, rows, cols, offset) per block.
    blocks: Vec<(i64, usize, usize, usize)>,
    total: usize,
}

impl BlockLayout {
    fn between(p: &BoundedComplex, r: &BoundedComplex) -> BlockLayout {
        let mut blocks = Vec::new();
        let mut total = 0usize;
        let window = joint_window(p, r);
        if let Some((lo, hi)) = window {
            for n in lo..=hi {
                let rows = p.dim_at(n);
                let cols = r.dim_at(n);
                if rows > 0 && cols > 0 {
                    blocks.push((n, rows, cols, total));
                    total += rows * cols;
                }
            }
        }
        BlockLayout { blocks, total }
    }

    fn block(&self, degree: i64) -> Option<(usize, usize, usize)> {
        self.blocks
            .iter()
            .find(|(n, _, _, _)| *n == degree)
            .map(|&(_, r, c, o)| (r, c, o))
    }

    /// Reads one block of a coordinate vector back into a matrix.
    fn extract(&self, field: crate::linalg::Field, v: &[Scalar], degree: i64) -> Option<Mat> {
        let (rows, cols, off) = self.block(degree)?;
        let mut m = Mat::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, v[off + i * cols + j].clone());
            }
        }
        Some(m)
    }

    /// Writes a chain map's components into a coordinate vector.
    fn vectorize(&self, field: crate::linalg::Field, f: &ChainMap) -> Vec<Scalar> {
        let mut v = vec![field.zero(); self.total];
        for &(n, rows, cols, off) in &self.blocks {
            let comp = f.component_at(n);
            for i in 0..rows {
                for j in 0..cols {
                    v[off + i * cols + j] = comp.matrix().at(i, j).clone();
                }
            }
        }
        v
    }
}

fn joint_window(a: &BoundedComplex, b: &BoundedComplex) -> Option<(i64, i64)> {
    match (a.span(), b.span()) {
        (None, None) => None,
        (Some(w), None) | (None, Some(w)) => Some(w),
        (Some((a0, a1)), Some((b0, b1))) => Some((a0.min(b0), a1.max(b1))),
    }
}

/// The space of chain maps `p -> r` and its null-homotopic subspace, both
/// inside the vectorised space of degreewise maps.
struct HomotopyClasses {
    layout: BlockLayout,
    /// Basis of the solution space of the chain-map equations.
    cycles: Vec<Vec<Scalar>>,
    /// Span of the maps of the form `s d + d s`.
    boundaries: Subspace,
}

impl HomotopyClasses {
    fn dim(&self) -> usize {
        self.cycles.len() - self.boundaries.dim()
    }
}

/// Chain maps `p -> r` are module maps in each degree commuting with the
/// differentials, so the space is cut out of the degreewise Hom spaces by
/// the equations `f^n d_r^n - d_p^n f^{n+1} = 0`.  The kernel is computed
/// over coordinates in a basis of those Hom spaces (keeping every solution a
/// module map by construction) and expanded back to vectorised maps; the
/// null-homotopic subspace is spanned by running every basis homotopy
/// through `s d + d s`.
fn homotopy_classes(p: &BoundedComplex, r: &BoundedComplex) -> Result<HomotopyClasses> {
    let field = p.algebra().field();
    let layout = BlockLayout::between(p, r);
    let total = layout.total;

    // Basis of the degreewise module-homomorphism space, flattened across
    // blocks.
    let mut basis: Vec<(i64, ModuleMap)> = Vec::new();
    for &(n, _, _, _) in &layout.blocks {
        for b in hom_space(&p.module_at(n), &r.module_at(n))? {
            basis.push((n, b));
        }
    }
    let coords_total = basis.len();

    // Commuting equations over the Hom-space coordinates: the basis map at
    // degree n contributes `b d_r^n` to the equations at n and
    // `-(d_p^n b)` to the ones at n-1.
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    if let Some((lo, hi)) = joint_window(p, r) {
        for n in lo - 1..=hi {
            let er = p.dim_at(n);
            let ec = r.dim_at(n + 1);
            if er == 0 || ec == 0 {
                continue;
            }
            let dr = r.diff_at(n);
            let dp = p.diff_at(n);
            let mut contrib: Vec<(usize, Mat)> = Vec::new();
            for (t, (deg, b)) in basis.iter().enumerate() {
                if *deg == n {
                    contrib.push((t, b.matrix().mul(dr.matrix())));
                } else if *deg == n + 1 {
                    contrib.push((t, dp.matrix().mul(b.matrix()).neg()));
                }
            }
            if contrib.is_empty() {
                continue;
            }
            for i in 0..er {
                for j in 0..ec {
                    let mut row = vec![field.zero(); coords_total];
                    let mut any = false;
                    for (t, m) in &contrib {
                        let val = m.at(i, j);
                        if !val.is_zero() {
                            row[*t] = val.clone();
                            any = true;
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
    }

    let coord_cycles: Vec<Vec<Scalar>> = if coords_total == 0 {
        Vec::new()
    } else if rows.is_empty() {
        Mat::identity(field, coords_total).rows_vec()
    } else {
        Mat::from_rows(field, rows, coords_total)?.kernel_basis()
    };

    // Expand the coordinate kernel back to vectorised maps.  The expansion
    // is injective (the basis maps are independent and the blocks disjoint),
    // so the results stay linearly independent.
    let mut cycles: Vec<Vec<Scalar>> = Vec::new();
    for c in &coord_cycles {
        let mut v = vec![field.zero(); total];
        for (t, (deg, b)) in basis.iter().enumerate() {
            if c[t].is_zero() {
                continue;
            }
            let (brows, bcols, off) = layout
                .block(*deg)
                .expect("every basis map sits in a layout block");
            for i in 0..brows {
                for j in 0..bcols {
                    let x = b.matrix().at(i, j).mul(&c[t]);
                    if !x.is_zero() {
                        v[off + i * bcols + j] = v[off + i * bcols + j].add(&x);
                    }
                }
            }
        }
        cycles.push(v);
    }

    // Null-homotopic maps: run each basis homotopy `s : P^n -> R^{n-1}`
    // through f = s d_r + d_p s and collect the span.
    let mut boundaries = Subspace::zero(field, total);
    if let Some((lo, hi)) = joint_window(p, r) {
        for n in lo..=hi + 1 {
            if p.dim_at(n) == 0 || r.dim_at(n - 1) == 0 {
                continue;
            }
            let dr_in = r.diff_at(n - 1);
            let dp_prev = p.diff_at(n - 1);
            for s in hom_space(&p.module_at(n), &r.module_at(n - 1))? {
                let mut v = vec![field.zero(); total];
                // Contribution to f^n = s * d_r^{n-1}.
                if let Some((_, cols, off)) = layout.block(n) {
                    let m = s.matrix().mul(dr_in.matrix());
                    for i in 0..p.dim_at(n) {
                        for j in 0..cols {
                            let x = m.at(i, j);
                            if !x.is_zero() {
                                v[off + i * cols + j] = x.clone();
                            }
                        }
                    }
                }
                // Contribution to f^{n-1} = d_p^{n-1} * s.
                if let Some((_, cols, off)) = layout.block(n - 1) {
                    let m = dp_prev.matrix().mul(s.matrix());
                    for i in 0..p.dim_at(n - 1) {
                        for j in 0..cols {
                            let x = m.at(i, j);
                            if !x.is_zero() {
                                v[off + i * cols + j] = v[off + i * cols + j].add(x);
                            }
                        }
                    }
                }
                boundaries.insert(&v);
            }
        }
    }

    // Boundaries are chain maps; make sure they ended up inside the cycle
    // span before doing dimension arithmetic with them.
    if boundaries.dim() > 0 {
        let solver = CoordSolver::new(field, total, &cycles);
        for b in boundaries.basis() {
            if solver.coords(b).is_none() {
                return Err(Error::InternalConsistency(
                    "null-homotopic map escaped the chain-map space".into(),
                ));
            }
        }
    }

    Ok(HomotopyClasses {
        layout,
        cycles,
        boundaries,
    })
}

/// `dim Hom_{D}(x, y[n])`: chain maps between the projective replacements,
/// modulo homotopy.
pub fn derived_hom_dim(
    x: &BoundedComplex,
    y: &BoundedComplex,
    n: i64,
    cutoff: usize,
) -> Result<usize> {
    let px = proj_resolve_complex(x, cutoff)?.complex;
    let py = proj_resolve_complex(y, cutoff)?.complex;
    Ok(homotopy_classes(&px, &py.shift(n))?.dim())
}

/// Whether all self-Homs of `x` outside degree 0 vanish; returns the
/// offending shift degrees otherwise.  The window checked is the one forced
/// by the projective replacement's degree span: outside it every chain map
/// space is zero.
pub fn is_exceptional(x: &BoundedComplex, cutoff: usize) -> Result<(bool, Vec<i64>)> {
    let p = proj_resolve_complex(x, cutoff)?.complex;
    let reach = match p.span() {
        Some((lo, hi)) => hi - lo,
        None => return Ok((true, Vec::new())),
    };
    let mut offending = Vec::new();
    for n in -reach..=reach {
        if n == 0 {
            continue;
        }
        if homotopy_classes(&p, &p.shift(n))?.dim() > 0 {
            offending.push(n);
        }
    }
    Ok((offending.is_empty(), offending))
}

/// The degree-0 self-Hom algebra of a complex in the derived category,
/// retaining the data needed to locate the class of any concrete chain
/// endomorphism of the original complex.
pub struct DerivedEnd {
    replacement: ProjReplacement,
    layout: BlockLayout,
    /// Coordinates: boundary basis first, then class representatives.
    solver: CoordSolver,
    boundary_count: usize,
    representatives: Vec<Vec<Scalar>>,
    algebra: Arc<Algebra>,
}

impl DerivedEnd {
    pub fn new(x: &BoundedComplex, cutoff: usize) -> Result<DerivedEnd> {
        let replacement = proj_resolve_complex(x, cutoff)?;
        let p = replacement.complex.clone();
        let field = p.algebra().field();
        let classes = homotopy_classes(&p, &p)?;

        let mut span = classes.boundaries.clone();
        let mut representatives: Vec<Vec<Scalar>> = Vec::new();
        for z in &classes.cycles {
            if span.insert(z) {
                representatives.push(z.clone());
            }
        }
        if representatives.is_empty() {
            return Err(Error::ZeroAlgebra);
        }
        let k = representatives.len();

        let mut gens: Vec<Vec<Scalar>> = classes.boundaries.basis().to_vec();
        let boundary_count = gens.len();
        gens.extend(representatives.iter().cloned());
        let solver = CoordSolver::new(field, classes.layout.total, &gens);

        // Composition: the product of classes i and j applies j first, then
        // i; per degree that is the matrix product B_j^n * B_i^n in row
        // convention.
        let mut mult = vec![field.zero(); k * k * k];
        for i in 0..k {
            for j in 0..k {
                let prod =
                    compose_vectors(&classes.layout, field, &representatives[j], &representatives[i]);
                let coords = solver.coords(&prod).ok_or_else(|| {
                    Error::InternalConsistency(
                        "product of chain-map classes left the cycle space".into(),
                    )
                })?;
                for t in 0..k {
                    mult[(i * k + j) * k + t] = coords[boundary_count + t].clone();
                }
            }
        }

        let identity = classes
            .layout
            .vectorize(field, &ChainMap::identity(&p));
        let id_coords = solver.coords(&identity).ok_or_else(|| {
            Error::InternalConsistency("identity chain map is not a cycle".into())
        })?;
        let unit: Vec<Scalar> = id_coords[boundary_count..].to_vec();

        let labels = (0..k).map(|t| format!("c{t}")).collect();
        let algebra = Algebra::build(
            field,
            labels,
            mult,
            unit,
            None,
            None,
            None,
            AssocCheck::Full,
        )?;

        Ok(DerivedEnd {
            replacement,
            layout: classes.layout,
            solver,
            boundary_count,
            representatives,
            algebra,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn replacement(&self) -> &ProjReplacement {
        &self.replacement
    }

    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    /// The class of a chain endomorphism of the original complex, expressed
    /// in the basis of `algebra()`: lifts `phi` through the replacement
    /// quasi-isomorphism up to homotopy, then reads off coordinates.
    pub fn class_of_endomorphism(&self, phi: &ChainMap) -> Result<Vec<Scalar>> {
        let p = &self.replacement.complex;
        let q = &self.replacement.map;
        let x = q.target();
        if !x.same_shape(phi.source()) || !x.same_shape(phi.target()) {
            return Err(Error::DimensionMismatch(
                "endomorphism does not act on the complex this algebra describes".into(),
            ));
        }
        let field = p.algebra().field();

        // Unknowns: a chain map g : P -> P and a homotopy s with
        // g q - q phi = s d_X + d_P s; solve jointly over coordinates in the
        // degreewise module-homomorphism spaces, read off g.
        let glayout = &self.layout;
        let mut gbasis: Vec<(i64, ModuleMap)> = Vec::new();
        for &(n, _, _, _) in &glayout.blocks {
            for b in hom_space(&p.module_at(n), &p.module_at(n))? {
                gbasis.push((n, b));
            }
        }
        let mut sbasis: Vec<(i64, ModuleMap)> = Vec::new();
        if let Some((lo, hi)) = joint_window(p, x) {
            for n in lo..=hi + 1 {
                if p.dim_at(n) == 0 || x.dim_at(n - 1) == 0 {
                    continue;
                }
                for b in hom_space(&p.module_at(n), &x.module_at(n - 1))? {
                    sbasis.push((n, b));
                }
            }
        }
        let gcount = gbasis.len();
        let total = gcount + sbasis.len();

        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();

        // Chain-map equations for g: g^n d_P^n - d_P^n g^{n+1} = 0.
        if let Some((lo, hi)) = p.span() {
            for n in lo - 1..=hi {
                let er = p.dim_at(n);
                let ec = p.dim_at(n + 1);
                if er == 0 || ec == 0 {
                    continue;
                }
                let d = p.diff_at(n);
                let mut contrib: Vec<(usize, Mat)> = Vec::new();
                for (t, (deg, b)) in gbasis.iter().enumerate() {
                    if *deg == n {
                        contrib.push((t, b.matrix().mul(d.matrix())));
                    } else if *deg == n + 1 {
                        contrib.push((t, d.matrix().mul(b.matrix()).neg()));
                    }
                }
                if contrib.is_empty() {
                    continue;
                }
                for i in 0..er {
                    for j in 0..ec {
                        let mut row = vec![field.zero(); total];
                        let mut any = false;
                        for (t, m) in &contrib {
                            let val = m.at(i, j);
                            if !val.is_zero() {
                                row[*t] = val.clone();
                                any = true;
                            }
                        }
                        if any {
                            rows.push(row);
                            rhs.push(field.zero());
                        }
                    }
                }
            }
        }

        // Lifting equations: g^n q^n - s^n d_X^{n-1} - d_P^n s^{n+1}
        //   = (q phi)^n for every degree n with P^n and X^n data.
        let qphi = q.then(phi)?;
        if let Some((lo, hi)) = joint_window(p, x) {
            for n in lo..=hi {
                let pr = p.dim_at(n);
                let xc = x.dim_at(n);
                if pr == 0 || xc == 0 {
                    // No equation: the right-hand side lives in a zero
                    // space or has no source.
                    continue;
                }
                let qm = q.component_at(n);
                let target = qphi.component_at(n);
                let dx_in = x.diff_at(n - 1);
                let dp = p.diff_at(n);
                let mut contrib: Vec<(usize, Mat)> = Vec::new();
                for (t, (deg, b)) in gbasis.iter().enumerate() {
                    if *deg == n {
                        contrib.push((t, b.matrix().mul(qm.matrix())));
                    }
                }
                for (u, (deg, b)) in sbasis.iter().enumerate() {
                    if *deg == n {
                        contrib.push((gcount + u, b.matrix().mul(dx_in.matrix()).neg()));
                    } else if *deg == n + 1 {
                        contrib.push((gcount + u, dp.matrix().mul(b.matrix()).neg()));
                    }
                }
                for i in 0..pr {
                    for j in 0..xc {
                        let mut row = vec![field.zero(); total];
                        for (t, m) in &contrib {
                            let val = m.at(i, j);
                            if !val.is_zero() {
                                row[*t] = val.clone();
                            }
                        }
                        rows.push(row);
                        rhs.push(target.matrix().at(i, j).clone());
                    }
                }
            }
        }

        let solution = if rows.is_empty() {
            vec![field.zero(); total]
        } else {
            let e = Mat::from_rows(field, rows, total)?;
            e.solve(&rhs).ok_or_else(|| {
                Error::InternalConsistency(
                    "endomorphism does not lift through the projective replacement".into(),
                )
            })?
        };

        // Expand g's coordinates back to the vectorised map space.
        let mut g = vec![field.zero(); glayout.total];
        for (t, (deg, b)) in gbasis.iter().enumerate() {
            if solution[t].is_zero() {
                continue;
            }
            let (brows, bcols, off) = glayout
                .block(*deg)
                .expect("every basis map sits in a layout block");
            for i in 0..brows {
                for j in 0..bcols {
                    let val = b.matrix().at(i, j).mul(&solution[t]);
                    if !val.is_zero() {
                        g[off + i * bcols + j] = g[off + i * bcols + j].add(&val);
                    }
                }
            }
        }
        let coords = self.solver.coords(&g).ok_or_else(|| {
            Error::InternalConsistency("lifted endomorphism is not a cycle".into())
        })?;
        Ok(coords[self.boundary_count..].to_vec())
    }
}

/// Per-degree matrix product `first^n * second^n` on vectorised maps (row
/// convention: the composite applies `first`, then `second`).
fn compose_vectors(
    layout: &BlockLayout,
    field: crate::linalg::Field,
    first: &[Scalar],
    second: &[Scalar],
) -> Vec<Scalar> {
    let mut out = vec![field.zero(); layout.total];
    for &(n, rows, cols, off) in &layout.blocks {
        let a = layout
            .extract(field, first, n)
            .expect("block exists by construction");
        let b = layout
            .extract(field, second, n)
            .expect("block exists by construction");
        let prod = a.mul(&b);
        debug_assert!(rows == prod.rows() && cols == prod.cols());
        for i in 0..rows {
            for j in 0..cols {
                out[off + i * cols + j] = prod.at(i, j).clone();
            }
        }
    }
    out
}

/// The algebra of degree-0 chain self-maps of `x` modulo homotopy.
pub fn derived_end_algebra(x: &BoundedComplex, cutoff: usize) -> Result<Arc<Algebra>> {
    Ok(Arc::clone(DerivedEnd::new(x, cutoff)?.algebra()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{from_quiver, QuiverSpec};
    use crate::error::Error;
    use crate::linalg::Field;
    use crate::modrep::{
        direct_sum, ext_dim, hom_dim, minimal_left_approximation, projective_of_idempotent,
        simple_modules, ModuleMap, RightModule,
    };
    use super::super::complex::cone;

    const Q: Field = Field::Rationals;

    fn spec(
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[&[&str]],
    ) -> QuiverSpec {
        QuiverSpec {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(n, s, t)| (n.to_string(), s.to_string(), t.to_string()))
                .collect(),
            relations: relations
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect())
                .collect(),
        }
    }

    fn kronecker(field: Field) -> Arc<Algebra> {
        from_quiver(
            field,
            &spec(&["1", "2"], &[("a", "2", "1"), ("b", "2", "1")], &[]),
        )
        .unwrap()
    }

    fn three_vertex() -> Arc<Algebra> {
        from_quiver(
            Q,
            &spec(
                &["1", "2", "3"],
                &[
                    ("alpha", "1", "2"),
                    ("beta", "2", "3"),
                    ("gamma", "2", "3"),
                    ("delta", "3", "1"),
                ],
                &[
                    &["alpha", "beta"],
                    &["delta", "alpha"],
                    &["gamma", "delta"],
                ],
            ),
        )
        .unwrap()
    }

    fn preprojective(a: &Arc<Algebra>, i: usize) -> Arc<RightModule> {
        let field = a.field();
        let d = 2 * i + 1;
        let mut e1 = Mat::zeros(field, d, d);
        let mut e2 = Mat::zeros(field, d, d);
        for r in 0..i {
            e1.set(r, r, field.one());
        }
        for r in i..d {
            e2.set(r, r, field.one());
        }
        let mut ra = Mat::zeros(field, d, d);
        let mut rb = Mat::zeros(field, d, d);
        for r in 0..i {
            ra.set(r, i + r, field.one());
            rb.set(r, i + r + 1, field.one());
        }
        RightModule::new(Arc::clone(a), d, vec![e1, e2, ra, rb]).unwrap()
    }

    /// The regular representation of the Kronecker quiver with both arrows
    /// acting by the same rank-one map: a module with one-dimensional
    /// pieces at both vertices and a self-extension.
    fn tube(a: &Arc<Algebra>) -> Arc<RightModule> {
        let field = a.field();
        let mut e1 = Mat::zeros(field, 2, 2);
        e1.set(0, 0, field.one());
        let mut e2 = Mat::zeros(field, 2, 2);
        e2.set(1, 1, field.one());
        let mut ra = Mat::zeros(field, 2, 2);
        ra.set(0, 1, field.one());
        let rb = ra.clone();
        RightModule::new(Arc::clone(a), 2, vec![e1, e2, ra, rb]).unwrap()
    }

    fn stalk0(m: &Arc<RightModule>) -> BoundedComplex {
        BoundedComplex::stalk(Arc::clone(m), 0)
    }

    #[test]
    fn stalk_homs_agree_with_ext() {
        let a = three_vertex();
        let simples = simple_modules(&a).unwrap();
        for si in &simples {
            for sj in &simples {
                for n in 0..=3i64 {
                    let viaext = ext_dim(si, sj, n as usize).unwrap();
                    let viader =
                        derived_hom_dim(&stalk0(si), &stalk0(sj), n, 8).unwrap();
                    assert_eq!(viader, viaext, "degree {n}");
                }
                assert_eq!(derived_hom_dim(&stalk0(si), &stalk0(sj), -1, 8).unwrap(), 0);
            }
        }
    }

    #[test]
    fn projective_stalk_has_scalar_self_homs_only() {
        let a = kronecker(Q);
        let prims = a.primitive_idempotents().unwrap().to_vec();
        let p = projective_of_idempotent(&a, &prims[0]).unwrap().0;
        let x = stalk0(&p);
        for n in [-2i64, -1, 1, 2] {
            assert_eq!(derived_hom_dim(&x, &x, n, 4).unwrap(), 0);
        }
        assert_eq!(derived_hom_dim(&x, &x, 0, 4).unwrap(), 1);
        let (ok, offending) = is_exceptional(&x, 4).unwrap();
        assert!(ok);
        assert!(offending.is_empty());
    }

    #[test]
    fn shift_relates_hom_degrees() {
        let a = three_vertex();
        let simples = simple_modules(&a).unwrap();
        let x = stalk0(&simples[0]);
        let y = stalk0(&simples[2]);
        for k in [-1i64, 1, 2] {
            for n in [-1i64, 0, 1, 2] {
                assert_eq!(
                    derived_hom_dim(&x, &y.shift(k), n, 8).unwrap(),
                    derived_hom_dim(&x, &y, n + k, 8).unwrap(),
                    "k = {k}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn contractible_cone_has_no_homs() {
        let a = three_vertex();
        let simples = simple_modules(&a).unwrap();
        let x = stalk0(&simples[0]);
        let tri = cone(&ChainMap::identity(&x)).unwrap();
        assert_eq!(derived_hom_dim(&tri.complex, &tri.complex, 0, 8).unwrap(), 0);
        assert_eq!(derived_hom_dim(&tri.complex, &x, 0, 8).unwrap(), 0);
        assert_eq!(derived_hom_dim(&x, &tri.complex, 0, 8).unwrap(), 0);
        assert_eq!(
            derived_end_algebra(&tri.complex, 8).unwrap_err(),
            Error::ZeroAlgebra
        );
    }

    #[test]
    fn derived_end_of_a_stalk_matches_module_endomorphisms() {
        let a = kronecker(Q);
        let m = direct_sum(&[preprojective(&a, 1), preprojective(&a, 2)])
            .unwrap()
            .0;
        let end = derived_end_algebra(&stalk0(&m), 4).unwrap();
        assert_eq!(end.dim(), hom_dim(&m, &m).unwrap());
        assert_eq!(end.dim(), 4);

        let b = three_vertex();
        let simples = simple_modules(&b).unwrap();
        let end1 = derived_end_algebra(&stalk0(&simples[0]), 8).unwrap();
        assert_eq!(end1.dim(), 1);
    }

    #[test]
    fn endomorphism_classes_transport_through_the_replacement() {
        let a = three_vertex();
        let simples = simple_modules(&a).unwrap();
        let m2 = direct_sum(&[Arc::clone(&simples[0]), Arc::clone(&simples[0])])
            .unwrap()
            .0;
        let x = stalk0(&m2);
        let end = DerivedEnd::new(&x, 8).unwrap();
        assert_eq!(end.class_count(), 4);

        let id_class = end
            .class_of_endomorphism(&ChainMap::identity(&x))
            .unwrap();
        assert_eq!(id_class, end.algebra().unit().to_vec());

        let field = a.field();
        let mut swap = Mat::zeros(field, 2, 2);
        swap.set(0, 1, field.one());
        swap.set(1, 0, field.one());
        let swap = ModuleMap::new(Arc::clone(&m2), Arc::clone(&m2), swap).unwrap();
        let s_class = end
            .class_of_endomorphism(&ChainMap::stalk_map(&swap, 0))
            .unwrap();
        assert_ne!(s_class, id_class);
        // The swap squares to the identity, and classes compose like the
        // endomorphisms they came from.
        assert_eq!(end.algebra().mul_vec(&s_class, &s_class), id_class);
    }

    #[test]
    fn null_homotopic_endomorphisms_have_zero_class() {
        // Over k[x]/(x^2) the two-term complex A --x--> A of projectives is
        // its own replacement; f = s d + d s built from the identity
        // homotopy s : P^0 -> P^{-1} is a nonzero chain map whose class
        // vanishes, while the identity keeps the unit's class.
        let a = from_quiver(Q, &spec(&["v"], &[("x", "v", "v")], &[&["x", "x"]])).unwrap();
        let reg = RightModule::regular(&a);
        let field = a.field();
        let xelem = vec![field.zero(), field.one()];
        let d = ModuleMap::new(
            Arc::clone(&reg),
            Arc::clone(&reg),
            a.left_mult_matrix(&xelem),
        )
        .unwrap();
        let p = BoundedComplex::new(
            Arc::clone(&a),
            -1,
            vec![Arc::clone(&reg), Arc::clone(&reg)],
            vec![d.clone()],
        )
        .unwrap();

        let s0 = ModuleMap::identity(&reg); // P^0 -> P^{-1}
        let f_at_0 = s0.then(&d).unwrap();
        let f_at_minus1 = d.then(&s0).unwrap();
        let f = ChainMap::new(
            p.clone(),
            p.clone(),
            vec![(0, f_at_0), (-1, f_at_minus1)],
        )
        .unwrap();
        assert!(!f.is_zero());

        let end = DerivedEnd::new(&p, 8).unwrap();
        let class = end.class_of_endomorphism(&f).unwrap();
        assert!(class.iter().all(|c| c.is_zero()));
        let id_class = end
            .class_of_endomorphism(&ChainMap::identity(&p))
            .unwrap();
        assert_eq!(id_class, end.algebra().unit().to_vec());
    }

    #[test]
    fn simple_with_periodic_resolution_structure_is_exceptional() {
        let a = three_vertex();
        let simples = simple_modules(&a).unwrap();
        let (ok, offending) = is_exceptional(&stalk0(&simples[0]), 8).unwrap();
        assert!(ok, "offending degrees: {offending:?}");
    }

    #[test]
    fn module_with_self_extension_is_not_exceptional() {
        let a = kronecker(Q);
        let m = tube(&a);
        let (ok, offending) = is_exceptional(&stalk0(&m), 4).unwrap();
        assert!(!ok);
        assert_eq!(offending, vec![1]);
    }

    #[test]
    fn partial_tilting_cone_end_algebra_is_trivial() {
        // Approximate the regular module by copies of the projective
        // slice of dimension three; the cone of the approximation has a
        // one-dimensional endomorphism algebra.
        let a = kronecker(Q);
        let regular = RightModule::regular(&a);
        let pool = vec![preprojective(&a, 1)];
        let (u, counts) = minimal_left_approximation(&regular, &pool).unwrap();
        assert_eq!(counts, vec![3]);
        assert!(u.is_injective());
        let coker = u.cokernel_module().unwrap().0;
        assert_eq!(coker.dim(), 5);
        let tri = cone(&ChainMap::stalk_map(&u, 0)).unwrap();
        let end = derived_end_algebra(&tri.complex, 4).unwrap();
        assert_eq!(end.dim(), 1);
        assert_eq!(end.dim(), hom_dim(&coker, &coker).unwrap());
    }

    #[test]
    fn partial_tilting_cone_end_algebra_is_a_matrix_algebra() {
        // Same construction one slice higher, over a prime field to keep
        // the larger linear systems fast; the endomorphism algebra of the
        // cone is nine-dimensional.
        let a = kronecker(Field::Prime(101));
        let regular = RightModule::regular(&a);
        let pool = vec![preprojective(&a, 2)];
        let (u, counts) = minimal_left_approximation(&regular, &pool).unwrap();
        assert_eq!(counts, vec![5]);
        assert!(u.is_injective());
        let coker = u.cokernel_module().unwrap().0;
        assert_eq!(coker.dim(), 21);
        let tri = cone(&ChainMap::stalk_map(&u, 0)).unwrap();
        let end = derived_end_algebra(&tri.complex, 4).unwrap();
        assert_eq!(end.dim(), 9);
        assert_eq!(end.dim(), hom_dim(&coker, &coker).unwrap());
    }
}

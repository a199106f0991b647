//! Projective covers, minimal projective resolutions, Ext, Tor, projective
//! and global dimension.
//!
//! Resolutions are built from the idempotent-slice projectives `e_i A`. A
//! differential between direct sums of such projectives is stored as an
//! [`ElemMat`]: a matrix of algebra elements `z` with `z = e_j z e_i`,
//! acting by left multiplication. Ext and Tor against a module `N` then
//! reduce to linear algebra on the slices `N e_i` and `e_i N`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{CoordSolver, Mat, Scalar, Subspace};
use crate::modrep::hom::hom_dim;
use crate::modrep::module::{
    direct_sum, projective_of_idempotent, Check, ModuleMap, RightModule,
};
use crate::modrep::tensor::LeftModule;

/// A projective dimension: known exactly, or only bounded below because the
/// resolution was cut off.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pd {
    Finite(usize),
    AtLeast(usize),
}

impl Pd {
    pub fn finite(self) -> Option<usize> {
        match self {
            Pd::Finite(n) => Some(n),
            Pd::AtLeast(_) => None,
        }
    }

    pub fn lower_bound(self) -> usize {
        match self {
            Pd::Finite(n) | Pd::AtLeast(n) => n,
        }
    }
}

impl fmt::Display for Pd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pd::Finite(n) => write!(f, "{n}"),
            Pd::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

/// A matrix of algebra elements describing a module map
/// `(+)_s e_{src[s]} A -> (+)_t e_{tgt[t]} A`, the `(s, t)` component
/// acting by left multiplication with `entries[s][t]`, an element of
/// `e_{tgt[t]} A e_{src[s]}`.
#[derive(Debug, Clone)]
pub struct ElemMat {
    algebra: Arc<Algebra>,
    source_idems: Vec<usize>,
    target_idems: Vec<usize>,
    entries: Vec<Vec<Vec<Scalar>>>,
}

impl ElemMat {
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn source_idems(&self) -> &[usize] {
        &self.source_idems
    }

    pub fn target_idems(&self) -> &[usize] {
        &self.target_idems
    }

    pub fn entry(&self, s: usize, t: usize) -> &[Scalar] {
        &self.entries[s][t]
    }

    pub fn is_zero(&self) -> bool {
        self.entries
            .iter()
            .all(|row| row.iter().all(|z| z.iter().all(Scalar::is_zero)))
    }
}

/// A projective cover `P -> M`: the multiset of idempotent indices of `P`,
/// the concrete direct sum, and the covering map.
pub struct Cover {
    pub term: Vec<usize>,
    pub module: Arc<RightModule>,
    pub map: ModuleMap,
}

/// Cached data for one idempotent-slice projective `e_j A`.
struct ProjData {
    module: Arc<RightModule>,
    /// Basis of the summand written as algebra elements (rows).
    basis_in_algebra: Mat,
    /// Coordinates of `e_j` itself in the summand basis.
    e_coords: Vec<Scalar>,
}

fn build_proj_cache(algebra: &Arc<Algebra>, prims: &[Vec<Scalar>]) -> Result<Vec<ProjData>> {
    let field = algebra.field();
    let mut cache = Vec::with_capacity(prims.len());
    for (j, e) in prims.iter().enumerate() {
        let (module, incl) = projective_of_idempotent(algebra, e)?;
        let basis_in_algebra = incl.matrix().clone();
        let solver = CoordSolver::new(field, algebra.dim(), &basis_in_algebra.rows_vec());
        let e_coords = solver.coords(e).ok_or_else(|| {
            Error::InternalConsistency(format!(
                "idempotent {j} does not lie in its own slice projective"
            ))
        })?;
        cache.push(ProjData {
            module,
            basis_in_algebra,
            e_coords,
        });
    }
    Ok(cache)
}

fn cover_with(
    cache: &[ProjData],
    prims: &[Vec<Scalar>],
    m: &Arc<RightModule>,
) -> Result<Cover> {
    let field = m.field();
    if m.dim() == 0 {
        let zero = RightModule::zero(Arc::clone(m.algebra()));
        let map = ModuleMap::zero(&zero, m);
        return Ok(Cover {
            term: Vec::new(),
            module: zero,
            map,
        });
    }
    let rad = m.radical_submodule()?;
    let (top, tproj) = m.quotient(&rad)?;
    // Greedy choice of generators: a slice vector is accepted when its
    // class lies outside the submodule of the top covered so far. Each
    // accepted vector generates exactly one simple summand of the top, so
    // the multiset of accepted idempotents matches the top of M and the
    // resulting cover is minimal; surjectivity follows by Nakayama.
    let mut covered = Subspace::zero(field, top.dim());
    let mut chosen: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for (j, e) in prims.iter().enumerate() {
        for v in m.idempotent_slice_basis(e) {
            let tv = tproj.apply(&v);
            if covered.contains(&tv) {
                continue;
            }
            chosen.push((j, v));
            for w in top.submodule_generated(&[tv]).basis() {
                covered.insert(w);
            }
        }
    }
    if covered.dim() != top.dim() {
        return Err(Error::InternalConsistency(
            "slice vectors failed to span the top of the module".into(),
        ));
    }
    let parts: Vec<Arc<RightModule>> = chosen
        .iter()
        .map(|(j, _)| Arc::clone(&cache[*j].module))
        .collect();
    let (p, _, _) = direct_sum(&parts)?;
    let mut matrix = Mat::zeros(field, p.dim(), m.dim());
    let mut off = 0usize;
    for (j, v) in &chosen {
        let data = &cache[*j];
        for r in 0..data.module.dim() {
            let u = data.basis_in_algebra.row_slice(r);
            let row = Mat::row_vector(field, v)
                .expect("validated")
                .mul(&m.action_of(u));
            for c in 0..m.dim() {
                let s = row.at(0, c);
                if !s.is_zero() {
                    matrix.set(off + r, c, s.clone());
                }
            }
        }
        off += data.module.dim();
    }
    let map = ModuleMap::build(Arc::clone(&p), Arc::clone(m), matrix, Check::Sampled)?;
    if map.rank() != m.dim() {
        return Err(Error::InternalConsistency(
            "projective cover candidate is not surjective".into(),
        ));
    }
    let prad = p.radical_submodule()?;
    if !prad.contains_subspace(&map.kernel_subspace()) {
        return Err(Error::InternalConsistency(
            "projective cover candidate is not minimal".into(),
        ));
    }
    Ok(Cover {
        term: chosen.into_iter().map(|(j, _)| j).collect(),
        module: p,
        map,
    })
}

/// The projective cover of a module over an algebra with recorded primitive
/// idempotents.
pub fn projective_cover(m: &Arc<RightModule>) -> Result<Cover> {
    let algebra = Arc::clone(m.algebra());
    let prims = algebra
        .primitive_idempotents()
        .ok_or_else(|| {
            Error::MissingPrimitiveIdempotents(
                "projective covers need primitive idempotents".into(),
            )
        })?
        .to_vec();
    let cache = build_proj_cache(&algebra, &prims)?;
    cover_with(&cache, &prims, m)
}

/// A minimal projective resolution, cut off at a maximal homological
/// degree. Because every cover is minimal, the resolution stops exactly at
/// the projective dimension whenever that is within the cutoff.
pub struct ProjResolution {
    module: Arc<RightModule>,
    prims: Vec<Vec<Scalar>>,
    terms: Vec<Vec<usize>>,
    term_modules: Vec<Arc<RightModule>>,
    augmentation: ModuleMap,
    /// `concrete_diffs[k]` is `d_{k+1}: P_{k+1} -> P_k`.
    concrete_diffs: Vec<ModuleMap>,
    elem_diffs: Vec<ElemMat>,
    complete: bool,
}

impl ProjResolution {
    pub fn of(m: &Arc<RightModule>, cutoff: usize) -> Result<ProjResolution> {
        let algebra = Arc::clone(m.algebra());
        let prims = algebra
            .primitive_idempotents()
            .ok_or_else(|| {
                Error::MissingPrimitiveIdempotents(
                    "projective resolutions need primitive idempotents".into(),
                )
            })?
            .to_vec();
        let cache = build_proj_cache(&algebra, &prims)?;
        let cover0 = cover_with(&cache, &prims, m)?;
        let mut terms = vec![cover0.term];
        let mut term_modules = vec![Arc::clone(&cover0.module)];
        let augmentation = cover0.map.clone();
        let mut concrete_diffs: Vec<ModuleMap> = Vec::new();
        let mut elem_diffs: Vec<ElemMat> = Vec::new();
        let mut last_cover_map = cover0.map;
        let mut complete = false;
        loop {
            let (kernel, incl) = last_cover_map.kernel_module()?;
            if kernel.dim() == 0 {
                complete = true;
                break;
            }
            if terms.len() == cutoff + 1 {
                break;
            }
            let cover = cover_with(&cache, &prims, &kernel)?;
            let d = cover.map.then(&incl)?;
            let n = terms.len();
            elem_diffs.push(extract_elem(
                &algebra,
                &cache,
                &cover.term,
                &terms[n - 1],
                &d,
            )?);
            terms.push(cover.term.clone());
            term_modules.push(Arc::clone(&cover.module));
            concrete_diffs.push(d);
            last_cover_map = cover.map;
        }
        Ok(ProjResolution {
            module: Arc::clone(m),
            prims,
            terms,
            term_modules,
            augmentation,
            concrete_diffs,
            elem_diffs,
            complete,
        })
    }

    pub fn module(&self) -> &Arc<RightModule> {
        &self.module
    }

    /// Highest homological degree with a computed term.
    pub fn len(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Idempotent indices of the degree-`n` term (empty past the end).
    pub fn term(&self, n: usize) -> &[usize] {
        self.terms.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn term_module(&self, n: usize) -> Option<&Arc<RightModule>> {
        self.term_modules.get(n)
    }

    pub fn augmentation(&self) -> &ModuleMap {
        &self.augmentation
    }

    /// `d_n: P_n -> P_{n-1}` as a concrete map, for `1 <= n <= len`.
    pub fn concrete_diff(&self, n: usize) -> Option<&ModuleMap> {
        if n == 0 {
            return None;
        }
        self.concrete_diffs.get(n - 1)
    }

    /// `d_n` as an element matrix, for `1 <= n <= len`.
    pub fn elem_diff(&self, n: usize) -> Option<&ElemMat> {
        if n == 0 {
            return None;
        }
        self.elem_diffs.get(n - 1)
    }

    pub fn proj_dim(&self) -> Pd {
        if self.complete {
            Pd::Finite(self.terms.len() - 1)
        } else {
            Pd::AtLeast(self.terms.len())
        }
    }

    fn ensure_degree(&self, needed: usize) -> Result<()> {
        if !self.complete && self.terms.len() < needed + 1 {
            return Err(Error::IncompleteResolution {
                needed,
                cutoff: self.terms.len() - 1,
            });
        }
        Ok(())
    }

    /// `dim Ext^i(M, N)` computed from the cochain complex of slice spaces
    /// `(+)_s N e_{i_s}`.
    pub fn ext_dim(&self, n: &Arc<RightModule>, i: usize) -> Result<usize> {
        if !self.module.algebra().same_as(n.algebra()) {
            return Err(Error::AlgebraMismatch(
                "Ext against a module over a different algebra".into(),
            ));
        }
        self.ensure_degree(i + 1)?;
        let field = n.field();
        // Slice bases and coordinate solvers per idempotent index, built
        // once per call.
        let mut slices: HashMap<usize, (Vec<Vec<Scalar>>, CoordSolver)> = HashMap::new();
        for &j in self.term(i) {
            slices.entry(j).or_insert_with(|| {
                let basis = n.idempotent_slice_basis(&self.prims[j]);
                let solver = CoordSolver::new(field, n.dim(), &basis);
                (basis, solver)
            });
        }
        let dim_i: usize = self.term(i).iter().map(|&j| slices[&j].0.len()).sum();
        let r_i = self.coboundary_rank(n, &mut slices, i)?;
        let r_prev = if i == 0 {
            0
        } else {
            self.coboundary_rank(n, &mut slices, i - 1)?
        };
        Ok(dim_i - r_i - r_prev)
    }

    /// Rank of the coboundary `Hom(P_deg, N) -> Hom(P_{deg+1}, N)`.
    fn coboundary_rank(
        &self,
        n: &Arc<RightModule>,
        slices: &mut HashMap<usize, (Vec<Vec<Scalar>>, CoordSolver)>,
        deg: usize,
    ) -> Result<usize> {
        let field = n.field();
        let d = match self.elem_diff(deg + 1) {
            Some(d) => d,
            None => return Ok(0),
        };
        let src_term = self.term(deg);
        let dst_term = self.term(deg + 1);
        for &j in src_term.iter().chain(dst_term.iter()) {
            slices.entry(j).or_insert_with(|| {
                let basis = n.idempotent_slice_basis(&self.prims[j]);
                let solver = CoordSolver::new(field, n.dim(), &basis);
                (basis, solver)
            });
        }
        let mut toff = vec![0usize; src_term.len() + 1];
        for (t, &j) in src_term.iter().enumerate() {
            toff[t + 1] = toff[t] + slices[&j].0.len();
        }
        let mut soff = vec![0usize; dst_term.len() + 1];
        for (s, &j) in dst_term.iter().enumerate() {
            soff[s + 1] = soff[s] + slices[&j].0.len();
        }
        let mut matrix = Mat::zeros(field, toff[src_term.len()], soff[dst_term.len()]);
        for (s, &js) in dst_term.iter().enumerate() {
            for (t, &jt) in src_term.iter().enumerate() {
                let z = d.entry(s, t);
                if z.iter().all(Scalar::is_zero) {
                    continue;
                }
                let rho = n.action_of(z);
                let rows: Vec<Vec<Scalar>> = slices[&jt]
                    .0
                    .iter()
                    .map(|x| {
                        Mat::row_vector(field, x)
                            .expect("validated")
                            .mul(&rho)
                            .row_slice(0)
                            .to_vec()
                    })
                    .collect();
                let solver = &slices[&js].1;
                for (r, img) in rows.iter().enumerate() {
                    let coords = solver.coords(img).ok_or_else(|| {
                        Error::InternalConsistency(
                            "slice image escapes the target slice".into(),
                        )
                    })?;
                    for (c, sc) in coords.into_iter().enumerate() {
                        if !sc.is_zero() {
                            matrix.set(toff[t] + r, soff[s] + c, sc);
                        }
                    }
                }
            }
        }
        Ok(matrix.rank())
    }

    /// `dim Tor_i(M, N)` for a left module `N`, from the chain complex of
    /// slice spaces `(+)_s e_{i_s} N`.
    pub fn tor_dim(&self, n: &Arc<LeftModule>, i: usize) -> Result<usize> {
        if !self.module.algebra().same_as(n.algebra()) {
            return Err(Error::AlgebraMismatch(
                "Tor against a module over a different algebra".into(),
            ));
        }
        self.ensure_degree(i + 1)?;
        let field = n.field();
        let mut slices: HashMap<usize, (Vec<Vec<Scalar>>, CoordSolver)> = HashMap::new();
        let ensure = |slices: &mut HashMap<usize, (Vec<Vec<Scalar>>, CoordSolver)>,
                      j: usize| {
            slices.entry(j).or_insert_with(|| {
                let basis = n.slice_basis(&self.prims[j]);
                let solver = CoordSolver::new(field, n.dim(), &basis);
                (basis, solver)
            });
        };
        for term in &self.terms {
            for &j in term {
                ensure(&mut slices, j);
            }
        }
        let tdim = |term: &[usize]| -> usize { term.iter().map(|&j| slices[&j].0.len()).sum() };
        let boundary_rank = |deg: usize| -> Result<usize> {
            // d_deg (x) N: T_deg -> T_{deg-1}.
            let d = match self.elem_diff(deg) {
                Some(d) => d,
                None => return Ok(0),
            };
            let src_term = self.term(deg);
            let dst_term = self.term(deg - 1);
            let mut soff = vec![0usize; src_term.len() + 1];
            for (s, &j) in src_term.iter().enumerate() {
                soff[s + 1] = soff[s] + slices[&j].0.len();
            }
            let mut toff = vec![0usize; dst_term.len() + 1];
            for (t, &j) in dst_term.iter().enumerate() {
                toff[t + 1] = toff[t] + slices[&j].0.len();
            }
            let mut matrix = Mat::zeros(field, soff[src_term.len()], toff[dst_term.len()]);
            for (s, &js) in src_term.iter().enumerate() {
                for (t, &jt) in dst_term.iter().enumerate() {
                    let z = d.entry(s, t);
                    if z.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let lam = n.action_of(z);
                    for (r, x) in slices[&js].0.iter().enumerate() {
                        let img = Mat::row_vector(field, x)
                            .expect("validated")
                            .mul(&lam)
                            .row_slice(0)
                            .to_vec();
                        let coords = slices[&jt].1.coords(&img).ok_or_else(|| {
                            Error::InternalConsistency(
                                "slice image escapes the target slice".into(),
                            )
                        })?;
                        for (c, sc) in coords.into_iter().enumerate() {
                            if !sc.is_zero() {
                                matrix.set(soff[s] + r, toff[t] + c, sc);
                            }
                        }
                    }
                }
            }
            Ok(matrix.rank())
        };
        let dim_i = tdim(self.term(i));
        let r_i = if i == 0 { 0 } else { boundary_rank(i)? };
        let r_next = boundary_rank(i + 1)?;
        Ok(dim_i - r_i - r_next)
    }
}

fn extract_elem(
    algebra: &Arc<Algebra>,
    cache: &[ProjData],
    source_term: &[usize],
    target_term: &[usize],
    d: &ModuleMap,
) -> Result<ElemMat> {
    let field = algebra.field();
    let mut soff = vec![0usize; source_term.len() + 1];
    for (s, &j) in source_term.iter().enumerate() {
        soff[s + 1] = soff[s] + cache[j].module.dim();
    }
    let mut toff = vec![0usize; target_term.len() + 1];
    for (t, &j) in target_term.iter().enumerate() {
        toff[t + 1] = toff[t] + cache[j].module.dim();
    }
    let mut entries = Vec::with_capacity(source_term.len());
    for (s, &js) in source_term.iter().enumerate() {
        // The image of the generator e_{js} of the source summand.
        let mut w = vec![Scalar::zero(field); d.source().dim()];
        for (r, c) in cache[js].e_coords.iter().enumerate() {
            if !c.is_zero() {
                w[soff[s] + r] = c.clone();
            }
        }
        let img = d.apply(&w);
        let mut row = Vec::with_capacity(target_term.len());
        for (t, &jt) in target_term.iter().enumerate() {
            // Convert the summand block back to an algebra element.
            let mut z = vec![Scalar::zero(field); algebra.dim()];
            for r in 0..cache[jt].module.dim() {
                let c = &img[toff[t] + r];
                if c.is_zero() {
                    continue;
                }
                let u = cache[jt].basis_in_algebra.row_slice(r);
                for (zi, ui) in z.iter_mut().zip(u) {
                    if !ui.is_zero() {
                        *zi = zi.add(&c.mul(ui));
                    }
                }
            }
            row.push(z);
        }
        entries.push(row);
    }
    Ok(ElemMat {
        algebra: Arc::clone(algebra),
        source_idems: source_term.to_vec(),
        target_idems: target_term.to_vec(),
        entries,
    })
}

/// Projective dimension of a module, resolved up to `cutoff`.
pub fn proj_dim(m: &Arc<RightModule>, cutoff: usize) -> Result<Pd> {
    Ok(ProjResolution::of(m, cutoff)?.proj_dim())
}

/// `dim Ext^i(M, N)`.
pub fn ext_dim(m: &Arc<RightModule>, n: &Arc<RightModule>, i: usize) -> Result<usize> {
    ProjResolution::of(m, i + 1)?.ext_dim(n, i)
}

/// `dim Tor_i(M, N)` for a right module `M` and a left module `N`.
pub fn tor_dim(m: &Arc<RightModule>, n: &Arc<LeftModule>, i: usize) -> Result<usize> {
    ProjResolution::of(m, i + 1)?.tor_dim(n, i)
}

/// One representative of each simple module: the tops of the slice
/// projectives, deduplicated (a nonzero map between simples is an
/// isomorphism).
pub fn simple_modules(a: &Arc<Algebra>) -> Result<Vec<Arc<RightModule>>> {
    let prims = a
        .primitive_idempotents()
        .ok_or_else(|| {
            Error::MissingPrimitiveIdempotents(
                "simple-module enumeration needs primitive idempotents".into(),
            )
        })?
        .to_vec();
    let mut simples: Vec<Arc<RightModule>> = Vec::new();
    for e in &prims {
        let (p, _) = projective_of_idempotent(a, e)?;
        let (top, _) = p.top()?;
        let mut fresh = true;
        for s in &simples {
            if hom_dim(s, &top)? > 0 {
                fresh = false;
                break;
            }
        }
        if fresh {
            simples.push(top);
        }
    }
    Ok(simples)
}

/// The maximum projective dimension over the simple modules, each resolved
/// up to `cutoff`.
pub fn gldim(a: &Arc<Algebra>, cutoff: usize) -> Result<Pd> {
    let mut best = 0usize;
    let mut exact = true;
    for s in simple_modules(a)? {
        match proj_dim(&s, cutoff)? {
            Pd::Finite(n) => best = best.max(n),
            Pd::AtLeast(n) => {
                best = best.max(n);
                exact = false;
            }
        }
    }
    Ok(if exact {
        Pd::Finite(best)
    } else {
        Pd::AtLeast(best)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{from_quiver, QuiverSpec};
    use crate::linalg::Field;

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

    fn kronecker() -> Arc<Algebra> {
        from_quiver(
            Q,
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

    fn left_simple(a: &Arc<Algebra>, vertex: usize) -> Arc<LeftModule> {
        let mut action = vec![Mat::zeros(Q, 1, 1); a.dim()];
        action[vertex] = Mat::identity(Q, 1);
        LeftModule::new(a, 1, action).unwrap()
    }

    #[test]
    fn kronecker_is_hereditary() {
        let a = kronecker();
        let simples = simple_modules(&a).unwrap();
        assert_eq!(simples.len(), 2);
        // S1 has the two-step resolution by e2A^2 -> e1A; S2 is projective.
        let res = ProjResolution::of(&simples[0], 8).unwrap();
        assert!(res.is_complete());
        assert_eq!(res.term(0), &[0]);
        assert_eq!(res.term(1), &[1, 1]);
        assert_eq!(res.proj_dim(), Pd::Finite(1));
        assert_eq!(proj_dim(&simples[1], 8).unwrap(), Pd::Finite(0));
        assert_eq!(gldim(&a, 8).unwrap(), Pd::Finite(1));
    }

    #[test]
    fn three_vertex_projective_dimensions() {
        let a = three_vertex();
        let simples = simple_modules(&a).unwrap();
        assert_eq!(simples.len(), 3);
        assert_eq!(proj_dim(&simples[0], 8).unwrap(), Pd::Finite(2));
        assert_eq!(proj_dim(&simples[1], 8).unwrap(), Pd::Finite(3));
        assert_eq!(proj_dim(&simples[2], 8).unwrap(), Pd::Finite(4));
        assert_eq!(gldim(&a, 8).unwrap(), Pd::Finite(4));
        // The resolution of S1 runs through the slice projectives at the
        // vertices 1 <- 3 <- 2.
        let res = ProjResolution::of(&simples[0], 8).unwrap();
        assert_eq!(res.term(0), &[0]);
        assert_eq!(res.term(1), &[2]);
        assert_eq!(res.term(2), &[1]);
        assert!(res.is_complete());
    }

    #[test]
    fn ext_counts_arrows_and_relations() {
        let a = three_vertex();
        let simples = simple_modules(&a).unwrap();
        let e = |i: usize, j: usize, d: usize| ext_dim(&simples[i], &simples[j], d).unwrap();
        // Ext^0 is the Schur pairing.
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(e(i, j, 0), usize::from(i == j));
            }
        }
        // Ext^1(S_i, S_j) counts arrows j -> i.
        assert_eq!(e(0, 2, 1), 1); // delta: 3 -> 1
        assert_eq!(e(1, 0, 1), 1); // alpha: 1 -> 2
        assert_eq!(e(2, 1, 1), 2); // beta, gamma: 2 -> 3
        assert_eq!(e(0, 1, 1), 0);
        assert_eq!(e(1, 2, 1), 0);
        assert_eq!(e(2, 0, 1), 0);
        // Ext^2(S_i, S_j) counts the defining relations j -> i.
        assert_eq!(e(0, 1, 2), 1); // delta.gamma : 2 -> 1
        assert_eq!(e(1, 2, 2), 1); // alpha.delta : 3 -> 2
        assert_eq!(e(2, 0, 2), 1); // beta.alpha : 1 -> 3
        assert_eq!(e(0, 0, 2), 0);
        assert_eq!(e(1, 1, 2), 0);
        assert_eq!(e(2, 2, 2), 0);
    }

    #[test]
    fn tor_pairs_slices() {
        let a = three_vertex();
        let simples = simple_modules(&a).unwrap();
        let t = |i: usize, j: usize, d: usize| {
            tor_dim(&simples[i], &left_simple(&a, j), d).unwrap()
        };
        // Tor_0(S_i, S_j-left) is the Schur pairing.
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(t(i, j, 0), usize::from(i == j));
            }
        }
        // Tor_1(S_i, S_j-left) counts arrows j -> i (as Ext^1 does).
        assert_eq!(t(0, 2, 1), 1);
        assert_eq!(t(1, 0, 1), 1);
        assert_eq!(t(2, 1, 1), 2);
        assert_eq!(t(0, 1, 1), 0);
    }

    #[test]
    fn infinite_projective_dimension_is_bounded_below() {
        // Truncated loop: x^2 = 0 on one vertex; the simple has no finite
        // resolution.
        let a = from_quiver(Q, &spec(&["v"], &[("x", "v", "v")], &[&["x", "x"]])).unwrap();
        let simples = simple_modules(&a).unwrap();
        assert_eq!(simples.len(), 1);
        assert_eq!(proj_dim(&simples[0], 5).unwrap(), Pd::AtLeast(6));
        assert_eq!(gldim(&a, 5).unwrap(), Pd::AtLeast(6));
        // Ext^i(S, S) stays 1 in every degree for this algebra.
        assert_eq!(ext_dim(&simples[0], &simples[0], 3).unwrap(), 1);
    }

    #[test]
    fn projective_modules_resolve_instantly() {
        let a = three_vertex();
        let prims = a.primitive_idempotents().unwrap().to_vec();
        for e in &prims {
            let (p, _) = projective_of_idempotent(&a, e).unwrap();
            assert_eq!(proj_dim(&p, 4).unwrap(), Pd::Finite(0));
        }
        // The cover of a projective is itself.
        let (p1, _) = projective_of_idempotent(&a, &prims[0]).unwrap();
        let cover = projective_cover(&p1).unwrap();
        assert_eq!(cover.term, vec![0]);
        assert!(cover.map.is_isomorphism());
    }

    #[test]
    fn simples_deduplicate_over_non_basic_algebras() {
        let m2 = Algebra::matrix_algebra(Q, 2).unwrap();
        let simples = simple_modules(&m2).unwrap();
        assert_eq!(simples.len(), 1);
        assert_eq!(simples[0].dim(), 2);
        assert_eq!(proj_dim(&simples[0], 4).unwrap(), Pd::Finite(0));
    }

    #[test]
    fn ext_zero_matches_hom() {
        let a = kronecker();
        let prims = a.primitive_idempotents().unwrap().to_vec();
        let (p1, _) = projective_of_idempotent(&a, &prims[0]).unwrap();
        let (p2, _) = projective_of_idempotent(&a, &prims[1]).unwrap();
        assert_eq!(ext_dim(&p2, &p1, 0).unwrap(), 2);
        assert_eq!(ext_dim(&p1, &p2, 0).unwrap(), 0);
        // Ext^1 between the simples of the Kronecker quiver counts its two
        // arrows.
        let simples = simple_modules(&a).unwrap();
        assert_eq!(ext_dim(&simples[0], &simples[1], 1).unwrap(), 2);
        assert_eq!(ext_dim(&simples[1], &simples[0], 1).unwrap(), 0);
    }
}

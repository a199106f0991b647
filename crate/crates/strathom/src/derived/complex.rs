//! Bounded cochain complexes of right modules, chain maps, and mapping cones.
//!
//! Complexes are graded cohomologically: the differential raises degree by
//! one.  A complex stores a contiguous window of modules starting at degree
//! `lo`; everything outside the window is the zero module.  Normalisation
//! trims zero modules from both ends, so the zero complex is represented by
//! an empty window.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{CoordSolver, Mat, Subspace};
use crate::modrep::{direct_sum, ModuleMap, RightModule};

/// A bounded complex of right modules with degree-raising differentials.
#[derive(Debug, Clone)]
pub struct BoundedComplex {
    algebra: Arc<Algebra>,
    /// Degree of the first stored module.  Meaningless when `modules` is
    /// empty (the zero complex), where it is normalised to 0.
    lo: i64,
    modules: Vec<Arc<RightModule>>,
    /// `diffs[k]` maps `modules[k]` to `modules[k + 1]`.
    diffs: Vec<ModuleMap>,
}

impl BoundedComplex {
    /// Validating constructor: checks that consecutive maps compose to zero
    /// and that every differential connects the adjacent modules, then trims
    /// zero modules from both ends.
    pub fn new(
        algebra: Arc<Algebra>,
        lo: i64,
        modules: Vec<Arc<RightModule>>,
        diffs: Vec<ModuleMap>,
    ) -> Result<BoundedComplex> {
        for m in &modules {
            if !algebra.same_as(m.algebra()) {
                return Err(Error::AlgebraMismatch(
                    "complex contains a module over a different algebra".into(),
                ));
            }
        }
        if !modules.is_empty() && diffs.len() + 1 != modules.len() {
            return Err(Error::DimensionMismatch(format!(
                "complex with {} modules needs {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if !d.source().same_data(&modules[k]) || !d.target().same_data(&modules[k + 1]) {
                return Err(Error::DimensionMismatch(format!(
                    "differential {k} does not connect the adjacent modules"
                )));
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            let dd = diffs[k].then(&diffs[k + 1])?;
            if !dd.is_zero() {
                let n = lo + k as i64;
                return Err(Error::DifferentialSquare(n, n + 1));
            }
        }
        let mut c = BoundedComplex {
            algebra,
            lo,
            modules,
            diffs,
        };
        c.trim();
        Ok(c)
    }

    /// The zero complex.
    pub fn zero(algebra: Arc<Algebra>) -> BoundedComplex {
        BoundedComplex {
            algebra,
            lo: 0,
            modules: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// A single module placed in one degree.
    pub fn stalk(module: Arc<RightModule>, degree: i64) -> BoundedComplex {
        let algebra = Arc::clone(module.algebra());
        if module.is_zero() {
            return BoundedComplex::zero(algebra);
        }
        BoundedComplex {
            algebra,
            lo: degree,
            modules: vec![module],
            diffs: Vec::new(),
        }
    }

    fn trim(&mut self) {
        while self.modules.first().map_or(false, |m| m.is_zero()) {
            self.modules.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        while self.modules.last().map_or(false, |m| m.is_zero()) {
            self.modules.pop();
            self.diffs.pop();
        }
        if self.modules.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.modules.is_empty()
    }

    /// Lowest and highest degree carrying a nonzero module, or `None` for
    /// the zero complex.
    pub fn span(&self) -> Option<(i64, i64)> {
        if self.modules.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.modules.len() as i64 - 1))
        }
    }

    /// The module in degree `n` (the zero module outside the window).
    pub fn module_at(&self, n: i64) -> Arc<RightModule> {
        match self.index_of(n) {
            Some(k) => Arc::clone(&self.modules[k]),
            None => RightModule::zero(Arc::clone(&self.algebra)),
        }
    }

    fn index_of(&self, n: i64) -> Option<usize> {
        if self.modules.is_empty() || n < self.lo {
            return None;
        }
        let k = (n - self.lo) as usize;
        if k < self.modules.len() {
            Some(k)
        } else {
            None
        }
    }

    /// The differential leaving degree `n` (a zero map outside the window).
    pub fn diff_at(&self, n: i64) -> ModuleMap {
        if let Some(k) = self.index_of(n) {
            if k + 1 < self.modules.len() {
                return self.diffs[k].clone();
            }
        }
        ModuleMap::zero(&self.module_at(n), &self.module_at(n + 1))
    }

    /// Degree dimension, zero outside the window.
    pub fn dim_at(&self, n: i64) -> usize {
        self.index_of(n).map_or(0, |k| self.modules[k].dim())
    }

    /// Shift: `(X[k])^n = X^{n+k}`, with differentials scaled by `(-1)^k`.
    pub fn shift(&self, k: i64) -> BoundedComplex {
        if self.is_zero() {
            return self.clone();
        }
        let mut diffs = self.diffs.clone();
        if k.rem_euclid(2) == 1 {
            let minus_one = self.algebra.field().one().neg();
            diffs = diffs.iter().map(|d| d.scale(&minus_one)).collect();
        }
        BoundedComplex {
            algebra: Arc::clone(&self.algebra),
            lo: self.lo - k,
            modules: self.modules.clone(),
            diffs,
        }
    }

    /// Dimension of the degree-`n` cohomology.
    pub fn homology_dim(&self, n: i64) -> usize {
        let d_out = self.diff_at(n).rank();
        let d_in = self.diff_at(n - 1).rank();
        self.dim_at(n) - d_out - d_in
    }

    /// The degree-`n` cohomology as a module: kernel of the outgoing
    /// differential modulo the image of the incoming one.
    pub fn homology_module(&self, n: i64) -> Result<Arc<RightModule>> {
        let (kernel, incl) = self.diff_at(n).kernel_module()?;
        let field = self.algebra.field();
        let incoming = self.diff_at(n - 1);
        let solver = CoordSolver::new(
            field,
            self.dim_at(n),
            &incl.matrix().rows_vec(),
        );
        let mut image_in_kernel = Subspace::zero(field, kernel.dim());
        for row in incoming.matrix().rows_vec() {
            let coords = solver.coords(&row).ok_or_else(|| {
                Error::InternalConsistency(
                    "boundary image does not lie in the cocycle kernel".into(),
                )
            })?;
            image_in_kernel.insert(&coords);
        }
        let (h, _proj) = RightModule::quotient(&kernel, &image_in_kernel)?;
        Ok(h)
    }

    /// Degreewise structural agreement (same window, same underlying data
    /// and differential matrices).  Used by tests and internal checks.
    pub fn same_shape(&self, other: &BoundedComplex) -> bool {
        if !self.algebra.same_as(&other.algebra) || self.span() != other.span() {
            return false;
        }
        if let Some((lo, hi)) = self.span() {
            for n in lo..=hi {
                if !self.module_at(n).same_data(&other.module_at(n)) {
                    return false;
                }
                if n < hi && self.diff_at(n).matrix().sub(other.diff_at(n).matrix()).rank() != 0 {
                    return false;
                }
            }
        }
        true
    }
}

/// A degreewise map of complexes commuting with the differentials.
#[derive(Debug, Clone)]
pub struct ChainMap {
    source: BoundedComplex,
    target: BoundedComplex,
    /// Components in ascending degree order; degrees where either side is
    /// zero may be omitted (they default to the zero map).
    components: Vec<(i64, ModuleMap)>,
}

impl ChainMap {
    /// Validating constructor: checks endpoints and the commuting squares
    /// `f^n d_Y^n = d_X^n f^{n+1}` (row convention: apply `f`, then `d`).
    pub fn new(
        source: BoundedComplex,
        target: BoundedComplex,
        mut components: Vec<(i64, ModuleMap)>,
    ) -> Result<ChainMap> {
        if !source.algebra().same_as(target.algebra()) {
            return Err(Error::AlgebraMismatch(
                "chain map between complexes over different algebras".into(),
            ));
        }
        components.sort_by_key(|(n, _)| *n);
        for w in components.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DimensionMismatch(format!(
                    "chain map has two components in degree {}",
                    w[0].0
                )));
            }
        }
        for (n, f) in &components {
            if !f.source().same_data(&source.module_at(*n))
                || !f.target().same_data(&target.module_at(*n))
            {
                return Err(Error::DimensionMismatch(format!(
                    "chain map component in degree {n} does not connect the complexes"
                )));
            }
        }
        // Drop components that are forced zero so cloning stays cheap.
        components.retain(|(_, f)| f.source().dim() > 0 && f.target().dim() > 0);
        let map = ChainMap {
            source,
            target,
            components,
        };
        map.check_commutes()?;
        Ok(map)
    }

    fn check_commutes(&self) -> Result<()> {
        let degrees = self.interesting_degrees();
        for n in degrees {
            let lhs = self.component_at(n).then(&self.target.diff_at(n))?;
            let rhs = self.source.diff_at(n).then(&self.component_at(n + 1))?;
            if !lhs.sub(&rhs).is_zero() {
                return Err(Error::NotAChainMap(n));
            }
        }
        Ok(())
    }

    fn interesting_degrees(&self) -> Vec<i64> {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for c in [&self.source, &self.target] {
            if let Some((a, b)) = c.span() {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        if lo > hi {
            Vec::new()
        } else {
            (lo - 1..=hi).collect()
        }
    }

    pub fn source(&self) -> &BoundedComplex {
        &self.source
    }

    pub fn target(&self) -> &BoundedComplex {
        &self.target
    }

    /// The degree-`n` component (a zero map when omitted).
    pub fn component_at(&self, n: i64) -> ModuleMap {
        for (m, f) in &self.components {
            if *m == n {
                return f.clone();
            }
        }
        ModuleMap::zero(&self.source.module_at(n), &self.target.module_at(n))
    }

    /// The identity chain map.
    pub fn identity(x: &BoundedComplex) -> ChainMap {
        let mut components = Vec::new();
        if let Some((lo, hi)) = x.span() {
            for n in lo..=hi {
                components.push((n, ModuleMap::identity(&x.module_at(n))));
            }
        }
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            components,
        }
    }

    /// The zero chain map.
    pub fn zero_map(source: &BoundedComplex, target: &BoundedComplex) -> ChainMap {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            components: Vec::new(),
        }
    }

    /// A single module map viewed as a chain map between stalks.
    pub fn stalk_map(f: &ModuleMap, degree: i64) -> ChainMap {
        let source = BoundedComplex::stalk(Arc::clone(f.source()), degree);
        let target = BoundedComplex::stalk(Arc::clone(f.target()), degree);
        let components = if f.source().dim() > 0 && f.target().dim() > 0 {
            vec![(degree, f.clone())]
        } else {
            Vec::new()
        };
        ChainMap {
            source,
            target,
            components,
        }
    }

    /// Degreewise composition: apply `self`, then `other`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        if !self.target.same_shape(&other.source) {
            return Err(Error::DimensionMismatch(
                "chain map composition endpoints do not match".into(),
            ));
        }
        let mut components = Vec::new();
        for (n, f) in &self.components {
            let g = other.component_at(*n);
            let fg = f.then(&g)?;
            if !fg.is_zero() {
                components.push((*n, fg));
            }
        }
        Ok(ChainMap {
            source: self.source.clone(),
            target: other.target.clone(),
            components,
        })
    }

    /// The same components spaced `k` degrees lower, as a map of the shifted
    /// complexes.  Components carry no sign (only differentials do).
    pub fn shift(&self, k: i64) -> ChainMap {
        ChainMap {
            source: self.source.shift(k),
            target: self.target.shift(k),
            components: self
                .components
                .iter()
                .map(|(n, f)| (*n - k, f.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|(_, f)| f.is_zero())
    }
}

/// A mapping cone together with the two structural chain maps of its
/// triangle.
#[derive(Debug)]
pub struct ConeTriangle {
    /// The cone complex `C(f)` with `C^n = X^{n+1} (+) Y^n` and block
    /// differential `[-d_X, f; 0, d_Y]`.
    pub complex: BoundedComplex,
    /// The inclusion `Y -> C(f)`.
    pub from_target: ChainMap,
    /// The projection `C(f) -> X[1]`.
    pub to_shifted_source: ChainMap,
}

/// The mapping cone of a chain map `f : X -> Y`.
pub fn cone(f: &ChainMap) -> Result<ConeTriangle> {
    let x = f.source();
    let y = f.target();
    let algebra = Arc::clone(x.algebra());
    let field = algebra.field();
    let minus_one = field.one().neg();

    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    if let Some((a, b)) = x.span() {
        lo = lo.min(a - 1);
        hi = hi.max(b - 1);
    }
    if let Some((a, b)) = y.span() {
        lo = lo.min(a);
        hi = hi.max(b);
    }
    if lo > hi {
        let zero = BoundedComplex::zero(Arc::clone(&algebra));
        return Ok(ConeTriangle {
            complex: zero.clone(),
            from_target: ChainMap::zero_map(y, &zero),
            to_shifted_source: ChainMap::zero_map(&zero, &x.shift(1)),
        });
    }

    // Per-degree summands, inclusions and projections of X^{n+1} (+) Y^n.
    let mut modules = Vec::new();
    let mut inj_x = Vec::new();
    let mut inj_y = Vec::new();
    let mut proj_x = Vec::new();
    for n in lo..=hi {
        let xp = x.module_at(n + 1);
        let yp = y.module_at(n);
        let (sum, inj, proj) = direct_sum(&[xp, yp])?;
        modules.push(sum);
        inj_x.push(inj[0].clone());
        inj_y.push(inj[1].clone());
        proj_x.push(proj[0].clone());
    }

    let mut diffs = Vec::new();
    for n in lo..hi {
        let k = (n - lo) as usize;
        let src = &modules[k];
        let tgt = &modules[k + 1];
        let mut m = Mat::zeros(field, src.dim(), tgt.dim());
        let a = x.dim_at(n + 1);
        let a2 = x.dim_at(n + 2);
        // Row block X^{n+1}: goes to (-d_X x, f x).
        let dx = x.diff_at(n + 1);
        let fx = f.component_at(n + 1);
        for r in 0..a {
            for c in 0..a2 {
                m.set(r, c, dx.matrix().at(r, c).mul(&minus_one));
            }
            for c in 0..y.dim_at(n + 1) {
                m.set(r, a2 + c, fx.matrix().at(r, c).clone());
            }
        }
        // Row block Y^n: goes to (0, d_Y y).
        let dy = y.diff_at(n);
        for r in 0..y.dim_at(n) {
            for c in 0..y.dim_at(n + 1) {
                m.set(a + r, a2 + c, dy.matrix().at(r, c).clone());
            }
        }
        diffs.push(ModuleMap::new(
            Arc::clone(src),
            Arc::clone(tgt),
            m,
        )?);
    }

    let complex = BoundedComplex::new(Arc::clone(&algebra), lo, modules.clone(), diffs)?;

    let mut from_components = Vec::new();
    let mut to_components = Vec::new();
    let x1 = x.shift(1);
    for n in lo..=hi {
        let k = (n - lo) as usize;
        // Inclusion Y^n -> C^n, re-targeted at the trimmed cone complex.
        if y.dim_at(n) > 0 && complex.dim_at(n) > 0 {
            from_components.push((
                n,
                ModuleMap::new(
                    y.module_at(n),
                    complex.module_at(n),
                    inj_y[k].matrix().clone(),
                )?,
            ));
        }
        // Projection C^n -> X^{n+1} = (X[1])^n.
        if x1.dim_at(n) > 0 && complex.dim_at(n) > 0 {
            to_components.push((
                n,
                ModuleMap::new(
                    complex.module_at(n),
                    x1.module_at(n),
                    proj_x[k].matrix().clone(),
                )?,
            ));
        }
    }
    let from_target = ChainMap::new(y.clone(), complex.clone(), from_components)?;
    let to_shifted_source = ChainMap::new(complex.clone(), x1, to_components)?;
    Ok(ConeTriangle {
        complex,
        from_target,
        to_shifted_source,
    })
}

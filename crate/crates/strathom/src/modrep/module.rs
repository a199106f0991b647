//! Right modules and module maps.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{CoordSolver, Mat, Scalar, Subspace};

/// How thoroughly to validate the module axioms / intertwining relations.
///
/// `Full` checks every (generator, basis) pair and is used for untrusted
/// data; `Sampled` checks a fixed-seed random sample and is used for
/// internal constructions whose correctness holds by theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Check {
    Full,
    Sampled,
}

const SAMPLE_SEED: u64 = 0x5EED_0DD5;
const SAMPLE_TRIALS: usize = 64;

/// A finitely generated right module over a fixed algebra: a coordinate
/// space of dimension `dim` with one action matrix per algebra basis
/// element, in row convention (`v * action[i]`).
#[derive(Debug)]
pub struct RightModule {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Mat>,
}

impl RightModule {
    /// Validating constructor for untrusted data: checks shapes, the unit
    /// acting as identity, and multiplicativity against the algebra's
    /// recorded generating set (which determines the whole action).
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<Mat>) -> Result<Arc<RightModule>> {
        RightModule::build(algebra, dim, action, Check::Full)
    }

    pub(crate) fn build(
        algebra: Arc<Algebra>,
        dim: usize,
        action: Vec<Mat>,
        check: Check,
    ) -> Result<Arc<RightModule>> {
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "module provides {} action matrices, algebra has dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        for (i, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::BadModuleAction(format!(
                    "action matrix {i} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch(
                    "module action over a different field than the algebra".into(),
                ));
            }
        }
        let module = RightModule {
            algebra,
            dim,
            action,
        };
        // Unit acts as the identity.
        if module.action_of(module.algebra.unit()) != Mat::identity(module.field(), dim) {
            return Err(Error::BadModuleAction("the unit does not act as identity".into()));
        }
        // Multiplicativity: action(g * b_j) = action(g) action(b_j) for g in
        // a generating set and b_j arbitrary determines the rest.
        let gens = module.algebra.generating_indices();
        let pair_ok = |g: usize, j: usize| -> bool {
            let lhs = module.action_of(module.algebra.structure_row(g, j));
            let rhs = module.action[g].mul(&module.action[j]);
            lhs == rhs
        };
        match check {
            Check::Full => {
                for &g in &gens {
                    for j in 0..module.algebra.dim() {
                        if !pair_ok(g, j) {
                            return Err(Error::BadModuleAction(format!(
                                "multiplicativity fails at basis pair ({g}, {j})"
                            )));
                        }
                    }
                }
            }
            Check::Sampled => {
                let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
                let adim = module.algebra.dim();
                for _ in 0..SAMPLE_TRIALS {
                    let g = gens[rng.gen_range(0..gens.len())];
                    let j = rng.gen_range(0..adim);
                    if !pair_ok(g, j) {
                        return Err(Error::BadModuleAction(format!(
                            "multiplicativity fails at basis pair ({g}, {j})"
                        )));
                    }
                }
            }
        }
        Ok(Arc::new(module))
    }

    /// The zero module.
    pub fn zero(algebra: Arc<Algebra>) -> Arc<RightModule> {
        let field = algebra.field();
        let action = vec![Mat::zeros(field, 0, 0); algebra.dim()];
        Arc::new(RightModule {
            algebra,
            dim: 0,
            action,
        })
    }

    /// The right regular module `A_A`.
    pub fn regular(algebra: &Arc<Algebra>) -> Arc<RightModule> {
        let action = (0..algebra.dim())
            .map(|i| algebra.right_mult_matrix(&algebra.basis_vec(i)))
            .collect();
        RightModule::build(Arc::clone(algebra), algebra.dim(), action, Check::Sampled)
            .expect("the regular module always satisfies the axioms")
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> crate::linalg::Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn action(&self, i: usize) -> &Mat {
        &self.action[i]
    }

    /// The action matrix of an arbitrary algebra element.
    pub fn action_of(&self, elem: &[Scalar]) -> Mat {
        assert!(elem.len() == self.algebra.dim(), "element length mismatch");
        let mut out = Mat::zeros(self.field(), self.dim, self.dim);
        for (i, c) in elem.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.action[i].scale(c));
            }
        }
        out
    }

    /// `v` acted on by an algebra element.
    pub fn apply(&self, v: &[Scalar], elem: &[Scalar]) -> Vec<Scalar> {
        Mat::row_vector(self.field(), v)
            .expect("validated input")
            .mul(&self.action_of(elem))
            .row_slice(0)
            .to_vec()
    }

    /// Dimensions of the slices `M e_i` over the recorded primitive
    /// idempotents, when the algebra has them.
    pub fn dimension_vector(&self) -> Option<Vec<usize>> {
        let prims = self.algebra.primitive_idempotents()?;
        Some(
            prims
                .iter()
                .map(|e| self.action_of(e).rank())
                .collect(),
        )
    }

    /// Canonical basis rows of the slice `M e` for an idempotent `e`.
    pub fn idempotent_slice_basis(&self, e: &[Scalar]) -> Vec<Vec<Scalar>> {
        let m = self.action_of(e);
        let mut s = Subspace::zero(self.field(), self.dim);
        for i in 0..self.dim {
            s.insert(m.row_slice(i));
        }
        s.basis().to_vec()
    }

    /// The smallest action-stable subspace containing the given vectors.
    pub fn submodule_generated(&self, vectors: &[Vec<Scalar>]) -> Subspace {
        let mut span = Subspace::zero(self.field(), self.dim);
        let mut frontier: Vec<Vec<Scalar>> = Vec::new();
        for v in vectors {
            if span.insert(v) {
                frontier.push(v.clone());
            }
        }
        while let Some(x) = frontier.pop() {
            for i in 0..self.algebra.dim() {
                let y = Mat::row_vector(self.field(), &x)
                    .expect("validated")
                    .mul(&self.action[i])
                    .row_slice(0)
                    .to_vec();
                if span.insert(&y) {
                    frontier.push(y);
                }
            }
        }
        span
    }

    /// Is the subspace stable under the action?
    pub fn is_submodule(&self, sub: &Subspace) -> bool {
        sub.basis().iter().all(|r| {
            (0..self.algebra.dim()).all(|i| {
                let y = Mat::row_vector(self.field(), r)
                    .expect("validated")
                    .mul(&self.action[i]);
                sub.contains(y.row_slice(0))
            })
        })
    }

    /// The radical submodule `M * rad(A)`.
    pub fn radical_submodule(&self) -> Result<Subspace> {
        let rad = self.algebra.radical_basis()?;
        let mut span = Subspace::zero(self.field(), self.dim);
        for r in rad {
            let m = self.action_of(r);
            for i in 0..self.dim {
                span.insert(m.row_slice(i));
            }
        }
        Ok(span)
    }

    /// The submodule carried by a stable subspace, with its inclusion map.
    pub fn submodule(self: &Arc<Self>, sub: &Subspace) -> Result<(Arc<RightModule>, ModuleMap)> {
        if sub.ambient() != self.dim || sub.field() != self.field() {
            return Err(Error::DimensionMismatch(
                "subspace lives in a different ambient space".into(),
            ));
        }
        let rows = sub.basis().to_vec();
        let k = rows.len();
        let solver = CoordSolver::new(self.field(), self.dim, &rows);
        let mut action = Vec::with_capacity(self.algebra.dim());
        for i in 0..self.algebra.dim() {
            let mut m = Mat::zeros(self.field(), k, k);
            for (r, row) in rows.iter().enumerate() {
                let img = Mat::row_vector(self.field(), row)
                    .expect("validated")
                    .mul(&self.action[i]);
                let coords = solver.coords(img.row_slice(0)).ok_or_else(|| {
                    Error::BadModuleAction("subspace is not stable under the action".into())
                })?;
                for (c, s) in coords.into_iter().enumerate() {
                    if !s.is_zero() {
                        m.set(r, c, s);
                    }
                }
            }
            action.push(m);
        }
        let sub_mod = RightModule::build(Arc::clone(&self.algebra), k, action, Check::Sampled)?;
        let incl = Mat::from_rows(self.field(), rows, self.dim).expect("canonical rows");
        let map = ModuleMap::build(Arc::clone(&sub_mod), Arc::clone(self), incl, Check::Sampled)?;
        Ok((sub_mod, map))
    }

    /// The quotient by a stable subspace, with its projection map.
    pub fn quotient(self: &Arc<Self>, sub: &Subspace) -> Result<(Arc<RightModule>, ModuleMap)> {
        if sub.ambient() != self.dim || sub.field() != self.field() {
            return Err(Error::DimensionMismatch(
                "subspace lives in a different ambient space".into(),
            ));
        }
        if !self.is_submodule(sub) {
            return Err(Error::BadModuleAction(
                "subspace is not stable under the action".into(),
            ));
        }
        let comp = sub.complement_basis();
        let positions: Vec<usize> = comp
            .iter()
            .map(|v| v.iter().position(|s| s.is_one()).expect("standard vector"))
            .collect();
        let qdim = positions.len();
        let to_q = |v: &[Scalar]| -> Vec<Scalar> {
            let red = sub.reduce(v);
            positions.iter().map(|&p| red[p].clone()).collect()
        };
        let mut action = Vec::with_capacity(self.algebra.dim());
        for i in 0..self.algebra.dim() {
            let mut m = Mat::zeros(self.field(), qdim, qdim);
            for (t, &p) in positions.iter().enumerate() {
                let img = self.action[i].row_slice(p).to_vec();
                for (c, s) in to_q(&img).into_iter().enumerate() {
                    if !s.is_zero() {
                        m.set(t, c, s);
                    }
                }
            }
            action.push(m);
        }
        let q_mod = RightModule::build(Arc::clone(&self.algebra), qdim, action, Check::Sampled)?;
        let mut proj = Mat::zeros(self.field(), self.dim, qdim);
        for i in 0..self.dim {
            for (c, s) in to_q(&Mat::identity(self.field(), self.dim).row_slice(i).to_vec())
                .into_iter()
                .enumerate()
            {
                if !s.is_zero() {
                    proj.set(i, c, s);
                }
            }
        }
        let map = ModuleMap::build(Arc::clone(self), Arc::clone(&q_mod), proj, Check::Sampled)?;
        Ok((q_mod, map))
    }

    /// The largest semisimple quotient `M / M rad(A)`, with projection.
    pub fn top(self: &Arc<Self>) -> Result<(Arc<RightModule>, ModuleMap)> {
        let rad = self.radical_submodule()?;
        self.quotient(&rad)
    }

    /// Structural identity of the underlying data.
    pub fn same_data(&self, other: &RightModule) -> bool {
        self.dim == other.dim
            && Arc::ptr_eq(&self.algebra, &other.algebra)
            && self.action == other.action
    }
}

/// The projective module `e A` for an idempotent `e`, as a submodule of the
/// regular module; returns the module and its inclusion into `A_A`.
pub fn projective_of_idempotent(
    algebra: &Arc<Algebra>,
    e: &[Scalar],
) -> Result<(Arc<RightModule>, ModuleMap)> {
    if !algebra.is_idempotent_elem(e) {
        return Err(Error::NotIdempotent(0));
    }
    let regular = RightModule::regular(algebra);
    let lm = algebra.left_mult_matrix(e);
    let mut rows = Subspace::zero(algebra.field(), algebra.dim());
    for i in 0..algebra.dim() {
        rows.insert(lm.row_slice(i));
    }
    regular.submodule(&rows)
}

/// Direct sum with injections and projections.
pub fn direct_sum(
    parts: &[Arc<RightModule>],
) -> Result<(Arc<RightModule>, Vec<ModuleMap>, Vec<ModuleMap>)> {
    let algebra = match parts.first() {
        Some(p) => Arc::clone(p.algebra()),
        None => {
            return Err(Error::DimensionMismatch(
                "direct sum of an empty family needs an algebra; pass the zero module".into(),
            ))
        }
    };
    for p in parts {
        if !algebra.same_as(p.algebra()) {
            return Err(Error::AlgebraMismatch(
                "direct sum of modules over different algebras".into(),
            ));
        }
    }
    let field = algebra.field();
    let total: usize = parts.iter().map(|p| p.dim()).sum();
    let mut action = Vec::with_capacity(algebra.dim());
    for i in 0..algebra.dim() {
        let mut m = Mat::zeros(field, total, total);
        let mut off = 0usize;
        for p in parts {
            let a = p.action(i);
            for r in 0..p.dim() {
                for c in 0..p.dim() {
                    let s = a.at(r, c);
                    if !s.is_zero() {
                        m.set(off + r, off + c, s.clone());
                    }
                }
            }
            off += p.dim();
        }
        action.push(m);
    }
    let sum = RightModule::build(algebra, total, action, Check::Sampled)?;
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    let mut off = 0usize;
    for p in parts {
        let mut inj = Mat::zeros(field, p.dim(), total);
        let mut prj = Mat::zeros(field, total, p.dim());
        for r in 0..p.dim() {
            inj.set(r, off + r, Scalar::one(field));
            prj.set(off + r, r, Scalar::one(field));
        }
        injections.push(ModuleMap::build(
            Arc::clone(p),
            Arc::clone(&sum),
            inj,
            Check::Sampled,
        )?);
        projections.push(ModuleMap::build(
            Arc::clone(&sum),
            Arc::clone(p),
            prj,
            Check::Sampled,
        )?);
        off += p.dim();
    }
    Ok((sum, injections, projections))
}

/// A homomorphism of right modules in row convention: `f(v) = v * matrix`.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    source: Arc<RightModule>,
    target: Arc<RightModule>,
    matrix: Mat,
}

impl ModuleMap {
    /// Validating constructor for untrusted data.
    pub fn new(
        source: Arc<RightModule>,
        target: Arc<RightModule>,
        matrix: Mat,
    ) -> Result<ModuleMap> {
        ModuleMap::build(source, target, matrix, Check::Full)
    }

    pub(crate) fn build(
        source: Arc<RightModule>,
        target: Arc<RightModule>,
        matrix: Mat,
        check: Check,
    ) -> Result<ModuleMap> {
        if !source.algebra().same_as(target.algebra()) {
            return Err(Error::AlgebraMismatch(
                "module map endpoints over different algebras".into(),
            ));
        }
        if matrix.rows() != source.dim()
            || matrix.cols() != target.dim()
            || matrix.field() != source.field()
        {
            return Err(Error::DimensionMismatch(format!(
                "module map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        let map = ModuleMap {
            source,
            target,
            matrix,
        };
        // Intertwining on a generating set implies intertwining everywhere.
        let gens = map.source.algebra().generating_indices();
        let pair_ok = |g: usize| -> bool {
            map.source.action(g).mul(&map.matrix) == map.matrix.mul(map.target.action(g))
        };
        match check {
            Check::Full => {
                for &g in &gens {
                    if !pair_ok(g) {
                        return Err(Error::NotAModuleMap(g));
                    }
                }
            }
            Check::Sampled => {
                let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ 1);
                for _ in 0..SAMPLE_TRIALS.min(gens.len() * 2) {
                    let g = gens[rng.gen_range(0..gens.len())];
                    if !pair_ok(g) {
                        return Err(Error::NotAModuleMap(g));
                    }
                }
            }
        }
        Ok(map)
    }

    pub fn identity(m: &Arc<RightModule>) -> ModuleMap {
        ModuleMap {
            source: Arc::clone(m),
            target: Arc::clone(m),
            matrix: Mat::identity(m.field(), m.dim()),
        }
    }

    pub fn zero(source: &Arc<RightModule>, target: &Arc<RightModule>) -> ModuleMap {
        ModuleMap {
            source: Arc::clone(source),
            target: Arc::clone(target),
            matrix: Mat::zeros(source.field(), source.dim(), target.dim()),
        }
    }

    pub fn source(&self) -> &Arc<RightModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RightModule> {
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

    /// `other` after `self`.
    pub fn then(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if !Arc::ptr_eq(&self.target, &other.source) && !self.target.same_data(&other.source) {
            return Err(Error::DimensionMismatch(
                "module map composition endpoints do not match".into(),
            ));
        }
        Ok(ModuleMap {
            source: Arc::clone(&self.source),
            target: Arc::clone(&other.target),
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            source: Arc::clone(&self.source),
            target: Arc::clone(&self.target),
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            source: Arc::clone(&self.source),
            target: Arc::clone(&self.target),
            matrix: self.matrix.sub(&other.matrix),
        }
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMap {
        ModuleMap {
            source: Arc::clone(&self.source),
            target: Arc::clone(&self.target),
            matrix: self.matrix.scale(s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        if !self.is_isomorphism() {
            return None;
        }
        let inv = self.matrix.inverse()?;
        Some(ModuleMap {
            source: Arc::clone(&self.target),
            target: Arc::clone(&self.source),
            matrix: inv,
        })
    }

    pub fn kernel_subspace(&self) -> Subspace {
        let k = self.matrix.left_kernel_basis();
        Subspace::from_vectors(
            self.source.field(),
            self.source.dim(),
            k.iter().map(|v| v.as_slice()),
        )
    }

    pub fn image_subspace(&self) -> Subspace {
        Subspace::from_vectors(
            self.source.field(),
            self.target.dim(),
            (0..self.source.dim()).map(|i| self.matrix.row_slice(i)),
        )
    }

    /// The kernel as a module with its inclusion into the source.
    pub fn kernel_module(&self) -> Result<(Arc<RightModule>, ModuleMap)> {
        self.source.submodule(&self.kernel_subspace())
    }

    /// The image as a module: `(image, inclusion into target, corestriction
    /// of the source onto the image)`.
    pub fn image_module(&self) -> Result<(Arc<RightModule>, ModuleMap, ModuleMap)> {
        let (img, incl) = self.target.submodule(&self.image_subspace())?;
        // Corestriction: express each source basis image in image coords.
        let solver = CoordSolver::new(
            self.source.field(),
            self.target.dim(),
            &incl
                .matrix()
                .rows_vec(),
        );
        let mut m = Mat::zeros(self.source.field(), self.source.dim(), img.dim());
        for i in 0..self.source.dim() {
            let coords = solver
                .coords(self.matrix.row_slice(i))
                .expect("image rows lie in the image");
            for (c, s) in coords.into_iter().enumerate() {
                if !s.is_zero() {
                    m.set(i, c, s);
                }
            }
        }
        let corestriction =
            ModuleMap::build(Arc::clone(&self.source), Arc::clone(&img), m, Check::Sampled)?;
        Ok((img, incl, corestriction))
    }

    /// The cokernel as a module with the projection from the target.
    pub fn cokernel_module(&self) -> Result<(Arc<RightModule>, ModuleMap)> {
        self.target.quotient(&self.image_subspace())
    }
}

//! The central `Algebra` type and its derived constructions.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::quiver::QuiverPresentation;
use crate::error::{Error, Result};
use crate::linalg::{CoordSolver, Field, Mat, Scalar, Subspace};

/// How thoroughly to validate associativity at construction time.
///
/// `Full` checks every basis triple and is used for untrusted input.
/// `Sampled` checks a fixed-seed random sample and is used for internal
/// constructions whose associativity holds by theorem; the sample guards
/// against implementation bugs without a cubic blow-up on larger algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum AssocCheck {
    Full,
    Sampled,
}

/// A finite-dimensional associative unital algebra over an exact field.
///
/// Elements are coordinate vectors in the fixed basis. The multiplication
/// table is stored flat: the product of basis elements `i` and `j` has
/// coordinates `mult[(i*dim + j)*dim ..][..dim]`.
pub struct Algebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    mult: Vec<Scalar>,
    unit: Vec<Scalar>,
    presentation: Option<QuiverPresentation>,
    primitives: Option<Vec<Vec<Scalar>>>,
    generators: Option<Vec<usize>>,
    radical_cache: OnceLock<Vec<Vec<Scalar>>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.field)
            .field("dim", &self.dim)
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

impl PartialEq for Algebra {
    /// Structural equality: same field, dimension, multiplication table and
    /// unit. Labels, presentations and caches are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.mult == other.mult
            && self.unit == other.unit
    }
}

impl Algebra {
    // ------------------------------------------------------------------
    // construction
    // ------------------------------------------------------------------

    /// Core constructor: validates shapes, the unit law, associativity (per
    /// `check`), and the primitive-idempotent bookkeeping if present.
    pub(crate) fn build(
        field: Field,
        labels: Vec<String>,
        mult: Vec<Scalar>,
        unit: Vec<Scalar>,
        presentation: Option<QuiverPresentation>,
        primitives: Option<Vec<Vec<Scalar>>>,
        generators: Option<Vec<usize>>,
        check: AssocCheck,
    ) -> Result<Arc<Algebra>> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::ZeroAlgebra);
        }
        if mult.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "multiplication table has {} entries, expected {}",
                mult.len(),
                dim * dim * dim
            )));
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "unit vector has length {}, expected {}",
                unit.len(),
                dim
            )));
        }
        for s in mult.iter().chain(unit.iter()) {
            if s.field() != field {
                return Err(Error::FieldMismatch(
                    "algebra data does not match the declared field".into(),
                ));
            }
        }
        if let Some(gens) = &generators {
            for &g in gens {
                if g >= dim {
                    return Err(Error::DimensionMismatch(format!(
                        "generator index {g} out of range for dimension {dim}"
                    )));
                }
            }
        }
        let a = Algebra {
            field,
            dim,
            labels,
            mult,
            unit,
            presentation,
            primitives,
            generators,
            radical_cache: OnceLock::new(),
        };
        a.check_unit_law()?;
        match check {
            AssocCheck::Full => a.check_associativity_full()?,
            AssocCheck::Sampled => a.check_associativity_sampled(0xA55C_1A7E, 200)?,
        }
        if let Some(prims) = a.primitives.clone() {
            a.check_orthogonal_decomposition(&prims)?;
        }
        Ok(Arc::new(a))
    }

    /// Builds an algebra from an explicit multiplication table, fully
    /// validating associativity and the unit law. `rows[i][j]` is the
    /// coordinate vector of the product of basis elements `i` and `j`.
    pub fn from_structure_constants(
        field: Field,
        labels: Vec<String>,
        rows: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Arc<Algebra>> {
        let dim = labels.len();
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(
                "structure-constant table is not dim x dim".into(),
            ));
        }
        let mut mult = Vec::with_capacity(dim * dim * dim);
        for row in rows {
            for cell in row {
                if cell.len() != dim {
                    return Err(Error::DimensionMismatch(
                        "structure-constant entry has wrong length".into(),
                    ));
                }
                mult.extend(cell);
            }
        }
        Algebra::build(field, labels, mult, unit, None, None, None, AssocCheck::Full)
    }

    /// The full matrix algebra of `n x n` matrices, basis `E(r,c)` ordered
    /// row-major, with the diagonal matrix units as primitive idempotents.
    pub fn matrix_algebra(field: Field, n: usize) -> Result<Arc<Algebra>> {
        if n == 0 {
            return Err(Error::ZeroAlgebra);
        }
        let dim = n * n;
        let idx = |r: usize, c: usize| r * n + c;
        let mut labels = Vec::with_capacity(dim);
        for r in 0..n {
            for c in 0..n {
                labels.push(format!("E{}{}", r + 1, c + 1));
            }
        }
        let mut mult = vec![Scalar::zero(field); dim * dim * dim];
        for r in 0..n {
            for c in 0..n {
                for r2 in 0..n {
                    for c2 in 0..n {
                        // E(r,c) * E(r2,c2) = delta(c, r2) E(r, c2)
                        if c == r2 {
                            let i = idx(r, c);
                            let j = idx(r2, c2);
                            let k = idx(r, c2);
                            mult[(i * dim + j) * dim + k] = Scalar::one(field);
                        }
                    }
                }
            }
        }
        let mut unit = vec![Scalar::zero(field); dim];
        let mut prims = Vec::with_capacity(n);
        for r in 0..n {
            unit[idx(r, r)] = Scalar::one(field);
            let mut e = vec![Scalar::zero(field); dim];
            e[idx(r, r)] = Scalar::one(field);
            prims.push(e);
        }
        // Diagonal units plus the off-diagonal neighbours generate.
        let mut gens: Vec<usize> = (0..n).map(|r| idx(r, r)).collect();
        for r in 0..n.saturating_sub(1) {
            gens.push(idx(r, r + 1));
            gens.push(idx(r + 1, r));
        }
        Algebra::build(
            field,
            labels,
            mult,
            unit,
            None,
            Some(prims),
            Some(gens),
            AssocCheck::Sampled,
        )
    }

    /// The direct product of algebras (block-diagonal multiplication).
    pub fn product(factors: &[Arc<Algebra>]) -> Result<Arc<Algebra>> {
        if factors.is_empty() {
            return Err(Error::ZeroAlgebra);
        }
        let field = factors[0].field;
        if factors.iter().any(|f| f.field != field) {
            return Err(Error::FieldMismatch(
                "product factors live over different fields".into(),
            ));
        }
        let dim: usize = factors.iter().map(|f| f.dim).sum();
        let mut labels = Vec::with_capacity(dim);
        let mut offsets = Vec::with_capacity(factors.len());
        {
            let mut off = 0usize;
            for (fi, f) in factors.iter().enumerate() {
                offsets.push(off);
                for l in &f.labels {
                    labels.push(format!("f{}.{}", fi + 1, l));
                }
                off += f.dim;
            }
        }
        let mut mult = vec![Scalar::zero(field); dim * dim * dim];
        let mut unit = vec![Scalar::zero(field); dim];
        let mut prims: Option<Vec<Vec<Scalar>>> = Some(Vec::new());
        let mut gens: Vec<usize> = Vec::new();
        for (fi, f) in factors.iter().enumerate() {
            let off = offsets[fi];
            for i in 0..f.dim {
                for j in 0..f.dim {
                    let row = f.structure_row(i, j);
                    for (k, s) in row.iter().enumerate() {
                        if !s.is_zero() {
                            mult[((off + i) * dim + (off + j)) * dim + (off + k)] = s.clone();
                        }
                    }
                }
            }
            for (k, s) in f.unit.iter().enumerate() {
                unit[off + k] = s.clone();
            }
            match (&mut prims, &f.primitives) {
                (Some(acc), Some(fp)) => {
                    for e in fp {
                        let mut big = vec![Scalar::zero(field); dim];
                        for (k, s) in e.iter().enumerate() {
                            big[off + k] = s.clone();
                        }
                        acc.push(big);
                    }
                }
                _ => prims = None,
            }
            for g in f.generating_indices() {
                gens.push(off + g);
            }
        }
        Algebra::build(
            field,
            labels,
            mult,
            unit,
            None,
            prims,
            Some(gens),
            AssocCheck::Sampled,
        )
    }

    /// The opposite algebra: same underlying space, reversed multiplication.
    /// Primitive idempotents and generating sets carry over unchanged.
    pub fn opposite(self: &Arc<Self>) -> Result<Arc<Algebra>> {
        let dim = self.dim;
        let mut mult = vec![Scalar::zero(self.field); dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let row = self.structure_row(j, i);
                for (k, s) in row.iter().enumerate() {
                    if !s.is_zero() {
                        mult[(i * dim + j) * dim + k] = s.clone();
                    }
                }
            }
        }
        Algebra::build(
            self.field,
            self.labels.clone(),
            mult,
            self.unit.clone(),
            None,
            self.primitives.clone(),
            self.generators.clone(),
            AssocCheck::Sampled,
        )
    }

    /// Attaches a complete set of primitive orthogonal idempotents, fully
    /// verifying idempotency, orthogonality, completeness, and primitivity
    /// (each corner is a local ring). Returns a new handle.
    pub fn attach_primitives(
        self: &Arc<Self>,
        prims: Vec<Vec<Scalar>>,
    ) -> Result<Arc<Algebra>> {
        self.check_orthogonal_decomposition(&prims)?;
        for e in &prims {
            if !self.is_local_corner(e)? {
                return Err(Error::InternalConsistency(
                    "claimed primitive idempotent has a non-local corner".into(),
                ));
            }
        }
        Algebra::build(
            self.field,
            self.labels.clone(),
            self.mult.clone(),
            self.unit.clone(),
            self.presentation.clone(),
            Some(prims),
            self.generators.clone(),
            AssocCheck::Sampled,
        )
    }

    // ------------------------------------------------------------------
    // accessors
    // ------------------------------------------------------------------

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn presentation(&self) -> Option<&QuiverPresentation> {
        self.presentation.as_ref()
    }

    /// A complete set of primitive orthogonal idempotents, when known.
    pub fn primitive_idempotents(&self) -> Option<&[Vec<Scalar>]> {
        self.primitives.as_deref()
    }

    /// Basis indices that generate the algebra as a unital algebra. Falls
    /// back to the full basis when no smaller set is recorded.
    pub fn generating_indices(&self) -> Vec<usize> {
        match &self.generators {
            Some(g) => g.clone(),
            None => (0..self.dim).collect(),
        }
    }

    /// The coordinate vector of basis element `i`.
    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        assert!(i < self.dim, "basis index out of range");
        let mut v = vec![Scalar::zero(self.field); self.dim];
        v[i] = Scalar::one(self.field);
        v
    }

    /// The coordinates of the product of basis elements `i` and `j`.
    pub fn structure_row(&self, i: usize, j: usize) -> &[Scalar] {
        let base = (i * self.dim + j) * self.dim;
        &self.mult[base..base + self.dim]
    }

    // ------------------------------------------------------------------
    // element arithmetic
    // ------------------------------------------------------------------

    /// The product of two elements given by coordinates.
    pub fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert!(
            x.len() == self.dim && y.len() == self.dim,
            "element coordinate length mismatch"
        );
        let mut out = vec![Scalar::zero(self.field); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul(yj);
                let row = self.structure_row(i, j);
                for (o, r) in out.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *o = o.add(&c.mul(r));
                    }
                }
            }
        }
        out
    }

    /// Row-convention matrix of right multiplication: `v * rm(a)` is the
    /// coordinate vector of `v * a`. Satisfies `rm(ab) = rm(a) * rm(b)`.
    pub fn right_mult_matrix(&self, a: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            let row = self.mul_vec(&self.basis_vec(i), a);
            for (j, s) in row.into_iter().enumerate() {
                if !s.is_zero() {
                    m.set(i, j, s);
                }
            }
        }
        m
    }

    /// Row-convention matrix of left multiplication: `v * lm(a)` is the
    /// coordinate vector of `a * v`. Satisfies `lm(ab) = lm(b) * lm(a)`.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            let row = self.mul_vec(a, &self.basis_vec(i));
            for (j, s) in row.into_iter().enumerate() {
                if !s.is_zero() {
                    m.set(i, j, s);
                }
            }
        }
        m
    }

    pub fn is_idempotent_elem(&self, e: &[Scalar]) -> bool {
        self.mul_vec(e, e) == e
    }

    pub fn is_commutative(&self) -> bool {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self.structure_row(i, j) != self.structure_row(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Structural identity: `true` when the two handles are the same
    /// allocation or have identical field, dimension, table and unit.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Algebra>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }

    // ------------------------------------------------------------------
    // validation
    // ------------------------------------------------------------------

    fn check_unit_law(&self) -> Result<()> {
        for i in 0..self.dim {
            let b = self.basis_vec(i);
            if self.mul_vec(&self.unit, &b) != b || self.mul_vec(&b, &self.unit) != b {
                return Err(Error::UnitLaw(i));
            }
        }
        Ok(())
    }

    fn assoc_defect(&self, i: usize, j: usize, k: usize) -> bool {
        // (b_i b_j) b_k versus b_i (b_j b_k), expanded through the table.
        let mut lhs = vec![Scalar::zero(self.field); self.dim];
        for (t, c) in self.structure_row(i, j).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in lhs.iter_mut().zip(self.structure_row(t, k)) {
                if !r.is_zero() {
                    *o = o.add(&c.mul(r));
                }
            }
        }
        let mut rhs = vec![Scalar::zero(self.field); self.dim];
        for (t, c) in self.structure_row(j, k).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in rhs.iter_mut().zip(self.structure_row(i, t)) {
                if !r.is_zero() {
                    *o = o.add(&c.mul(r));
                }
            }
        }
        lhs != rhs
    }

    fn check_associativity_full(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    if self.assoc_defect(i, j, k) {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_associativity_sampled(&self, seed: u64, trials: usize) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let i = rng.gen_range(0..self.dim);
            let j = rng.gen_range(0..self.dim);
            let k = rng.gen_range(0..self.dim);
            if self.assoc_defect(i, j, k) {
                return Err(Error::NotAssociative(i, j, k));
            }
        }
        Ok(())
    }

    /// Verifies that `es` are nonzero, idempotent, pairwise orthogonal, and
    /// sum to the unit.
    pub(crate) fn check_orthogonal_decomposition(&self, es: &[Vec<Scalar>]) -> Result<()> {
        let mut total = vec![Scalar::zero(self.field); self.dim];
        for (i, e) in es.iter().enumerate() {
            if e.len() != self.dim {
                return Err(Error::DimensionMismatch(
                    "idempotent coordinate length mismatch".into(),
                ));
            }
            if e.iter().all(Scalar::is_zero) || !self.is_idempotent_elem(e) {
                return Err(Error::NotIdempotent(i));
            }
            for (j, f) in es.iter().enumerate() {
                if i != j {
                    let p = self.mul_vec(e, f);
                    if p.iter().any(|s| !s.is_zero()) {
                        return Err(Error::InternalConsistency(format!(
                            "idempotents {i} and {j} are not orthogonal"
                        )));
                    }
                }
            }
            for (t, s) in total.iter_mut().zip(e) {
                *t = t.add(s);
            }
        }
        if total != self.unit {
            return Err(Error::InternalConsistency(
                "idempotents do not sum to the unit".into(),
            ));
        }
        Ok(())
    }

    /// Is the corner `e A e` a local ring (radical of codimension 1)?
    pub fn is_local_corner(self: &Arc<Self>, e: &[Scalar]) -> Result<bool> {
        let corner = self.corner(e)?;
        let rad = corner.algebra.radical_basis()?;
        Ok(corner.algebra.dim() - rad.len() == 1)
    }

    // ------------------------------------------------------------------
    // radical
    // ------------------------------------------------------------------

    /// Canonical basis of the Jacobson radical.
    ///
    /// Computed as the radical of the trace form of the regular
    /// representation, which equals the Jacobson radical in characteristic 0
    /// or in characteristic `p > dim`; other prime fields are rejected. The
    /// result is verified to be a nilpotent two-sided ideal.
    pub fn radical_basis(&self) -> Result<&Vec<Vec<Scalar>>> {
        if let Some(r) = self.radical_cache.get() {
            return Ok(r);
        }
        let computed = self.compute_radical()?;
        Ok(self.radical_cache.get_or_init(|| computed))
    }

    /// The radical as a canonical subspace.
    pub fn radical_subspace(&self) -> Result<Subspace> {
        let rows = self.radical_basis()?;
        Ok(Subspace::from_vectors(
            self.field,
            self.dim,
            rows.iter().map(|r| r.as_slice()),
        ))
    }

    pub fn is_semisimple(&self) -> Result<bool> {
        Ok(self.radical_basis()?.is_empty())
    }

    fn compute_radical(&self) -> Result<Vec<Vec<Scalar>>> {
        if let Field::Prime(p) = self.field {
            if p <= self.dim as u64 {
                return Err(Error::UnsupportedField {
                    p,
                    dim: self.dim,
                });
            }
        }
        // t[k] = trace of left multiplication by basis element k.
        let mut t = vec![Scalar::zero(self.field); self.dim];
        for k in 0..self.dim {
            let mut tr = Scalar::zero(self.field);
            for i in 0..self.dim {
                tr = tr.add(&self.structure_row(k, i)[i]);
            }
            t[k] = tr;
        }
        // Gram matrix of the trace form: G[i][j] = trace(lm(b_i b_j)).
        let mut g = Mat::zeros(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = Scalar::zero(self.field);
                for (k, c) in self.structure_row(i, j).iter().enumerate() {
                    if !c.is_zero() && !t[k].is_zero() {
                        acc = acc.add(&c.mul(&t[k]));
                    }
                }
                g.set(i, j, acc);
            }
        }
        let kernel = g.kernel_basis();
        let rad = Subspace::from_vectors(self.field, self.dim, kernel.iter().map(|v| v.as_slice()));
        // Verify: two-sided ideal.
        for r in rad.basis() {
            for i in 0..self.dim {
                let b = self.basis_vec(i);
                if !rad.contains(&self.mul_vec(&b, r)) || !rad.contains(&self.mul_vec(r, &b)) {
                    return Err(Error::InternalConsistency(
                        "trace-form radical is not a two-sided ideal".into(),
                    ));
                }
            }
        }
        // Verify: nilpotent (the power chain must reach zero).
        let mut power: Vec<Vec<Scalar>> = rad.basis().to_vec();
        for _ in 0..=self.dim {
            if power.is_empty() {
                break;
            }
            let mut next = Subspace::zero(self.field, self.dim);
            for x in &power {
                for y in rad.basis() {
                    next.insert(&self.mul_vec(x, y));
                }
            }
            if next.dim() >= power.len() {
                return Err(Error::InternalConsistency(
                    "trace-form radical is not nilpotent".into(),
                ));
            }
            power = next.basis().to_vec();
        }
        Ok(rad.basis().to_vec())
    }

    /// Is the algebra basic and split (semisimple quotient a product of
    /// copies of the base field)? Requires a recorded complete set of
    /// primitive idempotents.
    pub fn is_basic_split(&self) -> Result<bool> {
        let prims = self.primitives.as_ref().ok_or_else(|| {
            Error::MissingPrimitiveIdempotents(
                "basic/split detection needs a recorded complete set".into(),
            )
        })?;
        let rad_dim = self.radical_basis()?.len();
        Ok(self.dim - rad_dim == prims.len())
    }

    // ------------------------------------------------------------------
    // ideals, quotients, corners
    // ------------------------------------------------------------------

    /// The smallest two-sided ideal containing the given elements.
    pub fn ideal_generated(&self, gens: &[Vec<Scalar>]) -> Subspace {
        let mut span = Subspace::zero(self.field, self.dim);
        let mut frontier: Vec<Vec<Scalar>> = Vec::new();
        for g in gens {
            if span.insert(g) {
                frontier.push(g.clone());
            }
        }
        // Saturate under left and right multiplication by basis elements.
        while let Some(x) = frontier.pop() {
            for i in 0..self.dim {
                let b = self.basis_vec(i);
                for prod in [self.mul_vec(&b, &x), self.mul_vec(&x, &b)] {
                    if span.insert(&prod) {
                        frontier.push(prod);
                    }
                }
            }
        }
        span
    }

    /// Quotient by a two-sided ideal given as a subspace. Verifies the
    /// ideal property and that the ideal is proper, then builds the quotient
    /// on the complement coordinates with projection and section matrices.
    /// Primitive idempotents are propagated when their images still form a
    /// complete orthogonal set of local idempotents.
    pub fn quotient_by_ideal(self: &Arc<Self>, ideal: &Subspace) -> Result<QuotientAlgebra> {
        if ideal.ambient() != self.dim || ideal.field() != self.field {
            return Err(Error::DimensionMismatch(
                "ideal lives in a different ambient space".into(),
            ));
        }
        if ideal.contains(&self.unit) {
            return Err(Error::UnitInIdeal);
        }
        for r in ideal.basis() {
            for i in 0..self.dim {
                let b = self.basis_vec(i);
                if !ideal.contains(&self.mul_vec(&b, r)) {
                    return Err(Error::NotAnIdeal(format!(
                        "left multiplication by basis element {i} escapes the span"
                    )));
                }
                if !ideal.contains(&self.mul_vec(r, &b)) {
                    return Err(Error::NotAnIdeal(format!(
                        "right multiplication by basis element {i} escapes the span"
                    )));
                }
            }
        }
        let qdim = self.dim - ideal.dim();
        // Complement coordinates: the non-pivot positions of the ideal.
        let comp = ideal.complement_basis();
        debug_assert_eq!(comp.len(), qdim);
        let positions: Vec<usize> = comp
            .iter()
            .map(|v| v.iter().position(|s| s.is_one()).expect("standard vector"))
            .collect();
        // reduce() zeroes exactly the ideal's pivot coordinates, so reading
        // the complement positions yields quotient coordinates.
        let to_q = |v: &[Scalar]| -> Vec<Scalar> {
            let red = ideal.reduce(v);
            positions.iter().map(|&p| red[p].clone()).collect()
        };
        let mut projection = Mat::zeros(self.field, self.dim, qdim);
        for i in 0..self.dim {
            let q = to_q(&self.basis_vec(i));
            for (j, s) in q.into_iter().enumerate() {
                if !s.is_zero() {
                    projection.set(i, j, s);
                }
            }
        }
        let mut section = Mat::zeros(self.field, qdim, self.dim);
        for (t, &p) in positions.iter().enumerate() {
            section.set(t, p, Scalar::one(self.field));
        }
        let labels: Vec<String> = positions
            .iter()
            .map(|&p| self.labels[p].clone())
            .collect();
        let mut mult = vec![Scalar::zero(self.field); qdim * qdim * qdim];
        for t in 0..qdim {
            for u in 0..qdim {
                let prod = self.mul_vec(
                    &self.basis_vec(positions[t]),
                    &self.basis_vec(positions[u]),
                );
                let q = to_q(&prod);
                for (k, s) in q.into_iter().enumerate() {
                    if !s.is_zero() {
                        mult[(t * qdim + u) * qdim + k] = s.clone();
                    }
                }
            }
        }
        let unit = to_q(&self.unit);
        // Propagate primitive idempotents if their images still work.
        let prims = self.primitives.as_ref().and_then(|parent| {
            let imgs: Vec<Vec<Scalar>> = parent
                .iter()
                .map(|e| to_q(e))
                .filter(|q| q.iter().any(|s| !s.is_zero()))
                .collect();
            if imgs.is_empty() {
                return None;
            }
            Some(imgs)
        });
        let algebra = Algebra::build(
            self.field,
            labels,
            mult,
            unit,
            None,
            None,
            None,
            AssocCheck::Sampled,
        )?;
        // Validate propagated idempotents on the finished quotient; attach
        // only if the full decomposition survives.
        let algebra = match prims {
            Some(p) => match algebra.attach_primitives(p) {
                Ok(with) => with,
                Err(_) => algebra,
            },
            None => algebra,
        };
        Ok(QuotientAlgebra {
            parent: Arc::clone(self),
            algebra,
            ideal: ideal.clone(),
            projection,
            section,
        })
    }

    /// The corner algebra `e A e` for an idempotent `e`, with coordinate
    /// converters between the corner and the parent.
    pub fn corner(self: &Arc<Self>, e: &[Scalar]) -> Result<CornerAlgebra> {
        if e.len() != self.dim {
            return Err(Error::DimensionMismatch(
                "idempotent coordinate length mismatch".into(),
            ));
        }
        if !self.is_idempotent_elem(e) {
            return Err(Error::NotIdempotent(0));
        }
        let mut span = Subspace::zero(self.field, self.dim);
        for i in 0..self.dim {
            let ebe = self.mul_vec(e, &self.mul_vec(&self.basis_vec(i), e));
            span.insert(&ebe);
        }
        let basis: Vec<Vec<Scalar>> = span.basis().to_vec();
        let cdim = basis.len();
        if cdim == 0 {
            return Err(Error::ZeroAlgebra);
        }
        let solver = CoordSolver::new(self.field, self.dim, &basis);
        let labels: Vec<String> = basis
            .iter()
            .enumerate()
            .map(|(t, row)| {
                // When the canonical basis row is a plain parent basis
                // vector, reuse its label; otherwise synthesize one.
                let nz: Vec<usize> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(k, _)| k)
                    .collect();
                if nz.len() == 1 && row[nz[0]].is_one() {
                    self.labels[nz[0]].clone()
                } else {
                    format!("c{t}")
                }
            })
            .collect();
        let mut mult = vec![Scalar::zero(self.field); cdim * cdim * cdim];
        for t in 0..cdim {
            for u in 0..cdim {
                let prod = self.mul_vec(&basis[t], &basis[u]);
                let coords = solver.coords(&prod).ok_or_else(|| {
                    Error::InternalConsistency("corner is not closed under multiplication".into())
                })?;
                for (k, s) in coords.into_iter().enumerate() {
                    if !s.is_zero() {
                        mult[(t * cdim + u) * cdim + k] = s;
                    }
                }
            }
        }
        let unit = solver.coords(e).ok_or_else(|| {
            Error::InternalConsistency("idempotent does not lie in its own corner".into())
        })?;
        // Primitive idempotents: when e is a sum of a subset of the parent's
        // primitives, that subset lives in the corner and stays primitive.
        let prims = self.primitives.as_ref().and_then(|parent| {
            let mut chosen: Vec<Vec<Scalar>> = Vec::new();
            let mut total = vec![Scalar::zero(self.field); self.dim];
            for f in parent {
                let efe = self.mul_vec(e, &self.mul_vec(f, e));
                if &efe == f {
                    chosen.push(f.clone());
                    for (t, s) in total.iter_mut().zip(f) {
                        *t = t.add(s);
                    }
                }
            }
            if total == e && !chosen.is_empty() {
                let mut out = Vec::new();
                for f in chosen {
                    out.push(solver.coords(&f)?);
                }
                Some(out)
            } else {
                None
            }
        });
        let algebra = Algebra::build(
            self.field,
            labels,
            mult,
            unit,
            None,
            prims,
            None,
            AssocCheck::Sampled,
        )?;
        Ok(CornerAlgebra {
            parent: Arc::clone(self),
            algebra,
            idempotent: e.to_vec(),
            basis_in_parent: basis,
            solver,
        })
    }
}

/// A quotient `A/I` together with the projection and a linear section.
#[derive(Debug)]
pub struct QuotientAlgebra {
    pub parent: Arc<Algebra>,
    pub algebra: Arc<Algebra>,
    pub ideal: Subspace,
    /// `parent.dim x quotient.dim`; the class of `v` is `v * projection`.
    pub projection: Mat,
    /// `quotient.dim x parent.dim`; row `t` is the chosen representative of
    /// quotient basis element `t`. `section * projection = identity`.
    pub section: Mat,
}

impl QuotientAlgebra {
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        Mat::row_vector(self.parent.field(), v)
            .expect("validated input")
            .mul(&self.projection)
            .row_slice(0)
            .to_vec()
    }

    pub fn lift(&self, q: &[Scalar]) -> Vec<Scalar> {
        Mat::row_vector(self.algebra.field(), q)
            .expect("validated input")
            .mul(&self.section)
            .row_slice(0)
            .to_vec()
    }
}

/// A corner `e A e` together with coordinate converters.
#[derive(Debug)]
pub struct CornerAlgebra {
    pub parent: Arc<Algebra>,
    pub algebra: Arc<Algebra>,
    pub idempotent: Vec<Scalar>,
    /// Corner basis vectors written in parent coordinates.
    pub basis_in_parent: Vec<Vec<Scalar>>,
    solver: CoordSolver,
}

impl CornerAlgebra {
    /// Parent coordinates -> corner coordinates, when the element lies in
    /// the corner.
    pub fn to_corner_coords(&self, parent_vec: &[Scalar]) -> Option<Vec<Scalar>> {
        self.solver.coords(parent_vec)
    }

    /// Corner coordinates -> parent coordinates.
    pub fn to_parent_coords(&self, corner_vec: &[Scalar]) -> Vec<Scalar> {
        let field = self.parent.field();
        let mut out = vec![Scalar::zero(field); self.parent.dim()];
        for (c, row) in corner_vec.iter().zip(&self.basis_in_parent) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o = o.add(&c.mul(r));
                }
            }
        }
        out
    }
}

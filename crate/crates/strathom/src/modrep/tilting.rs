//! Left approximations by a fixed pool of modules, and the classical
//! tilting-module test: projective dimension at most one, no
//! self-extensions, and a coresolution of the regular module by summand
//! sums from the pool.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::modrep::hom::{hom_dim, hom_space};
use crate::modrep::iso::decompose_into_pool;
use crate::modrep::module::{direct_sum, Check, ModuleMap, RightModule};
use crate::modrep::resolution::{proj_dim, ext_dim, Pd};

fn validate_pool(pool: &[Arc<RightModule>]) -> Result<()> {
    if pool.is_empty() {
        return Err(Error::DimensionMismatch(
            "approximation pool must not be empty".into(),
        ));
    }
    let a = pool[0].algebra();
    for p in pool.iter() {
        if !a.same_as(p.algebra()) {
            return Err(Error::AlgebraMismatch(
                "approximation pool mixes algebras".into(),
            ));
        }
        if p.dim() == 0 {
            return Err(Error::DimensionMismatch(
                "approximation pool contains a zero module".into(),
            ));
        }
    }
    Ok(())
}

/// Builds the map `m -> (+) targets` whose components are the given maps.
fn assemble(
    m: &Arc<RightModule>,
    pool: &[Arc<RightModule>],
    copies: &[(usize, ModuleMap)],
) -> Result<ModuleMap> {
    if copies.is_empty() {
        let zero = RightModule::zero(Arc::clone(m.algebra()));
        return Ok(ModuleMap::zero(m, &zero));
    }
    let parts: Vec<Arc<RightModule>> = copies
        .iter()
        .map(|(k, _)| Arc::clone(&pool[*k]))
        .collect();
    let (x, _, _) = direct_sum(&parts)?;
    let mut matrix = copies[0].1.matrix().clone();
    for (_, f) in &copies[1..] {
        matrix = matrix.hstack(f.matrix());
    }
    ModuleMap::build(Arc::clone(m), x, matrix, Check::Sampled)
}

/// Whether every map from the source of `f` to a pool member factors
/// through `f`.
fn approximation_holds(f: &ModuleMap, pool: &[Arc<RightModule>]) -> Result<bool> {
    let m = f.source();
    for p in pool {
        let need = hom_dim(m, p)?;
        if need == 0 {
            continue;
        }
        let mut span = Subspace::zero(m.field(), m.dim() * p.dim());
        let mut got = 0usize;
        for h in hom_space(f.target(), p)? {
            if span.insert(&f.then(&h)?.matrix().flatten()) {
                got += 1;
                if got == need {
                    break;
                }
            }
        }
        if got < need {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A left approximation of `m` by finite sums from `pool`, greedily
/// stripped of redundant copies. Returns the map together with the number
/// of copies of each pool member in its target.
pub fn minimal_left_approximation(
    m: &Arc<RightModule>,
    pool: &[Arc<RightModule>],
) -> Result<(ModuleMap, Vec<usize>)> {
    validate_pool(pool)?;
    if !m.algebra().same_as(pool[0].algebra()) {
        return Err(Error::AlgebraMismatch(
            "module and approximation pool live over different algebras".into(),
        ));
    }
    // The universal candidate: one copy of pool[k] per basis map m -> pool[k].
    let mut copies: Vec<(usize, ModuleMap)> = Vec::new();
    for (k, p) in pool.iter().enumerate() {
        for f in hom_space(m, p)? {
            copies.push((k, f));
        }
    }
    // Greedy reduction: drop a copy whenever the remaining components still
    // let every map to the pool factor through.
    loop {
        let mut dropped = false;
        let mut i = copies.len();
        while i > 0 {
            i -= 1;
            let mut trial = copies.clone();
            trial.remove(i);
            let g = assemble(m, pool, &trial)?;
            if approximation_holds(&g, pool)? {
                copies = trial;
                dropped = true;
            }
        }
        if !dropped {
            break;
        }
    }
    let f = assemble(m, pool, &copies)?;
    let mut counts = vec![0usize; pool.len()];
    for (k, _) in &copies {
        counts[*k] += 1;
    }
    Ok((f, counts))
}

/// The outcome of the classical tilting test for a pooled module
/// `T = (+) pool`.
#[derive(Debug, Clone)]
pub struct TiltingReport {
    /// Projective dimension of each pool member.
    pub pd: Vec<Pd>,
    /// All projective dimensions are at most one.
    pub pd_ok: bool,
    /// First self-extension space vanishes for every ordered pair.
    pub self_ext_vanishes: bool,
    /// Multiplicities of the pool members in each coresolution term of the
    /// regular module, when the coresolution closed up within the cutoff.
    pub coresolution: Option<Vec<Vec<usize>>>,
    pub is_tilting: bool,
}

/// Tests whether the direct sum of the pool is a classical tilting module.
pub fn is_classical_tilting(
    pool: &[Arc<RightModule>],
    cutoff: usize,
) -> Result<TiltingReport> {
    validate_pool(pool)?;
    let algebra = Arc::clone(pool[0].algebra());
    let mut pd = Vec::with_capacity(pool.len());
    let mut pd_ok = true;
    for t in pool {
        let d = proj_dim(t, 1)?;
        if !matches!(d, Pd::Finite(0) | Pd::Finite(1)) {
            pd_ok = false;
        }
        pd.push(d);
    }
    let mut self_ext_vanishes = true;
    'pairs: for s in pool {
        for t in pool {
            if ext_dim(s, t, 1)? > 0 {
                self_ext_vanishes = false;
                break 'pairs;
            }
        }
    }
    let mut terms: Vec<Vec<usize>> = Vec::new();
    let mut closed = false;
    let mut x = RightModule::regular(&algebra);
    for _ in 0..=cutoff {
        if let Some(counts) = decompose_into_pool(&x, pool)? {
            terms.push(counts);
            closed = true;
            break;
        }
        let (f, counts) = minimal_left_approximation(&x, pool)?;
        if !f.is_injective() {
            break;
        }
        terms.push(counts);
        x = f.cokernel_module()?.0;
    }
    let coresolution = if closed { Some(terms) } else { None };
    Ok(TiltingReport {
        pd,
        pd_ok,
        self_ext_vanishes,
        is_tilting: pd_ok && self_ext_vanishes && coresolution.is_some(),
        coresolution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{from_quiver, Algebra, QuiverSpec};
    use crate::linalg::{Field, Mat, Scalar};
    use crate::modrep::module::projective_of_idempotent;
    use crate::modrep::resolution::simple_modules;

    const Q: Field = Field::Rationals;

    fn kronecker() -> Arc<Algebra> {
        from_quiver(
            Q,
            &QuiverSpec {
                vertices: vec!["1".into(), "2".into()],
                arrows: vec![
                    ("a".into(), "2".into(), "1".into()),
                    ("b".into(), "2".into(), "1".into()),
                ],
                relations: vec![],
            },
        )
        .unwrap()
    }

    /// Indecomposable with dimension vector `(i, i+1)`; the cases 0 and 1
    /// are the two slice projectives.
    fn preprojective(a: &Arc<Algebra>, i: usize) -> Arc<RightModule> {
        let d = 2 * i + 1;
        let mut e1 = Mat::zeros(Q, d, d);
        let mut e2 = Mat::zeros(Q, d, d);
        for r in 0..i {
            e1.set(r, r, Scalar::one(Q));
        }
        for r in i..d {
            e2.set(r, r, Scalar::one(Q));
        }
        let mut ra = Mat::zeros(Q, d, d);
        let mut rb = Mat::zeros(Q, d, d);
        for r in 0..i {
            ra.set(r, i + r, Scalar::one(Q));
            rb.set(r, i + r + 1, Scalar::one(Q));
        }
        RightModule::new(Arc::clone(a), d, vec![e1, e2, ra, rb]).unwrap()
    }

    #[test]
    fn regular_module_tilts_trivially() {
        let a = kronecker();
        let prims = a.primitive_idempotents().unwrap().to_vec();
        let pool: Vec<Arc<RightModule>> = prims
            .iter()
            .map(|e| projective_of_idempotent(&a, e).unwrap().0)
            .collect();
        let report = is_classical_tilting(&pool, 4).unwrap();
        assert!(report.pd_ok);
        assert!(report.self_ext_vanishes);
        assert_eq!(report.coresolution, Some(vec![vec![1, 1]]));
        assert!(report.is_tilting);
    }

    #[test]
    fn adjacent_low_preprojectives_tilt() {
        let a = kronecker();
        let pool = vec![preprojective(&a, 1), preprojective(&a, 2)];
        let report = is_classical_tilting(&pool, 4).unwrap();
        assert!(report.pd_ok);
        assert!(report.self_ext_vanishes);
        assert_eq!(
            report.coresolution,
            Some(vec![vec![3, 0], vec![0, 1]]),
            "the regular module embeds in three copies of the smaller \
             summand with one copy of the larger as cokernel"
        );
        assert!(report.is_tilting);
    }

    #[test]
    fn adjacent_higher_preprojectives_tilt() {
        let a = kronecker();
        let pool = vec![preprojective(&a, 2), preprojective(&a, 3)];
        let report = is_classical_tilting(&pool, 4).unwrap();
        assert!(report.is_tilting);
        assert_eq!(report.coresolution, Some(vec![vec![5, 0], vec![0, 3]]));
    }

    #[test]
    fn skipping_a_slice_breaks_self_extension_vanishing() {
        let a = kronecker();
        let pool = vec![preprojective(&a, 1), preprojective(&a, 3)];
        let report = is_classical_tilting(&pool, 4).unwrap();
        assert!(report.pd_ok);
        assert!(!report.self_ext_vanishes);
        assert!(!report.is_tilting);
    }

    #[test]
    fn single_summand_cannot_coresolve_the_regular_module() {
        let a = kronecker();
        let pool = vec![preprojective(&a, 2)];
        let report = is_classical_tilting(&pool, 4).unwrap();
        assert!(report.pd_ok);
        assert!(report.self_ext_vanishes);
        assert_eq!(report.coresolution, None);
        assert!(!report.is_tilting);
    }

    #[test]
    fn high_projective_dimension_is_rejected() {
        let a = from_quiver(
            Q,
            &QuiverSpec {
                vertices: vec!["1".into(), "2".into(), "3".into()],
                arrows: vec![
                    ("alpha".into(), "1".into(), "2".into()),
                    ("beta".into(), "2".into(), "3".into()),
                    ("gamma".into(), "2".into(), "3".into()),
                    ("delta".into(), "3".into(), "1".into()),
                ],
                relations: vec![
                    vec!["alpha".into(), "beta".into()],
                    vec!["delta".into(), "alpha".into()],
                    vec!["gamma".into(), "delta".into()],
                ],
            },
        )
        .unwrap();
        let mut pool: Vec<Arc<RightModule>> = a
            .primitive_idempotents()
            .unwrap()
            .to_vec()
            .iter()
            .map(|e| projective_of_idempotent(&a, e).unwrap().0)
            .collect();
        pool.push(simple_modules(&a).unwrap()[0].clone());
        let report = is_classical_tilting(&pool, 6).unwrap();
        assert!(!report.pd_ok);
        assert!(!report.is_tilting);
    }

    #[test]
    fn minimal_approximation_of_simple_projective() {
        let a = kronecker();
        let pool = vec![preprojective(&a, 1), preprojective(&a, 2)];
        let prims = a.primitive_idempotents().unwrap().to_vec();
        let (p0, _) = projective_of_idempotent(&a, &prims[1]).unwrap();
        let (f, counts) = minimal_left_approximation(&p0, &pool).unwrap();
        // 0 -> (0,1) -> (1,2)^2 -> (2,3) -> 0.
        assert_eq!(counts, vec![2, 0]);
        assert!(f.is_injective());
        let (coker, _) = f.cokernel_module().unwrap();
        assert_eq!(coker.dim(), 5);
        assert_eq!(coker.dimension_vector(), Some(vec![2, 3]));
    }
}

//! Replacement of a bounded complex by a quasi-isomorphic complex of
//! projective modules.
//!
//! A stalk is replaced by its minimal projective resolution.  A longer
//! complex `X` splits off its top degree: writing `T` for the stalk of the
//! top module and `S` for the rest (shifted down one degree, differentials
//! negated), the incoming differential becomes a chain map `v : S -> T`
//! whose mapping cone is `X` itself.  Replacing `S` and `T` recursively and
//! lifting `v` through the two replacements strictly (exactly, not merely up
//! to homotopy — possible because the target is a stalk) yields a cone of
//! projectives quasi-isomorphic to `X`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar};
use crate::modrep::{hom_space, ModuleMap, ProjResolution, RightModule};

use super::complex::{cone, BoundedComplex, ChainMap};

/// A complex of projectives together with a quasi-isomorphism onto the
/// complex it replaces.
#[derive(Debug)]
pub struct ProjReplacement {
    pub complex: BoundedComplex,
    /// Quasi-isomorphism from `complex` to the original.
    pub map: ChainMap,
}

/// Replaces `x` by a quasi-isomorphic bounded complex of projective
/// modules.  `cutoff` bounds the length of each projective resolution
/// involved; if any module fails to resolve within it, the error reports
/// the truncation.
pub fn proj_resolve_complex(x: &BoundedComplex, cutoff: usize) -> Result<ProjReplacement> {
    let replacement = resolve_inner(x, cutoff)?;
    // The construction guarantees a quasi-isomorphism; verify the homology
    // dimensions agree before handing the replacement out.
    let (alo, ahi) = match joint_window(&replacement.complex, x) {
        Some(w) => w,
        None => return Ok(replacement),
    };
    for n in alo - 1..=ahi + 1 {
        if replacement.complex.homology_dim(n) != x.homology_dim(n) {
            return Err(Error::InternalConsistency(format!(
                "projective replacement changed homology in degree {n}"
            )));
        }
    }
    Ok(replacement)
}

fn joint_window(a: &BoundedComplex, b: &BoundedComplex) -> Option<(i64, i64)> {
    match (a.span(), b.span()) {
        (None, None) => None,
        (Some(w), None) | (None, Some(w)) => Some(w),
        (Some((a0, a1)), Some((b0, b1))) => Some((a0.min(b0), a1.max(b1))),
    }
}

fn resolve_inner(x: &BoundedComplex, cutoff: usize) -> Result<ProjReplacement> {
    let (lo, hi) = match x.span() {
        Some(w) => w,
        None => {
            return Ok(ProjReplacement {
                complex: x.clone(),
                map: ChainMap::identity(x),
            })
        }
    };

    // A complex that already consists of projectives is its own replacement.
    if all_projective(x)? {
        return Ok(ProjReplacement {
            complex: x.clone(),
            map: ChainMap::identity(x),
        });
    }

    if lo == hi {
        return stalk_replacement(&x.module_at(hi), hi, cutoff);
    }

    // Split off the top degree: S carries X^{lo..hi-1} at degrees
    // lo+1..hi with negated differentials, T is the stalk of X^hi.
    let algebra = Arc::clone(x.algebra());
    let minus_one = algebra.field().one().neg();
    let mut s_modules = Vec::new();
    let mut s_diffs = Vec::new();
    for n in lo..hi {
        s_modules.push(x.module_at(n));
        if n + 1 < hi {
            s_diffs.push(x.diff_at(n).scale(&minus_one));
        }
    }
    let s = BoundedComplex::new(Arc::clone(&algebra), lo + 1, s_modules, s_diffs)?;
    let t = BoundedComplex::stalk(x.module_at(hi), hi);
    let v = ChainMap::new(s.clone(), t.clone(), vec![(hi, x.diff_at(hi - 1))])?;

    let rs = resolve_inner(&s, cutoff)?;
    let rt = resolve_inner(&t, cutoff)?;
    let c = rs.map.then(&v)?;
    let lift = strict_lift(&c, &rt.map)?;
    let tri = cone(&lift)?;

    // The quasi-isomorphism cone(lift) -> X = cone(v): in degree n the cone
    // module is P_S^{n+1} (+) P_T^n; the first block maps through the
    // S-replacement (S^{n+1} = X^n below the top), the second through the
    // T-replacement (T^hi = X^hi).
    let field = algebra.field();
    let mut components = Vec::new();
    for n in lo..=hi {
        let cdim = tri.complex.dim_at(n);
        let xdim = x.dim_at(n);
        if cdim == 0 || xdim == 0 {
            continue;
        }
        let a = rs.complex.dim_at(n + 1);
        let mut m = Mat::zeros(field, cdim, xdim);
        if a > 0 && s.dim_at(n + 1) > 0 {
            let qs = rs.map.component_at(n + 1);
            for r in 0..a {
                for cidx in 0..xdim {
                    m.set(r, cidx, qs.matrix().at(r, cidx).clone());
                }
            }
        }
        if rt.complex.dim_at(n) > 0 && t.dim_at(n) > 0 {
            let qt = rt.map.component_at(n);
            for r in 0..rt.complex.dim_at(n) {
                for cidx in 0..xdim {
                    m.set(a + r, cidx, qt.matrix().at(r, cidx).clone());
                }
            }
        }
        components.push((
            n,
            ModuleMap::new(tri.complex.module_at(n), x.module_at(n), m)?,
        ));
    }
    let map = ChainMap::new(tri.complex.clone(), x.clone(), components)?;
    Ok(ProjReplacement {
        complex: tri.complex,
        map,
    })
}

fn all_projective(x: &BoundedComplex) -> Result<bool> {
    let (lo, hi) = match x.span() {
        Some(w) => w,
        None => return Ok(true),
    };
    for n in lo..=hi {
        let m = x.module_at(n);
        if m.is_zero() {
            continue;
        }
        if !ProjResolution::of(&m, 0)?.is_complete() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Replaces a stalk by its minimal projective resolution, laid out so that
/// the resolution's degree-`n` term sits in complex degree `deg - n`.
fn stalk_replacement(
    m: &Arc<RightModule>,
    deg: i64,
    cutoff: usize,
) -> Result<ProjReplacement> {
    let res = ProjResolution::of(m, cutoff)?;
    if !res.is_complete() {
        return Err(Error::IncompleteResolution {
            needed: cutoff + 1,
            cutoff,
        });
    }
    let len = res.len();
    let algebra = Arc::clone(m.algebra());
    let mut modules = Vec::new();
    let mut diffs = Vec::new();
    for n in (0..=len).rev() {
        let term = res
            .term_module(n)
            .ok_or_else(|| Error::InternalConsistency("missing resolution term".into()))?;
        modules.push(Arc::clone(term));
        if n > 0 {
            let d = res
                .concrete_diff(n)
                .ok_or_else(|| Error::InternalConsistency("missing resolution map".into()))?;
            diffs.push(d.clone());
        }
    }
    let complex = BoundedComplex::new(algebra, deg - len as i64, modules, diffs)?;
    let original = BoundedComplex::stalk(Arc::clone(m), deg);
    let map = ChainMap::new(
        complex.clone(),
        original,
        vec![(deg, res.augmentation().clone())],
    )?;
    Ok(ProjReplacement { complex, map })
}

/// Finds `l` with `l.then(along) == c` exactly and `l` a chain map, where
/// `c` and `along` share a target.  Solvable whenever the source of `l`
/// consists of projectives and `along` is a degreewise surjective
/// quasi-isomorphism onto a stalk; set up as one linear system over
/// coordinates in the degreewise module-homomorphism spaces, so every
/// solution is a module map in each degree by construction.
fn strict_lift(c: &ChainMap, along: &ChainMap) -> Result<ChainMap> {
    let q = c.source(); // complex of projectives
    let p = along.source(); // replacement of the stalk target
    let field = q.algebra().field();

    let window = match joint_window(q, p) {
        Some(w) => w,
        None => return ChainMap::new(q.clone(), p.clone(), Vec::new()),
    };

    // Coordinates: a basis of Hom(Q^n, P^n) for each degree where both
    // sides are nonzero, flattened across degrees.
    let mut basis: Vec<(i64, ModuleMap)> = Vec::new();
    for n in window.0..=window.1 {
        if q.dim_at(n) == 0 || p.dim_at(n) == 0 {
            continue;
        }
        for b in hom_space(&q.module_at(n), &p.module_at(n))? {
            basis.push((n, b));
        }
    }
    let coords_total = basis.len();

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();

    // Factorisation equations: L^n * along^n = c^n wherever the target is
    // nonzero.  Rows whose coefficients all vanish stay in the system: they
    // are solvable exactly when the corresponding entry of c is zero.
    for n in window.0..=window.1 {
        let tdim = along.target().dim_at(n);
        let qdim = q.dim_at(n);
        if tdim == 0 || qdim == 0 {
            continue;
        }
        let cmat = c.component_at(n);
        let amat = along.component_at(n);
        let contrib: Vec<(usize, Mat)> = basis
            .iter()
            .enumerate()
            .filter(|(_, (deg, _))| *deg == n)
            .map(|(t, (_, b))| (t, b.matrix().mul(amat.matrix())))
            .collect();
        for i in 0..qdim {
            for j in 0..tdim {
                let mut row = vec![field.zero(); coords_total];
                for (t, m) in &contrib {
                    row[*t] = m.at(i, j).clone();
                }
                rows.push(row);
                rhs.push(cmat.matrix().at(i, j).clone());
            }
        }
    }

    // Chain equations: L^n * d_P^n - d_Q^n * L^{n+1} = 0.
    for n in window.0 - 1..=window.1 {
        let er = q.dim_at(n);
        let ec = p.dim_at(n + 1);
        if er == 0 || ec == 0 {
            continue;
        }
        let dp = p.diff_at(n);
        let dq = q.diff_at(n);
        let mut contrib: Vec<(usize, Mat)> = Vec::new();
        for (t, (deg, b)) in basis.iter().enumerate() {
            if *deg == n {
                contrib.push((t, b.matrix().mul(dp.matrix())));
            } else if *deg == n + 1 {
                contrib.push((t, dq.matrix().mul(b.matrix()).neg()));
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
                    rhs.push(field.zero());
                }
            }
        }
    }

    let solution = if rows.is_empty() {
        vec![field.zero(); coords_total]
    } else {
        let e = Mat::from_rows(field, rows, coords_total)?;
        e.solve(&rhs).ok_or(Error::LiftFailed)?
    };

    // Rebuild the lift's components as combinations of the basis maps.
    let mut components = Vec::new();
    for n in window.0..=window.1 {
        let qdim = q.dim_at(n);
        let pdim = p.dim_at(n);
        if qdim == 0 || pdim == 0 {
            continue;
        }
        let mut m = Mat::zeros(field, qdim, pdim);
        for (t, (deg, b)) in basis.iter().enumerate() {
            if *deg == n && !solution[t].is_zero() {
                m = m.add(&b.matrix().scale(&solution[t]));
            }
        }
        if !m.is_zero() {
            components.push((n, ModuleMap::new(q.module_at(n), p.module_at(n), m)?));
        }
    }
    let lift = ChainMap::new(q.clone(), p.clone(), components)?;
    // Confirm the factorisation on top of the chain-map validation.
    let composed = lift.then(along)?;
    for n in window.0..=window.1 {
        if !composed.component_at(n).sub(&c.component_at(n)).is_zero() {
            return Err(Error::LiftFailed);
        }
    }
    Ok(lift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{from_quiver, Algebra, QuiverSpec};
    use crate::linalg::Field;
    use crate::modrep::{hom_space, projective_of_idempotent, simple_modules};

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

    fn slice_projective(a: &Arc<Algebra>, vertex: usize) -> Arc<RightModule> {
        let prims = a.primitive_idempotents().unwrap().to_vec();
        projective_of_idempotent(a, &prims[vertex]).unwrap().0
    }

    fn assert_all_projective(x: &BoundedComplex) {
        let (lo, hi) = x.span().unwrap();
        for n in lo..=hi {
            let m = x.module_at(n);
            if m.dim() > 0 {
                assert!(ProjResolution::of(&m, 0).unwrap().is_complete());
            }
        }
    }

    #[test]
    fn projective_complex_is_its_own_replacement() {
        let a = kronecker();
        let p0 = slice_projective(&a, 1);
        let p1 = slice_projective(&a, 0);
        let f = hom_space(&p0, &p1).unwrap().into_iter().next().unwrap();
        let x = BoundedComplex::new(
            Arc::clone(&a),
            -1,
            vec![Arc::clone(&p0), Arc::clone(&p1)],
            vec![f],
        )
        .unwrap();
        let rep = proj_resolve_complex(&x, 4).unwrap();
        assert!(rep.complex.same_shape(&x));
        for n in -1..=0 {
            assert!(rep
                .map
                .component_at(n)
                .sub(&ModuleMap::identity(&x.module_at(n)))
                .is_zero());
        }
    }

    #[test]
    fn simple_stalk_resolves_to_its_projective_resolution() {
        let a = three_vertex();
        let simples = simple_modules(&a).unwrap();
        let x = BoundedComplex::stalk(Arc::clone(&simples[0]), 0);
        let rep = proj_resolve_complex(&x, 8).unwrap();
        assert_eq!(rep.complex.span(), Some((-2, 0)));
        assert_eq!(rep.complex.dim_at(-2), 2);
        assert_eq!(rep.complex.dim_at(-1), 4);
        assert_eq!(rep.complex.dim_at(0), 3);
        assert_all_projective(&rep.complex);
        assert_eq!(rep.complex.homology_dim(0), 1);
        assert_eq!(rep.complex.homology_dim(-1), 0);
        assert_eq!(rep.complex.homology_dim(-2), 0);
    }

    #[test]
    fn two_term_complex_with_a_nonzero_differential_resolves() {
        // P -> S with the canonical projection: homology is rad P at the
        // lower degree and zero above.
        let a = three_vertex();
        let simples = simple_modules(&a).unwrap();
        let p1 = slice_projective(&a, 0);
        let f = hom_space(&p1, &simples[0])
            .unwrap()
            .into_iter()
            .next()
            .unwrap();
        let x = BoundedComplex::new(
            Arc::clone(&a),
            0,
            vec![Arc::clone(&p1), Arc::clone(&simples[0])],
            vec![f],
        )
        .unwrap();
        assert_eq!(x.homology_dim(0), 2);
        assert_eq!(x.homology_dim(1), 0);
        let rep = proj_resolve_complex(&x, 8).unwrap();
        assert_all_projective(&rep.complex);
        for n in -3..=2 {
            assert_eq!(rep.complex.homology_dim(n), x.homology_dim(n));
        }
    }

    #[test]
    fn acyclic_two_term_complex_resolves_to_an_acyclic_complex() {
        let a = three_vertex();
        let simples = simple_modules(&a).unwrap();
        let s1 = Arc::clone(&simples[0]);
        let x = BoundedComplex::new(
            Arc::clone(&a),
            0,
            vec![Arc::clone(&s1), Arc::clone(&s1)],
            vec![ModuleMap::identity(&s1)],
        )
        .unwrap();
        let rep = proj_resolve_complex(&x, 8).unwrap();
        assert_all_projective(&rep.complex);
        for n in -4..=3 {
            assert_eq!(rep.complex.homology_dim(n), 0);
        }
    }

    #[test]
    fn interior_zero_modules_are_bridged() {
        let a = three_vertex();
        let simples = simple_modules(&a).unwrap();
        let zero = RightModule::zero(Arc::clone(&a));
        let x = BoundedComplex::new(
            Arc::clone(&a),
            0,
            vec![
                Arc::clone(&simples[0]),
                zero.clone(),
                Arc::clone(&simples[1]),
            ],
            vec![
                ModuleMap::zero(&simples[0], &zero),
                ModuleMap::zero(&zero, &simples[1]),
            ],
        )
        .unwrap();
        let rep = proj_resolve_complex(&x, 8).unwrap();
        assert_all_projective(&rep.complex);
        assert_eq!(rep.complex.homology_dim(0), 1);
        assert_eq!(rep.complex.homology_dim(1), 0);
        assert_eq!(rep.complex.homology_dim(2), 1);
    }

    #[test]
    fn resolution_cutoff_is_reported() {
        let a = from_quiver(
            Q,
            &spec(&["v"], &[("x", "v", "v")], &[&["x", "x"]]),
        )
        .unwrap();
        let simples = simple_modules(&a).unwrap();
        let x = BoundedComplex::stalk(Arc::clone(&simples[0]), 0);
        let err = proj_resolve_complex(&x, 3).unwrap_err();
        assert!(matches!(err, Error::IncompleteResolution { .. }));
    }
}

//! Path algebras of quivers with monomial relations.
//!
//! Composition is written in function order: the product `x * y` means
//! "first `y`, then `x`", and is nonzero only when `y` ends where `x`
//! starts. Internally a path stores its arrows in application order (first
//! arrow first); a relation is likewise a list of arrows in application
//! order. The basis of the algebra is the set of paths that avoid every
//! relation as a contiguous subword; construction either enumerates all of
//! them or exhibits a pumpable cycle proving infinite dimension.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::core::{Algebra, AssocCheck};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

/// Raw quiver data, as it arrives from input files or test code.
#[derive(Debug, Clone)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    /// `(name, source vertex, target vertex)`.
    pub arrows: Vec<(String, String, String)>,
    /// Each relation is a list of arrow names in application order: the
    /// relation `[x, y]` kills "x followed by y".
    pub relations: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A basis path: arrows in application order, with endpoints. The trivial
/// path at a vertex has no arrows.
#[derive(Debug, Clone)]
pub struct PathInfo {
    pub arrows: Vec<usize>,
    pub source: usize,
    pub target: usize,
}

/// The quiver presentation attached to a path algebra: how each basis
/// element reads as a path, plus where the vertex idempotents and arrows sit
/// in the basis.
#[derive(Debug, Clone)]
pub struct QuiverPresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// Arrow indices in application order.
    pub relations: Vec<Vec<usize>>,
    /// One entry per basis element.
    pub paths: Vec<PathInfo>,
    /// Basis index of the trivial path at each vertex.
    pub vertex_basis: Vec<usize>,
    /// Basis index of each arrow.
    pub arrow_basis: Vec<usize>,
}

impl QuiverPresentation {
    /// Display label of a path: arrow names joined right-to-left (function
    /// order) with `*`; trivial paths read `e_<vertex>`.
    pub fn path_label(&self, p: &PathInfo) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .rev()
                .map(|&a| self.arrows[a].name.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// Builds the path algebra of a quiver modulo monomial relations.
///
/// Errors if the data is inconsistent, if a relation is shorter than two
/// arrows or does not compose, or if the quotient is infinite-dimensional —
/// in which case the error names a cycle that survives all relations.
pub fn from_quiver(field: Field, spec: &QuiverSpec) -> Result<Arc<Algebra>> {
    if spec.vertices.is_empty() {
        return Err(Error::ZeroAlgebra);
    }
    // Resolve names; vertex and arrow names share one namespace.
    let mut seen: HashMap<&str, ()> = HashMap::new();
    let mut vertex_of: HashMap<&str, usize> = HashMap::new();
    for (i, v) in spec.vertices.iter().enumerate() {
        if seen.insert(v.as_str(), ()).is_some() {
            return Err(Error::DuplicateName(v.clone()));
        }
        vertex_of.insert(v.as_str(), i);
    }
    let mut arrow_of: HashMap<&str, usize> = HashMap::new();
    let mut arrows: Vec<Arrow> = Vec::with_capacity(spec.arrows.len());
    for (i, (name, src, tgt)) in spec.arrows.iter().enumerate() {
        if seen.insert(name.as_str(), ()).is_some() {
            return Err(Error::DuplicateName(name.clone()));
        }
        let source = *vertex_of
            .get(src.as_str())
            .ok_or_else(|| Error::UnknownVertex(src.clone()))?;
        let target = *vertex_of
            .get(tgt.as_str())
            .ok_or_else(|| Error::UnknownVertex(tgt.clone()))?;
        arrow_of.insert(name.as_str(), i);
        arrows.push(Arrow {
            name: name.clone(),
            source,
            target,
        });
    }
    let mut relations: Vec<Vec<usize>> = Vec::with_capacity(spec.relations.len());
    for rel in &spec.relations {
        let display = rel.join(" ");
        if rel.len() < 2 {
            return Err(Error::RelationTooShort(display, rel.len()));
        }
        let mut idx = Vec::with_capacity(rel.len());
        for name in rel {
            idx.push(
                *arrow_of
                    .get(name.as_str())
                    .ok_or_else(|| Error::UnknownArrow(name.clone()))?,
            );
        }
        for w in idx.windows(2) {
            let (a, b) = (w[0], w[1]);
            if arrows[a].target != arrows[b].source {
                return Err(Error::NonComposableRelation {
                    relation: display,
                    first: arrows[a].name.clone(),
                    second: arrows[b].name.clone(),
                });
            }
        }
        relations.push(idx);
    }

    // Enumerate nonzero paths breadth-first by length. A freshly extended
    // path can only die by a relation that is a suffix of it, because its
    // prefix already avoided every relation.
    let r = relations.iter().map(|r| r.len()).max().unwrap_or(0).max(2);
    let killed_by_suffix = |word: &[usize]| -> bool {
        relations
            .iter()
            .any(|rel| word.len() >= rel.len() && word[word.len() - rel.len()..] == rel[..])
    };
    let mut paths: Vec<PathInfo> = Vec::new();
    let mut vertex_basis = Vec::with_capacity(spec.vertices.len());
    for v in 0..spec.vertices.len() {
        vertex_basis.push(paths.len());
        paths.push(PathInfo {
            arrows: Vec::new(),
            source: v,
            target: v,
        });
    }
    let mut frontier: Vec<usize> = (0..paths.len()).collect();
    let mut len = 0usize;
    let mut short_count = paths.len(); // nonzero paths of length <= r-1
    let mut bound: Option<usize> = if r - 1 == 0 { Some(r) } else { None };
    while !frontier.is_empty() {
        len += 1;
        if let Some(b) = bound {
            if len > b {
                // A nonzero path of length > bound survives: the suffix-state
                // walk must repeat, exhibiting a pumpable cycle.
                let witness = &paths[frontier[0]];
                return Err(Error::InfiniteDimensional {
                    cycle: extract_cycle(witness, &arrows, r),
                });
            }
        }
        let mut next = Vec::new();
        for &pi in &frontier {
            let (tgt, word) = (paths[pi].target, paths[pi].arrows.clone());
            for (ai, a) in arrows.iter().enumerate() {
                if a.source != tgt {
                    continue;
                }
                let mut w = word.clone();
                w.push(ai);
                if killed_by_suffix(&w) {
                    continue;
                }
                next.push(paths.len());
                paths.push(PathInfo {
                    arrows: w,
                    source: paths[pi].source,
                    target: a.target,
                });
            }
        }
        if len <= r - 1 {
            short_count += next.len();
            if len == r - 1 {
                bound = Some(short_count + r);
            }
        }
        frontier = next;
    }

    let dim = paths.len();
    // Lookup: arrows-in-application-order -> basis index (nonempty paths).
    let mut word_index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut arrow_basis = vec![usize::MAX; arrows.len()];
    for (i, p) in paths.iter().enumerate() {
        if !p.arrows.is_empty() {
            if p.arrows.len() == 1 {
                arrow_basis[p.arrows[0]] = i;
            }
            word_index.insert(p.arrows.clone(), i);
        }
    }

    let presentation = QuiverPresentation {
        vertices: spec.vertices.clone(),
        arrows,
        relations: relations.clone(),
        paths: paths.clone(),
        vertex_basis: vertex_basis.clone(),
        arrow_basis: arrow_basis.clone(),
    };
    let labels: Vec<String> = paths.iter().map(|p| presentation.path_label(p)).collect();

    // Structure constants: product of basis paths is path concatenation.
    // b_i * b_j applies b_j first, so it needs source(b_i) = target(b_j) and
    // concatenates the words as b_j.arrows ++ b_i.arrows.
    let zero = Scalar::zero(field);
    let one = Scalar::one(field);
    let mut mult = vec![zero.clone(); dim * dim * dim];
    let killed_anywhere = |word: &[usize]| -> bool {
        relations.iter().any(|rel| {
            word.len() >= rel.len()
                && (0..=word.len() - rel.len()).any(|s| word[s..s + rel.len()] == rel[..])
        })
    };
    for i in 0..dim {
        for j in 0..dim {
            if paths[i].source != paths[j].target {
                continue;
            }
            let mut w = paths[j].arrows.clone();
            w.extend_from_slice(&paths[i].arrows);
            let k = if w.is_empty() {
                // Both trivial at the same vertex.
                vertex_basis[paths[i].source]
            } else if killed_anywhere(&w) {
                continue;
            } else {
                *word_index.get(&w).unwrap_or_else(|| {
                    unreachable!("nonzero concatenation must be an enumerated path")
                })
            };
            mult[(i * dim + j) * dim + k] = one.clone();
        }
    }

    let mut unit = vec![zero.clone(); dim];
    let mut prims = Vec::with_capacity(vertex_basis.len());
    for &vb in &vertex_basis {
        unit[vb] = one.clone();
        let mut e = vec![zero.clone(); dim];
        e[vb] = one.clone();
        prims.push(e);
    }
    let mut gens: Vec<usize> = vertex_basis.clone();
    gens.extend(arrow_basis.iter().copied().filter(|&i| i != usize::MAX));

    Algebra::build(
        field,
        labels,
        mult,
        unit,
        Some(presentation),
        Some(prims),
        Some(gens),
        AssocCheck::Sampled,
    )
}

/// Walks the suffix states (windows of the last `r-1` arrows) along a
/// too-long witness path and returns the arrows between the first repeated
/// state, joined in application order.
fn extract_cycle(witness: &PathInfo, arrows: &[Arrow], r: usize) -> String {
    let w = &witness.arrows;
    let k = r - 1;
    let mut seen: HashMap<&[usize], usize> = HashMap::new();
    for end in k..=w.len() {
        let state = &w[end - k..end];
        if let Some(&prev) = seen.get(state) {
            return w[prev..end]
                .iter()
                .map(|&a| arrows[a].name.clone())
                .collect::<Vec<_>>()
                .join(" ");
        }
        seen.insert(state, end);
    }
    // Unreachable when called past the pigeonhole bound; fall back to the
    // whole word so the error stays informative.
    w.iter()
        .map(|&a| arrows[a].name.clone())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

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

    /// Three vertices; alpha: 1->2, beta: 2->3, gamma: 2->3, delta: 3->1;
    /// kill "alpha then beta", "delta then alpha", "gamma then delta".
    fn three_vertex_spec() -> QuiverSpec {
        spec(
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
        )
    }

    #[test]
    fn three_vertex_algebra_basis() {
        let a = from_quiver(Q, &three_vertex_spec()).unwrap();
        assert_eq!(a.dim(), 9);
        let labels: Vec<&str> = a.labels().iter().map(|s| s.as_str()).collect();
        assert_eq!(
            labels,
            vec![
                "e_1",
                "e_2",
                "e_3",
                "alpha",
                "beta",
                "gamma",
                "delta",
                "gamma*alpha",
                "delta*beta"
            ]
        );
        // Complete primitive idempotents at the vertices.
        let prims = a.primitive_idempotents().unwrap();
        assert_eq!(prims.len(), 3);
        // Radical = span of all paths of length >= 1.
        assert_eq!(a.radical_basis().unwrap().len(), 6);
    }

    #[test]
    fn three_vertex_products() {
        let a = from_quiver(Q, &three_vertex_spec()).unwrap();
        let pres = a.presentation().unwrap();
        let by_label = |l: &str| -> usize {
            a.labels().iter().position(|x| x == l).unwrap()
        };
        let mul = |x: &str, y: &str| -> Vec<Scalar> {
            a.mul_vec(&a.basis_vec(by_label(x)), &a.basis_vec(by_label(y)))
        };
        // delta * beta is the length-2 basis path; beta * delta is zero.
        assert_eq!(mul("delta", "beta"), a.basis_vec(by_label("delta*beta")));
        assert!(mul("beta", "delta").iter().all(Scalar::is_zero));
        // Relations kill the listed compositions.
        assert!(mul("beta", "alpha").iter().all(Scalar::is_zero));
        assert!(mul("alpha", "delta").iter().all(Scalar::is_zero));
        assert!(mul("delta", "gamma").iter().all(Scalar::is_zero));
        // Vertex idempotents frame each arrow: alpha = e_2 alpha e_1.
        assert_eq!(mul("e_2", "alpha"), a.basis_vec(by_label("alpha")));
        assert_eq!(mul("alpha", "e_1"), a.basis_vec(by_label("alpha")));
        assert!(mul("e_1", "alpha").iter().all(Scalar::is_zero));
        // Arrow endpoints recorded in application order.
        let alpha = &pres.paths[by_label("alpha")];
        assert_eq!((alpha.source, alpha.target), (0, 1));
    }

    #[test]
    fn three_vertex_corner_and_ideal() {
        let a = from_quiver(Q, &three_vertex_spec()).unwrap();
        let prims = a.primitive_idempotents().unwrap().to_vec();
        // e = e_2 + e_3.
        let e: Vec<Scalar> = prims[1]
            .iter()
            .zip(&prims[2])
            .map(|(x, y)| x.add(y))
            .collect();
        let corner = a.corner(&e).unwrap();
        // Paths starting and ending in {2, 3}: e_2, e_3, beta, gamma.
        assert_eq!(corner.algebra.dim(), 4);
        assert_eq!(corner.algebra.primitive_idempotents().map(|p| p.len()), Some(2));
        // The two-sided ideal generated by e has dimension 8 (everything
        // except the class of e_1 passes through vertex 2 or 3).
        let ideal = a.ideal_generated(&[e.clone()]);
        assert_eq!(ideal.dim(), 8);
        // Quotient is 1-dimensional.
        let q = a.quotient_by_ideal(&ideal).unwrap();
        assert_eq!(q.algebra.dim(), 1);
    }

    #[test]
    fn kronecker_two_to_one() {
        // Two arrows from vertex 2 to vertex 1; no relations.
        let s = spec(&["1", "2"], &[("a", "2", "1"), ("b", "2", "1")], &[]);
        let alg = from_quiver(Q, &s).unwrap();
        assert_eq!(alg.dim(), 4);
        assert_eq!(
            alg.labels(),
            &["e_1".to_string(), "e_2".into(), "a".into(), "b".into()]
        );
        // e_1 * A: paths with target vertex 1 -> e_1, a, b.
        let pres = alg.presentation().unwrap();
        let into_1 = pres
            .paths
            .iter()
            .filter(|p| p.target == 0)
            .count();
        assert_eq!(into_1, 3);
        assert_eq!(alg.radical_basis().unwrap().len(), 2);
    }

    #[test]
    fn infinite_dimension_is_detected_with_cycle() {
        // A loop with no relations is infinite-dimensional.
        let s = spec(&["v"], &[("x", "v", "v")], &[]);
        match from_quiver(Q, &s) {
            Err(Error::InfiniteDimensional { cycle }) => assert_eq!(cycle, "x"),
            other => panic!("expected infinite-dimension error, got {other:?}"),
        }
        // Two-cycle between vertices.
        let s2 = spec(
            &["1", "2"],
            &[("f", "1", "2"), ("g", "2", "1")],
            &[],
        );
        match from_quiver(Q, &s2) {
            Err(Error::InfiniteDimensional { cycle }) => {
                assert!(cycle == "f g" || cycle == "g f");
            }
            other => panic!("expected infinite-dimension error, got {other:?}"),
        }
    }

    #[test]
    fn truncated_loop_is_finite() {
        // Loop with x^2 = 0: basis e_v, x.
        let s = spec(&["v"], &[("x", "v", "v")], &[&["x", "x"]]);
        let a = from_quiver(Q, &s).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(!a.is_semisimple().unwrap());
        // Loop with x^3 = 0: basis e_v, x, x^2.
        let s3 = spec(&["v"], &[("x", "v", "v")], &[&["x", "x", "x"]]);
        assert_eq!(from_quiver(Q, &s3).unwrap().dim(), 3);
    }

    #[test]
    fn bad_quiver_data_is_rejected() {
        let dup = spec(&["v", "v"], &[], &[]);
        assert!(matches!(
            from_quiver(Q, &dup),
            Err(Error::DuplicateName(_))
        ));
        let unknown = spec(&["v"], &[("x", "v", "w")], &[]);
        assert!(matches!(
            from_quiver(Q, &unknown),
            Err(Error::UnknownVertex(_))
        ));
        let short = spec(&["v"], &[("x", "v", "v")], &[&["x"]]);
        assert!(matches!(
            from_quiver(Q, &short),
            Err(Error::RelationTooShort(_, 1))
        ));
        // beta then alpha does not compose (3 -> ... -> 1 -> 2 mismatch).
        let bad = spec(
            &["1", "2", "3"],
            &[("alpha", "1", "2"), ("beta", "2", "3")],
            &[&["beta", "alpha"]],
        );
        assert!(matches!(
            from_quiver(Q, &bad),
            Err(Error::NonComposableRelation { .. })
        ));
    }

    #[test]
    fn linear_quiver_with_relation() {
        // 1 -> 2 -> 3 with the composite killed: dim = 3 + 2 = 5.
        let s = spec(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3")],
            &[&["a", "b"]],
        );
        let alg = from_quiver(Q, &s).unwrap();
        assert_eq!(alg.dim(), 5);
        // Without the relation: dim 6 and the composite b*a is a basis path.
        let s2 = spec(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3")],
            &[],
        );
        let alg2 = from_quiver(Q, &s2).unwrap();
        assert_eq!(alg2.dim(), 6);
        assert!(alg2.labels().iter().any(|l| l == "b*a"));
    }
}

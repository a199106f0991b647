//! Property tests for the exact linear algebra layer: row reduction is
//! idempotent and rank-revealing, kernels are genuine kernels of the right
//! size, solving solves, and Kronecker products satisfy the mixed-product
//! rule.

use proptest::prelude::*;
use strathom::linalg::{CoordSolver, Field, Mat, Scalar, Subspace};

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::Prime(2)),
        Just(Field::Prime(5)),
        Just(Field::Prime(101)),
    ]
}

fn mat_with(field: Field, rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    proptest::collection::vec(-5i64..=5, rows * cols).prop_map(move |vals| {
        Mat::new(
            field,
            rows,
            cols,
            vals.into_iter().map(|v| Scalar::from_i64(field, v)).collect(),
        )
        .expect("generated data is well-formed")
    })
}

fn mat_strategy(max_dim: usize) -> impl Strategy<Value = Mat> {
    (field_strategy(), 1..=max_dim, 1..=max_dim)
        .prop_flat_map(|(f, r, c)| mat_with(f, r, c))
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in mat_strategy(5)) {
        let (r1, p1) = m.rref();
        let (r2, p2) = r1.rref();
        prop_assert_eq!(&r1, &r2);
        prop_assert_eq!(p1, p2);
    }

    #[test]
    fn rank_is_bounded(m in mat_strategy(5)) {
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }

    #[test]
    fn rref_preserves_row_space(m in mat_strategy(5)) {
        let rows_of = |m: &Mat| -> Subspace {
            Subspace::from_vectors(
                m.field(),
                m.cols(),
                (0..m.rows()).map(|i| m.row_slice(i)),
            )
        };
        let (r, _) = m.rref();
        prop_assert_eq!(rows_of(&m), rows_of(&r));
    }

    #[test]
    fn rank_nullity(m in mat_strategy(5)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            let col = Mat::column(m.field(), v).unwrap();
            prop_assert!(m.mul(&col).is_zero());
        }
    }

    #[test]
    fn kernel_vectors_are_independent(m in mat_strategy(5)) {
        let k = m.kernel_basis();
        let span = Subspace::from_vectors(m.field(), m.cols(), k.iter().map(|v| v.as_slice()));
        prop_assert_eq!(span.dim(), k.len());
    }

    #[test]
    fn solve_finds_known_solutions(
        (m, x) in (field_strategy(), 1usize..=5, 1usize..=5)
            .prop_flat_map(|(f, r, c)| {
                (mat_with(f, r, c), proptest::collection::vec(-5i64..=5, c)
                    .prop_map(move |v| v.into_iter()
                        .map(|x| Scalar::from_i64(f, x)).collect::<Vec<_>>()))
            })
    ) {
        let xm = Mat::column(m.field(), &x).unwrap();
        let b = m.mul(&xm);
        let sol = m.solve(&b.col_vec(0)).expect("consistent by construction");
        let solm = Mat::column(m.field(), &sol).unwrap();
        prop_assert_eq!(m.mul(&solm), b);
    }

    #[test]
    fn inverse_is_two_sided(m in mat_strategy(4)) {
        if let Some(inv) = m.inverse() {
            let id = Mat::identity(m.field(), m.rows());
            prop_assert_eq!(m.mul(&inv), id.clone());
            prop_assert_eq!(inv.mul(&m), id);
        } else {
            prop_assert!(!m.is_square() || m.rank() < m.rows());
        }
    }

    #[test]
    fn kron_mixed_product(
        (a, b, c, d) in (field_strategy(), 1usize..=3, 1usize..=3, 1usize..=3,
                         1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(f, m, n, p, q, r, s)| {
                (mat_with(f, m, n), mat_with(f, p, q), mat_with(f, n, r), mat_with(f, q, s))
            })
    ) {
        let lhs = a.kron(&b).mul(&c.kron(&d));
        let rhs = a.mul(&c).kron(&b.mul(&d));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kron_rank_multiplicative(
        (a, b) in (field_strategy(), 1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(f, m, n, p, q)| (mat_with(f, m, n), mat_with(f, p, q)))
    ) {
        prop_assert_eq!(a.kron(&b).rank(), a.rank() * b.rank());
    }

    #[test]
    fn subspace_reduce_stays_in_coset(
        (m, probe) in (field_strategy(), 1usize..=5, 1usize..=5)
            .prop_flat_map(|(f, r, c)| {
                (mat_with(f, r, c), proptest::collection::vec(-5i64..=5, c)
                    .prop_map(move |v| v.into_iter()
                        .map(|x| Scalar::from_i64(f, x)).collect::<Vec<_>>()))
            })
    ) {
        let s = Subspace::from_vectors(
            m.field(),
            m.cols(),
            (0..m.rows()).map(|i| m.row_slice(i)),
        );
        let red = s.reduce(&probe);
        // probe - reduce(probe) lies in the subspace.
        let diff: Vec<Scalar> = probe.iter().zip(&red).map(|(a, b)| a.sub(b)).collect();
        prop_assert!(s.contains(&diff));
        // reduce is idempotent and detects membership.
        prop_assert_eq!(s.reduce(&red), red.clone());
        prop_assert_eq!(s.contains(&probe), red.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn coord_solver_expresses_span_members(
        (m, coeffs) in (field_strategy(), 1usize..=4, 1usize..=5)
            .prop_flat_map(|(f, r, c)| {
                (mat_with(f, r, c), proptest::collection::vec(-3i64..=3, r)
                    .prop_map(move |v| v.into_iter()
                        .map(|x| Scalar::from_i64(f, x)).collect::<Vec<_>>()))
            })
    ) {
        let gens: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row_slice(i).to_vec()).collect();
        let solver = CoordSolver::new(m.field(), m.cols(), &gens);
        // Build a known combination and recover coordinates for it.
        let mut target = vec![Scalar::zero(m.field()); m.cols()];
        for (c, g) in coeffs.iter().zip(&gens) {
            for (t, gj) in target.iter_mut().zip(g) {
                *t = t.add(&c.mul(gj));
            }
        }
        let sol = solver.coords(&target).expect("target is in the span");
        let mut rebuilt = vec![Scalar::zero(m.field()); m.cols()];
        for (c, g) in sol.iter().zip(&gens) {
            for (t, gj) in rebuilt.iter_mut().zip(g) {
                *t = t.add(&c.mul(gj));
            }
        }
        prop_assert_eq!(rebuilt, target);
    }
}

//! Search for an idempotent element generating a given two-sided ideal.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Scalar, Subspace};

/// Searches for an idempotent `e` with two-sided ideal `AeA` equal to
/// `ideal`, among sums of subsets of the algebra's recorded primitive
/// idempotents.
///
/// Subsets are tried largest first, lexicographically within a size, and
/// the first match is returned. `Ok(None)` means no subset sum works — the
/// ideal may still be generated by an idempotent outside this family, so
/// `None` is a failed search, not a disproof. The search is exponential in
/// the number of primitive idempotents.
pub fn find_idempotent_generator(
    a: &Arc<Algebra>,
    ideal: &Subspace,
) -> Result<Option<Vec<Scalar>>> {
    if ideal.ambient() != a.dim() || ideal.field() != a.field() {
        return Err(Error::DimensionMismatch(
            "ideal lives in a different ambient space".into(),
        ));
    }
    if ideal.dim() == 0 {
        return Ok(Some(vec![Scalar::zero(a.field()); a.dim()]));
    }
    let prims = a.primitive_idempotents().ok_or_else(|| {
        Error::MissingPrimitiveIdempotents(
            "the generator search sums subsets of a recorded complete set".into(),
        )
    })?;
    let n = prims.len();
    for size in (1..=n).rev() {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let mut e = vec![Scalar::zero(a.field()); a.dim()];
            for &k in &subset {
                for (c, p) in e.iter_mut().zip(&prims[k]) {
                    *c = c.add(p);
                }
            }
            let generated = a.ideal_generated(&[e.clone()]);
            if generated.dim() == ideal.dim() && ideal.contains_subspace(&generated) {
                return Ok(Some(e));
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances `subset` to the next size-preserving combination of `0..n` in
/// lexicographic order; returns `false` after the last one.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let size = subset.len();
    let mut i = size;
    while i > 0 {
        i -= 1;
        if subset[i] < n - size + i {
            subset[i] += 1;
            for j in i + 1..size {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_step_in_lexicographic_order() {
        let mut s = vec![0, 1];
        let mut seen = vec![s.clone()];
        while next_combination(&mut s, 4) {
            seen.push(s.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
            ]
        );
    }
}

//! Exact linear algebra: scalars, matrices, and canonical subspaces.
//!
//! All arithmetic is exact. The two supported coefficient fields are the
//! rationals (arbitrary-precision) and prime fields `F_p`. Row reduction is
//! fully deterministic — pivots are chosen leftmost-column-first, topmost-row
//!-first — so every canonical form computed here is reproducible across runs
//! and platforms.

pub mod mat;
pub mod scalar;
pub mod subspace;

pub use mat::Mat;
pub use scalar::{is_prime_u64, Field, Scalar};
pub use subspace::{CoordSolver, Subspace};

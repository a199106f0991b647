//! Finite-dimensional associative algebras with unit.
//!
//! An [`Algebra`] is a finite-dimensional vector space with a fixed basis, a
//! structure-constant multiplication table, and a unit. Elements are plain
//! coordinate vectors (`Vec<Scalar>`). Constructors validate the ring axioms
//! on untrusted data; constructions that preserve associativity by theorem
//! (products, corners, quotients by two-sided ideals, opposites, path
//! algebras) validate a seeded random sample of triples as a cheap guard
//! against implementation bugs.
//!
//! Path algebras of quivers with monomial relations come with their
//! presentation attached: the basis is the set of nonzero paths, products
//! compose paths, and the trivial paths form a complete set of primitive
//! orthogonal idempotents. Construction proves finite-dimensionality or
//! reports a pumpable cycle.

pub mod core;
pub mod hom;
pub mod quiver;

pub use self::core::{Algebra, CornerAlgebra, QuotientAlgebra};
pub(crate) use self::core::AssocCheck;
pub use self::hom::RingHom;
pub use self::quiver::{from_quiver, Arrow, PathInfo, QuiverPresentation, QuiverSpec};

//! Bounded complexes of right modules and morphism spaces in the bounded
//! derived category.
//!
//! Complexes are cohomologically graded (differentials raise degree).
//! Derived Homs are computed by replacing both arguments with
//! quasi-isomorphic complexes of projectives and taking chain maps modulo
//! null-homotopic ones; the whole computation reduces to exact rank
//! arithmetic on one linear system per Hom space.

mod complex;
mod homs;
mod replace;

pub use complex::{cone, BoundedComplex, ChainMap, ConeTriangle};
pub use homs::{derived_end_algebra, derived_hom_dim, is_exceptional, DerivedEnd};
pub use replace::{proj_resolve_complex, ProjReplacement};

//! Finite-dimensional right modules over an algebra: module maps, Hom
//! spaces, isomorphism testing, tensor products, projective resolutions,
//! tilting checks, and the six-functor context for an idempotent.

pub mod functors;
pub mod hom;
pub mod iso;
pub mod module;
pub mod resolution;
pub mod tensor;
pub mod tilting;

pub use functors::StratifyingContext;
pub use hom::{endomorphism_algebra, hom_dim, hom_space, EndAlgebra};
pub use iso::{
    decompose_into_pool, indecomposable_decomposition, is_absolutely_simple, is_isomorphic,
    split_off, Decomposition, IsoOutcome,
};
pub use module::{direct_sum, projective_of_idempotent, ModuleMap, RightModule};
pub use resolution::{
    ext_dim, gldim, proj_dim, projective_cover, simple_modules, tor_dim, Cover, ElemMat, Pd,
    ProjResolution,
};
pub use tensor::{
    restrict_along, restrict_left_regular, slice_bimodule_left, slice_bimodule_right, tensor_dim,
    tensor_map, tensor_module, Bimodule, LeftModule,
};
pub use tilting::{is_classical_tilting, minimal_left_approximation, TiltingReport};

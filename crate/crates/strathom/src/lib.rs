//! Exact-arithmetic homological algebra for finite-dimensional associative
//! algebras.
//!
//! The crate builds up in layers:
//!
//! * [`linalg`] — exact scalars (arbitrary-precision rationals and prime
//!   fields), dense matrices with deterministic reduced row echelon form,
//!   kernels, solving, Kronecker products, and canonical subspaces.
//! * [`algebra`] — finite-dimensional associative algebras presented by
//!   structure constants, quivers with monomial relations, matrix algebras,
//!   products, opposites, corners, quotients; Jacobson radicals; ring
//!   homomorphisms.
//! * [`modrep`] — finitely generated right modules, module maps, Hom and
//!   tensor functors, projective covers and resolutions, Ext and Tor,
//!   restriction along ring maps, and the six functors attached to an
//!   idempotent.
//! * [`derived`] — bounded complexes, cones and shifts, projective
//!   replacements, and morphism spaces in the bounded derived category.
//! * [`strat`] — certified checks: ring epimorphisms, homological
//!   epimorphisms, surjectivity via simple-module restriction, idempotency
//!   of kernels, stratifying ideals, and the two constructions that build
//!   new stratifications from a given ring map.
//! * [`input`] / [`report`] / [`pipeline`] / [`corpus`] — the CLI surface:
//!   a strict TOML input format, JSON/Markdown reports, command
//!   implementations, and a built-in example corpus with frozen expected
//!   values.

pub mod algebra;
pub mod derived;
pub mod error;
pub mod linalg;
pub mod modrep;

pub use error::{Error, Result};

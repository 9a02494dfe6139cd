//! Lagrangian surfaces in C² generated by pairs of planar curves.
//!
//! Given regular planar curves α(t) and ω(s), the map
//!
//! ```text
//! Φ(t, s) = ( ∫ ω̇ ω̄ ds − ∫ α′ ᾱ dt ,  α(t) ω(s) )
//! ```
//!
//! is a Lagrangian immersion whose geometry (metric, cubic form, Lagrangian
//! angle, mean curvature) is governed by the curvatures of the two curves.
//! This crate evaluates that geometry, certifies membership in the special
//! families (minimal, parallel mean curvature, Hamiltonian stationary,
//! constant |H|, self-similar and translating solitons, Willmore, tori) and
//! exports sampled meshes.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geom;
pub mod specfun;
pub mod curves;
pub mod star;
pub mod classify;
pub mod meshio;
pub mod spec;
pub mod gallery;

pub use error::{Error, Result};

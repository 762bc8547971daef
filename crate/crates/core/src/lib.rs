//! Convex-cyclicity of finite matrices: spectral classification, convex
//! polynomials with peaking and interpolation constructions, and orbit-hull
//! dynamics. The `convex-cyclic` binary exposes the same functionality as
//! JSON-in, JSON-out subcommands.

// NaN-rejecting guards such as `!(x > 0.0)` are written on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod convex_poly;
pub mod dynamics;
pub mod hull;
pub mod interpolation;
pub mod jordan_forms;
pub mod json;
pub mod lp;
pub mod matrix;
mod multiprec;
pub mod selftest;
pub mod spectral;

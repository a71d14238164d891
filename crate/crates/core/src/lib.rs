//! Quantitative line transversals of planar convex sets.
//!
//! A directed line `ℓ` is an *(f, α)-stabber* of a convex set `C` when both
//! closed pieces `ℓ⁺(C)` (left of the line) and `ℓ⁻(C)` (right of it) have
//! functional value at least `α`, and an *(f, α)-transversal* of a family
//! when it stabs every member. The crate provides the geometric kernel, the
//! monotone functionals, the transversal search, colorful sign vectors, and
//! constructions plus verifiers for the Hadwiger-type statements built on
//! these notions.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod colorful;
pub mod error;
pub mod functionals;
pub mod geometry;
pub mod scenarios;
pub mod stabbing;

pub use error::{Error, Result};

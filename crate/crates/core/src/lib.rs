//! Exact computations for local toric rings in prime characteristic.
//!
//! The engine works in the polynomial model κ[u, y]/I over a finite field κ.
//! It computes the S-span of the Frobenius-pushforward saturation generated
//! by `*1` (S = κ[y]), decides freeness of that span, computes closures of
//! affine semigroups (normalization, q-integral and F-integral closures,
//! power-integral elements), runs length-2 Witt vector checks, and evaluates
//! naive intersection lengths.

pub mod arith;
pub mod binomial;
pub mod error;
pub mod fintegral;
pub mod frobenius;
pub mod intersect;
pub mod lattice;
pub mod parse;
pub mod poly;
pub mod toric;
pub mod witt;

pub use error::{Error, Result};

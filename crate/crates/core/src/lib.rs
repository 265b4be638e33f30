//! Exact-rational algebra for the algebraic model of rational equivariant
//! cohomology theories over a finite group.
//!
//! The crate is organised bottom-up:
//!
//! * [`ratmat`] — dense exact-rational matrices (RREF, kernels, solves).
//! * [`perm`] — finite groups as fully enumerated permutation groups.
//! * [`lattice`] — subgroup lattices, conjugacy classes, Weyl groups, families.
//! * [`burnside`] — the rational Burnside ring, table of marks, idempotents.
//! * [`rep`] / [`chain`] — rational representations and equivariant chain
//!   complexes with tensor, hom, fixed points and homology.
//! * [`dg`] / [`dgmod`] — chain-complex-enriched categories, their right
//!   modules, coends and the box product.
//! * [`model`] — the assembled per-conjugacy-class product model.
//! * [`sample`] — seeded deterministic generators for property suites.
//!
//! Everything is computed with exact rational arithmetic; no floating point
//! appears anywhere.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod burnside;
pub mod chain;
pub mod dg;
pub mod dgmod;
pub mod lattice;
pub mod model;
pub mod perm;
pub mod ratmat;
pub mod rep;
pub mod sample;

pub use ratmat::{QMat, Rat};

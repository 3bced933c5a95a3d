//! Exact computations of classical, quantum, and symplectic cohomology
//! for semiprojective toric manifolds, together with the rotation-class
//! calculus their circle actions induce.
//!
//! Everything is exact: scalars are rational functions in the formal
//! variable T over the rationals, lattice geometry is integer arithmetic,
//! and every headline quantity is produced by two independent routes that
//! are cross-checked.

// Indexed loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod cone;
pub mod floer;
pub mod groebner;
pub mod matrix;
pub mod polyhedral;
pub mod presentations;
pub mod scalar;

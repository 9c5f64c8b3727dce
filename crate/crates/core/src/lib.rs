//! Exact arithmetic toolkit for subsets of the lattice cube `[n]^d` that avoid
//! `d+2` points on a common sphere or hyperplane.
//!
//! The crate is `no_std` (it needs `alloc`). Every geometric decision is made
//! with integer or rational arithmetic; there are no floating-point predicates.
//! Floats only appear where a construction needs a sampling probability or a
//! parameter such as the subcube count, never in a yes/no geometric test.
//!
//! * [`geometry`] holds lattice points, point sets, generalized spheres and the
//!   exact predicates built on the paraboloid lift.
//! * [`analysis`] finds violations, builds rich-surface histograms, counts
//!   degenerate tuples and lattice points on surfaces, and produces
//!   VC-dimension refutation certificates.
//! * [`constructions`] builds point sets: the modular moment curve, the
//!   sample/subsample/delete pipeline, and a greedy baseline.
#![no_std]

extern crate alloc;

pub mod analysis;
pub mod constructions;
mod error;
pub mod geometry;
mod linalg;

pub use error::{Error, Result};
pub use geometry::{GeneralizedSphere, LatticePoint, PointSet, ViolationWitness};

/// Name and version of the pseudorandom generator behind every seeded stream.
/// Recorded in reports so that a run can be reproduced later.
pub const RNG_IDENTITY: &str = "chacha8/rand_chacha-0.3";

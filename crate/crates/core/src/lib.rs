//! Codebooks, bounds and Monte-Carlo experiments in the projective unitary
//! group `PU_n`.
//!
//! `PU_n` is `U_n` modulo global phase, with the phase-invariant distance
//! `d(U, V) = sqrt(1 − |Tr(UᴴV)|/n)`. Codebooks are finite sets of phase
//! classes; the [`bounds`] module evaluates packing, covering and distortion
//! bounds in closed form and [`analysis`] checks them empirically.

// `!(x >= lo)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod bounds;
pub mod codebook;
pub mod error;
pub mod geodesic;
pub mod haar;
pub mod matrix;
pub mod pu;
pub mod rng;

pub use codebook::{Codebook, DedupIndex, Kind};
pub use error::{Error, Result};
pub use geodesic::{eigenphases, geodesic_midpoint, EigenphaseSet};
pub use haar::{haar_sample, haar_unitary};
pub use matrix::CMatrix;
pub use num_complex::Complex64 as C64;
pub use pu::{canonicalize, phase_distance, PhaseClass, UnitaryMatrix};
pub use rng::RandomStream;

//! Construction, classification and feasibility analysis of divisible binary
//! linear codes.
//!
//! The crate is organized bottom-up:
//!
//! - [`gf2`]: bit-packed linear algebra over GF(2) and the text format for
//!   generator matrices.
//! - [`spectra`]: weight distributions, Krawtchouk polynomials and the
//!   MacWilliams transform.
//! - [`feasibility`]: exact rational solving of truncated MacWilliams systems
//!   and the table of known lengths of projective divisible codes.
//! - [`geometry`]: point-set operations (switching, residuals, projections)
//!   and the named constructions.
//! - [`enumerate`]: the row-extension search, canonical forms, full
//!   classification runs and the code database.
//! - [`verify`]: the step-by-step check that no projective triply-even code
//!   of length 59 exists.

pub mod enumerate;
pub mod error;
pub mod feasibility;
pub mod geometry;
pub mod gf2;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use gf2::{BitVector, ColumnMultiset, GeneratorMatrix};
pub use spectra::{DualDistribution, WeightDistribution};

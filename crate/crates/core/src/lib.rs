//! Translational tilings of `Z` and of the cyclic groups `Z_M`.
//!
//! A finite tile `A` tiles `Z` with translates `B` when every integer is
//! uniquely `a + b`. Such `B` is always periodic, and a period-`M` tiling is
//! the same thing as a tiling `A ⊕ B' = Z_M` with `B'` non-periodic mod `M`.
//! This crate verifies such tilings, computes least periods, builds tilings
//! whose period grows quadratically in the tile diameter, bounds periods
//! through cyclotomic divisors of the mask polynomial `A(x)`, factors tilings
//! of intervals, and searches exhaustively for the longest period at small
//! diameters.

pub mod certify;
pub mod cli;
pub mod construct;
pub mod error;
pub mod interval;
pub mod numth;
pub mod poly;
pub mod search;
pub mod tiling;

pub use certify::{certificate, forced_period, nonperiodic_modulus_candidates, Bounded, Certificate, Certifier};
pub use error::{Error, Result};
pub use poly::{cyclotomic, Poly};
pub use tiling::{CyclicSet, CyclicTiling, IntervalTiling, TileSet};

/// Polynomials with 64-bit coefficients; ample for masks and cyclotomics at
/// the sizes handled here.
pub type IntPoly = Poly<i64>;

/// 128-bit coefficients, for products whose coefficients may grow.
pub type WidePoly = Poly<i128>;

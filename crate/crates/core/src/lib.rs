//! Discrete Fourier analysis over `F_q^d` (`q` an odd prime power) and
//! numerical checks of extension estimates for Hamming varieties
//! `H_j = { x : x_1 x_2 ... x_d = j }`.
//!
//! Layering, bottom to top:
//!
//! * [`field`]: `GF(p^n)` arithmetic, the trace, the canonical character.
//! * [`fourier`]: grids, transforms, convolution, norms.
//! * [`varieties`]: point sets, surface measures, extension, strata.
//! * [`estimates`]: decay profiles, Kloosterman sums, operator norms,
//!   decomposition checks, additive energy.

pub mod error;
pub mod estimates;
pub mod field;
pub mod fourier;
pub mod io;
pub mod varieties;

pub use error::{Error, Result};
pub use field::{make_field, FieldElement, FieldSpec};
pub use fourier::{Exponent, Grid, GridFunction};
pub use num_complex::Complex64;
pub use varieties::{SurfaceMeasure, Variety, VarietyKind};

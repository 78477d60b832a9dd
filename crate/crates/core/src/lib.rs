//! Exact computations around birational maps of projective space: composition
//! and degree growth, Weil heights, Picard-Manin hyperbolic geometry, and
//! word-metric distortion with explicit witness words.

pub mod distortion;
pub mod error;
pub mod heights;
pub mod hyperbolic;
pub mod linalg;
pub mod maps;
pub mod polynomials;

pub use error::{Error, Result};

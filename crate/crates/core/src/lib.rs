//! Exact Rankin-Cohen brackets for Jacobi forms and degree-2 Siegel modular
//! forms, computed on truncated Fourier expansions.
//!
//! All differential operators are used in the `1/(2πi)` scaled
//! normalization: `theta_q = ∂τ/(2πi)`, `d_z = ∂z/(2πi)` and
//! `heat = L_m/(2πi)²`, so every coefficient is rational. A bracket of
//! degree `v` computed here therefore differs from the analytic one by the
//! single global factor `(2πi)^v`.
//!
//! Module map:
//! - [`rational`]: the scalar type and its canonical text form
//! - [`series`]: Jacobi / elliptic expansions, ring operations, heat operator
//! - [`bracket`]: the two-parameter Jacobi bracket family and its structure
//! - [`genfun`]: the generating-function construction used as an oracle
//! - [`siegel`]: degree-2 expansions, the Δ operator and the Siegel bracket
//! - [`forms`]: lattice theta series and Eisenstein series
//! - [`io`]: the coefficient file format
//! - [`verify`]: the verification suites behind `rcforms verify`

pub mod bracket;
pub mod error;
pub mod forms;
pub mod genfun;
pub mod io;
pub mod rational;
pub mod series;
pub mod siegel;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
pub use series::{EllipticSeries, JacobiSeries};
pub use siegel::SiegelSeries;

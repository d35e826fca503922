//! Test forms: theta series of even unimodular lattices and elliptic
//! Eisenstein series.

mod eisenstein;
mod lattice;
mod theta;

pub use eisenstein::{bernoulli, divisor_sigma, eisenstein_q};
pub use lattice::{Lattice, LatticeVector};
pub use theta::{jacobi_theta, siegel_theta};

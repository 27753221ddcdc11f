//! Photon-counting observables for inertial and uniformly accelerated
//! detectors in 1+1-dimensional flat spacetime.
//!
//! The crate is organised bottom-up:
//!
//! - [`coords`]: Rindler/Minkowski charts, wedges, proper acceleration.
//! - [`quad`]: adaptive quadrature, regulators and the complex Gamma function.
//! - [`modes`]: plane-wave mode functions and the indefinite scalar product.
//! - [`bogoliubov`]: Minkowski/Rindler Bogoliubov coefficients, Unruh modes
//!   and the thermal pair distribution of the Minkowski vacuum.
//! - [`localized`]: exactly localized bases and the localized-to-localized
//!   transformation coefficients.
//! - [`counting`]: pair-absorption amplitudes, single and coincidence rates.
//! - [`curve`]: sampled curves and CSV tables used by the CLI.
//!
//! Natural units (c = ħ = k_B = 1) are used throughout unless a function
//! says otherwise.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bogoliubov;
pub mod coords;
pub mod counting;
pub mod curve;
pub mod error;
pub mod localized;
pub mod modes;
pub mod quad;

pub use coords::{AccelerationParam, Direction, RindlerEvent, SpacetimeEvent, Wedge};
pub use curve::{SampledCurve, Table};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use quad::{IntegralResult, QuadratureSpec};

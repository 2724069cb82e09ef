//! Complex radiative energy shifts of hydrogen-like bound states.
//!
//! The real part of the shift is the (non-relativistic) Lamb shift and the
//! imaginary part encodes the spontaneous decay rate. Both are obtained from
//! closed-form matrix elements of an SU(1,1) effective-time evolution
//! operator, integrated over photon energies (parametrized by `Φ`) and over
//! an effective time that is rotated onto the imaginary axis.
//!
//! Module map:
//!
//! - [`constants`]: physical constants and unit conversions.
//! - [`special`]: terminating ₂F₁, Jacobi polynomials, integer gamma ratios.
//! - [`su11`]: the SU(1,1) group chart and discrete-series matrix elements.
//! - [`kernel`]: effective-time kernel, residue coefficients and remainder.
//! - [`quadrature`]: adaptive Gauss–Kronrod and principal-value integration.
//! - [`shift`]: Lamb shifts, decay rates, Bethe logarithms.
//! - [`tables`]: reproduction of the published reference tables.
//! - [`oracle`]: independent brute-force evaluators used for verification.

pub mod compensated;
pub mod constants;
pub mod error;
pub mod kernel;
pub mod oracle;
pub mod quadrature;
pub mod shift;
pub mod special;
pub mod su11;
pub mod tables;

pub use constants::{default_constants, PhysicalConstants};
pub use error::{Error, Result};
pub use quadrature::{QuadratureResult, QuadratureSpec};
pub use shift::{
    bethe_log, circular_rate_closed_form, decay_rates, dipole_lamb_full, lamb_shift, BetheResult,
    DipoleOptions, QuantumState, ShiftResult,
};

pub use tables::{generate_table, TableReport};

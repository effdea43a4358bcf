//! Reconstruction of the jump of an analytic function across its cut from finitely
//! many Taylor coefficients, by expansion in Laguerre functions whose coefficients
//! are series over Pollaczek polynomials at half-integer imaginary arguments.
//!
//! Modules:
//!
//! * [`hausdorff`]: moment-sequence diagnostics and the Bernoulli-walk kernels;
//! * [`specfun`]: log-gamma, Pollaczek and Laguerre polynomials, orthonormal bases;
//! * [`transform`]: coefficients → Pollaczek amplitudes → sampled jump function;
//! * [`forward`]: closed-form test pairs and independent transform oracles;
//! * [`quadrature`]: the integration rules everything above relies on.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision, clippy::manual_is_multiple_of, clippy::needless_range_loop)]

pub mod error;
pub mod exact;
pub mod forward;
pub mod hausdorff;
pub mod quadrature;
pub mod specfun;
pub mod transform;

pub use error::{Error, Result};
pub use num_complex::Complex64;

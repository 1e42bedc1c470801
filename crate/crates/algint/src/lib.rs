//! Integrals of rational differentials on plane algebraic curves.
//!
//! A curve is given by a bivariate polynomial `P(x, y) = 0`. Everything the
//! library needs about the curve — genus, holomorphic differentials, the
//! locations of punctures, the symmetric bidifferential — is read off the
//! Newton polygon of `P` combinatorially. Transcendental quantities (periods,
//! the Schwarzian matrix `S`, Abel map, `zeta` values, theta functions) are
//! computed numerically.
//!
//! Module map:
//!
//! * [`algebra`] — exact polynomial arithmetic over Gaussian rationals,
//!   discriminants and degenerate points.
//! * [`polygon`] — Newton polygon, point classes, punctures, nodal analysis,
//!   moduli space of holomorphic differentials.
//! * [`surface`] — fibers, path tracking, local coordinates, cycles.
//! * [`forms`] — combinatorial differentials, `Q`, the bidifferential and
//!   third-kind differentials.
//! * [`periods`] — period matrices, `S`, `zeta`, Abel map, cycle changes and
//!   the variational formula.
//! * [`decompose`] — decomposition of rational differentials and their
//!   complete / incomplete integrals.
//! * [`theta`] — theta functions with characteristics, prime form and
//!   classical elliptic checks.

pub mod algebra;
pub mod curves;
pub mod decompose;
pub mod error;
pub mod forms;
pub mod numeric;
pub mod periods;
pub mod polygon;
pub mod surface;
pub mod theta;

pub use error::{Error, Result};

/// Double precision complex number used by all numerical code.
pub type C64 = num::complex::Complex64;

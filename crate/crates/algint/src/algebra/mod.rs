//! Exact polynomial arithmetic over Gaussian rationals, discriminants and
//! degenerate points.

pub mod coeff;
pub mod curve;
pub mod discriminant;
pub mod poly2;
pub mod poly4;
pub mod upoly;

pub use coeff::{gq, gq_complex, gq_real, parse_rational, rat, Coeff, Field, Gq, Rat};
pub use curve::{Curve, DensePoly2, Deriv};
pub use discriminant::{
    degenerate_points, discriminant, discriminant_scalar, discriminant_univariate, fiber_clusters, kramer_y, resultant_y,
    roots_with_multiplicity, DegeneratePoint,
};
pub use poly2::{Exp2, Poly2};
pub use poly4::Poly4;
pub use upoly::UPoly;

//! Numerical building blocks: polynomial roots, quadrature, truncated Laurent
//! series and small dense linear algebra.

pub mod laurent;
pub mod linalg;
pub mod quad;
pub mod roots;

use crate::C64;

pub const I: C64 = C64::new(0.0, 1.0);
pub const TWO_PI_I: C64 = C64::new(0.0, 2.0 * std::f64::consts::PI);

/// Orders complex numbers by real part, then imaginary part, treating real
/// parts that agree to a relative `1e-10` as equal.
pub fn lex_cmp(a: &C64, b: &C64) -> std::cmp::Ordering {
    let scale = 1.0 + a.norm().max(b.norm());
    if (a.re - b.re).abs() > 1e-10 * scale {
        a.re.partial_cmp(&b.re).unwrap_or(std::cmp::Ordering::Equal)
    } else {
        a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// Sorts in place with [`lex_cmp`].
pub fn sort_lex(v: &mut [C64]) {
    v.sort_by(lex_cmp);
}

/// Largest of `|a - b|` over paired entries.
pub fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max)
}

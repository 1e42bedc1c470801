//! Constructors for frequently used curves.

use crate::algebra::{gq, Curve, Gq, Poly2, UPoly};
use crate::Result;

fn poly(terms: &[((u32, u32), Gq)]) -> Poly2<Gq> {
    Poly2::from_terms(terms.iter().cloned())
}

/// `y^2 = (1 - x^2)(1 - k^2 x^2)`.
pub fn legendre(k: Gq) -> Result<Curve> {
    let k2 = &k * &k;
    let one = gq(1, 1);
    Curve::new(poly(&[
        ((0, 2), one.clone()),
        ((0, 0), -one.clone()),
        ((2, 0), &one + &k2),
        ((4, 0), -k2),
    ]))
}

/// `y^2 = x^3 - a x - b`, i.e. `P = y^2 - x^3 + a x + b`.
pub fn weierstrass(a: Gq, b: Gq) -> Result<Curve> {
    Curve::new(poly(&[((0, 2), gq(1, 1)), ((3, 0), gq(-1, 1)), ((1, 0), a), ((0, 0), b)]))
}

/// `1 + x^3 + y^3 + t x y = 0`.
pub fn cubic(t: Gq) -> Result<Curve> {
    Curve::new(poly(&[((0, 0), gq(1, 1)), ((3, 0), gq(1, 1)), ((0, 3), gq(1, 1)), ((1, 1), t)]))
}

/// `y^2 = f(x)`.
pub fn hyperelliptic(f: &UPoly<Gq>) -> Result<Curve> {
    let mut p = Poly2::monomial(0, 2, gq(1, 1));
    for (i, c) in f.coeffs().iter().enumerate() {
        p.add_term((i as u32, 0), -c.clone());
    }
    Curve::new(p)
}

/// `y^2 = f(x)` for `f` given by its roots (each root listed with its
/// multiplicity).
pub fn hyperelliptic_from_roots(roots: &[Gq]) -> Result<Curve> {
    let mut f = UPoly::constant(gq(1, 1));
    for r in roots {
        f = &f * &UPoly::new(vec![-r.clone(), gq(1, 1)]);
    }
    hyperelliptic(&f)
}

/// `y^2 = (x - c)^2 (x^2 - a^2)(x^2 - b^2)`: genus one with a node at
/// `x = c`.
pub fn nodal_sextic(a: Gq, b: Gq, c: Gq) -> Result<Curve> {
    hyperelliptic_from_roots(&[c.clone(), c, a.clone(), -a, b.clone(), -b])
}

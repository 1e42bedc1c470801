//! The correction polynomial `Q(x, y; x', y')` of the combinatorial
//! bidifferential.
//!
//! For every ordered pair of support points `(i, j)`, `(i', j')` with
//! `i > i'` and `j < j'`, the lattice points `(u, v)` of the closed triangle
//! `(i, j), (i', j'), (i, j')` that are not strictly inside the Newton
//! polygon contribute
//! `P_ij P_i'j' w x^(u-1) y^(v-1) x'^(i+i'-u-1) y'^(j+j'-v-1)` with weight
//! `w = |u - i| |v - j'|`, halved on the edge `(i, j)-(i', j')`. The sum is
//! symmetrized by adding its image under `(x, y) <-> (x', y')`.

use crate::algebra::{gq, Gq, Poly2, Poly4};
use crate::polygon::{Location, NewtonData};

/// Exact `Q` for the polynomial `p`.
pub fn q_comb(p: &Poly2<Gq>) -> Poly4<Gq> {
    let nd = NewtonData::new(p);
    let mut f = Poly4::zero();
    for a in p.support() {
        for b in p.support() {
            f = &f + &pair_terms(p, &nd, a, b);
        }
    }
    &f + &f.swap_points()
}

/// Unsymmetrized contribution of the ordered pair of support points
/// `(i, j)`, `(i', j')` (zero unless `i > i'` and `j < j'`).
pub fn q_comb_pair(p: &Poly2<Gq>, a: (u32, u32), b: (u32, u32)) -> Poly4<Gq> {
    pair_terms(p, &NewtonData::new(p), a, b)
}

fn pair_terms(p: &Poly2<Gq>, nd: &NewtonData, a: (u32, u32), b: (u32, u32)) -> Poly4<Gq> {
    let mut f = Poly4::zero();
    let (i, j, ip, jp) = (a.0 as i64, a.1 as i64, b.0 as i64, b.1 as i64);
    if !(i > ip && j < jp) {
        return f;
    }
    let coef = p.coeff(a.0, a.1) * p.coeff(b.0, b.1);
    let half = gq(1, 2);
    // Orientation of the hypotenuse seen from the corner (i, j').
    let side = |u: i64, v: i64| (ip - i) * (v - j) - (jp - j) * (u - i);
    let corner = side(i, jp);
    for u in ip..=i {
        for v in j..=jp {
            let s = side(u, v);
            if s * corner < 0 {
                continue;
            }
            let w = (i - u).abs() * (v - jp).abs();
            if w == 0 || nd.hull.locate((u, v)) == Location::Interior {
                continue;
            }
            let mut weight = gq(w, 1);
            if s == 0 {
                weight = weight * half.clone();
            }
            let e = [(u - 1) as u32, (v - 1) as u32, (i + ip - u - 1) as u32, (j + jp - v - 1) as u32];
            f.add_term(e, coef.clone() * weight);
        }
    }
    f
}

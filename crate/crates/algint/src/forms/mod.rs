//! Algebraic differentials built from the Newton polygon: the monomial
//! forms `x^i y^j dx / P_y`, the correction polynomial `Q` of the
//! combinatorial bidifferential, third-kind forms and the `C` polynomial
//! governing the derivatives of `zeta`.

pub mod bergman;
pub mod cpoly;
pub mod qcomb;

pub use bergman::BergmanComb;
pub use cpoly::{c_poly, CPolynomial};
pub use qcomb::{q_comb, q_comb_pair};

use crate::algebra::{gq, Curve, Gq, Poly2};
use crate::polygon::{places_at_infinity, PointClass, Pt, XCenter};
use crate::{Error, Result, C64};

/// The differential `num(x, y) / den(x, y) dx`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalForm {
    pub num: Poly2<Gq>,
    pub den: Poly2<Gq>,
    numc: Poly2<C64>,
    denc: Poly2<C64>,
}

impl RationalForm {
    pub fn new(num: Poly2<Gq>, den: Poly2<Gq>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::input("zero denominator"));
        }
        Ok(RationalForm {
            numc: num.to_c64(),
            denc: den.to_c64(),
            num,
            den,
        })
    }

    /// Polynomial differential `num(x, y) dx`.
    pub fn polynomial(num: Poly2<Gq>) -> Self {
        Self::new(num, Poly2::constant(gq(1, 1))).expect("nonzero denominator")
    }

    /// Coefficient of `dx` at `(x, y)`.
    pub fn eval(&self, x: C64, y: C64) -> C64 {
        self.numc.eval_c64(x, y) / self.denc.eval_c64(x, y)
    }

    pub fn num_c64(&self) -> &Poly2<C64> {
        &self.numc
    }

    pub fn den_c64(&self) -> &Poly2<C64> {
        &self.denc
    }
}

/// Kind of a monomial differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// Holomorphic.
    First,
    /// Poles of order at least two at punctures, no residues.
    Second,
    /// Simple poles at two punctures.
    Third,
}

/// `Omega_ij = x^i y^j dx / P_y`.
pub fn omega_comb(curve: &Curve, i: u32, j: u32) -> RationalForm {
    RationalForm::new(Poly2::monomial(i, j, gq(1, 1)), curve.poly().partial_y(1)).expect("P_y is nonzero")
}

/// Kind of `Omega_ij` read off the point classes; `None` outside the closed
/// polygon.
pub fn form_kind(curve: &Curve, i: u32, j: u32) -> Option<FormKind> {
    let nd = crate::polygon::NewtonData::new(curve.poly());
    nd.classify((i as i64, j as i64)).map(|c| match c {
        PointClass::First => FormKind::First,
        PointClass::Second => FormKind::Second,
        PointClass::Third => FormKind::Third,
    })
}

/// Pole order of `Omega_ij` at a puncture over infinity whose side has
/// outward normal `n` and level `m`: `m - n.(i + 1, j + 1) + 1` (values
/// `<= 0` mean no pole).
pub fn pole_order(normal: Pt, level: i64, i: i64, j: i64) -> i64 {
    level - (normal.0 * (i + 1) + normal.1 * (j + 1)) + 1
}

/// Residues of a third-kind monomial form `Omega_ij` at the punctures over
/// `x = infinity` whose sides pass through `(i + 1, j + 1)`, as
/// `(puncture eta, residue)` pairs.
pub fn third_kind_residues(curve: &Curve, i: u32, j: u32) -> Result<Vec<(C64, C64)>> {
    if form_kind(curve, i, j) != Some(FormKind::Third) {
        return Err(Error::input(format!("({i}, {j}) is not a third kind point")));
    }
    let q = ((i + 1) as i64, (j + 1) as i64);
    let mut out = Vec::new();
    for p in places_at_infinity(curve)? {
        debug_assert_eq!(p.x, XCenter::Infinity);
        let on_side = p.a as i64 * q.0 + p.b as i64 * q.1 == p.level;
        if on_side {
            let d = p.side_poly_deriv();
            if d.norm() < 1e-12 {
                return Err(Error::numeric("degenerate side polynomial"));
            }
            out.push((p.eta, p.a as f64 * p.eta.powu(j) / d));
        }
    }
    Ok(out)
}

/// Schwarzian derivative `f'''/f' - 3/2 (f''/f')^2` from the five samples
/// `f(z - 2h), f(z - h), f(z), f(z + h), f(z + 2h)`.
pub fn schwarzian(f: [C64; 5], h: f64) -> C64 {
    let [m2, m1, z0, p1, p2] = f;
    let d1 = (m2 - p2 + (p1 - m1) * 8.0) / (12.0 * h);
    let d2 = (-(m2 + p2) + (m1 + p1) * 16.0 - z0 * 30.0) / (12.0 * h * h);
    let d3 = (p2 - m2 + (m1 - p1) * 2.0) / (2.0 * h * h * h);
    d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1)
}

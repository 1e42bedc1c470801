//! Laurent expansions at a place of the differentials that enter the
//! decomposition, as functions of the second point of a bidifferential.

use crate::algebra::{Deriv, Poly2, Poly4};
use crate::forms::BergmanComb;
use crate::numeric::laurent::Laurent;
use crate::polygon::Pt;
use crate::surface::{poly_on_series, LocalSeries, Surface};
use crate::{Error, Result, C64};

/// Series of `x`, `y`, `dx/dxi` and `1 / P_y` at a place.
#[derive(Clone, Debug)]
pub struct PlaceExpansion {
    pub series: LocalSeries,
    pub x: Laurent,
    pub y: Laurent,
    pub dx: Laurent,
    /// `dx/dxi / P_y(x, y)`.
    pub dx_over_py: Laurent,
    /// Radius used to discard numerically vanishing leading terms.
    pub radius: f64,
    len: usize,
}

const NORMALIZE_TOL: f64 = 1e-11;

fn normalize_inv(s: &Laurent, radius: f64) -> Result<Laurent> {
    s.normalize(radius, NORMALIZE_TOL).inv()
}

/// `p(x0, y')` as a polynomial in `(x', y')` (only `y'` powers).
fn fix_x(p: &Poly2<C64>, x0: C64) -> Poly2<C64> {
    let mut out = Poly2::zero();
    for (&(i, j), c) in p.terms() {
        out.add_term((0, j), c * x0.powu(i));
    }
    out
}

/// `p(x', y0)` as a polynomial in `(x', y')` (only `x'` powers).
fn fix_y(p: &Poly2<C64>, y0: C64) -> Poly2<C64> {
    let mut out = Poly2::zero();
    for (&(i, j), c) in p.terms() {
        out.add_term((i, 0), c * y0.powu(j));
    }
    out
}

/// `q(x0, y0, x', y')` as a polynomial in `(x', y')`.
fn fix_first_point(q: &Poly4<C64>, x0: C64, y0: C64) -> Poly2<C64> {
    let mut out = Poly2::zero();
    for (e, c) in q.terms() {
        out.add_term((e[2], e[3]), c * x0.powu(e[0]) * y0.powu(e[1]));
    }
    out
}

impl PlaceExpansion {
    /// Builds the expansion with `len` known terms in each series.
    pub fn new(surface: &Surface, series: LocalSeries, len: usize) -> Result<Self> {
        let radius = 0.5 * series.safe_radius(surface, &[]);
        let x = series.x_series(len);
        let y = series.y_series(len);
        let dx = series.dx_series(len);
        let py = surface.curve.poly().partial_y(1).to_c64();
        let pys = poly_on_series(&py, &x, &y)?;
        let dx_over_py = dx.mul(&normalize_inv(&pys, radius)?);
        Ok(PlaceExpansion {
            series,
            x,
            y,
            dx,
            dx_over_py,
            radius,
            len,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The constant 1, known well beyond the other series.
    fn one(&self) -> Laurent {
        Laurent::constant(C64::new(1.0, 0.0), 2 * self.len as i32)
    }

    fn poly(&self, p: &Poly2<C64>) -> Result<Laurent> {
        poly_on_series(p, &self.x, &self.y)
    }

    /// `R(x, y) dx/dxi` for `R = num / den`.
    pub fn rational(&self, num: &Poly2<C64>, den: &Poly2<C64>) -> Result<Laurent> {
        let n = self.poly(num)?;
        let d = self.poly(den)?;
        Ok(n.mul(&normalize_inv(&d, self.radius)?).mul(&self.dx))
    }

    /// `Omega_ij = x^i y^j dx / P_y` in the local coordinate.
    pub fn omega(&self, m: Pt) -> Result<Laurent> {
        let mono = Poly2::monomial(m.0 as u32, m.1 as u32, C64::new(1.0, 0.0));
        Ok(self.poly(&mono)?.mul(&self.dx_over_py))
    }

    /// `B^comb(q, p') dx'/dxi` (coefficient of `dx_q`) with `p'` running
    /// over the place.
    pub fn bergman_comb(&self, b: &BergmanComb, qx: C64, qy: C64) -> Result<Laurent> {
        let p = b.curve.poly().to_c64();
        let a = self.poly(&fix_x(&p, qx))?; // P(x_q, y')
        let c = self.poly(&fix_y(&p, qy))?; // P(x', y_q)
        let one = self.one();
        let dxs = one.scale(qx).sub(&self.x);
        let dys = one.scale(qy).sub(&self.y);
        let den = dxs.mul(&dxs).mul(&dys).mul(&dys);
        let first = a.mul(&c).mul(&normalize_inv(&den, self.radius)?).scale(C64::new(-1.0, 0.0));
        let q = self.poly(&fix_first_point(&b.q, qx, qy))?;
        let num = first.add(&q);
        let pyq = b.curve.eval(Deriv::Y, qx, qy);
        Ok(num.mul(&self.dx_over_py).scale(1.0 / pyq))
    }

    /// The combinatorial third-kind differential with residues `+1` at
    /// `p1`, `-1` at `p2`, expanded in the local coordinate of this place.
    pub fn ds_comb(&self, b: &BergmanComb, p1: (C64, C64), p2: (C64, C64)) -> Result<Laurent> {
        let p = b.curve.poly().to_c64();
        let one = self.one();
        let term = |(xa, ya): (C64, C64)| -> Result<Laurent> {
            let num = self.poly(&fix_x(&p, xa))?.sub(&self.poly(&fix_y(&p, ya))?);
            let den = one.scale(xa).sub(&self.x).mul(&one.scale(ya).sub(&self.y));
            // (xa - x)(ya - y) = (x - xa)(y - ya).
            Ok(num.mul(&normalize_inv(&den, self.radius)?))
        };
        let diff = term(p1)?.sub(&term(p2)?);
        Ok(diff.mul(&self.dx_over_py).scale(C64::new(0.5, 0.0)))
    }
}

/// `Res xi^(-k) f(xi) dxi / k`, i.e. the coefficient of `xi^(k-1)` over `k`.
pub fn res_weighted(f: &Laurent, k: usize) -> Result<C64> {
    let n = k as i32 - 1;
    f.coeff(n)
        .map(|c| c / k as f64)
        .ok_or_else(|| Error::numeric(format!("series too short for order {k} (known below xi^{})", f.prec())))
}

/// `Res xi^k f(xi) dxi`, i.e. the coefficient of `xi^(-k-1)`.
pub fn time_coefficient(f: &Laurent, k: usize) -> Result<C64> {
    f.coeff(-(k as i32) - 1)
        .ok_or_else(|| Error::numeric("series too short for the pole part"))
}

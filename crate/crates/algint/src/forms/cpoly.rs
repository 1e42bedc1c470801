//! The polynomial `C(x, y; x1, y1) = sum C_ij(x1, y1) x^i y^j` describing the
//! derivatives of the normalisation constants of third-kind differentials:
//! `d zeta_ij(p1) = ([x^i y^j] S(x, y; p1) + C_ij(p1)) dx1 / P_y(p1)`.
//!
//! It is `Q` minus three difference quotients, each of which is an exact
//! polynomial division; the result is reduced modulo the curve equation in
//! both points and must be supported on the interior points.

use super::qcomb::q_comb;
use crate::algebra::{gq, Curve, Gq, Poly2, Poly4};
use crate::polygon::{NewtonData, Pt};
use crate::{Error, Result, C64};

/// `C_ij(x1, y1)` for every interior point `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CPolynomial {
    pub entries: Vec<(Pt, Poly2<Gq>)>,
}

impl CPolynomial {
    /// Values `C_ij(x1, y1)` in the order of `entries`.
    pub fn eval(&self, x1: C64, y1: C64) -> Vec<C64> {
        self.entries.iter().map(|(_, c)| c.eval_c64(x1, y1)).collect()
    }

    pub fn get(&self, p: Pt) -> Option<&Poly2<Gq>> {
        self.entries.iter().find(|(q, _)| *q == p).map(|(_, c)| c)
    }
}

/// Reduces the `y`-degree (variable `yv`) of `f` below `deg_y P` using
/// `P(x, y) = 0` written in the variables `(xv, yv)`.
fn reduce4(f: &Poly4<Gq>, p: &Poly2<Gq>, xv: usize, yv: usize) -> Result<Poly4<Gq>> {
    let d = p.deg_y();
    let lead = p.y_coeffs()[d as usize].clone();
    if lead.degree() != Some(0) {
        return Err(Error::unsupported("reduction needs a constant leading coefficient in y"));
    }
    let inv = gq(1, 1) / lead.lead();
    let mut g = f.clone();
    let pe = Poly4::embed(p, xv, yv);
    loop {
        let top = g.terms().filter(|(e, _)| e[yv] >= d).max_by_key(|(e, _)| e[yv]).map(|(e, c)| (*e, c.clone()));
        let Some((e, c)) = top else { break };
        let mut shift = e;
        shift[yv] -= d;
        let m = Poly4::from_terms([(shift, c * inv.clone())]);
        g = &g - &(&m * &pe);
    }
    Ok(g)
}

fn reduce2(f: &Poly2<Gq>, p: &Poly2<Gq>) -> Result<Poly2<Gq>> {
    let f4 = Poly4::embed(f, 2, 3);
    let r = reduce4(&f4, p, 2, 3)?;
    Ok(r.coeff_xy(0, 0))
}

/// Computes the exact `C` polynomial of a curve whose leading coefficient in
/// `y` is constant.
pub fn c_poly(curve: &Curve) -> Result<CPolynomial> {
    let p = curve.poly();
    let px = p.partial_x(1);
    let py = p.partial_y(1);
    let e = |q: &Poly2<Gq>, xv: usize, yv: usize| Poly4::embed(q, xv, yv);
    let p_xy1 = e(p, 0, 3);
    let p_x1y1 = e(p, 2, 3);
    let p_x1y = e(p, 2, 1);
    let p_xy = e(p, 0, 1);
    let px_x1y1 = e(&px, 2, 3);
    let py_x1y1 = e(&py, 2, 3);
    let px_x1y = e(&px, 2, 1);
    let py_xy1 = e(&py, 0, 3);
    let dx = &Poly4::var(0) - &Poly4::var(2);
    let dy = &Poly4::var(1) - &Poly4::var(3);
    let half = Poly4::constant(gq(1, 2));

    let a = (&(&p_xy1 - &p_x1y1) - &(&dx * &px_x1y1)).div_linear(0, 2)?.div_linear(0, 2)?;
    let b = (&(&p_x1y - &p_x1y1) - &(&dy * &py_x1y1)).div_linear(1, 3)?.div_linear(1, 3)?;
    let t2 = &a * &b;

    let n3 = &(&(&p_x1y - &p_xy) + &(&p_xy1 - &p_x1y1)) + &(&dx * &(&px_x1y - &px_x1y1));
    let t3 = &(&n3.div_linear(0, 2)?.div_linear(0, 2)?.div_linear(1, 3)? * &py_x1y1) * &half;

    let n4 = &(&(&p_x1y - &p_x1y1) + &(&p_xy1 - &p_xy)) + &(&dy * &(&py_xy1 - &py_x1y1));
    let t4 = &(&n4.div_linear(0, 2)?.div_linear(1, 3)?.div_linear(1, 3)? * &px_x1y1) * &half;

    let total = &(&(&q_comb(p) - &t2) - &t3) - &t4;
    let reduced = reduce4(&total, p, 0, 1)?;
    let nd = NewtonData::new(p);
    let mut entries = Vec::new();
    for (i, j) in reduced.xy_support() {
        let c = reduce2(&reduced.coeff_xy(i, j), p)?;
        if c.is_zero() {
            continue;
        }
        if !nd.interior.contains(&(i as i64, j as i64)) {
            return Err(Error::check(format!(
                "C polynomial has a term x^{i} y^{j} outside the interior points"
            )));
        }
    }
    for &(i, j) in &nd.interior {
        let c = reduce2(&reduced.coeff_xy(i as u32, j as u32), p)?;
        entries.push(((i, j), c));
    }
    Ok(CPolynomial { entries })
}

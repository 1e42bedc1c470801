//! Variation of the A-periods under a deformation `P -> P + eps dP`.
//!
//! For generic branch points (simple ramification with `P_x != 0`),
//! `sum_{m'} (dK Khat)_{m, m'} x^i' y^j'` equals
//! `-x^i y^j dP_y / P_y - (j x^i y^(j-1) / P_y - x^i y^j P_yy / P_y^2) dP
//!  + sum_a Res_a dP(p') Bhat(p'; p) x'^i y'^j dx' / (P_x(p') P_y(p')^2)`,
//! where `Bhat = B P_y P_y' / (dx dx')` and the sum runs over the branch
//! points. The right-hand side is a polynomial supported on the interior
//! points; its coefficients are fitted from values at sample points and
//! compared with central differences of the periods.

use num::rational::BigRational;

use super::PeriodData;
use crate::algebra::{Curve, Deriv, Gq, Poly2};
use crate::numeric::linalg::{lstsq, max_abs, CMat};
use crate::polygon::{places_over, PlaceKind};
use crate::surface::{LocalSeries, Surface, SurfacePoint};
use crate::{Error, Result, C64};

/// Result of [`rauch_check`].
#[derive(Clone, Debug)]
pub struct RauchReport {
    /// `dK Khat` from the residue formula (`#N° x #N°`).
    pub residue: CMat,
    /// Relative residual of the polynomial fit of the right-hand side.
    pub fit_residual: f64,
    /// `dK Khat` from central differences, when requested.
    pub finite_difference: Option<CMat>,
    /// `max |residue - finite_difference|`.
    pub difference: Option<f64>,
}

const CIRCLE_POINTS: usize = 64;

/// A-periods of the interior monomial forms on a perturbed curve, over the
/// same loops.
fn a_periods(pd: &PeriodData, poly: Poly2<Gq>) -> Result<CMat> {
    let surface = Surface::new(Curve::new(poly)?)?;
    let n = pd.monomials.len();
    let g = pd.genus();
    let mono = &pd.monomials;
    let f = |x: C64, y: C64, out: &mut [C64]| -> Result<()> {
        let inv = 1.0 / surface.curve.py(x, y);
        for (o, &(i, j)) in out.iter_mut().zip(mono) {
            *o = x.powi(i as i32) * y.powi(j as i32) * inv;
        }
        Ok(())
    };
    let nloops = pd.cycles.a.len() + pd.cycles.b.len();
    let mut raw = CMat::zeros(n, nloops);
    for (c, spec) in pd.cycles.a.iter().chain(&pd.cycles.b).enumerate() {
        let v = spec.track(&surface)?.integrate(&surface, n, &f, pd.options.quad)?;
        for (r, val) in v.into_iter().enumerate() {
            raw[(r, c)] = val;
        }
    }
    let m = CMat::from_fn(nloops, g, |r, c| C64::new(pd.marking[c][r] as f64, 0.0));
    Ok(raw * m)
}

/// Evaluates the residue formula and, if `eps` is given, compares it with
/// central differences `(K(P + eps dP) - K(P - eps dP)) / (2 eps) Khat`.
pub fn rauch_check(pd: &PeriodData, delta_p: &Poly2<Gq>, eps: Option<f64>) -> Result<RauchReport> {
    let n = pd.monomials.len();
    let s_mat = pd.s_matrix()?.clone();
    let surface = &pd.surface;
    let curve = &surface.curve;
    if delta_p.is_zero() {
        return Ok(RauchReport {
            residue: CMat::zeros(n, n),
            fit_residual: 0.0,
            finite_difference: eps.map(|_| CMat::zeros(n, n)),
            difference: eps.map(|_| 0.0),
        });
    }
    let dp = delta_p.to_c64();
    let dpy = delta_p.partial_y(1).to_c64();

    // Branch points with their local series.
    let mut branches = Vec::new();
    for &(x0, _) in &surface.critical {
        for place in places_over(curve, x0)? {
            match place.kind {
                PlaceKind::Regular | PlaceKind::Puncture => continue,
                PlaceKind::Singular => {
                    return Err(Error::unsupported(
                        "variational formula is only implemented for generic branch points",
                    ))
                }
                PlaceKind::Ramified => {
                    let px = curve.px(x0, place.y0);
                    if place.a != 2 || px.norm() < 1e-10 * curve.scale() {
                        return Err(Error::unsupported(
                            "variational formula is only implemented for generic branch points",
                        ));
                    }
                    branches.push(LocalSeries::new(&place, 40)?);
                }
            }
        }
    }

    let npts = 2 * n + 4;
    let pts = pd.sample_points(npts, pd.options.seed.wrapping_add(202))?;
    let avoid: Vec<C64> = pts.iter().map(|p| p.x).collect();
    // Circle samples around every branch point, shared by all rows.
    let mut circles = Vec::new();
    for br in &branches {
        let r = 0.5 * br.safe_radius(surface, &avoid);
        circles.push(br.sample_circle(surface, r, CIRCLE_POINTS, 0.3)?);
    }
    let mono_vals = |x: C64, y: C64| -> Vec<C64> {
        pd.monomials.iter().map(|&(i, j)| x.powi(i as i32) * y.powi(j as i32)).collect()
    };
    let bhat = |q: SurfacePoint, p: SurfacePoint| -> C64 {
        let v1 = mono_vals(q.x, q.y);
        let v2 = mono_vals(p.x, p.y);
        let mut acc = pd.bergman.numerator(q.x, q.y, p.x, p.y);
        for a in 0..n {
            for b in 0..n {
                acc += s_mat[(a, b)] * v1[a] * v2[b];
            }
        }
        acc
    };

    let mut rhs = CMat::zeros(npts, n);
    for (r, p) in pts.iter().enumerate() {
        let (x, y) = (p.x, p.y);
        let py = curve.py(x, y);
        let pyy = curve.eval(Deriv::YY, x, y);
        let dpv = dp.eval_c64(x, y);
        let dpyv = dpy.eval_c64(x, y);
        for (m, &(i, j)) in pd.monomials.iter().enumerate() {
            let xi = x.powi(i as i32);
            let mut v = -xi * y.powi(j as i32) * dpyv / py;
            let yj1 = if j > 0 { y.powi(j as i32 - 1) * j as f64 } else { C64::new(0.0, 0.0) };
            v -= (xi * yj1 / py - xi * y.powi(j as i32) * pyy / (py * py)) * dpv;
            for circ in &circles {
                let mut acc = C64::new(0.0, 0.0);
                for smp in circ {
                    let q = SurfacePoint::new(smp.x, smp.y);
                    let pyq = curve.py(q.x, q.y);
                    let f = dp.eval_c64(q.x, q.y) * q.x.powi(i as i32) * q.y.powi(j as i32) * bhat(q, *p)
                        / (curve.px(q.x, q.y) * pyq * pyq)
                        * smp.dx_dxi;
                    acc += f * smp.xi;
                }
                v += acc / CIRCLE_POINTS as f64;
            }
            rhs[(r, m)] = v;
        }
    }
    let a = CMat::from_fn(npts, n, |r, c| mono_vals(pts[r].x, pts[r].y)[c]);
    let (coef, fit_residual) = lstsq(&a, &rhs)?; // coef[(m', m)]
    let residue = coef.transpose();

    let (finite_difference, difference) = match eps {
        None => (None, None),
        Some(e) => {
            let er = BigRational::from_float(e).ok_or_else(|| Error::input("invalid step"))?;
            let eg = Gq::new(er, BigRational::from_integer(0.into()));
            let step = delta_p.scale(&eg);
            let kp = a_periods(pd, pd.surface.curve.poly() + &step)?;
            let km = a_periods(pd, pd.surface.curve.poly() - &step)?;
            let fd = (kp - km) * C64::new(0.5 / e, 0.0) * &pd.khat;
            let d = max_abs(&(&fd - &residue));
            (Some(fd), Some(d))
        }
    };
    Ok(RauchReport {
        residue,
        fit_residual,
        finite_difference,
        difference,
    })
}

//! Local Puiseux expansions at places, Laurent expansions of rational
//! functions there, and sampling on small circles in the local coordinate.

use super::Surface;
use crate::algebra::Poly2;
use crate::numeric::laurent::Laurent;
use crate::numeric::lex_cmp;
use crate::polygon::{Place, XCenter};
use crate::{Error, Result, C64};

/// Puiseux expansion `x = x0 + xi^a`, `y = y0 + xi^b u(xi)` of a place.
#[derive(Clone, Debug)]
pub struct LocalSeries {
    pub place: Place,
    /// Taylor coefficients of `u`.
    pub u: Vec<C64>,
}

/// A point on a small circle around a place.
#[derive(Clone, Copy, Debug)]
pub struct PlaceSample {
    pub xi: C64,
    pub x: C64,
    pub y: C64,
    pub dx_dxi: C64,
}

/// Default number of series terms.
pub const SERIES_ORDER: usize = 40;

fn series_mul_trunc(a: &[C64], b: &[C64], n: usize) -> Vec<C64> {
    let mut c = vec![C64::new(0.0, 0.0); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if *ai == C64::new(0.0, 0.0) {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            c[i + j] += ai * bj;
        }
    }
    c
}

impl LocalSeries {
    /// Solves `L(xi^a, xi^b u) = 0` order by order from `u(0) = eta`.
    pub fn new(place: &Place, order: usize) -> Result<Self> {
        let (a, b, e) = (place.a as i64, place.b as i64, place.level);
        let mut terms: Vec<(usize, u32, C64)> = Vec::new();
        for (&(i, j), c) in place.local.terms() {
            let s = a * i as i64 + b * j as i64 - e;
            if s < 0 {
                return Err(Error::numeric(format!(
                    "local polynomial has a term below the side ({i},{j})"
                )));
            }
            terms.push((s as usize, j, *c));
        }
        let dmax = terms.iter().map(|t| t.1).max().unwrap_or(0) as usize;
        let eta = place.eta;
        let gu: C64 = terms
            .iter()
            .filter(|t| t.0 == 0 && t.1 > 0)
            .map(|t| t.2 * t.1 as f64 * eta.powu(t.1 - 1))
            .sum();
        if gu.norm() == 0.0 {
            return Err(Error::numeric("singular side polynomial root"));
        }
        let mut u = vec![C64::new(0.0, 0.0); order];
        u[0] = eta;
        for n in 1..order {
            // Coefficient of xi^n in G(xi, U) with U truncated below n.
            let len = n + 1;
            let mut pows: Vec<Vec<C64>> = Vec::with_capacity(dmax + 1);
            let mut one = vec![C64::new(0.0, 0.0); len];
            one[0] = C64::new(1.0, 0.0);
            pows.push(one);
            let ucur = &u[..n];
            for j in 1..=dmax {
                let next = series_mul_trunc(&pows[j - 1], ucur, len);
                pows.push(next);
            }
            let mut g = C64::new(0.0, 0.0);
            for &(s, j, c) in &terms {
                if s <= n {
                    g += c * pows[j as usize][n - s];
                }
            }
            u[n] = -g / gu;
        }
        Ok(LocalSeries {
            place: place.clone(),
            u,
        })
    }

    pub fn order(&self) -> usize {
        self.u.len()
    }

    /// `x(xi)` as a Laurent series with relative length `len`.
    pub fn x_series(&self, len: usize) -> Laurent {
        let a = self.place.a;
        match self.place.x {
            XCenter::Finite(x0) if x0 != C64::new(0.0, 0.0) => {
                let mut s = Laurent::constant(x0, len as i32);
                if (a as usize) < len {
                    s.c[a as usize] += C64::new(1.0, 0.0);
                }
                s
            }
            _ => Laurent::monomial(C64::new(1.0, 0.0), a, a + len as i32),
        }
    }

    /// `y(xi)` as a Laurent series with relative length `len`.
    pub fn y_series(&self, len: usize) -> Laurent {
        let b = self.place.b;
        let n = len.min(self.u.len());
        let tail = Laurent {
            val: b,
            c: self.u[..n].to_vec(),
        };
        if self.place.y0 == C64::new(0.0, 0.0) {
            tail
        } else {
            Laurent::constant(self.place.y0, b + n as i32).add(&tail)
        }
    }

    /// `dx/dxi` as a Laurent series.
    pub fn dx_series(&self, len: usize) -> Laurent {
        let a = self.place.a;
        Laurent::monomial(C64::new(a as f64, 0.0), a - 1, a - 1 + len as i32)
    }

    /// Series value of `y` at `xi`.
    pub fn y_approx(&self, xi: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in self.u.iter().rev() {
            acc = acc * xi + c;
        }
        self.place.y0 + acc * xi.powi(self.place.b)
    }

    /// A circle radius in the local coordinate that keeps the circle well
    /// inside the region where this place's branch is isolated.
    pub fn safe_radius(&self, s: &Surface, avoid: &[C64]) -> f64 {
        let a = self.place.a.unsigned_abs() as f64;
        let mut pts: Vec<C64> = s.critical_x();
        pts.extend_from_slice(avoid);
        match self.place.x {
            XCenter::Finite(x0) => {
                let d = pts
                    .iter()
                    .map(|p| (p - x0).norm())
                    .filter(|&d| d > 1e-8 * (1.0 + x0.norm()))
                    .fold(f64::INFINITY, f64::min);
                let d = if d.is_finite() { d } else { 1.0 };
                (0.4 * d).powf(1.0 / a)
            }
            XCenter::Infinity => {
                let r = pts.iter().map(|p| p.norm()).fold(0.0, f64::max);
                (2.5 * r + 2.0).powf(-1.0 / a)
            }
        }
    }

    /// Points of the place's branch over the circle `|xi| = radius`.
    pub fn sample_circle(&self, s: &Surface, radius: f64, m: usize, phase: f64) -> Result<Vec<PlaceSample>> {
        let mut out = Vec::with_capacity(m);
        for k in 0..m {
            let xi = C64::from_polar(radius, phase + 2.0 * std::f64::consts::PI * k as f64 / m as f64);
            out.push(self.sample_at(s, xi)?);
        }
        Ok(out)
    }

    /// The point of this branch at local parameter `xi` (series predictor,
    /// then nearest fiber point).
    pub fn sample_at(&self, s: &Surface, xi: C64) -> Result<PlaceSample> {
        let x = self.place.x_at(xi);
        let pred = self.y_approx(xi);
        let f = s.fiber(x)?;
        let mut d: Vec<(f64, C64)> = f.iter().map(|y| ((y - pred).norm(), *y)).collect();
        d.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap_or(std::cmp::Ordering::Equal));
        if d.len() > 1 && d[1].0 < 3.0 * d[0].0 {
            return Err(Error::numeric(format!(
                "local branch ambiguous at xi = {xi} (x = {x}); radius too large"
            )));
        }
        Ok(PlaceSample {
            xi,
            x,
            y: d[0].1,
            dx_dxi: self.place.dx_dxi(xi),
        })
    }

    /// Laurent series in `xi` of `num(x, y) / den(x, y) * dx/dxi`.
    pub fn laurent_of(&self, num: &Poly2<C64>, den: &Poly2<C64>, len: usize, radius: f64) -> Result<Laurent> {
        let n = poly_on_series(num, &self.x_series(len), &self.y_series(len))?;
        let d = poly_on_series(den, &self.x_series(len), &self.y_series(len))?;
        let d = d.normalize(radius, 1e-10);
        let q = n.mul(&d.inv()?);
        Ok(q.mul(&self.dx_series(len)))
    }
}

/// Evaluates a polynomial on Laurent series `x(xi)`, `y(xi)`.
pub fn poly_on_series(p: &Poly2<C64>, x: &Laurent, y: &Laurent) -> Result<Laurent> {
    let len = x.c.len().min(y.c.len()) as i32;
    let dx = p.deg_x() as i32;
    let dy = p.deg_y() as i32;
    let xp: Vec<Laurent> = (0..=dx).map(|k| x.powi(k)).collect::<Result<_>>()?;
    let yp: Vec<Laurent> = (0..=dy).map(|k| y.powi(k)).collect::<Result<_>>()?;
    let mut acc: Option<Laurent> = None;
    for (&(i, j), c) in p.terms() {
        let t = xp[i as usize].mul(&yp[j as usize]).scale(*c);
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t),
        });
    }
    Ok(acc.unwrap_or_else(|| Laurent::constant(C64::new(0.0, 0.0), len)))
}

/// Sorts places deterministically: finite before infinite, then by centre
/// and `eta`.
pub fn sort_places(places: &mut [Place]) {
    places.sort_by(|p, q| {
        let key = |pl: &Place| match pl.x {
            XCenter::Finite(x) => (0, x),
            XCenter::Infinity => (1, C64::new(0.0, 0.0)),
        };
        let (kp, xp) = key(p);
        let (kq, xq) = key(q);
        kp.cmp(&kq)
            .then(lex_cmp(&xp, &xq))
            .then(lex_cmp(&p.y0, &q.y0))
            .then(lex_cmp(&p.eta, &q.eta))
    });
}

//! Decomposition of a rational differential `R(x, y) dx` on the curve into
//! the fundamental blocks:
//!
//! `R = sum_{p, k >= 1} t_{p,k} B_{p,k} + sum_p t_{p,0} dS_{p,o} + sum_i t_i omega_i`,
//!
//! where the times `t_{p,k} = Res_p xi_p^k R dx` are read off the local
//! expansions at the poles, `B_{p,k} = (1/k) Res_{p'} xi_p(p')^(-k) B(., p')`
//! are the second kind blocks (affine in `S`), `dS_{p,o}` the normalised third
//! kind differentials and `t_i` the A-periods of the remainder, obtained from
//! its coefficients on the interior monomials and the period matrix.

pub mod expansion;
pub mod integrate;

pub use expansion::PlaceExpansion;
pub use integrate::{pi_u_k, Gamma, IncompleteIntegral, PiReport};

use crate::algebra::{resultant_y, roots_with_multiplicity};
use crate::forms::RationalForm;
use crate::numeric::laurent::Laurent;
use crate::numeric::linalg::{lstsq, CMat};
use crate::periods::{PeriodData, ThirdKind};
use crate::polygon::{places_over, punctures, PlaceKind, XCenter};
use crate::surface::{LocalSeries, SurfacePoint};
use crate::{Error, Result, C64};

/// Options of the decomposition.
#[derive(Clone, Copy, Debug)]
pub struct DecomposeOptions {
    /// Number of terms of the local series (bounds the pole orders).
    pub series_terms: usize,
    /// Maximal accepted disagreement between series and circle residues.
    pub residue_tol: f64,
    /// Maximal accepted relative residual of the remainder fit.
    pub fit_tol: f64,
    /// Seed for the collocation points.
    pub seed: u64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            series_terms: 64,
            residue_tol: 1e-6,
            fit_tol: 1e-8,
            seed: 7,
        }
    }
}

/// A pole of the differential with its local expansion and times.
#[derive(Clone, Debug)]
pub struct Pole {
    pub expansion: PlaceExpansion,
    /// `t_{p,k}` for `k = 0 .. deg_p`.
    pub times: Vec<C64>,
    /// The same times from circle quadrature.
    pub circle_times: Vec<C64>,
}

impl Pole {
    pub fn kind(&self) -> PlaceKind {
        self.expansion.series.place.kind
    }

    /// Affine point of the pole, if it is not a puncture.
    pub fn point(&self) -> Option<SurfacePoint> {
        self.expansion.series.place.point().map(|(x, y)| SurfacePoint::new(x, y))
    }

    /// Pole order of `R dx` (the number of times).
    pub fn order(&self) -> usize {
        self.times.len()
    }

    pub fn describe(&self) -> String {
        self.expansion.series.place.describe()
    }
}

/// The times of a differential at all of its poles.
#[derive(Clone, Debug)]
pub struct Times {
    pub poles: Vec<Pole>,
    /// Largest scaled disagreement between series and circle residues.
    pub discrepancy: f64,
}

impl Times {
    /// `t_{p,k}` (zero beyond the pole order).
    pub fn get(&self, pole: usize, k: usize) -> C64 {
        self.poles[pole].times.get(k).copied().unwrap_or_default()
    }
}

/// A second kind block `B_{p,k}` with its time.
#[derive(Clone, Debug)]
pub struct Block {
    pub pole: usize,
    pub k: usize,
    pub time: C64,
    /// `(1/k) Res xi^(-k) Omega_m` for the interior monomials: the
    /// coefficients of the `S`-dependent part.
    pub holo: Vec<C64>,
}

/// A third kind term `t_{p,0} dS_{p,o}`.
#[derive(Clone, Debug)]
pub struct ThirdTerm {
    pub pole: usize,
    pub time: C64,
    pub ds: ThirdKind,
}

/// Result of [`decompose`].
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub form: RationalForm,
    pub times: Times,
    pub blocks: Vec<Block>,
    pub third: Vec<ThirdTerm>,
    /// Coefficients `R~_m` of `P_y R~ = sum_m R~_m x^i y^j` on the interior
    /// monomials.
    pub remainder: Vec<C64>,
    /// `t_i`, the A-periods of the remainder.
    pub holo_coeffs: Vec<C64>,
    /// Relative residual of the remainder fit.
    pub fit_residual: f64,
}

const CIRCLE_POINTS: usize = 128;

/// Candidate places for the poles of `num / den dx`: the punctures and the
/// places over the `x` roots of `Res_y(den, P)`.
fn candidate_places(pd: &PeriodData, form: &RationalForm) -> Result<(Vec<crate::polygon::Place>, Vec<C64>)> {
    let curve = &pd.surface.curve;
    let mut places = punctures(curve)?;
    let mut xs = Vec::new();
    if form.den.deg_x() > 0 || form.den.deg_y() > 0 {
        let res = resultant_y(&form.den, curve.poly());
        if res.is_zero() {
            return Err(Error::input("the denominator vanishes identically on the curve"));
        }
        if res.degree().unwrap_or(0) > 0 {
            for (x0, _) in roots_with_multiplicity(&res)? {
                xs.push(x0);
                places.extend(places_over(curve, x0)?.into_iter().filter(|p| !p.is_puncture()));
            }
        }
    }
    Ok((places, xs))
}

/// The poles of `R dx` and their times `t_{p,k} = Res_p xi^k R dx`.
pub fn times(pd: &PeriodData, form: &RationalForm, opts: &DecomposeOptions) -> Result<Times> {
    let surface = &pd.surface;
    let (places, avoid) = candidate_places(pd, form)?;
    let num = form.num_c64();
    let den = form.den_c64();
    let mut poles = Vec::new();
    let mut discrepancy: f64 = 0.0;
    for place in places {
        let series = LocalSeries::new(&place, opts.series_terms + 8)?;
        let mut exp = PlaceExpansion::new(surface, series, opts.series_terms)?;
        exp.radius = 0.5 * exp.series.safe_radius(surface, &avoid);
        let lr = exp.rational(num, den)?.normalize(exp.radius, 1e-11);
        if lr.val >= 0 {
            continue;
        }
        let order = (-lr.val) as usize;
        let times: Vec<C64> = (0..order)
            .map(|k| expansion::time_coefficient(&lr, k))
            .collect::<Result<_>>()?;
        // Circle check in the local coordinate.
        let samples = exp.series.sample_circle(surface, exp.radius, CIRCLE_POINTS, 0.1)?;
        let vals: Vec<C64> = samples.iter().map(|s| form.eval(s.x, s.y) * s.dx_dxi).collect();
        let scale = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let mut circle_times = Vec::with_capacity(order);
        for (k, t) in times.iter().enumerate() {
            let c: C64 = samples
                .iter()
                .zip(&vals)
                .map(|(s, v)| v * s.xi.powi(k as i32 + 1))
                .sum::<C64>()
                / CIRCLE_POINTS as f64;
            let d = (c - t).norm() / exp.radius.powi(k as i32 + 1) / scale.max(1e-300);
            discrepancy = discrepancy.max(d);
            circle_times.push(c);
        }
        poles.push(Pole {
            expansion: exp,
            times,
            circle_times,
        });
    }
    if discrepancy > opts.residue_tol {
        return Err(Error::check(format!(
            "series and circle residues disagree ({discrepancy:.2e})"
        )));
    }
    Ok(Times { poles, discrepancy })
}

impl Block {
    /// Coefficient of `dx` of `B_{p,k}` at `q`.
    pub fn eval(&self, pd: &PeriodData, times: &Times, q: SurfacePoint) -> Result<C64> {
        let exp = &times.poles[self.pole].expansion;
        let comb = expansion::res_weighted(&exp.bergman_comb(&pd.bergman, q.x, q.y)?, self.k)?;
        let s = pd.s_matrix()?;
        let v = pd.monomial_values(q.x, q.y);
        let mut corr = C64::new(0.0, 0.0);
        for (a, va) in v.iter().enumerate() {
            for (b, hb) in self.holo.iter().enumerate() {
                corr += s[(a, b)] * va * hb;
            }
        }
        let acc = comb + corr / pd.surface.curve.py(q.x, q.y);
        Ok(acc)
    }
}

/// Decomposes `R dx` with respect to the origin of the period data.
pub fn decompose(pd: &PeriodData, form: &RationalForm, opts: &DecomposeOptions) -> Result<Decomposition> {
    pd.s_matrix()?;
    let times = times(pd, form, opts)?;
    let mut blocks = Vec::new();
    let mut third = Vec::new();
    for (pi, pole) in times.poles.iter().enumerate() {
        let scale = pole.times.iter().map(|t| t.norm()).fold(0.0, f64::max);
        for (k, &t) in pole.times.iter().enumerate() {
            if t.norm() <= 1e-13 * scale.max(1.0) {
                continue;
            }
            if k == 0 {
                let p = match (pole.kind(), pole.point()) {
                    (PlaceKind::Regular | PlaceKind::Ramified, Some(p)) => p,
                    _ => {
                        return Err(Error::unsupported(format!(
                            "residue at {} (only residues at smooth affine points are supported)",
                            pole.describe()
                        )))
                    }
                };
                let ds = pd.third_kind(p, pd.origin)?;
                third.push(ThirdTerm { pole: pi, time: t, ds });
            } else {
                let holo = pd
                    .monomials
                    .iter()
                    .map(|&m| expansion::res_weighted(&pole.expansion.omega(m)?, k))
                    .collect::<Result<_>>()?;
                blocks.push(Block {
                    pole: pi,
                    k,
                    time: t,
                    holo,
                });
            }
        }
    }
    let mut dec = Decomposition {
        form: form.clone(),
        times,
        blocks,
        third,
        remainder: Vec::new(),
        holo_coeffs: Vec::new(),
        fit_residual: 0.0,
    };
    // Fit P_y R~ on the interior monomials.
    let n = pd.monomials.len();
    let npts = 2 * n + 6;
    let pts = pd.sample_points(npts, opts.seed)?;
    let mut rhs = CMat::zeros(npts, 1);
    for (r, p) in pts.iter().enumerate() {
        rhs[(r, 0)] = dec.remainder_at(pd, *p)? * pd.surface.curve.py(p.x, p.y);
    }
    let (coef, resid) = if n == 0 {
        let norm = rhs.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let scale = pts.iter().map(|p| (form.eval(p.x, p.y) * pd.surface.curve.py(p.x, p.y)).norm()).fold(0.0, f64::max);
        (CMat::zeros(0, 1), norm / scale.max(1e-300))
    } else {
        let a = CMat::from_fn(npts, n, |r, c| {
            let (i, j) = pd.monomials[c];
            pts[r].x.powi(i as i32) * pts[r].y.powi(j as i32)
        });
        lstsq(&a, &rhs)?
    };
    if resid > opts.fit_tol {
        return Err(Error::check(format!(
            "remainder is not a combination of holomorphic forms (relative residual {resid:.2e}); \
             pole subtraction failed at one of: {}",
            dec.times.poles.iter().map(|p| p.describe()).collect::<Vec<_>>().join("; ")
        )));
    }
    dec.remainder = coef.iter().copied().collect();
    let g = pd.genus();
    dec.holo_coeffs = (0..g)
        .map(|i| (0..n).map(|m| pd.k[(m, i)] * dec.remainder[m]).sum())
        .collect();
    dec.fit_residual = resid;
    Ok(dec)
}

impl Decomposition {
    /// `sum t_{p,k} B_{p,k} + sum t_{p,0} dS_{p,o}` at `q` (coefficient of `dx`).
    pub fn singular_part(&self, pd: &PeriodData, q: SurfacePoint) -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for b in &self.blocks {
            acc += b.time * b.eval(pd, &self.times, q)?;
        }
        for t in &self.third {
            acc += t.time * pd.eval_third_kind(&t.ds, q.x, q.y);
        }
        Ok(acc)
    }

    /// `R~ = R - singular part` at `q`.
    pub fn remainder_at(&self, pd: &PeriodData, q: SurfacePoint) -> Result<C64> {
        Ok(self.form.eval(q.x, q.y) - self.singular_part(pd, q)?)
    }

    /// The full right-hand side `singular part + sum t_i omega_i` at `q`.
    pub fn reconstruct(&self, pd: &PeriodData, q: SurfacePoint) -> Result<C64> {
        let w = pd.omega(q.x, q.y);
        let holo: C64 = w.iter().zip(&self.holo_coeffs).map(|(a, b)| a * b).sum();
        Ok(self.singular_part(pd, q)? + holo)
    }

    /// Largest `|R - reconstruction|` relative to `|R|` over the points.
    pub fn reconstruction_residual(&self, pd: &PeriodData, pts: &[SurfacePoint]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for p in pts {
            let r = self.form.eval(p.x, p.y);
            let d = (r - self.reconstruct(pd, *p)?).norm() / (1.0 + r.norm());
            worst = worst.max(d);
        }
        Ok(worst)
    }

    /// Laurent expansion of the remainder at pole `i` with the poles of the
    /// blocks subtracted, sampled on a circle: returns the largest negative
    /// power coefficient (should vanish).
    pub fn remainder_pole_part(&self, pd: &PeriodData, pole: usize) -> Result<f64> {
        let exp = &self.times.poles[pole].expansion;
        let r = 0.5 * exp.radius;
        let samples = exp.series.sample_circle(&pd.surface, r, CIRCLE_POINTS, 0.2)?;
        let vals: Vec<C64> = samples
            .iter()
            .map(|s| Ok(self.remainder_at(pd, SurfacePoint::new(s.x, s.y))? * s.dx_dxi))
            .collect::<Result<_>>()?;
        let order = self.times.poles[pole].order();
        let mut worst: f64 = 0.0;
        for k in 0..order {
            let c: C64 = samples
                .iter()
                .zip(&vals)
                .map(|(s, v)| v * s.xi.powi(k as i32 + 1))
                .sum::<C64>()
                / CIRCLE_POINTS as f64;
            worst = worst.max(c.norm());
        }
        Ok(worst)
    }
}

/// Series `R dx/dxi` of a form at a pole (for diagnostics and tests).
pub fn local_series(pole: &Pole, form: &RationalForm) -> Result<Laurent> {
    pole.expansion.rational(form.num_c64(), form.den_c64())
}

/// Whether a pole lies over `x = infinity`.
pub fn at_infinity(pole: &Pole) -> bool {
    pole.expansion.series.place.x == XCenter::Infinity
}

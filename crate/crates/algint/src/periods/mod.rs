//! Periods of the combinatorial differentials and the transcendental data
//! derived from them: the normalising matrix `Khat`, the Riemann matrix
//! `tau`, the symmetric matrix `S` completing the bidifferential, the `zeta`
//! vector normalising third-kind differentials, and the Abel map.

pub mod change;
pub mod degenerate;
pub mod rauch;

pub use change::{is_symplectic, CycleChange};
pub use degenerate::{ColumnLabel, ExtendedK};
pub use rauch::{rauch_check, RauchReport};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forms::{c_poly, BergmanComb, CPolynomial};
use crate::numeric::linalg::{inverse, lstsq, max_abs, CMat};
use crate::numeric::quad::QuadOptions;
use crate::polygon::{moduli_space, Pt};
use crate::surface::{crossings, CycleSet, PathSpec, Start, Surface, SurfacePoint, TrackedPath};
use crate::{Error, Result, C64};

/// Settings for [`PeriodData::compute`].
#[derive(Clone, Copy, Debug)]
pub struct PeriodOptions {
    pub quad: QuadOptions,
    /// Seed for the pseudo-random choice of the origin and of collocation
    /// points.
    pub seed: u64,
    /// Number of collocation points used to identify `S` (0: automatic).
    pub collocation_points: usize,
}

impl Default for PeriodOptions {
    fn default() -> Self {
        PeriodOptions {
            quad: QuadOptions::default(),
            seed: 1,
            collocation_points: 0,
        }
    }
}

/// Quality measurements taken while computing the period data.
#[derive(Clone, Debug, Default)]
pub struct Diagnostics {
    /// `max |Khat K - I|`.
    pub normalization: f64,
    /// `max |tau - tau^T|`.
    pub tau_asymmetry: f64,
    /// Smallest eigenvalue of `Im tau`.
    pub tau_min_imag_eigenvalue: f64,
    /// `max |S - S^T|` before symmetrisation.
    pub s_asymmetry: f64,
    /// Relative residual of the collocation fit used for `S`.
    pub s_fit_residual: f64,
}

/// Periods and normalisation data of a curve with a marked homology basis.
#[derive(Clone, Debug)]
pub struct PeriodData {
    pub surface: Surface,
    /// The loops actually integrated over.
    pub cycles: CycleSet,
    /// Rows express the current cycles `A_1..A_g, B_1..B_g` as integer
    /// combinations of the loops in `cycles` (A loops first).
    pub marking: Vec<Vec<i64>>,
    /// Interior points `(i, j)`, indexing the rows of `k`.
    pub monomials: Vec<Pt>,
    /// `k[(m, c)] = ∮_{A_c} Omega_m`.
    pub k: CMat,
    /// `b_periods[(m, c)] = ∮_{B_c} Omega_m`.
    pub b_periods: CMat,
    /// Normalised holomorphic forms `omega_i = sum_m khat[(i, m)] Omega_m`.
    pub khat: CMat,
    /// `tau[(i, j)] = ∮_{B_i} omega_j`.
    pub tau: CMat,
    /// Symmetric matrix completing the bidifferential (generic curves).
    pub s: Option<CMat>,
    /// Base point of the Abel map and of the `zeta` normalisation.
    pub origin: SurfacePoint,
    pub bergman: BergmanComb,
    pub cpoly: Option<CPolynomial>,
    /// Residue-extended period matrix for curves with singular points.
    pub extended: Option<ExtendedK>,
    pub diagnostics: Diagnostics,
    pub options: PeriodOptions,
    tracked_a: Vec<TrackedPath>,
    tracked_b: Vec<TrackedPath>,
}

fn identity_marking(g: usize) -> Vec<Vec<i64>> {
    (0..2 * g).map(|r| (0..2 * g).map(|c| i64::from(r == c)).collect()).collect()
}

fn distance_to_segment(z: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let l2 = d.norm_sqr();
    if l2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * d.conj()).re / l2).clamp(0.0, 1.0);
    (z - (a + d * t)).norm()
}

/// Distance from `z` to a closed polyline.
fn distance_to_loop(z: C64, w: &[C64]) -> f64 {
    let n = w.len();
    (0..n)
        .map(|k| distance_to_segment(z, w[k], w[(k + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

impl PeriodData {
    /// Computes all period data for the given cycles.
    pub fn compute(surface: &Surface, cycles: &CycleSet, options: PeriodOptions) -> Result<Self> {
        let g = cycles.genus();
        if cycles.b.len() != g {
            return Err(Error::input("cycle set needs as many B cycles as A cycles"));
        }
        let moduli = moduli_space(surface)?;
        if moduli.genus != g {
            return Err(Error::input(format!(
                "cycle set has {g} A cycles but the genus is {}",
                moduli.genus
            )));
        }
        let monomials = surface.newton.interior.clone();
        let tracked_a: Vec<TrackedPath> = cycles.a.iter().map(|c| c.track(surface)).collect::<Result<_>>()?;
        let tracked_b: Vec<TrackedPath> = cycles.b.iter().map(|c| c.track(surface)).collect::<Result<_>>()?;
        let bergman = BergmanComb::new(&surface.curve);
        let cpoly = c_poly(&surface.curve).ok();
        let mut pd = PeriodData {
            surface: surface.clone(),
            cycles: cycles.clone(),
            marking: identity_marking(g),
            monomials: monomials.clone(),
            k: CMat::zeros(monomials.len(), g),
            b_periods: CMat::zeros(monomials.len(), g),
            khat: CMat::zeros(g, monomials.len()),
            tau: CMat::zeros(g, g),
            s: None,
            origin: SurfacePoint::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0)),
            bergman,
            cpoly,
            extended: None,
            diagnostics: Diagnostics::default(),
            options,
            tracked_a,
            tracked_b,
        };
        pd.origin = pd.sample_points(1, options.seed)?[0];
        if g == 0 {
            pd.s = if monomials.is_empty() { Some(CMat::zeros(0, 0)) } else { None };
            return Ok(pd);
        }
        let (ka, kb) = pd.cycle_integrals(monomials.len(), &|x, y, out: &mut [C64]| {
            let inv = 1.0 / surface.curve.py(x, y);
            for (o, &(i, j)) in out.iter_mut().zip(&monomials) {
                *o = x.powi(i as i32) * y.powi(j as i32) * inv;
            }
            Ok(())
        })?;
        pd.k = ka;
        pd.b_periods = kb;
        if monomials.len() == g {
            pd.khat = inverse(&pd.k)?;
        } else {
            let ext = ExtendedK::compute(surface, &pd.k, &monomials)?;
            pd.khat = ext.khat.clone();
            pd.extended = Some(ext);
        }
        pd.finish_tau()?;
        if monomials.len() == g {
            pd.compute_s()?;
        }
        Ok(pd)
    }

    /// Genus (number of A cycles).
    pub fn genus(&self) -> usize {
        self.khat.nrows()
    }

    fn finish_tau(&mut self) -> Result<()> {
        let g = self.genus();
        self.tau = (&self.khat * &self.b_periods).transpose();
        let nk = &self.khat * &self.k - CMat::identity(g, g);
        self.diagnostics.normalization = max_abs(&nk);
        let asym = max_abs(&(&self.tau - self.tau.transpose()));
        self.diagnostics.tau_asymmetry = asym;
        if asym > 1e-6 * (1.0 + max_abs(&self.tau)) {
            return Err(Error::check(format!(
                "period matrix is not symmetric (asymmetry {asym:.3e}); the cycles are not a canonical basis"
            )));
        }
        let im = nalgebra::DMatrix::from_fn(g, g, |i, j| 0.5 * (self.tau[(i, j)].im + self.tau[(j, i)].im));
        let eig = im.symmetric_eigen().eigenvalues;
        let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
        self.diagnostics.tau_min_imag_eigenvalue = min;
        if min <= 0.0 {
            return Err(Error::check(format!(
                "imaginary part of the period matrix is not positive definite (min eigenvalue {min:.3e})"
            )));
        }
        Ok(())
    }

    /// Integrals `∮ f(x, y) dx` over the current cycles: columns of the first
    /// matrix are the A cycles, of the second the B cycles.
    pub fn cycle_integrals<F>(&self, dim: usize, f: &F) -> Result<(CMat, CMat)>
    where
        F: Fn(C64, C64, &mut [C64]) -> Result<()>,
    {
        let g = self.cycles.genus();
        let mut raw = CMat::zeros(dim, 2 * g);
        for (c, path) in self.tracked_a.iter().chain(&self.tracked_b).enumerate() {
            let v = path.integrate(&self.surface, dim, f, self.options.quad)?;
            for (r, val) in v.into_iter().enumerate() {
                raw[(r, c)] = val;
            }
        }
        let m = CMat::from_fn(2 * g, 2 * g, |r, c| C64::new(self.marking[c][r] as f64, 0.0));
        let cur = raw * m;
        Ok((cur.columns(0, g).into_owned(), cur.columns(g, g).into_owned()))
    }

    /// Tracked loops of the underlying cycle set (A loops, then B loops).
    pub fn tracked_loops(&self) -> impl Iterator<Item = &TrackedPath> {
        self.tracked_a.iter().chain(&self.tracked_b)
    }

    /// Pseudo-random points on the curve, away from critical values and from
    /// the cycle loops, on pseudo-random sheets.
    pub fn sample_points(&self, n: usize, seed: u64) -> Result<Vec<SurfacePoint>> {
        let s = &self.surface;
        let sep = s.min_critical_separation();
        let mut pts: Vec<C64> = s.critical_x();
        for c in self.cycles.a.iter().chain(&self.cycles.b) {
            pts.extend(c.waypoints.iter().copied());
        }
        let (mut lo_re, mut hi_re, mut lo_im, mut hi_im) = (-1.0f64, 1.0f64, -1.0f64, 1.0f64);
        for p in &pts {
            lo_re = lo_re.min(p.re);
            hi_re = hi_re.max(p.re);
            lo_im = lo_im.min(p.im);
            hi_im = hi_im.max(p.im);
        }
        let pad = 0.5 * sep.min(1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        let mut attempts = 0;
        while out.len() < n {
            attempts += 1;
            if attempts > 10000 * (n + 1) {
                return Err(Error::numeric("could not find sample points away from the cycles"));
            }
            let x = C64::new(
                rng.random_range(lo_re - pad..hi_re + pad),
                rng.random_range(lo_im - pad..hi_im + pad),
            );
            let sheet = rng.random_range(0..s.sheets());
            if s.distance_to_critical(x) < 0.2 * sep {
                continue;
            }
            let near_loop = self
                .cycles
                .a
                .iter()
                .chain(&self.cycles.b)
                .any(|c| distance_to_loop(x, &c.waypoints) < 0.25 * sep);
            if near_loop {
                continue;
            }
            let Ok(f) = s.fiber(x) else { continue };
            let mut fsep = f64::INFINITY;
            for i in 0..f.len() {
                for j in i + 1..f.len() {
                    fsep = fsep.min((f[i] - f[j]).norm());
                }
            }
            if fsep < 1e-3 * (1.0 + f.iter().map(|y| y.norm()).fold(0.0, f64::max)) {
                continue;
            }
            out.push(SurfacePoint::new(x, f[sheet]));
        }
        Ok(out)
    }

    /// `x^i y^j` for the interior monomials.
    pub fn monomial_values(&self, x: C64, y: C64) -> Vec<C64> {
        self.monomials
            .iter()
            .map(|&(i, j)| x.powi(i as i32) * y.powi(j as i32))
            .collect()
    }

    /// Identifies the holomorphic forms `p2 -> ∮_{A_k} B_comb(., p2)` in the
    /// basis `Omega_m` by collocation, and solves for `S`.
    fn compute_s(&mut self) -> Result<()> {
        let n = self.monomials.len();
        let g = self.genus();
        let npts = if self.options.collocation_points > 0 {
            self.options.collocation_points.max(n)
        } else {
            (2 * n).max(n + 4)
        };
        let pts = self.sample_points(npts, self.options.seed.wrapping_add(101))?;
        let c = self.a_integrals_of_bergman_comb(&pts)?; // npts x g
        let a = CMat::from_fn(npts, n, |r, m| {
            let p = pts[r];
            self.monomial_values(p.x, p.y)[m]
        });
        let rhs = CMat::from_fn(npts, g, |r, k| c[(r, k)] * self.surface.curve.py(pts[r].x, pts[r].y));
        let (coef, resid) = lstsq(&a, &rhs)?; // n x g: coef[(m', k)] = C[k, m']
        self.diagnostics.s_fit_residual = resid;
        if resid > 1e-6 {
            return Err(Error::numeric(format!(
                "A-periods of the combinatorial bidifferential are not fitted by holomorphic forms (residual {resid:.3e})"
            )));
        }
        // sum_m K[m, k] S[m, m'] = -C[k, m']  =>  K^T S = -coef^T.
        let s = -(self.khat.transpose() * coef.transpose());
        self.diagnostics.s_asymmetry = max_abs(&(&s - s.transpose()));
        self.s = Some((&s + s.transpose()) * C64::new(0.5, 0.0));
        Ok(())
    }

    /// `∮_{A_k} B_comb(., p)` for each point (rows) and current A cycle
    /// (columns).
    pub fn a_integrals_of_bergman_comb(&self, pts: &[SurfacePoint]) -> Result<CMat> {
        let b = &self.bergman;
        let (a, _) = self.cycle_integrals(pts.len(), &|x, y, out: &mut [C64]| {
            for (o, p) in out.iter_mut().zip(pts) {
                *o = b.eval(x, y, p.x, p.y);
            }
            Ok(())
        })?;
        Ok(a)
    }

    /// `S` or an error on curves where it is not computed.
    pub fn s_matrix(&self) -> Result<&CMat> {
        self.s
            .as_ref()
            .ok_or_else(|| Error::unsupported("S is only computed for curves without singular points"))
    }

    /// Coefficients of `dx` of the normalised holomorphic forms at `(x, y)`.
    pub fn omega(&self, x: C64, y: C64) -> Vec<C64> {
        let v = self.monomial_values(x, y);
        let inv = 1.0 / self.surface.curve.py(x, y);
        (0..self.genus())
            .map(|i| (0..v.len()).map(|m| self.khat[(i, m)] * v[m]).sum::<C64>() * inv)
            .collect()
    }

    /// Coefficient of `dx1 dx2` of the bidifferential `B(p1, p2)`.
    pub fn bergman(&self, p1: SurfacePoint, p2: SurfacePoint) -> Result<C64> {
        let s = self.s_matrix()?;
        let v1 = self.monomial_values(p1.x, p1.y);
        let v2 = self.monomial_values(p2.x, p2.y);
        let mut corr = C64::new(0.0, 0.0);
        for a in 0..v1.len() {
            for b in 0..v2.len() {
                corr += s[(a, b)] * v1[a] * v2[b];
            }
        }
        let c = &self.surface.curve;
        Ok(self.bergman.eval(p1.x, p1.y, p2.x, p2.y) + corr / (c.py(p1.x, p1.y) * c.py(p2.x, p2.y)))
    }

    /// `zeta(p)` for several points at once, normalised by vanishing A-periods
    /// of the third-kind differential and `zeta(o) = 0`.
    pub fn zeta_many(&self, pts: &[SurfacePoint]) -> Result<Vec<Vec<C64>>> {
        if self.extended.is_some() {
            return Err(Error::unsupported("zeta is only computed for curves without singular points"));
        }
        let n = self.monomials.len();
        if n == 0 {
            return Ok(vec![Vec::new(); pts.len()]);
        }
        let o = self.origin;
        let b = &self.bergman;
        let (a, _) = self.cycle_integrals(pts.len(), &|x, y, out: &mut [C64]| {
            for (v, p) in out.iter_mut().zip(pts) {
                *v = b.ds((p.x, p.y), (o.x, o.y), x, y);
            }
            Ok(())
        })?;
        // zeta(p) = -Khat^T a(p).
        let z = -(self.khat.transpose() * a.transpose()); // n x npts
        Ok((0..pts.len()).map(|c| (0..n).map(|m| z[(m, c)]).collect()).collect())
    }

    pub fn zeta(&self, p: SurfacePoint) -> Result<Vec<C64>> {
        Ok(self.zeta_many(&[p])?.remove(0))
    }

    /// `P_y(p) d zeta_m / dx` at `p`, from the `C` polynomial and `S`.
    pub fn zeta_derivative(&self, p: SurfacePoint) -> Result<Vec<C64>> {
        let s = self.s_matrix()?;
        let cp = self
            .cpoly
            .as_ref()
            .ok_or_else(|| Error::unsupported("the C polynomial is not available for this curve"))?;
        let v = self.monomial_values(p.x, p.y);
        Ok(self
            .monomials
            .iter()
            .enumerate()
            .map(|(m, pt)| {
                let sv: C64 = (0..v.len()).map(|b| s[(m, b)] * v[b]).sum();
                let c = cp.get(*pt).map(|c| c.eval_c64(p.x, p.y)).unwrap_or_default();
                sv + c
            })
            .collect())
    }

    /// The normalised third-kind differential `dS_{p1, p2}`.
    pub fn third_kind(&self, p1: SurfacePoint, p2: SurfacePoint) -> Result<ThirdKind> {
        let z = self.zeta_many(&[p1, p2])?;
        let dzeta = z[0].iter().zip(&z[1]).map(|(a, b)| a - b).collect();
        Ok(ThirdKind { p1, p2, dzeta })
    }

    /// Coefficient of `dx` of a third-kind differential at `(x, y)`.
    pub fn eval_third_kind(&self, ds: &ThirdKind, x: C64, y: C64) -> C64 {
        let v = self.monomial_values(x, y);
        let corr: C64 = v.iter().zip(&ds.dzeta).map(|(a, b)| a * b).sum();
        self.bergman.ds((ds.p1.x, ds.p1.y), (ds.p2.x, ds.p2.y), x, y) + corr / self.surface.curve.py(x, y)
    }

    /// Rejects paths that cross a cycle loop on the same sheet.
    pub fn check_no_crossing(&self, path: &TrackedPath) -> Result<()> {
        for (k, l) in self.tracked_loops().enumerate() {
            if !crossings(&self.surface, path, l)?.is_empty() {
                let ga = self.cycles.a.len();
                let label = if k < ga { &self.cycles.a[k].label } else { &self.cycles.b[k - ga].label };
                return Err(Error::input(format!("integration path crosses the cycle {label}")));
            }
        }
        Ok(())
    }

    /// `∫ omega_i` along a path that does not cross the cycle loops.
    pub fn integrate_omega(&self, path: &PathSpec) -> Result<(TrackedPath, Vec<C64>)> {
        let t = path.track(&self.surface)?;
        self.check_no_crossing(&t)?;
        let g = self.genus();
        let n = self.monomials.len();
        let mono = &self.monomials;
        let raw = t.integrate(
            &self.surface,
            n,
            &|x, y, out: &mut [C64]| {
                let inv = 1.0 / self.surface.curve.py(x, y);
                for (o, &(i, j)) in out.iter_mut().zip(mono) {
                    *o = x.powi(i as i32) * y.powi(j as i32) * inv;
                }
                Ok(())
            },
            self.options.quad,
        )?;
        let v = (0..g).map(|i| (0..n).map(|m| self.khat[(i, m)] * raw[m]).sum()).collect();
        Ok((t, v))
    }

    /// The straight path in the `x` plane from the origin to `x`, starting
    /// on the origin's sheet.
    pub fn path_from_origin(&self, x: C64) -> PathSpec {
        PathSpec::new(vec![self.origin.x, x], Start::Y(self.origin.y), false, "origin path")
    }

    /// Abel map `F(p) = ∫_o^p omega` along the given path from the origin.
    pub fn abel_map(&self, path: &PathSpec) -> Result<(SurfacePoint, Vec<C64>)> {
        if (path.waypoints[0] - self.origin.x).norm() > 1e-12 * (1.0 + self.origin.x.norm()) {
            return Err(Error::input("Abel map paths must start at the origin"));
        }
        let p = path.with_start(Start::Y(self.origin.y));
        let (t, v) = self.integrate_omega(&p)?;
        Ok((t.end(), v))
    }

    /// `max |∮_{A_i} omega_j - delta_ij|` recomputed by quadrature.
    pub fn a_normalization_residual(&self) -> Result<f64> {
        let g = self.genus();
        let (a, _) = self.cycle_integrals(g, &|x, y, out: &mut [C64]| {
            out.copy_from_slice(&self.omega(x, y));
            Ok(())
        })?;
        Ok(max_abs(&(a - CMat::identity(g, g))))
    }
}

/// A normalised third-kind differential, stored through its poles and the
/// `zeta` difference.
#[derive(Clone, Debug)]
pub struct ThirdKind {
    pub p1: SurfacePoint,
    pub p2: SurfacePoint,
    /// `zeta(p1) - zeta(p2)`.
    pub dzeta: Vec<C64>,
}

//! Analytic continuation of a fiber point along piecewise linear paths, and
//! integration of differentials along the tracked paths.

use super::{Surface, SurfacePoint};
use crate::numeric::quad::{integrate_breaks, QuadOptions};
use crate::numeric::roots;
use crate::{Error, Result, C64};

/// Continuation of one sheet along the segment `x(t) = xa + t (xb - xa)`,
/// `t` in `[0, 1]`.
#[derive(Clone, Debug)]
pub struct TrackedSegment {
    pub xa: C64,
    pub xb: C64,
    /// Accepted parameter values, from 0 to 1.
    pub ts: Vec<f64>,
    pub ys: Vec<C64>,
    /// `dy/dt` at the accepted points.
    pub dys: Vec<C64>,
    /// Distance from `y` to the other fiber points.
    pub seps: Vec<f64>,
}

/// A tracked piecewise linear path.
#[derive(Clone, Debug)]
pub struct TrackedPath {
    pub segments: Vec<TrackedSegment>,
}

/// Minimal ratio between the distances to the second nearest and nearest
/// fiber point for a continuation step to be accepted.
const SEPARATION_RATIO: f64 = 3.0;

fn nearest_two(fiber: &[C64], y: C64) -> (usize, f64, f64) {
    let mut best = (0, f64::INFINITY);
    let mut second = f64::INFINITY;
    for (k, v) in fiber.iter().enumerate() {
        let d = (v - y).norm();
        if d < best.1 {
            second = best.1;
            best = (k, d);
        } else if d < second {
            second = d;
        }
    }
    (best.0, best.1, second)
}

fn separation(fiber: &[C64], k: usize) -> f64 {
    fiber
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != k)
        .map(|(_, v)| (v - fiber[k]).norm())
        .fold(f64::INFINITY, f64::min)
}

fn slope(s: &Surface, x: C64, y: C64) -> C64 {
    -s.curve.px(x, y) / s.curve.py(x, y)
}

/// Tracks the fiber point `y0` over `waypoints[0]` along the polyline.
pub fn track(s: &Surface, waypoints: &[C64], y0: C64) -> Result<TrackedPath> {
    if waypoints.len() < 2 {
        return Err(Error::input("a path needs at least two waypoints"));
    }
    let fiber0 = s.fiber(waypoints[0])?;
    let (k0, d0, _) = nearest_two(&fiber0, y0);
    if d0 > 1e-6 * (1.0 + y0.norm()) {
        return Err(Error::input(format!("start point y = {y0} is not on the fiber over {}", waypoints[0])));
    }
    let mut y = fiber0[k0];
    let mut segments = Vec::new();
    for w in waypoints.windows(2) {
        let seg = track_segment(s, w[0], w[1], y)?;
        y = *seg.ys.last().expect("nonempty");
        segments.push(seg);
    }
    Ok(TrackedPath { segments })
}

fn track_segment(s: &Surface, xa: C64, xb: C64, ya: C64) -> Result<TrackedSegment> {
    let dxdt = xb - xa;
    let fiber = s.fiber(xa)?;
    let (k, _, _) = nearest_two(&fiber, ya);
    let mut t = 0.0;
    let mut y = fiber[k];
    let mut sep = separation(&fiber, k);
    let mut dy = slope(s, xa, y) * dxdt;
    let mut seg = TrackedSegment {
        xa,
        xb,
        ts: vec![0.0],
        ys: vec![y],
        dys: vec![dy],
        seps: vec![sep],
    };
    let mut h: f64 = 0.05;
    let mut guess = fiber;
    while t < 1.0 {
        if h < 1e-11 {
            return Err(Error::PathTooClose(format!(
                "continuation stalled at x = {}",
                xa + dxdt * t
            )));
        }
        let t1 = (t + h).min(1.0);
        let x1 = xa + dxdt * t1;
        let coeffs = s.curve.y_coeffs_at(x1);
        let lead = coeffs.last().copied().unwrap_or_default();
        if lead.norm() <= 1e-12 * coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max) {
            return Err(Error::PathTooClose(format!("leading coefficient vanishes at x = {x1}")));
        }
        let mut f1 = roots::poly_roots_from(&coeffs, &guess)?;
        for v in f1.iter_mut() {
            *v = roots::newton_polish(&coeffs, *v, 2);
        }
        let pred = y + dy * (t1 - t);
        let (k1, d1, d2) = nearest_two(&f1, pred);
        let ok = d2 >= SEPARATION_RATIO * d1 && d1 <= 0.1 * sep.min(d2);
        if !ok {
            h *= 0.5;
            continue;
        }
        t = t1;
        y = f1[k1];
        sep = separation(&f1, k1);
        dy = slope(s, x1, y) * dxdt;
        seg.ts.push(t);
        seg.ys.push(y);
        seg.dys.push(dy);
        seg.seps.push(sep);
        guess = f1;
        h = (h * 1.6).min(0.25);
    }
    Ok(seg)
}

impl TrackedSegment {
    pub fn x_at(&self, t: f64) -> C64 {
        self.xa + (self.xb - self.xa) * t
    }

    /// `y` at parameter `t` on the tracked sheet.
    pub fn y_at(&self, s: &Surface, t: f64) -> Result<C64> {
        let n = self.ts.len();
        let k = match self.ts.partition_point(|&v| v <= t) {
            0 => 0,
            p => (p - 1).min(n - 2),
        };
        let (t0, t1) = (self.ts[k], self.ts[k + 1]);
        let h = t1 - t0;
        let u = (t - t0) / h;
        let (h00, h10, h01, h11) = (
            2.0 * u * u * u - 3.0 * u * u + 1.0,
            u * u * u - 2.0 * u * u + u,
            -2.0 * u * u * u + 3.0 * u * u,
            u * u * u - u * u,
        );
        let pred = self.ys[k] * h00 + self.dys[k] * (h10 * h) + self.ys[k + 1] * h01 + self.dys[k + 1] * (h11 * h);
        let x = self.x_at(t);
        let mut y = pred;
        for _ in 0..10 {
            let step = s.curve.p(x, y) / s.curve.py(x, y);
            y -= step;
            if step.norm() <= 1e-15 * (1.0 + y.norm()) {
                break;
            }
        }
        let guard = 0.3 * self.seps[k].min(self.seps[k + 1]);
        if y.is_finite() && (y - pred).norm() <= guard {
            return Ok(y);
        }
        let f = s.fiber(x)?;
        let (kk, _, _) = nearest_two(&f, pred);
        Ok(f[kk])
    }

    /// Integrates `f(x, y) dx` over the segment.
    pub fn integrate<F>(&self, s: &Surface, dim: usize, f: &F, opts: QuadOptions) -> Result<Vec<C64>>
    where
        F: Fn(C64, C64, &mut [C64]) -> Result<()>,
    {
        let dxdt = self.xb - self.xa;
        let (v, _) = integrate_breaks(
            |t, out| {
                let x = self.x_at(t);
                let y = self.y_at(s, t)?;
                f(x, y, out)?;
                for o in out.iter_mut() {
                    *o *= dxdt;
                }
                Ok(())
            },
            &self.ts,
            dim,
            opts,
        )?;
        Ok(v)
    }
}

impl TrackedPath {
    pub fn start(&self) -> SurfacePoint {
        let s = &self.segments[0];
        SurfacePoint::new(s.xa, s.ys[0])
    }

    pub fn end(&self) -> SurfacePoint {
        let s = self.segments.last().expect("nonempty path");
        SurfacePoint::new(s.xb, *s.ys.last().expect("nonempty"))
    }

    /// Integrates `f(x, y) dx` along the whole path.
    pub fn integrate<F>(&self, s: &Surface, dim: usize, f: &F, opts: QuadOptions) -> Result<Vec<C64>>
    where
        F: Fn(C64, C64, &mut [C64]) -> Result<()>,
    {
        let mut total = vec![C64::new(0.0, 0.0); dim];
        for seg in &self.segments {
            let v = seg.integrate(s, dim, f, opts)?;
            for d in 0..dim {
                total[d] += v[d];
            }
        }
        Ok(total)
    }

    /// Accepted sample points along the path.
    pub fn samples(&self) -> Vec<SurfacePoint> {
        let mut out = Vec::new();
        for seg in &self.segments {
            for (t, y) in seg.ts.iter().zip(&seg.ys) {
                out.push(SurfacePoint::new(seg.x_at(*t), *y));
            }
        }
        out
    }
}

//! Closed paths on the surface: path specifications, loop constructors,
//! monodromy, intersection numbers and the default homology basis of
//! hyperelliptic curves.

use std::f64::consts::PI;

use super::track::{track, TrackedPath};
use super::Surface;
use crate::algebra::roots_with_multiplicity;
use crate::numeric::linalg::{inverse, CMat};
use crate::numeric::quad::QuadOptions;
use crate::numeric::{lex_cmp, I};
use crate::polygon::moduli_space;
use crate::{Error, Result, C64};

/// How the starting point of a path is chosen in the fiber over its first
/// waypoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Start {
    /// Index into the lexicographically sorted fiber.
    Sheet(usize),
    /// The fiber point nearest to this value.
    Y(C64),
}

/// A piecewise linear path in the `x` plane with a starting sheet.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSpec {
    pub waypoints: Vec<C64>,
    pub start: Start,
    /// Closed paths return to their first waypoint.
    pub closed: bool,
    pub label: String,
}

impl PathSpec {
    pub fn new(waypoints: Vec<C64>, start: Start, closed: bool, label: impl Into<String>) -> Self {
        PathSpec {
            waypoints,
            start,
            closed,
            label: label.into(),
        }
    }

    /// The waypoints actually followed (closed paths repeat the first one).
    pub fn polyline(&self) -> Vec<C64> {
        let mut w = self.waypoints.clone();
        if self.closed && w.first() != w.last() {
            w.push(w[0]);
        }
        w
    }

    /// The starting fiber point.
    pub fn start_y(&self, s: &Surface) -> Result<C64> {
        let x0 = *self
            .waypoints
            .first()
            .ok_or_else(|| Error::input(format!("path {} has no waypoints", self.label)))?;
        let f = s.fiber(x0)?;
        match self.start {
            Start::Sheet(k) => f.get(k).copied().ok_or_else(|| {
                Error::input(format!("path {}: sheet {k} out of range ({} sheets)", self.label, f.len()))
            }),
            Start::Y(y) => Ok(*f
                .iter()
                .min_by(|a, b| (*a - y).norm().total_cmp(&(*b - y).norm()))
                .expect("nonempty fiber")),
        }
    }

    /// Tracks the path; closed paths must return to their starting point.
    pub fn track(&self, s: &Surface) -> Result<TrackedPath> {
        let y0 = self.start_y(s)?;
        let path = track(s, &self.polyline(), y0)?;
        if self.closed {
            let end = path.end();
            if (end.y - y0).norm() > 1e-6 * (1.0 + y0.norm()) {
                return Err(Error::check(format!(
                    "loop {} does not close: starts at y = {y0}, ends at y = {}",
                    self.label, end.y
                )));
            }
        }
        Ok(path)
    }

    /// The same path run backwards. Closed paths keep their starting point.
    pub fn reversed(&self) -> Self {
        let mut w: Vec<C64> = self.waypoints.iter().rev().copied().collect();
        if self.closed {
            w.rotate_right(1);
        }
        PathSpec {
            waypoints: w,
            start: self.start,
            closed: self.closed,
            label: format!("-{}", self.label),
        }
    }

    pub fn with_start(&self, start: Start) -> Self {
        PathSpec {
            start,
            ..self.clone()
        }
    }
}

/// A marked homology basis `A_1..A_g`, `B_1..B_g`.
#[derive(Clone, Debug, Default)]
pub struct CycleSet {
    pub a: Vec<PathSpec>,
    pub b: Vec<PathSpec>,
}

impl CycleSet {
    pub fn genus(&self) -> usize {
        self.a.len()
    }
}

fn arc(center: C64, r: f64, from: f64, sweep: f64, per_pi: usize, out: &mut Vec<C64>) {
    let n = ((sweep.abs() / PI) * per_pi as f64).ceil().max(1.0) as usize;
    for k in 0..=n {
        let th = from + sweep * k as f64 / n as f64;
        out.push(center + C64::from_polar(r, th));
    }
}

/// One side of the offset loop: walk along the right-hand side of `q` at
/// distance `r`, finishing with the half turn around the last point.
fn right_side(q: &[C64], r: f64, per_pi: usize, out: &mut Vec<C64>) -> Result<()> {
    let u: Vec<C64> = q.windows(2).map(|w| (w[1] - w[0]) / (w[1] - w[0]).norm()).collect();
    let m: Vec<C64> = u.iter().map(|v| -I * v).collect();
    out.push(q[0] + m[0] * r);
    for k in 1..q.len() - 1 {
        let turn = (u[k - 1].conj() * u[k]).im;
        if turn > 0.0 {
            // Outer side of a left turn: round join.
            let a0 = m[k - 1].arg();
            let mut sweep = m[k].arg() - a0;
            while sweep < 0.0 {
                sweep += 2.0 * PI;
            }
            arc(q[k], r, a0, sweep, per_pi, out);
        } else {
            let dot = (m[k - 1].conj() * m[k]).re;
            if 1.0 + dot < 0.2 {
                return Err(Error::unsupported("polyline turns too sharply for an offset loop"));
            }
            out.push(q[k] + (m[k - 1] + m[k]) * (r / (1.0 + dot)));
        }
    }
    let last = q.len() - 1;
    arc(q[last], r, m[last - 1].arg(), PI, per_pi, out);
    Ok(())
}

/// Counterclockwise loop at distance `r` around the polyline through `q`.
pub fn thick_polyline(q: &[C64], r: f64, per_pi: usize) -> Result<Vec<C64>> {
    if q.len() < 2 {
        return Err(Error::input("a polyline needs at least two points"));
    }
    let mut out = Vec::new();
    right_side(q, r, per_pi, &mut out)?;
    let rev: Vec<C64> = q.iter().rev().copied().collect();
    right_side(&rev, r, per_pi, &mut out)?;
    out.dedup_by(|a, b| (*a - *b).norm() < 1e-14 * (1.0 + a.norm()));
    if (out[0] - out[out.len() - 1]).norm() < 1e-12 * (1.0 + out[0].norm()) {
        out.pop();
    }
    Ok(out)
}

/// Counterclockwise stadium loop at distance `r` around the segment `[e1, e2]`.
pub fn stadium(e1: C64, e2: C64, r: f64, per_pi: usize) -> Vec<C64> {
    thick_polyline(&[e1, e2], r, per_pi).expect("two distinct points")
}

/// Winding number of the closed polygon `w` around `z`.
pub fn winding_number(w: &[C64], z: C64) -> i64 {
    let n = w.len();
    let mut total = 0.0;
    for k in 0..n {
        let a = w[k] - z;
        let b = w[(k + 1) % n] - z;
        total += (b / a).arg();
    }
    (total / (2.0 * PI)).round() as i64
}

/// Permutation of the sorted fiber induced by following the closed polyline
/// `w` from each sheet.
pub fn monodromy(s: &Surface, w: &[C64]) -> Result<Vec<usize>> {
    let mut poly = w.to_vec();
    if poly.first() != poly.last() {
        poly.push(poly[0]);
    }
    let fiber = s.fiber(poly[0])?;
    let mut perm = Vec::with_capacity(fiber.len());
    for y0 in &fiber {
        let end = track(s, &poly, *y0)?.end();
        let (k, _) = fiber
            .iter()
            .enumerate()
            .map(|(k, y)| (k, (y - end.y).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty fiber");
        perm.push(k);
    }
    Ok(perm)
}

fn segment_crossing(p0: C64, p1: C64, q0: C64, q1: C64) -> Option<(f64, f64)> {
    let d1 = p1 - p0;
    let d2 = q1 - q0;
    let den = (d1.conj() * d2).im;
    if den.abs() < 1e-300 {
        return None;
    }
    let w = q0 - p0;
    let s = (w.conj() * d2).im / den;
    let t = (w.conj() * d1).im / den;
    if (0.0..1.0).contains(&s) && (0.0..1.0).contains(&t) {
        Some((s, t))
    } else {
        None
    }
}

fn nearest_index(f: &[C64], y: C64) -> usize {
    f.iter()
        .enumerate()
        .map(|(k, v)| (k, (v - y).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|p| p.0)
        .unwrap_or(0)
}

/// Signs of the `x` plane crossings of two tracked paths at which both are
/// on the same sheet (`+1` when `b` crosses `a` from right to left).
pub fn crossings(s: &Surface, a: &TrackedPath, b: &TrackedPath) -> Result<Vec<i64>> {
    let pa = a.samples();
    let pb = b.samples();
    let mut out = Vec::new();
    for i in 0..pa.len().saturating_sub(1) {
        for j in 0..pb.len().saturating_sub(1) {
            let (a0, a1, b0, b1) = (pa[i], pa[i + 1], pb[j], pb[j + 1]);
            if let Some((sa, sb)) = segment_crossing(a0.x, a1.x, b0.x, b1.x) {
                let x = a0.x + (a1.x - a0.x) * sa;
                let ya = a0.y + (a1.y - a0.y) * sa;
                let yb = b0.y + (b1.y - b0.y) * sb;
                let f = s.fiber(x)?;
                if nearest_index(&f, ya) == nearest_index(&f, yb) {
                    let sign = ((a1.x - a0.x).conj() * (b1.x - b0.x)).im;
                    out.push(if sign > 0.0 { 1 } else { -1 });
                }
            }
        }
    }
    Ok(out)
}

/// Algebraic intersection number of two tracked closed paths, counted from
/// their `x` plane crossings where both are on the same sheet.
pub fn intersection_number(s: &Surface, a: &TrackedPath, b: &TrackedPath) -> Result<i64> {
    Ok(crossings(s, a, b)?.iter().sum())
}

/// Integrals of `Q_k(x, y) dx / P_y` along a tracked path, for the
/// polynomials `Q_k` given as monomial lists.
fn monomial_integrals(s: &Surface, path: &TrackedPath, monomials: &[(i64, i64)]) -> Result<Vec<C64>> {
    let py = &s.curve;
    let f = |x: C64, y: C64, out: &mut [C64]| -> Result<()> {
        let inv = 1.0 / py.py(x, y);
        for (o, &(i, j)) in out.iter_mut().zip(monomials) {
            *o = x.powi(i as i32) * y.powi(j as i32) * inv;
        }
        Ok(())
    };
    path.integrate(s, monomials.len(), &f, QuadOptions::default())
}

const ARC_POINTS: usize = 24;

/// Default homology basis of `y^2 = f(x)`.
///
/// With the branch points `e_1, ..., e_n` (odd order roots of `f`) sorted
/// lexicographically and `g = floor((n - 1) / 2)`:
/// `A_i` encircles `e_{2i}, e_{2i+1}`; `B_i` encircles `e_{2i+1}, ..., e_n`
/// when `n` is even and `e_1, ..., e_{2i}` when `n` is odd. All loops run
/// counterclockwise; the sheet of `A_i` makes `Re ∮ dx/P_y > 0` (or the
/// imaginary part positive when the real part vanishes) and the sheet of
/// `B_i` makes `Im tau_ii > 0`.
pub fn default_cycles(s: &Surface) -> Result<CycleSet> {
    let f = s
        .curve
        .hyperelliptic_rhs()
        .ok_or_else(|| Error::unsupported("default cycles need a curve of the form y^2 = f(x)"))?;
    let roots = roots_with_multiplicity(&f)?;
    let mut e: Vec<C64> = roots.iter().filter(|r| r.1 % 2 == 1).map(|r| r.0).collect();
    e.sort_by(lex_cmp);
    let n = e.len();
    if n < 3 {
        return Ok(CycleSet::default());
    }
    let g = (n - 1) / 2;
    let all: Vec<C64> = roots.iter().map(|r| r.0).collect();
    let mut min_dist = f64::INFINITY;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            min_dist = min_dist.min((all[i] - all[j]).norm());
        }
    }
    let r_a = min_dist / 3.0;

    let check_encloses = |w: &[C64], want: &[C64], label: &str| -> Result<()> {
        for z in &e {
            let inside = winding_number(w, *z) != 0;
            if inside != want.contains(z) {
                return Err(Error::unsupported(format!(
                    "loop {label} cannot be drawn around its branch points without enclosing others"
                )));
            }
        }
        Ok(())
    };

    let moduli = moduli_space(s)?;
    let mono = moduli.monomials.clone();
    let hol = |path: &TrackedPath| -> Result<Vec<C64>> {
        let v = monomial_integrals(s, path, &mono)?;
        let m = moduli.basis.transpose() * CMat::from_column_slice(v.len(), 1, &v);
        Ok(m.iter().copied().collect())
    };

    let mut a = Vec::with_capacity(g);
    let mut a_periods: Vec<Vec<C64>> = Vec::with_capacity(g);
    for i in 1..=g {
        let pair = [e[2 * i - 1], e[2 * i]];
        let w = stadium(pair[0], pair[1], r_a, ARC_POINTS);
        let label = format!("A{i}");
        check_encloses(&w, &pair, &label)?;
        let spec = PathSpec::new(w, Start::Sheet(0), true, label);
        let p = hol(&spec.track(s)?)?;
        let w0 = p.iter().fold(C64::new(0.0, 0.0), |acc, v| acc + v);
        let flip = if w0.re.abs() > 1e-8 * w0.norm() { w0.re < 0.0 } else { w0.im < 0.0 };
        if flip {
            a.push(spec.with_start(Start::Sheet(1)));
            a_periods.push(p.iter().map(|v| -v).collect());
        } else {
            a.push(spec);
            a_periods.push(p);
        }
    }
    // Period matrix of the holomorphic basis over the A cycles.
    let k = CMat::from_fn(g, g, |r, c| a_periods[c][r]);
    let kinv = inverse(&k)?;

    let mut b = Vec::with_capacity(g);
    for i in 1..=g {
        let chain: Vec<C64> = if n % 2 == 0 { e[2 * i..].to_vec() } else { e[..2 * i].to_vec() };
        let r_b = r_a * 0.6 * 0.85f64.powi(i as i32 - 1);
        let w = thick_polyline(&chain, r_b, ARC_POINTS)?;
        let label = format!("B{i}");
        check_encloses(&w, &chain, &label)?;
        let spec = PathSpec::new(w, Start::Sheet(0), true, label);
        let p = hol(&spec.track(s)?)?;
        let col = &kinv * CMat::from_column_slice(g, 1, &p);
        if col[i - 1].im < 0.0 {
            b.push(spec.with_start(Start::Sheet(1)));
        } else {
            b.push(spec);
        }
    }
    Ok(CycleSet { a, b })
}

/// Intersection matrix `(A_i . B_j)` of a cycle set.
pub fn intersection_matrix(s: &Surface, cycles: &CycleSet) -> Result<Vec<Vec<i64>>> {
    let ta: Vec<TrackedPath> = cycles.a.iter().map(|c| c.track(s)).collect::<Result<_>>()?;
    let tb: Vec<TrackedPath> = cycles.b.iter().map(|c| c.track(s)).collect::<Result<_>>()?;
    ta.iter()
        .map(|pa| tb.iter().map(|pb| intersection_number(s, pa, pb)).collect())
        .collect()
}

/// Largest `|P(x, y)|` over the accepted samples of a tracked path.
pub fn max_residual(s: &Surface, path: &TrackedPath) -> f64 {
    path.samples()
        .iter()
        .map(|p| s.curve.p(p.x, p.y).norm())
        .fold(0.0, f64::max)
}

//! Adaptive Gauss–Kronrod quadrature for vector-valued complex integrands and
//! trapezoid sums on circles.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{Error, Result, C64};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Tolerances for [`integrate`].
#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_intervals: 4000,
        }
    }
}

struct Piece {
    a: f64,
    b: f64,
    value: Vec<C64>,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.partial_cmp(&o.err).unwrap_or(Ordering::Equal)
    }
}

fn kronrod<F>(f: &mut F, a: f64, b: f64, dim: usize) -> Result<Piece>
where
    F: FnMut(f64, &mut [C64]) -> Result<()>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = vec![C64::new(0.0, 0.0); dim];
    let mut g = vec![C64::new(0.0, 0.0); dim];
    let mut buf = vec![C64::new(0.0, 0.0); dim];
    for (idx, &x) in XGK.iter().enumerate() {
        let pts: &[f64] = if x == 0.0 { &[0.0] } else { &[-1.0, 1.0] };
        for &s in pts {
            f(c + s * h * x, &mut buf)?;
            for d in 0..dim {
                k[d] += buf[d] * WGK[idx];
                if idx % 2 == 1 {
                    g[d] += buf[d] * WG[idx / 2];
                }
            }
        }
    }
    let mut err: f64 = 0.0;
    for d in 0..dim {
        k[d] *= h;
        g[d] *= h;
        err = err.max((k[d] - g[d]).norm());
    }
    if k.iter().any(|v| !v.is_finite()) {
        return Err(Error::numeric(format!("non-finite integrand on [{a}, {b}]")));
    }
    Ok(Piece { a, b, value: k, err })
}

/// Integrates the vector-valued `f` over `[a, b]` by globally adaptive
/// 7/15-point Gauss–Kronrod. Returns the integral and the error estimate.
pub fn integrate<F>(f: F, a: f64, b: f64, dim: usize, opts: QuadOptions) -> Result<(Vec<C64>, f64)>
where
    F: FnMut(f64, &mut [C64]) -> Result<()>,
{
    integrate_breaks(f, &[a, b], dim, opts)
}

/// Like [`integrate`] over `[breaks[0], breaks[last]]`, starting from the
/// subdivision given by the (increasing) breakpoints.
pub fn integrate_breaks<F>(mut f: F, breaks: &[f64], dim: usize, opts: QuadOptions) -> Result<(Vec<C64>, f64)>
where
    F: FnMut(f64, &mut [C64]) -> Result<()>,
{
    let mut heap = BinaryHeap::new();
    let mut total = vec![C64::new(0.0, 0.0); dim];
    let mut err = 0.0;
    for w in breaks.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let piece = kronrod(&mut f, w[0], w[1], dim)?;
        for d in 0..dim {
            total[d] += piece.value[d];
        }
        err += piece.err;
        heap.push(piece);
    }
    let max_intervals = opts.max_intervals.max(4 * heap.len());
    loop {
        let scale = total.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if err <= opts.abs_tol.max(opts.rel_tol * scale) {
            break;
        }
        if heap.len() >= max_intervals {
            return Err(Error::numeric(format!(
                "quadrature did not converge: error estimate {err:.3e}"
            )));
        }
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            return Err(Error::numeric("quadrature interval underflow"));
        }
        let left = kronrod(&mut f, worst.a, mid, dim)?;
        let right = kronrod(&mut f, mid, worst.b, dim)?;
        for d in 0..dim {
            total[d] += left.value[d] + right.value[d] - worst.value[d];
        }
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to remove accumulated update drift.
    let mut sum = vec![C64::new(0.0, 0.0); dim];
    let mut err = 0.0;
    for p in heap.iter() {
        for d in 0..dim {
            sum[d] += p.value[d];
        }
        err += p.err;
    }
    Ok((sum, err))
}

/// Scalar convenience wrapper around [`integrate`].
pub fn integrate_scalar<F>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<C64>
where
    F: FnMut(f64) -> Result<C64>,
{
    let (v, _) = integrate(
        |t, out| {
            out[0] = f(t)?;
            Ok(())
        },
        a,
        b,
        1,
        opts,
    )?;
    Ok(v[0])
}

/// `m` equally spaced points on the circle `|z - center| = radius`, starting
/// at angle `phase`.
pub fn circle_points(center: C64, radius: f64, m: usize, phase: f64) -> Vec<C64> {
    (0..m)
        .map(|k| center + C64::from_polar(radius, phase + 2.0 * std::f64::consts::PI * k as f64 / m as f64))
        .collect()
}

/// Laurent coefficients `c_n`, `n` in `lo..=hi`, of a function sampled on the
/// circle `|z| = radius` at the points returned by `circle_points(0, radius,
/// m, phase)`: `c_n = (1/m) sum f(z_k) z_k^{-n}`.
pub fn laurent_from_samples(samples: &[C64], radius: f64, phase: f64, lo: i32, hi: i32) -> Vec<C64> {
    let m = samples.len();
    (lo..=hi)
        .map(|n| {
            let mut acc = C64::new(0.0, 0.0);
            for (k, s) in samples.iter().enumerate() {
                let ang = phase + 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                acc += s * C64::from_polar(radius.powi(-n), -(n as f64) * ang);
            }
            acc / m as f64
        })
        .collect()
}

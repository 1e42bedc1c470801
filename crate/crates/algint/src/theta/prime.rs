//! Canonical divisor data, the prime form and the theta-function expressions
//! of the bidifferential and of third-kind differentials.
//!
//! For an odd regular characteristic `chi` the holomorphic form
//! `nu_chi = sum_i d_i Theta_chi(0) omega_i = H_chi dx / P_y` has `g - 1`
//! double zeros, and the prime form is
//! `E(p, q) = Theta_chi(F(p) - F(q)) / sqrt(nu_chi(p) nu_chi(q))`.
//! Square roots are taken on the principal branch, so single values of `E`
//! are only defined up to sign; logarithmic derivatives and ratios along an
//! arc are branch independent.

use super::{Characteristic, ThetaContext};
use crate::algebra::{roots_with_multiplicity, Deriv, Poly2};
use crate::periods::PeriodData;
use crate::polygon::moduli_space;
use crate::surface::{PathSpec, Start, Surface, SurfacePoint};
use crate::{Error, Result, C64};

/// A polynomial `H` whose form `H dx / P_y` has `g - 1` double zeros.
#[derive(Clone, Debug)]
pub struct CanonicalDivisor {
    pub h: Poly2<C64>,
    /// The zeros of `H dx / P_y` (each a double zero).
    pub points: Vec<SurfacePoint>,
    /// Indices of the chosen branch roots in lexicographic order (empty in
    /// genus one).
    pub subset: Vec<usize>,
    /// `max |P|, |H|, |P_x H_y - P_y H_x|` over the divisor points.
    pub tangency_residual: f64,
}

/// Canonical divisor data: `H = const` in genus one and, for
/// `y^2 = f(x)`, `H = prod (x - x_i)` over the first `g - 1` branch roots.
pub fn canonical_h(surface: &Surface) -> Result<CanonicalDivisor> {
    let g = moduli_space(surface)?.genus;
    let one = C64::new(1.0, 0.0);
    if g == 0 {
        return Err(Error::input("a genus zero curve has no holomorphic forms"));
    }
    if g == 1 {
        return Ok(CanonicalDivisor {
            h: Poly2::constant(one),
            points: vec![],
            subset: vec![],
            tangency_residual: 0.0,
        });
    }
    let f = surface.curve.hyperelliptic_rhs().ok_or_else(|| {
        Error::unsupported("the canonical divisor is only available for y^2 = f(x) curves of genus >= 2")
    })?;
    let roots = roots_with_multiplicity(&f)?;
    if roots.iter().any(|(_, m)| *m > 1) {
        return Err(Error::unsupported("f has repeated roots"));
    }
    let subset: Vec<usize> = (0..g - 1).collect();
    let mut h = Poly2::constant(one);
    let mut points = Vec::new();
    for &i in &subset {
        let r = roots[i].0;
        let lin = Poly2::from_terms([((1, 0), one), ((0, 0), -r)]);
        h = mul(&h, &lin);
        points.push(SurfacePoint::new(r, C64::new(0.0, 0.0)));
    }
    let hx = h.partial_x(1);
    let hy = h.partial_y(1);
    let c = &surface.curve;
    let scale = c.scale();
    let mut res: f64 = 0.0;
    for p in &points {
        let tangency = c.px(p.x, p.y) * hy.eval_c64(p.x, p.y) - c.py(p.x, p.y) * hx.eval_c64(p.x, p.y);
        res = res
            .max(c.p(p.x, p.y).norm() / scale)
            .max(h.eval_c64(p.x, p.y).norm())
            .max(tangency.norm() / scale);
    }
    if res > 1e-8 {
        return Err(Error::check(format!("canonical divisor fails the tangency test ({res:.2e})")));
    }
    Ok(CanonicalDivisor {
        h,
        points,
        subset,
        tangency_residual: res,
    })
}

fn mul(a: &Poly2<C64>, b: &Poly2<C64>) -> Poly2<C64> {
    let mut out = Poly2::zero();
    for (&(i, j), c) in a.terms() {
        for (&(k, l), d) in b.terms() {
            out.add_term((i + k, j + l), c * d);
        }
    }
    out
}

/// Coefficients `h_m` of `H_chi = P_y nu_chi / dx = sum_m h_m x^i y^j` on the
/// interior monomials.
pub fn nu_chi(pd: &PeriodData, ctx: &ThetaContext, chi: &Characteristic) -> Result<Vec<C64>> {
    let (grad, _) = ctx.theta_derivs(chi)?;
    Ok(hat(pd, &grad))
}

/// `H_chi` as a polynomial.
pub fn nu_chi_poly(pd: &PeriodData, ctx: &ThetaContext, chi: &Characteristic) -> Result<Poly2<C64>> {
    let h = nu_chi(pd, ctx, chi)?;
    Ok(Poly2::from_terms(
        pd.monomials.iter().zip(h).map(|(&(i, j), c)| ((i as u32, j as u32), c)),
    ))
}

/// `sum_i v_i Khat_{i,m}`.
fn hat(pd: &PeriodData, v: &[C64]) -> Vec<C64> {
    (0..pd.monomials.len())
        .map(|m| (0..v.len()).map(|i| v[i] * pd.khat[(i, m)]).sum())
        .collect()
}

/// `F(p) - F(q)` along the straight path from `q` to `p`, which must not
/// cross the cycle loops and must end on the sheet of `p`.
fn abel_difference(pd: &PeriodData, p: SurfacePoint, q: SurfacePoint) -> Result<Vec<C64>> {
    let path = PathSpec::new(vec![q.x, p.x], Start::Y(q.y), false, "abel difference");
    let (t, v) = pd.integrate_omega(&path)?;
    let end = t.end();
    if (end.y - p.y).norm() > 1e-8 * (1.0 + p.y.norm()) {
        return Err(Error::input("the straight path between the points ends on another sheet"));
    }
    Ok(v)
}

fn theta_check(pd: &PeriodData, ctx: &ThetaContext) -> Result<()> {
    if ctx.genus() != pd.genus() {
        return Err(Error::input("theta context and period data have different genus"));
    }
    Ok(())
}

/// `E(p, q)` in the trivialisation by `dx`, with principal square roots.
pub fn prime_form(
    pd: &PeriodData,
    ctx: &ThetaContext,
    chi: &Characteristic,
    p: SurfacePoint,
    q: SurfacePoint,
) -> Result<C64> {
    theta_check(pd, ctx)?;
    let h = nu_chi(pd, ctx, chi)?;
    let nu = |z: SurfacePoint| -> C64 {
        let v = pd.monomial_values(z.x, z.y);
        v.iter().zip(&h).map(|(a, b)| a * b).sum::<C64>() / pd.surface.curve.py(z.x, z.y)
    };
    let (np, nq) = (nu(p), nu(q));
    let scale: f64 = h.iter().map(|c| c.norm()).sum();
    if np.norm() < 1e-12 * scale || nq.norm() < 1e-12 * scale {
        return Err(Error::input("nu vanishes at an evaluation point (a point of the canonical divisor)"));
    }
    let u = abel_difference(pd, p, q)?;
    Ok(ctx.theta_char(chi, &u)? / (np * nq).sqrt())
}

/// `d_p ln(E(p, p1) / E(p, p2))` (coefficient of `dx`), which equals the
/// third-kind differential `dS_{p1,p2}(p)`.
pub fn dlog_prime_ratio(
    pd: &PeriodData,
    ctx: &ThetaContext,
    chi: &Characteristic,
    p: SurfacePoint,
    p1: SurfacePoint,
    p2: SurfacePoint,
) -> Result<C64> {
    theta_check(pd, ctx)?;
    let w = pd.omega(p.x, p.y);
    let mut total = C64::new(0.0, 0.0);
    for (q, sign) in [(p1, 1.0), (p2, -1.0)] {
        let u = abel_difference(pd, p, q)?;
        let jet = ctx.jet(chi, &u, 1)?;
        let lg = jet.log_gradient();
        total += sign * lg.iter().zip(&w).map(|(a, b)| a * b).sum::<C64>();
    }
    Ok(total)
}

/// `d_p d_q ln Theta_chi(F(p) - F(q))` (coefficient of `dx_p dx_q`).
pub fn bergman_from_theta(
    pd: &PeriodData,
    ctx: &ThetaContext,
    chi: &Characteristic,
    p: SurfacePoint,
    q: SurfacePoint,
) -> Result<C64> {
    theta_check(pd, ctx)?;
    let u = abel_difference(pd, p, q)?;
    let lh = ctx.jet(chi, &u, 2)?.log_hessian();
    let (wp, wq) = (pd.omega(p.x, p.y), pd.omega(q.x, q.y));
    let g = pd.genus();
    let mut s = C64::new(0.0, 0.0);
    for j in 0..g {
        for k in 0..g {
            s -= lh[(j, k)] * wp[j] * wq[k];
        }
    }
    Ok(s)
}

/// Relative residual of the identity obtained from the bidifferential at
/// coinciding points:
///
/// `S(p; p) + (1 / 3H) sum Thetahat'''_{abc} v_a v_b v_c
///   = (P_xx P_yy - P_xxy P_y + P_xy^2 / 2 - P_xyy P_x) / 6 - Q(p; p)
///   + (P_y P_xy - P_x P_yy)(H_x P_y - P_x H_y) / (6 H P_y)
///   + (H_xx P_y^2 - 2 H_xy P_x P_y + H_yy P_x^2 + 2 H_y P_x P_xy
///      - H_y P_xx P_y - H_y P_yy P_x^2 / P_y) / (6 H)
///   - (H_x P_y - H_y P_x)^2 / (4 H^2)`
///
/// with `H = H_chi`, `v_a = x^i y^j` on the interior monomials and hats
/// denoting contraction with `Khat`.
pub fn diagonal_identity_residual(
    pd: &PeriodData,
    ctx: &ThetaContext,
    chi: &Characteristic,
    p: SurfacePoint,
) -> Result<f64> {
    theta_check(pd, ctx)?;
    let g = pd.genus();
    let n = pd.monomials.len();
    let (_, third) = ctx.theta_derivs(chi)?;
    let hpoly = nu_chi_poly(pd, ctx, chi)?;
    let (x, y) = (p.x, p.y);
    let v = pd.monomial_values(x, y);
    // Thetahat''' contracted with v three times.
    let vh: Vec<C64> = (0..g)
        .map(|i| (0..n).map(|m| pd.khat[(i, m)] * v[m]).sum())
        .collect();
    let mut cubic = C64::new(0.0, 0.0);
    for i in 0..g {
        for j in 0..g {
            for k in 0..g {
                cubic += third[(i * g + j) * g + k] * vh[i] * vh[j] * vh[k];
            }
        }
    }
    let s = pd.s_matrix()?;
    let mut sd = C64::new(0.0, 0.0);
    for a in 0..n {
        for b in 0..n {
            sd += s[(a, b)] * v[a] * v[b];
        }
    }
    let hv = |q: &Poly2<C64>| q.eval_c64(x, y);
    let h = hv(&hpoly);
    let (hx, hy) = (hv(&hpoly.partial_x(1)), hv(&hpoly.partial_y(1)));
    let (hxx, hxy, hyy) = (
        hv(&hpoly.partial_x(2)),
        hv(&hpoly.partial_x(1).partial_y(1)),
        hv(&hpoly.partial_y(2)),
    );
    let c = &pd.surface.curve;
    let d = |w: Deriv| c.eval(w, x, y);
    let (px, py) = (d(Deriv::X), d(Deriv::Y));
    let (pxx, pxy, pyy) = (d(Deriv::XX), d(Deriv::XY), d(Deriv::YY));
    let (pxxy, pxyy) = (d(Deriv::XXY), d(Deriv::XYY));
    let q = pd.bergman.q_at(x, y, x, y);

    let lhs = sd + cubic / (3.0 * h);
    let tan = hx * py - px * hy;
    let rhs = (pxx * pyy - pxxy * py + 0.5 * pxy * pxy - pxyy * px) / 6.0 - q
        + (py * pxy - px * pyy) * tan / (6.0 * h * py)
        + (hxx * py * py - 2.0 * hxy * px * py + hyy * px * px + 2.0 * hy * px * pxy
            - hy * pxx * py
            - hy * pyy * px * px / py)
            / (6.0 * h)
        - tan * tan / (4.0 * h * h);
    Ok((lhs - rhs).norm() / (1.0 + lhs.norm()))
}

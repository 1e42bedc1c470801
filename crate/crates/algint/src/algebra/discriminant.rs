//! Discriminants in `y` and degenerate points of the curve.

use num::traits::Zero;

use super::coeff::{Coeff, Field, Gq};
use super::curve::Curve;
use super::poly2::Poly2;
use super::upoly::UPoly;
use crate::numeric::{lex_cmp, linalg, roots};
use crate::{Error, Result, C64};

/// The `(2d - 1) x (2d - 1)` matrix whose first `d - 1` rows hold shifted
/// copies of `(a_d, ..., a_0)` and whose last `d` rows hold shifted copies of
/// `(d a_d, (d-1) a_{d-1}, ..., a_1)`. Columns run over `y^{2d-2}, ..., y^0`.
pub fn resultant_matrix<E: Clone>(coeffs: &[E], zero: E, mul_int: impl Fn(&E, i64) -> E) -> Vec<Vec<E>> {
    let d = coeffs.len() - 1;
    let n = 2 * d - 1;
    let mut m = vec![vec![zero.clone(); n]; n];
    for r in 0..d - 1 {
        for k in 0..=d {
            m[r][r + k] = coeffs[d - k].clone();
        }
    }
    for r in 0..d {
        for k in 0..d {
            m[d - 1 + r][r + k] = mul_int(&coeffs[d - k], (d - k) as i64);
        }
    }
    m
}

/// Determinant over a field by Gaussian elimination.
pub fn det_field<T: Field>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut det = T::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return T::zero();
        };
        if piv != k {
            m.swap(piv, k);
            det = -det;
        }
        let pv = m[k][k].clone();
        det = det * pv.clone();
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let f = m[r][k].clone() / pv.clone();
            for c in k..n {
                let v = m[r][c].clone() - f.clone() * m[k][c].clone();
                m[r][c] = v;
            }
        }
    }
    det
}

/// Determinant of a matrix of univariate polynomials (fraction-free Bareiss).
pub fn det_poly(mut m: Vec<Vec<UPoly<Gq>>>) -> UPoly<Gq> {
    let n = m.len();
    if n == 0 {
        return UPoly::constant(Gq::from_i64(1));
    }
    let mut sign = 1i64;
    let mut prev = UPoly::constant(Gq::from_i64(1));
    for k in 0..n - 1 {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return UPoly::zero();
        };
        if piv != k {
            m.swap(piv, k);
            sign = -sign;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let num = &(&m[k][k] * &m[r][c]) - &(&m[r][k] * &m[k][c]);
                m[r][c] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[r][k] = UPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -&det
    } else {
        det
    }
}

/// Discriminant `Delta(x)` of `P` with respect to `y`.
pub fn discriminant(p: &Poly2<Gq>) -> UPoly<Gq> {
    let rows = p.y_coeffs();
    if rows.len() < 2 {
        return UPoly::zero();
    }
    let m = resultant_matrix(&rows, UPoly::zero(), |e, k| e.scale(&Gq::from_i64(k)));
    det_poly(m)
}

/// The same construction applied to a univariate polynomial.
pub fn discriminant_univariate(f: &UPoly<Gq>) -> Gq {
    let c = f.coeffs();
    if c.len() < 2 {
        return Gq::zero();
    }
    let m = resultant_matrix(c, Gq::zero(), |e, k| e.clone() * Gq::from_i64(k));
    det_field(m)
}

/// Scalar discriminant of `P`: the discriminant of `Delta(x)` divided by
/// its leading coefficient, i.e. `Res(Delta, Delta') / lead(Delta)`.
///
/// Returns `None` when `Delta(x)` is constant (no finite branch points).
/// The curve is generic exactly when the result is nonzero.
pub fn discriminant_scalar(p: &Poly2<Gq>) -> Option<Gq> {
    let delta = discriminant(p);
    match delta.degree() {
        Some(d) if d >= 1 => Some(discriminant_univariate(&delta) / delta.lead()),
        _ => None,
    }
}

/// Resultant in `y` of `P` and `Q` (Sylvester matrix), as a polynomial in `x`.
pub fn resultant_y(p: &Poly2<Gq>, q: &Poly2<Gq>) -> UPoly<Gq> {
    let a = p.y_coeffs();
    let b = q.y_coeffs();
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 {
        return pow_u(&a[0], n);
    }
    if n == 0 {
        return pow_u(&b[0], m);
    }
    let size = m + n;
    let mut mat = vec![vec![UPoly::zero(); size]; size];
    for r in 0..n {
        for k in 0..=m {
            mat[r][r + k] = a[m - k].clone();
        }
    }
    for r in 0..m {
        for k in 0..=n {
            mat[n + r][r + k] = b[n - k].clone();
        }
    }
    det_poly(mat)
}

fn pow_u(p: &UPoly<Gq>, n: usize) -> UPoly<Gq> {
    let mut acc = UPoly::constant(Gq::from_i64(1));
    for _ in 0..n {
        acc = &acc * p;
    }
    acc
}

/// Roots of an exact univariate polynomial with multiplicities, via
/// squarefree factorization and numerical roots of each factor.
pub fn roots_with_multiplicity(f: &UPoly<Gq>) -> Result<Vec<(C64, usize)>> {
    let mut out = Vec::new();
    for (factor, m) in f.squarefree() {
        let c: Vec<C64> = factor.coeffs().iter().map(|v| v.to_c64()).collect();
        for r in roots::poly_roots(&c)? {
            out.push((roots::newton_polish(&c, r, 4), m));
        }
    }
    out.sort_by(|a, b| lex_cmp(&a.0, &b.0));
    Ok(out)
}

/// A point of the curve where `P = P_y = 0`.
#[derive(Clone, Debug)]
pub struct DegeneratePoint {
    pub x: C64,
    pub y: C64,
    /// Multiplicity of `x` as a root of `Delta`.
    pub delta_multiplicity: usize,
    /// Multiplicity of `y` as a root of `P(x, .)`.
    pub y_multiplicity: usize,
}

/// Fiber roots of `P(x0, .)` grouped into clusters of (numerically) equal
/// roots. Returns `(centre, size)` pairs; the leading coefficient is dropped
/// when it vanishes at `x0`.
pub fn fiber_clusters(curve: &Curve, x0: C64) -> Result<Vec<(C64, usize)>> {
    let mut c = curve.y_coeffs_at(x0);
    let scales = curve.y_coeff_scales_at(x0);
    while c.len() > 1 && c.last().unwrap().norm() <= 1e-10 * scales[c.len() - 1] {
        c.pop();
    }
    let mut ys = roots::poly_roots(&c)?;
    ys.sort_by(lex_cmp);
    let mut clusters: Vec<(Vec<C64>, C64)> = Vec::new();
    for y in ys {
        let tol = 1e-4 * (1.0 + y.norm());
        match clusters.iter_mut().find(|(_, ctr)| (ctr - y).norm() < tol) {
            Some((members, ctr)) => {
                members.push(y);
                *ctr = members.iter().sum::<C64>() / members.len() as f64;
            }
            None => clusters.push((vec![y], y)),
        }
    }
    let mut out = Vec::new();
    for (members, ctr) in clusters {
        let m = members.len();
        let y = if m > 1 { polish_multiple(&c, ctr, m) } else { ctr };
        out.push((y, m));
    }
    Ok(out)
}

/// Newton on the `(m-1)`-th derivative, which has a simple root at an
/// `m`-fold root.
fn polish_multiple(c: &[C64], y0: C64, m: usize) -> C64 {
    let mut d: Vec<C64> = c.to_vec();
    for _ in 0..m - 1 {
        d = d
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, v)| v * i as f64)
            .collect();
    }
    roots::newton_polish(&d, y0, 8)
}

/// `y` at a simple root of `Delta` from the minors of the resultant matrix:
/// `y = -M_{r, n-1} / M_{r, n}` for the row `r` with the largest last minor.
pub fn kramer_y(curve: &Curve, x0: C64) -> Result<C64> {
    let coeffs = curve.y_coeffs_at(x0);
    let m = resultant_matrix(&coeffs, C64::new(0.0, 0.0), |e, k| e * k as f64);
    let n = m.len();
    if n < 2 {
        return Err(Error::numeric("curve is linear in y"));
    }
    let minor = |r: usize, c: usize| -> C64 {
        let rows: Vec<Vec<C64>> = (0..n)
            .filter(|&i| i != r)
            .map(|i| (0..n).filter(|&j| j != c).map(|j| m[i][j]).collect())
            .collect();
        linalg::det(&linalg::from_rows(&rows))
    };
    let mut best = (0, C64::new(0.0, 0.0));
    for r in 0..n {
        let v = minor(r, n - 1);
        if v.norm() > best.1.norm() {
            best = (r, v);
        }
    }
    if best.1.norm() == 0.0 {
        return Err(Error::numeric("all minors vanish: not a simple root"));
    }
    Ok(-minor(best.0, n - 2) / best.1)
}

/// All finite points with `P = P_y = 0`, sorted by `(x, y)`.
pub fn degenerate_points(curve: &Curve) -> Result<Vec<DegeneratePoint>> {
    let delta = discriminant(curve.poly());
    let mut out = Vec::new();
    for (x, m) in roots_with_multiplicity(&delta)? {
        for (y, ym) in fiber_clusters(curve, x)? {
            if ym < 2 {
                continue;
            }
            out.push(DegeneratePoint {
                x,
                y,
                delta_multiplicity: m,
                y_multiplicity: ym,
            });
        }
    }
    Ok(out)
}

//! Roots of univariate complex polynomials (Aberth–Ehrlich with Newton
//! polishing).

use crate::{Error, Result, C64};

/// Value and derivative of `sum c_k z^k` (ascending coefficients).
pub fn eval_with_deriv(c: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for v in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + v;
    }
    (p, dp)
}

/// Trims trailing exact zeros.
fn trimmed(c: &[C64]) -> &[C64] {
    let mut n = c.len();
    while n > 0 && c[n - 1] == C64::new(0.0, 0.0) {
        n -= 1;
    }
    &c[..n]
}

/// All complex roots (with multiplicity) of the polynomial with ascending
/// coefficients `c`. Trailing exact zeros are ignored.
pub fn poly_roots(c: &[C64]) -> Result<Vec<C64>> {
    poly_roots_from(c, &[])
}

/// Like [`poly_roots`] but starts from the given guesses when their number
/// matches the degree.
pub fn poly_roots_from(c: &[C64], guess: &[C64]) -> Result<Vec<C64>> {
    let c = trimmed(c);
    if c.is_empty() {
        return Err(Error::input("roots of the zero polynomial"));
    }
    let n = c.len() - 1;
    if c.iter().any(|v| !v.is_finite()) {
        return Err(Error::numeric("non-finite polynomial coefficient"));
    }
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-c[0] / c[1]]),
        2 => return Ok(quadratic(c[2], c[1], c[0]).to_vec()),
        _ => {}
    }
    // Zero roots are split off exactly.
    let zeros = c.iter().take_while(|v| **v == C64::new(0.0, 0.0)).count();
    if zeros > 0 {
        let mut r = poly_roots_from(&c[zeros..], &[])?;
        r.extend(std::iter::repeat_n(C64::new(0.0, 0.0), zeros));
        return Ok(r);
    }
    let mut z: Vec<C64> = if guess.len() == n {
        guess.to_vec()
    } else {
        initial_guesses(c)
    };
    let lead = c[n];
    let mut converged = vec![false; n];
    for _ in 0..1000 {
        let mut all = true;
        for k in 0..n {
            if converged[k] {
                continue;
            }
            let (p, dp) = eval_with_deriv(c, z[k]);
            if p == C64::new(0.0, 0.0) {
                converged[k] = true;
                continue;
            }
            let ratio = p / dp;
            let mut s = C64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d != C64::new(0.0, 0.0) {
                        s += 1.0 / d;
                    }
                }
            }
            let w = ratio / (1.0 - ratio * s);
            let w = if w.is_finite() { w } else { ratio };
            z[k] -= w;
            if w.norm() <= 1e-15 * (1.0 + z[k].norm()) {
                converged[k] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    // Final Newton polish; it only helps simple roots and never moves a root
    // far.
    for zk in z.iter_mut() {
        *zk = newton_polish(c, *zk, 3);
    }
    if z.iter().any(|v| !v.is_finite()) {
        return Err(Error::numeric(format!(
            "root finder diverged (leading coefficient {lead})"
        )));
    }
    Ok(z)
}

/// A few Newton steps, rejected if they increase the residual.
pub fn newton_polish(c: &[C64], mut z: C64, iters: usize) -> C64 {
    let (mut p, mut dp) = eval_with_deriv(c, z);
    for _ in 0..iters {
        if dp == C64::new(0.0, 0.0) || p == C64::new(0.0, 0.0) {
            break;
        }
        let cand = z - p / dp;
        let (pc, dpc) = eval_with_deriv(c, cand);
        if !(pc.norm() < p.norm()) {
            break;
        }
        z = cand;
        p = pc;
        dp = dpc;
    }
    z
}

fn quadratic(a: C64, b: C64, c: C64) -> [C64; 2] {
    let disc = (b * b - 4.0 * a * c).sqrt();
    // Avoid cancellation: pick the sign that maximises |b + sign * disc|.
    let q = if (b.conj() * disc).re >= 0.0 {
        -0.5 * (b + disc)
    } else {
        -0.5 * (b - disc)
    };
    if q == C64::new(0.0, 0.0) {
        return [C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
    }
    [q / a, c / q]
}

fn initial_guesses(c: &[C64]) -> Vec<C64> {
    let n = c.len() - 1;
    let lead = c[n];
    let center = -c[n - 1] / (lead * n as f64);
    // Fujiwara-type bound on the root radius around the centroid.
    let mut radius: f64 = 0.0;
    for k in 0..n {
        let r = (c[k] / lead).norm().powf(1.0 / (n - k) as f64);
        radius = radius.max(r);
    }
    let radius = radius.max(1e-3);
    (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            center + C64::from_polar(radius, ang)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(r: &[C64]) -> Vec<C64> {
        let mut c = vec![C64::new(1.0, 0.0)];
        for &z in r {
            let mut next = vec![C64::new(0.0, 0.0); c.len() + 1];
            for (i, v) in c.iter().enumerate() {
                next[i + 1] += v;
                next[i] -= v * z;
            }
            c = next;
        }
        c
    }

    #[test]
    fn recovers_known_roots() {
        let r = [
            C64::new(1.0, 0.0),
            C64::new(-2.0, 0.5),
            C64::new(0.3, -1.7),
            C64::new(4.0, 0.0),
            C64::new(-0.5, -0.5),
        ];
        let c = from_roots(&r);
        let found = poly_roots(&c).unwrap();
        for z in r {
            let best = found.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
            assert!(best < 1e-12, "{z} not found: {best}");
        }
    }

    #[test]
    fn zero_and_quadratic_roots() {
        let c = [C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(-1.0, 0.0), C64::new(1.0, 0.0)];
        let mut r = poly_roots(&c).unwrap();
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!(r[0].norm() < 1e-15 && r[1].norm() < 1e-15);
        assert!((r[2] - 1.0).norm() < 1e-15);
        let q = poly_roots(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
        assert!(q.iter().all(|z| (z * z + 1.0).norm() < 1e-15));
    }
}

//! Classical elliptic quantities used as independent checks of the genus one
//! machinery: complete elliptic integrals, the Jacobi nome, Jacobi theta
//! constants and the weight two Eisenstein series.

use std::f64::consts::PI;

use crate::{Error, Result, C64};

/// Complete elliptic integrals `(K(k), E(k))` for real `0 <= k < 1`, by the
/// arithmetic-geometric mean.
pub fn ellke(k: f64) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&k.abs()) {
        return Err(Error::input(format!("modulus {k} outside [0, 1)")));
    }
    let (mut a, mut b) = (1.0f64, (1.0 - k * k).sqrt());
    let mut sum = 0.5 * k * k;
    let mut pow = 0.5;
    for _ in 0..64 {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
        let c = 0.5 * (a - b);
        let m = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = m;
        pow *= 2.0;
        sum += pow * c * c;
    }
    let kk = PI / (2.0 * a);
    Ok((kk, kk * (1.0 - sum)))
}

/// `K'(k) = K(sqrt(1 - k^2))`.
pub fn ellk_prime(k: f64) -> Result<f64> {
    Ok(ellke((1.0 - k * k).sqrt())?.0)
}

/// `theta_2(q) = 2 q^(1/4) sum_{n>=0} q^(n(n+1))` for real `0 <= q < 1`.
pub fn theta2(q: f64) -> f64 {
    let mut s = 0.0;
    for n in 0.. {
        let t = q.powi(n * (n + 1));
        s += t;
        if t < 1e-18 * s || n > 200 {
            break;
        }
    }
    2.0 * q.powf(0.25) * s
}

/// `theta_3(q) = 1 + 2 sum_{n>=1} q^(n^2)`.
pub fn theta3(q: f64) -> f64 {
    let mut s = 1.0;
    for n in 1.. {
        let t = 2.0 * q.powi(n * n);
        s += t;
        if t < 1e-18 * s || n > 200 {
            break;
        }
    }
    s
}

/// `theta_4(q) = 1 + 2 sum_{n>=1} (-1)^n q^(n^2)`.
pub fn theta4(q: f64) -> f64 {
    let mut s = 1.0;
    for n in 1.. {
        let t = 2.0 * q.powi(n * n);
        s += if n % 2 == 0 { t } else { -t };
        if t < 1e-18 || n > 200 {
            break;
        }
    }
    s
}

/// The first terms `k^2/16 + k^4/32 + 21 k^6/1024 + 31 k^8/2048` of the nome.
pub fn nome_series(k: f64) -> f64 {
    let m = k * k;
    m / 16.0 + m * m / 32.0 + 21.0 * m.powi(3) / 1024.0 + 31.0 * m.powi(4) / 2048.0
}

/// The Jacobi nome `q = exp(-pi K'/K)`, from the series start refined by
/// Newton steps on `theta_2(q)^2 / theta_3(q)^2 = k`.
pub fn nome(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k.abs()) {
        return Err(Error::input(format!("modulus {k} outside [0, 1)")));
    }
    let k = k.abs();
    if k == 0.0 {
        return Ok(0.0);
    }
    let f = |q: f64| (theta2(q) / theta3(q)).powi(2) - k;
    // Close to k = 1 the series start is poor; the closed form is then used
    // as the starting point instead.
    let mut q = if k < 0.9 {
        nome_series(k)
    } else {
        let (kk, _) = ellke(k)?;
        (-PI * ellk_prime(k)? / kk).exp()
    };
    for _ in 0..60 {
        let h = 1e-7 * q.max(1e-12);
        let d = (f(q + h) - f(q - h)) / (2.0 * h);
        let step = f(q) / d;
        let next = (q - step).clamp(0.5 * q, 0.999_999);
        let done = (next - q).abs() <= 2.0 * f64::EPSILON * q;
        q = next;
        if done {
            break;
        }
    }
    Ok(q)
}

/// `G_2 = (pi^2 / 3) (1 - 24 sum_{n>=1} sigma_1(n) x^n)` with `x = e^(2 pi i tau)`.
pub fn eisenstein_g2(x: C64) -> Result<C64> {
    if x.norm() >= 1.0 {
        return Err(Error::input("Eisenstein series needs |e^(2 pi i tau)| < 1"));
    }
    // sum sigma_1(n) x^n = sum_m m x^m / (1 - x^m) (Lambert series).
    let mut s = C64::new(0.0, 0.0);
    let mut xm = C64::new(1.0, 0.0);
    for m in 1..10_000 {
        xm *= x;
        let t = m as f64 * xm / (1.0 - xm);
        s += t;
        if t.norm() < 1e-18 * (1.0 + s.norm()) {
            break;
        }
    }
    Ok(PI * PI / 3.0 * (1.0 - 24.0 * s))
}

/// `G_2(tau)` for `Im tau > 0`.
pub fn g2_of_tau(tau: C64) -> Result<C64> {
    eisenstein_g2((C64::new(0.0, 2.0 * PI) * tau).exp())
}

/// Classical data for a real modulus.
#[derive(Clone, Copy, Debug)]
pub struct ClassicalSeries {
    pub k: f64,
    /// `K(k)`.
    pub kk: f64,
    /// `E(k)`.
    pub ee: f64,
    /// `K'(k)`.
    pub kk_prime: f64,
    /// Jacobi nome `q = exp(-pi K'/K)`.
    pub q: f64,
    /// `G_2` at `e^(2 pi i tau) = q`.
    pub g2: f64,
}

/// Evaluates [`ClassicalSeries`] for `0 <= k < 1`.
pub fn classical_series(k: f64) -> Result<ClassicalSeries> {
    let (kk, ee) = ellke(k)?;
    let q = nome(k)?;
    Ok(ClassicalSeries {
        k,
        kk,
        ee,
        kk_prime: ellk_prime(k)?,
        q,
        g2: eisenstein_g2(C64::new(q, 0.0))?.re,
    })
}

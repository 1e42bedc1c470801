//! Riemann theta functions with half-integer characteristics.
//!
//! `Theta(u, tau) = sum_{n in Z^g} exp(2 pi i (u, n) + i pi (n, tau n))` and,
//! for a characteristic `chi = alpha/2 + tau beta/2`,
//! `Theta_chi(u) = Theta(u + chi) exp(i pi (beta, u))`, so that
//! `Theta_chi(u + n) = exp(i pi (beta, n)) Theta_chi(u)`.
//!
//! The lattice sum is centred at the dominant term and truncated at a radius
//! chosen from the Gaussian tail bound `exp(-pi lambda_min(Im tau) R^2)`.

pub mod classical;
pub mod prime;

use nalgebra::DMatrix;

use crate::numeric::linalg::CMat;
use crate::numeric::I;
use crate::{Error, Result, C64};

pub use classical::{classical_series, ellke, nome, ClassicalSeries};
pub use prime::{
    bergman_from_theta, canonical_h, diagonal_identity_residual, dlog_prime_ratio, nu_chi, nu_chi_poly, prime_form,
    CanonicalDivisor,
};

use std::f64::consts::PI;

/// Largest truncation radius of the lattice sum.
pub const MAX_RADIUS: usize = 40;

/// A Siegel matrix together with the truncation of its lattice sums.
#[derive(Clone, Debug)]
pub struct ThetaContext {
    pub tau: CMat,
    /// Lattice points with `|n - n0|_inf <= radius` around the dominant
    /// term `n0` are summed.
    pub radius: usize,
    /// Relative precision target of the truncated sums.
    pub tol: f64,
    /// `(Im tau)^(-1)`, used to locate the dominant term.
    im_inv: DMatrix<f64>,
}

impl ThetaContext {
    /// Validates `tau` and picks the truncation radius for the relative
    /// precision `tol` (with a tenfold safety factor and allowance for up
    /// to three derivatives).
    pub fn new(tau: CMat, tol: f64) -> Result<Self> {
        let g = tau.nrows();
        if g == 0 || tau.ncols() != g {
            return Err(Error::input("tau must be a nonempty square matrix"));
        }
        let scale = tau.iter().map(|v| v.norm()).fold(1.0, f64::max);
        for i in 0..g {
            for j in 0..g {
                if (tau[(i, j)] - tau[(j, i)]).norm() > 1e-8 * scale {
                    return Err(Error::input("tau is not symmetric"));
                }
            }
        }
        let im = DMatrix::from_fn(g, g, |i, j| 0.5 * (tau[(i, j)].im + tau[(j, i)].im));
        let lmin = im.clone().symmetric_eigen().eigenvalues.min();
        if lmin <= 0.0 {
            return Err(Error::input("Im tau is not positive definite"));
        }
        let im_inv = im
            .try_inverse()
            .ok_or_else(|| Error::numeric("Im tau is singular"))?;
        if !(tol > 0.0) {
            return Err(Error::input("precision target must be positive"));
        }
        // exp(-pi lmin (R - 1)^2) with room for (2 pi R)^3 from derivatives.
        let budget = (1e4 * (2.0 * PI).powi(3) / tol).ln();
        let r = 1.0 + (budget / (PI * lmin)).sqrt();
        let radius = r.ceil() as usize;
        if radius > MAX_RADIUS {
            return Err(Error::numeric(format!(
                "truncation radius {radius} exceeds the cap {MAX_RADIUS} (Im tau too small)"
            )));
        }
        Ok(ThetaContext {
            tau,
            radius,
            tol,
            im_inv,
        })
    }

    /// Context with a relative precision target of `1e-15`.
    pub fn with_default_precision(tau: CMat) -> Result<Self> {
        Self::new(tau, 1e-15)
    }

    pub fn genus(&self) -> usize {
        self.tau.nrows()
    }

    /// Sums `f(n, exp(2 pi i (v, n) + i pi (n, tau n)))` over the lattice,
    /// centred at the dominant term for `v`.
    fn lattice_sum<F: FnMut(&[f64], C64)>(&self, v: &[C64], mut f: F) {
        let g = self.genus();
        let imv: Vec<f64> = v.iter().map(|z| z.im).collect();
        let centre: Vec<i64> = (0..g)
            .map(|i| {
                let c: f64 = -(0..g).map(|j| self.im_inv[(i, j)] * imv[j]).sum::<f64>();
                c.round() as i64
            })
            .collect();
        let r = self.radius as i64;
        let mut offs = vec![-r; g];
        let mut n = vec![0.0f64; g];
        loop {
            for i in 0..g {
                n[i] = (centre[i] + offs[i]) as f64;
            }
            let mut e = C64::new(0.0, 0.0);
            for i in 0..g {
                e += 2.0 * v[i] * n[i];
                let mut tn = C64::new(0.0, 0.0);
                for j in 0..g {
                    tn += self.tau[(i, j)] * n[j];
                }
                e += n[i] * tn;
            }
            f(&n, (I * PI * e).exp());
            // Next lattice point in the box.
            let mut k = 0;
            while k < g {
                offs[k] += 1;
                if offs[k] <= r {
                    break;
                }
                offs[k] = -r;
                k += 1;
            }
            if k == g {
                break;
            }
        }
    }

    /// `Theta(u, tau)`.
    pub fn theta(&self, u: &[C64]) -> Result<C64> {
        self.check_len(u.len())?;
        let mut s = C64::new(0.0, 0.0);
        self.lattice_sum(u, |_, t| s += t);
        Ok(s)
    }

    /// `Theta_chi(u)`.
    pub fn theta_char(&self, chi: &Characteristic, u: &[C64]) -> Result<C64> {
        Ok(self.jet(chi, u, 0)?.value)
    }

    /// `Theta_chi` and its first `order` (at most 3) derivatives at `u`.
    pub fn jet(&self, chi: &Characteristic, u: &[C64], order: usize) -> Result<ThetaJet> {
        let g = self.genus();
        self.check_len(u.len())?;
        chi.check(g)?;
        if order > 3 {
            return Err(Error::input("at most three derivatives are available"));
        }
        let shift = chi.vector(&self.tau);
        let v: Vec<C64> = (0..g).map(|i| u[i] + shift[i]).collect();
        // exp(i pi (beta, u)) is folded into the frequencies n + beta/2.
        let pref = (I * PI * (0..g).map(|i| chi.beta[i] as f64 * u[i]).sum::<C64>()).exp();
        let mut jet = ThetaJet::zeros(g);
        let two_pi_i = 2.0 * PI * I;
        self.lattice_sum(&v, |n, t| {
            jet.value += t;
            if order == 0 {
                return;
            }
            let w: Vec<C64> = (0..g).map(|i| two_pi_i * (n[i] + 0.5 * chi.beta[i] as f64)).collect();
            for i in 0..g {
                jet.grad[i] += w[i] * t;
                if order < 2 {
                    continue;
                }
                for j in 0..g {
                    let wij = w[i] * w[j] * t;
                    jet.hess[(i, j)] += wij;
                    if order < 3 {
                        continue;
                    }
                    for k in 0..g {
                        jet.third[(i * g + j) * g + k] += wij * w[k];
                    }
                }
            }
        });
        jet.value *= pref;
        jet.grad.iter_mut().for_each(|z| *z *= pref);
        jet.hess.iter_mut().for_each(|z| *z *= pref);
        jet.third.iter_mut().for_each(|z| *z *= pref);
        Ok(jet)
    }

    /// `Theta'_chi(0)` and `Theta'''_chi(0)`.
    pub fn theta_derivs(&self, chi: &Characteristic) -> Result<(Vec<C64>, Vec<C64>)> {
        let jet = self.jet(chi, &vec![C64::new(0.0, 0.0); self.genus()], 3)?;
        Ok((jet.grad, jet.third))
    }

    /// The lexicographically smallest odd characteristic whose gradient at
    /// the origin does not vanish.
    pub fn regular_odd(&self) -> Result<Characteristic> {
        let g = self.genus();
        let zero = vec![C64::new(0.0, 0.0); g];
        for chi in odd_characteristics(g) {
            let jet = self.jet(&chi, &zero, 1)?;
            let norm = jet.grad.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if norm > 1e-8 {
                return Ok(chi);
            }
        }
        Err(Error::numeric("every odd characteristic is singular"))
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.genus() {
            return Err(Error::input(format!("argument has {n} entries, genus is {}", self.genus())));
        }
        Ok(())
    }
}

/// `Theta_chi(u)` with its gradient, Hessian and third derivative tensor
/// (row-major `g x g x g`).
#[derive(Clone, Debug)]
pub struct ThetaJet {
    pub value: C64,
    pub grad: Vec<C64>,
    pub hess: CMat,
    pub third: Vec<C64>,
}

impl ThetaJet {
    fn zeros(g: usize) -> Self {
        ThetaJet {
            value: C64::new(0.0, 0.0),
            grad: vec![C64::new(0.0, 0.0); g],
            hess: CMat::zeros(g, g),
            third: vec![C64::new(0.0, 0.0); g * g * g],
        }
    }

    /// `d_i d_j ln Theta`.
    pub fn log_hessian(&self) -> CMat {
        let g = self.grad.len();
        CMat::from_fn(g, g, |i, j| {
            self.hess[(i, j)] / self.value - self.grad[i] * self.grad[j] / (self.value * self.value)
        })
    }

    /// `d_i ln Theta`.
    pub fn log_gradient(&self) -> Vec<C64> {
        self.grad.iter().map(|d| d / self.value).collect()
    }
}

/// A half-integer characteristic `chi = alpha/2 + tau beta/2` with
/// `alpha, beta` in `{0, 1}^g`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Characteristic {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

impl Characteristic {
    pub fn new(alpha: Vec<i64>, beta: Vec<i64>) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::input("alpha and beta must have the same length"));
        }
        Ok(Characteristic {
            alpha: alpha.iter().map(|a| a.rem_euclid(2)).collect(),
            beta: beta.iter().map(|b| b.rem_euclid(2)).collect(),
        })
    }

    pub fn zero(g: usize) -> Self {
        Characteristic {
            alpha: vec![0; g],
            beta: vec![0; g],
        }
    }

    /// `(alpha, beta) mod 2`.
    pub fn is_odd(&self) -> bool {
        self.alpha.iter().zip(&self.beta).map(|(a, b)| a * b).sum::<i64>() % 2 == 1
    }

    /// `alpha/2 + tau beta/2`.
    pub fn vector(&self, tau: &CMat) -> Vec<C64> {
        let g = self.alpha.len();
        (0..g)
            .map(|i| {
                0.5 * self.alpha[i] as f64
                    + 0.5 * (0..g).map(|j| tau[(i, j)] * self.beta[j] as f64).sum::<C64>()
            })
            .collect()
    }

    fn check(&self, g: usize) -> Result<()> {
        if self.alpha.len() != g {
            return Err(Error::input(format!("characteristic has genus {}, tau has {g}", self.alpha.len())));
        }
        Ok(())
    }
}

/// All odd characteristics in lexicographic order of `(alpha, beta)`; there
/// are `2^(g-1) (2^g - 1)` of them.
pub fn odd_characteristics(g: usize) -> Vec<Characteristic> {
    let bits = |m: usize| -> Vec<i64> { (0..g).map(|i| ((m >> (g - 1 - i)) & 1) as i64).collect() };
    let mut out = Vec::new();
    for a in 0..1usize << g {
        for b in 0..1usize << g {
            let chi = Characteristic {
                alpha: bits(a),
                beta: bits(b),
            };
            if chi.is_odd() {
                out.push(chi);
            }
        }
    }
    out
}

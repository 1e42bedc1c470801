//! Change of the marked homology basis.
//!
//! A symplectic integer matrix `U = [[alpha, beta], [gamma, delta]]` defines
//! new cycles `A' = alpha A + beta B`, `B' = gamma A + delta B`. Then
//! `Khat' = (alpha^T + tau beta^T)^-1 Khat`,
//! `tau' = (gamma + delta tau)(alpha + beta tau)^-1` and
//! `S' = S - 2 pi i Khat^T (alpha + beta tau)^-1 beta Khat`.

use super::PeriodData;
use crate::numeric::linalg::{inverse, max_abs, CMat};
use crate::numeric::TWO_PI_I;
use crate::{Error, Result, C64};

/// A basis change `U` (`2g x 2g` integer matrix, rows: new cycles).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleChange {
    pub u: Vec<Vec<i64>>,
}

/// `U J U^T = J` with `J = [[0, I], [-I, 0]]`, checked exactly.
pub fn is_symplectic(u: &[Vec<i64>]) -> bool {
    let n = u.len();
    if n % 2 != 0 || u.iter().any(|r| r.len() != n) {
        return false;
    }
    let g = n / 2;
    let j = |r: usize, c: usize| -> i64 {
        if c == r + g && r < g {
            1
        } else if r == c + g && c < g {
            -1
        } else {
            0
        }
    };
    for r in 0..n {
        for c in 0..n {
            let mut acc = 0i64;
            for a in 0..n {
                for b in 0..n {
                    acc += u[r][a] * j(a, b) * u[c][b];
                }
            }
            if acc != j(r, c) {
                return false;
            }
        }
    }
    true
}

fn to_cmat(m: &[Vec<i64>], r0: usize, c0: usize, g: usize) -> CMat {
    CMat::from_fn(g, g, |r, c| C64::new(m[r0 + r][c0 + c] as f64, 0.0))
}

impl CycleChange {
    pub fn new(u: Vec<Vec<i64>>) -> Result<Self> {
        if !is_symplectic(&u) {
            return Err(Error::input("basis change matrix is not symplectic"));
        }
        Ok(CycleChange { u })
    }

    /// `(A, B) -> (B, -A)` in genus `g`.
    pub fn swap(g: usize) -> Self {
        let mut u = vec![vec![0i64; 2 * g]; 2 * g];
        for i in 0..g {
            u[i][g + i] = 1;
            u[g + i][i] = -1;
        }
        CycleChange { u }
    }

    /// Composition: first `self`, then `next`.
    pub fn then(&self, next: &CycleChange) -> CycleChange {
        let n = self.u.len();
        let u = (0..n)
            .map(|r| (0..n).map(|c| (0..n).map(|k| next.u[r][k] * self.u[k][c]).sum()).collect())
            .collect();
        CycleChange { u }
    }
}

impl PeriodData {
    /// Applies a basis change through the transformation formulas.
    pub fn change_cycles(&self, change: &CycleChange) -> Result<PeriodData> {
        let g = self.genus();
        if change.u.len() != 2 * g {
            return Err(Error::input(format!("basis change must be {0}x{0}", 2 * g)));
        }
        if !is_symplectic(&change.u) {
            return Err(Error::input("basis change matrix is not symplectic"));
        }
        let (alpha, beta) = (to_cmat(&change.u, 0, 0, g), to_cmat(&change.u, 0, g, g));
        let (gamma, delta) = (to_cmat(&change.u, g, 0, g), to_cmat(&change.u, g, g, g));
        let m = &alpha + &beta * &self.tau;
        let minv = inverse(&m)?;
        let mut out = self.clone();
        out.khat = inverse(&m.transpose())? * &self.khat;
        out.tau = (&gamma + &delta * &self.tau) * &minv;
        if let Some(s) = &self.s {
            let corr = self.khat.transpose() * &minv * &beta * &self.khat * TWO_PI_I;
            out.s = Some(s - corr);
        }
        out.k = &self.k * alpha.transpose() + &self.b_periods * beta.transpose();
        out.b_periods = &self.k * gamma.transpose() + &self.b_periods * delta.transpose();
        let n = 2 * g;
        out.marking = (0..n)
            .map(|r| (0..n).map(|c| (0..n).map(|k| change.u[r][k] * self.marking[k][c]).sum()).collect())
            .collect();
        if let Some(ext) = &mut out.extended {
            // The residue columns are unaffected; refresh the A columns.
            for c in 0..g {
                for r in 0..ext.matrix.nrows() {
                    ext.matrix[(r, c)] = out.k[(r, c)];
                }
            }
            ext.khat = out.khat.clone();
        }
        out.diagnostics.normalization = max_abs(&(&out.khat * &out.k - CMat::identity(g, g)));
        out.diagnostics.tau_asymmetry = max_abs(&(&out.tau - out.tau.transpose()));
        Ok(out)
    }
}

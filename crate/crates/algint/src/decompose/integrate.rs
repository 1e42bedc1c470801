//! Complete and incomplete integrals assembled from a decomposition.
//!
//! Periods of the blocks:
//!
//! | block        | `∮_{A_i}` | `∮_{B_i}`                                   | `∮_{C_q}`          |
//! |--------------|-----------|---------------------------------------------|--------------------|
//! | `B_{p,k}`    | 0         | `2 pi i (1/k) Res_p xi^(-k) omega_i`        | 0                  |
//! | `dS_{p,o}`   | 0         | quadrature over the B loop                  | `2 pi i delta_{pq}`|
//! | `omega_j`    | `delta_ij`| `tau_ij`                                    | 0                  |
//!
//! Along an arc `gamma` from `p1` to `p2` inside the fundamental domain,
//! `∫ B_{p,k} = (1/k) Res_p xi^(-k) dS_{p2,p1}` and `∫ omega_j = F_j(p2) - F_j(p1)`;
//! the third kind terms are integrated by quadrature.

use std::f64::consts::FRAC_PI_2;

use super::{decompose, expansion, DecomposeOptions, Decomposition};
use crate::algebra::{gq, Gq, Poly2};
use crate::curves::legendre;
use crate::forms::RationalForm;
use crate::numeric::quad::{integrate_scalar, QuadOptions};
use crate::numeric::TWO_PI_I;
use crate::periods::{PeriodData, PeriodOptions};
use crate::surface::{default_cycles, PathSpec, Surface, SurfacePoint};
use crate::{Error, Result, C64};

/// An integer combination of the marked cycles and of small loops around
/// poles of the decomposed form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Gamma {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    /// `(pole index, multiplicity)`; the loop runs counterclockwise in the
    /// local coordinate.
    pub c: Vec<(usize, i64)>,
}

impl Gamma {
    /// The single cycle `A_i`.
    pub fn a_cycle(i: usize, g: usize) -> Self {
        let mut a = vec![0; g];
        a[i] = 1;
        Gamma { a, b: vec![0; g], c: vec![] }
    }

    /// The single cycle `B_i`.
    pub fn b_cycle(i: usize, g: usize) -> Self {
        let mut b = vec![0; g];
        b[i] = 1;
        Gamma { a: vec![0; g], b, c: vec![] }
    }

    /// A small loop around pole `p`.
    pub fn around(p: usize, g: usize) -> Self {
        Gamma {
            a: vec![0; g],
            b: vec![0; g],
            c: vec![(p, 1)],
        }
    }
}

/// The A- and B-periods of every block of a decomposition and of the form.
#[derive(Clone, Debug)]
pub struct PeriodTable {
    /// `∮_{B_i} B_{p,k}` per block (outer index: block).
    pub blocks_b: Vec<Vec<C64>>,
    /// `∮_{A_i} dS_{p,o}` per third kind term (should vanish).
    pub third_a: Vec<Vec<C64>>,
    /// `∮_{B_i} dS_{p,o}` per third kind term.
    pub third_b: Vec<Vec<C64>>,
    /// `∮_{A_i} R`.
    pub a: Vec<C64>,
    /// `∮_{B_i} R`.
    pub b: Vec<C64>,
}

impl Decomposition {
    /// `(1/k) Res_p xi^(-k) omega_i` for a block.
    pub fn block_residue_omega(&self, pd: &PeriodData, block: usize) -> Vec<C64> {
        let b = &self.blocks[block];
        let g = pd.genus();
        (0..g)
            .map(|i| b.holo.iter().enumerate().map(|(m, h)| pd.khat[(i, m)] * h).sum())
            .collect()
    }

    /// Builds the period table.
    pub fn period_table(&self, pd: &PeriodData) -> Result<PeriodTable> {
        let g = pd.genus();
        let blocks_b: Vec<Vec<C64>> = (0..self.blocks.len())
            .map(|b| self.block_residue_omega(pd, b).into_iter().map(|v| TWO_PI_I * v).collect())
            .collect();
        let (third_a, third_b) = if self.third.is_empty() || g == 0 {
            (vec![vec![]; self.third.len()], vec![vec![]; self.third.len()])
        } else {
            let (a, b) = pd.cycle_integrals(self.third.len(), &|x, y, out: &mut [C64]| {
                for (o, t) in out.iter_mut().zip(&self.third) {
                    *o = pd.eval_third_kind(&t.ds, x, y);
                }
                Ok(())
            })?;
            let rows = |m: &crate::numeric::linalg::CMat| -> Vec<Vec<C64>> {
                (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect()
            };
            (rows(&a), rows(&b))
        };
        let mut a = self.holo_coeffs.clone();
        let mut b = vec![C64::new(0.0, 0.0); g];
        for i in 0..g {
            for (blk, per) in self.blocks.iter().zip(&blocks_b) {
                b[i] += blk.time * per[i];
            }
            for (t, (pa, pb)) in self.third.iter().zip(third_a.iter().zip(&third_b)) {
                a[i] += t.time * pa[i];
                b[i] += t.time * pb[i];
            }
            for j in 0..g {
                b[i] += pd.tau[(i, j)] * self.holo_coeffs[j];
            }
        }
        Ok(PeriodTable {
            blocks_b,
            third_a,
            third_b,
            a,
            b,
        })
    }

    /// `∮_gamma R dx` for an integer combination of cycles.
    pub fn integrate_complete(&self, pd: &PeriodData, gamma: &Gamma) -> Result<C64> {
        let g = pd.genus();
        if gamma.a.len() != g || gamma.b.len() != g {
            return Err(Error::input(format!("cycle combination must have {g} A and {g} B entries")));
        }
        let mut total = C64::new(0.0, 0.0);
        if gamma.a.iter().chain(&gamma.b).any(|&n| n != 0) {
            let table = self.period_table(pd)?;
            for i in 0..g {
                total += gamma.a[i] as f64 * table.a[i] + gamma.b[i] as f64 * table.b[i];
            }
        }
        for &(p, n) in &gamma.c {
            if p >= self.times.poles.len() {
                return Err(Error::input(format!("no pole with index {p}")));
            }
            total += n as f64 * TWO_PI_I * self.times.get(p, 0);
        }
        Ok(total)
    }

    /// `∫_gamma R dx` along an arc that stays inside the fundamental domain.
    pub fn integrate_incomplete(&self, pd: &PeriodData, arc: &PathSpec) -> Result<IncompleteIntegral> {
        if arc.closed {
            return Err(Error::input("an arc must not be closed"));
        }
        let surface = &pd.surface;
        let tracked = arc.track(surface)?;
        pd.check_no_crossing(&tracked)?;
        let (p1, p2) = (tracked.start(), tracked.end());
        for (pi, pole) in self.times.poles.iter().enumerate() {
            if let Some(pp) = pole.point() {
                for e in [p1, p2] {
                    if (e.x - pp.x).norm() + (e.y - pp.y).norm() < 1e-8 * (1.0 + pp.x.norm()) {
                        return Err(Error::input(format!("arc endpoint lies on pole {pi}: the integral diverges")));
                    }
                }
            }
        }
        // Holomorphic part.
        let (_, df) = pd.integrate_omega(arc)?;
        let holo: C64 = df.iter().zip(&self.holo_coeffs).map(|(a, b)| a * b).sum();
        // Second kind blocks through the third kind differential dS_{p2,p1}.
        let mut second = C64::new(0.0, 0.0);
        if !self.blocks.is_empty() {
            let ds = pd.third_kind(p2, p1)?;
            for b in &self.blocks {
                let exp = &self.times.poles[b.pole].expansion;
                let mut ser = exp.ds_comb(&pd.bergman, (p2.x, p2.y), (p1.x, p1.y))?;
                for (m, &mono) in pd.monomials.iter().enumerate() {
                    ser = ser.add(&exp.omega(mono)?.scale(ds.dzeta[m]));
                }
                second += b.time * expansion::res_weighted(&ser, b.k)?;
            }
        }
        // Third kind terms and the direct value by quadrature.
        let nt = self.third.len();
        let vals = tracked.integrate(
            surface,
            nt + 1,
            &|x, y, out: &mut [C64]| {
                for (o, t) in out.iter_mut().zip(&self.third) {
                    *o = pd.eval_third_kind(&t.ds, x, y);
                }
                out[nt] = self.form.eval(x, y);
                Ok(())
            },
            pd.options.quad,
        )?;
        let third: C64 = self.third.iter().zip(&vals).map(|(t, v)| t.time * v).sum();
        Ok(IncompleteIntegral {
            start: p1,
            end: p2,
            holomorphic: holo,
            second_kind: second,
            third_kind: third,
            value: holo + second + third,
            direct: vals[nt],
        })
    }
}

/// An arc integral split by block type, with the direct quadrature value.
#[derive(Clone, Debug)]
pub struct IncompleteIntegral {
    pub start: SurfacePoint,
    pub end: SurfacePoint,
    pub holomorphic: C64,
    pub second_kind: C64,
    pub third_kind: C64,
    /// Sum of the three parts.
    pub value: C64,
    /// `∫ R dx` by quadrature along the arc.
    pub direct: C64,
}

/// The complete elliptic integral of the third kind
/// `Pi(u, k) = ∫_0^1 dx / ((1 - u x^2) sqrt((1 - x^2)(1 - k^2 x^2)))`.
#[derive(Clone, Debug)]
pub struct PiReport {
    /// Half the A-period of `dx / (2 (1 - u x^2) y)` from the decomposition.
    pub value: C64,
    /// Direct quadrature of the defining integral.
    pub quadrature: f64,
    /// `K (zeta(z0) - zeta(-z0)) / (4 sqrt(u) y0)` with `z0 = (1/sqrt(u), y0)`
    /// and `-z0 = (1/sqrt(u), -y0)`. When `z0` is a branch point the limit
    /// `K (S + C(z0)) / (2 sqrt(u) f'(x0))` is used, where `y^2 = f(x)` and
    /// `S + C` is `P_y dzeta/dx`.
    pub zeta_formula: C64,
}

/// `Pi(u, k)` for rational `0 < u < 1`, `0 < k < 1`.
pub fn pi_u_k(u: &Gq, k: &Gq) -> Result<PiReport> {
    let uf = crate::algebra::Coeff::to_c64(u);
    let kf = crate::algebra::Coeff::to_c64(k);
    if uf.im != 0.0 || kf.im != 0.0 || !(uf.re > 0.0 && uf.re < 1.0) || !(kf.re > 0.0 && kf.re < 1.0) {
        return Err(Error::input("Pi(u, k) needs real 0 < u < 1 and 0 < k < 1"));
    }
    let (uf, kf) = (uf.re, kf.re);
    let surface = Surface::new(legendre(k.clone())?)?;
    let cycles = default_cycles(&surface)?;
    let pd = PeriodData::compute(&surface, &cycles, PeriodOptions::default())?;
    // dx / (2 (1 - u x^2) y)
    let den = Poly2::from_terms([((0, 1), gq(2, 1)), ((2, 1), -u.clone() * gq(2, 1))]);
    let form = RationalForm::new(Poly2::constant(gq(1, 1)), den)?;
    let dec = decompose(&pd, &form, &DecomposeOptions::default())?;
    let value = dec.integrate_complete(&pd, &Gamma::a_cycle(0, 1))? * 0.5;
    let quadrature = integrate_scalar(
        |t| {
            let s2 = t.sin().powi(2);
            Ok(C64::new(1.0 / ((1.0 - uf * s2) * (1.0 - kf * kf * s2).sqrt()), 0.0))
        },
        0.0,
        FRAC_PI_2,
        QuadOptions::default(),
    )?
    .re;
    let x0 = C64::new(1.0 / uf.sqrt(), 0.0);
    let fiber = surface.fiber(x0)?;
    let y0 = fiber[0];
    let kk = pd.k[(0, 0)];
    let zeta_formula = if y0.norm() > 1e-8 {
        let z = pd.zeta_many(&[SurfacePoint::new(x0, y0), SurfacePoint::new(x0, -y0)])?;
        kk * (z[0][0] - z[1][0]) / (4.0 * uf.sqrt() * y0)
    } else {
        let p = SurfacePoint::new(x0, C64::new(0.0, 0.0));
        let d = pd.zeta_derivative(p)?[0];
        let fprime = -surface.curve.px(x0, p.y);
        kk * d / (2.0 * uf.sqrt() * fprime)
    };
    Ok(PiReport {
        value,
        quadrature,
        zeta_formula,
    })
}

//! Period matrix extended by residue conditions at singular points.
//!
//! When the curve has singular points, some combinations of the interior
//! monomial forms have poles at the branches through them. Adding, for every
//! singular point `beta`, branch and exponent `(i', j')` of its deficiency
//! set, the column `2 pi i Res (x - x_beta)^i' (y - y_beta)^j' Omega_m`
//! yields a matrix of rank `#N°`; a square invertible submatrix containing
//! the A-period columns is selected by pivoted elimination, and the first
//! `g` rows of its inverse define the normalised holomorphic forms.

use crate::algebra::{degenerate_points, Poly2};
use crate::numeric::linalg::{inverse, pivot_columns, CMat};
use crate::numeric::TWO_PI_I;
use crate::polygon::{branch_analysis, Pt};
use crate::surface::{LocalSeries, Surface};
use crate::{Error, Result, C64};

/// Meaning of a column of the extended matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum ColumnLabel {
    /// A-period over cycle `A_k` (0-based).
    Cycle(usize),
    /// `2 pi i` times the residue at a branch through a singular point.
    Residue {
        x: C64,
        y: C64,
        /// Index of the branch among those through the point.
        branch: usize,
        exponent: Pt,
    },
}

/// The extended period matrix and the chosen invertible submatrix.
#[derive(Clone, Debug)]
pub struct ExtendedK {
    /// `#N° x ncols`.
    pub matrix: CMat,
    pub columns: Vec<ColumnLabel>,
    /// Indices of the selected columns, A-period columns first.
    pub selected: Vec<usize>,
    /// Ratio of extreme singular values of the selected submatrix.
    pub condition: f64,
    /// Inverse of the selected submatrix (`#N° x #N°`).
    pub inverse: CMat,
    /// Its first `g` rows.
    pub khat: CMat,
}

const SERIES_LEN: usize = 24;
const MAX_CONDITION: f64 = 1e12;

fn poly_pow_linear(x0: C64, n: u32, along_x: bool) -> Poly2<C64> {
    let lin = if along_x {
        &Poly2::x() - &Poly2::constant(x0)
    } else {
        &Poly2::y() - &Poly2::constant(x0)
    };
    lin.pow(n)
}

impl ExtendedK {
    /// Builds the extended matrix from the A-periods `k` (`#N° x g`).
    pub fn compute(surface: &Surface, k: &CMat, monomials: &[Pt]) -> Result<Self> {
        let n = monomials.len();
        let g = k.ncols();
        let curve = &surface.curve;
        let py = curve.poly().partial_y(1).to_c64();
        let mut cols: Vec<Vec<C64>> = (0..g).map(|c| k.column(c).iter().copied().collect()).collect();
        let mut labels: Vec<ColumnLabel> = (0..g).map(ColumnLabel::Cycle).collect();
        for dp in degenerate_points(curve)? {
            let ba = branch_analysis(curve, dp.x, dp.y)?;
            if ba.genus_drop == 0 {
                continue;
            }
            for (b, place) in ba.places.iter().enumerate() {
                let series = LocalSeries::new(place, SERIES_LEN + 8)?;
                let radius = series.safe_radius(surface, &[]);
                for &(ei, ej) in &ba.ncheck {
                    let weight = &poly_pow_linear(dp.x, ei as u32, true) * &poly_pow_linear(dp.y, ej as u32, false);
                    let mut col = Vec::with_capacity(n);
                    for &(i, j) in monomials {
                        let num = &weight * &Poly2::monomial(i as u32, j as u32, C64::new(1.0, 0.0));
                        let l = series.laurent_of(&num, &py, SERIES_LEN, radius)?;
                        col.push(TWO_PI_I * l.coeff(-1).unwrap_or_default());
                    }
                    cols.push(col);
                    labels.push(ColumnLabel::Residue {
                        x: dp.x,
                        y: dp.y,
                        branch: b,
                        exponent: (ei, ej),
                    });
                }
            }
        }
        let matrix = CMat::from_fn(n, cols.len(), |r, c| cols[c][r]);
        let forced: Vec<usize> = (0..g).collect();
        let selected = pivot_columns(&matrix, &forced, n).map_err(|e| {
            Error::numeric(format!("extended period matrix has rank below {n} (inconsistent singular point analysis): {e}"))
        })?;
        let sub = CMat::from_fn(n, n, |r, c| matrix[(r, selected[c])]);
        let sv = sub.clone().svd(false, false).singular_values;
        let smax = sv.iter().cloned().fold(0.0, f64::max);
        let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        let condition = smax / smin.max(1e-300);
        if condition > MAX_CONDITION {
            return Err(Error::numeric(format!(
                "selected extended period submatrix is ill-conditioned ({condition:.3e})"
            )));
        }
        let inv = inverse(&sub)?;
        let khat = inv.rows(0, g).into_owned();
        Ok(ExtendedK {
            matrix,
            columns: labels,
            selected,
            condition,
            inverse: inv,
            khat,
        })
    }

    /// Residue (without the `2 pi i`) of `sum_m c_m Omega_m` at the branch
    /// belonging to column `col`.
    pub fn residue_of(&self, col: usize, coeffs: &[C64]) -> C64 {
        let v: C64 = coeffs.iter().enumerate().map(|(m, c)| c * self.matrix[(m, col)]).sum();
        v / TWO_PI_I
    }
}

//! The space of polynomials `Q` supported on the interior points for which
//! `Q(x, y) dx / P_y` is holomorphic. For curves without singular points
//! this is the span of all interior monomials; at singular points each
//! branch imposes vanishing conditions on the polar part.

use super::{places_over, PlaceKind, Pt};
use crate::algebra::Poly2;
use crate::numeric::linalg::{null_space, rank, CMat};
use crate::surface::{LocalSeries, Surface};
use crate::{Result, C64};

/// Basis of the holomorphic subspace of interior monomials.
#[derive(Clone, Debug)]
pub struct ModuliSpace {
    /// Interior monomials `(i, j)` (the columns' meaning).
    pub monomials: Vec<Pt>,
    /// Basis vectors as columns: coefficient of each monomial.
    pub basis: CMat,
    /// Dimension of the space, the genus.
    pub genus: usize,
    /// Number of independent vanishing conditions found.
    pub conditions: usize,
}

const SERIES_LEN: usize = 16;

/// Computes the holomorphic subspace by checking the polar parts of every
/// interior monomial form at the branches through singular points.
pub fn moduli_space(s: &Surface) -> Result<ModuliSpace> {
    let monomials = s.newton.interior.clone();
    let n = monomials.len();
    let py = s.curve.poly().partial_y(1).to_c64();
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for &(x0, mult) in &s.critical {
        if mult < 2 {
            continue;
        }
        for place in places_over(&s.curve, x0)? {
            if place.kind != PlaceKind::Singular {
                continue;
            }
            let series = LocalSeries::new(&place, SERIES_LEN + 8)?;
            let radius = series.safe_radius(s, &[]);
            let mut cols = Vec::with_capacity(n);
            let mut low = 0;
            for &(i, j) in &monomials {
                let num = Poly2::monomial(i as u32, j as u32, C64::new(1.0, 0.0));
                let l = series.laurent_of(&num, &py, SERIES_LEN, radius)?;
                low = low.min(l.val);
                cols.push(l);
            }
            // Scale of the forms on the circle, to tell genuine polar terms
            // from rounding noise.
            let reference = cols
                .iter()
                .flat_map(|l| (l.val..l.prec()).map(move |k| l.coeff(k).unwrap_or_default().norm() * radius.powi(k)))
                .fold(0.0, f64::max);
            for k in low..0 {
                let row: Vec<C64> = cols
                    .iter()
                    .map(|l| l.coeff(k).unwrap_or_default() * radius.powi(k))
                    .collect();
                if row.iter().any(|v| v.norm() > 1e-8 * reference) {
                    rows.push(row);
                }
            }
        }
    }
    let tol = 1e-7;
    let (basis, conditions) = if rows.is_empty() || n == 0 {
        (CMat::identity(n, n), 0)
    } else {
        let a = CMat::from_fn(rows.len(), n, |r, c| rows[r][c]);
        (null_space(&a, tol), rank(&a, tol))
    };
    Ok(ModuliSpace {
        monomials,
        genus: basis.ncols(),
        basis,
        conditions,
    })
}

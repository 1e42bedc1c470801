//! The Riemann surface as a branched cover of the `x` plane: fibers, path
//! tracking, local parametrisations and cycles.

pub mod cycles;
pub mod local;
pub mod track;

pub use cycles::{
    crossings, default_cycles, intersection_matrix, intersection_number, monodromy, stadium, thick_polyline, winding_number,
    CycleSet, PathSpec, Start,
};
pub use local::{poly_on_series, LocalSeries, PlaceSample};
pub use track::{TrackedPath, TrackedSegment};

use crate::algebra::{discriminant, roots_with_multiplicity, Curve};
use crate::numeric::{lex_cmp, roots};
use crate::polygon::NewtonData;
use crate::{Error, Result, C64};

/// A curve together with the data needed to move around on it.
#[derive(Clone, Debug)]
pub struct Surface {
    pub curve: Curve,
    pub newton: NewtonData,
    /// Roots of the discriminant with multiplicities, sorted.
    pub critical: Vec<(C64, usize)>,
}

/// A finite point `(x, y)` on the curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfacePoint {
    pub x: C64,
    pub y: C64,
}

impl SurfacePoint {
    pub fn new(x: C64, y: C64) -> Self {
        SurfacePoint { x, y }
    }
}

impl Surface {
    pub fn new(curve: Curve) -> Result<Self> {
        let newton = NewtonData::new(curve.poly());
        let critical = roots_with_multiplicity(&discriminant(curve.poly()))?;
        Ok(Surface {
            curve,
            newton,
            critical,
        })
    }

    /// Number of sheets.
    pub fn sheets(&self) -> usize {
        self.curve.sheets()
    }

    /// Critical `x` values (roots of the discriminant).
    pub fn critical_x(&self) -> Vec<C64> {
        self.critical.iter().map(|c| c.0).collect()
    }

    /// Distance from `x` to the nearest critical value.
    pub fn distance_to_critical(&self, x: C64) -> f64 {
        self.critical
            .iter()
            .map(|c| (c.0 - x).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Smallest distance between distinct critical values.
    pub fn min_critical_separation(&self) -> f64 {
        let xs = self.critical_x();
        let mut best = f64::INFINITY;
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                best = best.min((xs[i] - xs[j]).norm());
            }
        }
        if best.is_finite() {
            best
        } else {
            1.0
        }
    }

    /// Sorted fiber `{y : P(x, y) = 0}`; fails where the leading
    /// coefficient vanishes.
    pub fn fiber(&self, x: C64) -> Result<Vec<C64>> {
        let c = self.curve.y_coeffs_at(x);
        let lead = *c.last().expect("nonconstant");
        let lp = self.curve.leading().to_c64();
        let deg = lp.degree().unwrap_or(0) as i32;
        let lscale = lp.coeffs().iter().map(|v| v.norm()).fold(0.0, f64::max) * x.norm().max(1.0).powi(deg);
        if deg > 0 && lead.norm() <= 1e-12 * lscale || lead.norm() == 0.0 {
            return Err(Error::PathTooClose(format!("leading coefficient vanishes at x = {x}")));
        }
        let mut ys = roots::poly_roots(&c)?;
        for y in ys.iter_mut() {
            *y = roots::newton_polish(&c, *y, 2);
        }
        ys.sort_by(lex_cmp);
        Ok(ys)
    }

    /// The point on sheet `k` over `x`.
    pub fn point_on_sheet(&self, x: C64, k: usize) -> Result<SurfacePoint> {
        let f = self.fiber(x)?;
        let y = *f
            .get(k)
            .ok_or_else(|| Error::input(format!("sheet {k} out of range ({} sheets)", f.len())))?;
        Ok(SurfacePoint { x, y })
    }

    /// Minimal pairwise distance inside the fiber over `x`.
    pub fn fiber_separation(&self, x: C64) -> Result<f64> {
        let f = self.fiber(x)?;
        let mut best = f64::INFINITY;
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                best = best.min((f[i] - f[j]).norm());
            }
        }
        Ok(best)
    }

    /// Newton-polishes `y` on the fiber over `x`.
    pub fn polish(&self, x: C64, y: C64) -> C64 {
        let c = self.curve.y_coeffs_at(x);
        roots::newton_polish(&c, y, 4)
    }
}

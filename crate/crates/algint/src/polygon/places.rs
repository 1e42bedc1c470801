//! Places of the curve read off Newton polygons: punctures from the sides of
//! the global polygon, and the branches (discs) through a finite point from
//! the lower-left chain of the shifted polygon.
//!
//! Every place carries a local parametrisation
//! `x = x0 + xi^a` (or `x = xi^a` with `a < 0` at infinity),
//! `y = y0 + xi^b u(xi)` with `u(0) = eta`, where `eta` is a root of the side
//! polynomial `sum_{(i,j) on the side} L_ij eta^j` of the local polynomial
//! `L(X, Y) = P(x0 + X, y0 + Y)`.

use super::hull::{gcd, Hull, Location, Pt};
use super::NewtonData;
use crate::algebra::{fiber_clusters, Curve, Poly2};
use crate::numeric::{lex_cmp, roots};
use crate::{Error, Result, C64};

/// Where a place lies in the `x` direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum XCenter {
    Finite(C64),
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaceKind {
    /// Smooth point where `x` is a local coordinate.
    Regular,
    /// Smooth ramification point of `x`.
    Ramified,
    /// One branch through a singular point of the plane model.
    Singular,
    /// Point at infinity of the affine curve (`x` or `y` infinite).
    Puncture,
}

/// A place with its local parametrisation data.
#[derive(Clone, Debug)]
pub struct Place {
    pub x: XCenter,
    pub y0: C64,
    pub a: i32,
    pub b: i32,
    pub eta: C64,
    pub kind: PlaceKind,
    /// Local polynomial `L(X, Y)`.
    pub local: Poly2<C64>,
    /// `min (a i + b j)` over the support of `L`.
    pub level: i64,
    /// Side polynomial `sum c_j eta^j`.
    pub side_poly: Vec<(u32, C64)>,
}

impl Place {
    pub fn is_puncture(&self) -> bool {
        self.kind == PlaceKind::Puncture
    }

    /// The `(x, y)` point for places that are affine points of the curve.
    pub fn point(&self) -> Option<(C64, C64)> {
        match (self.x, self.is_puncture()) {
            (XCenter::Finite(x0), false) => Some((x0, self.y0)),
            _ => None,
        }
    }

    /// `x` at local parameter `xi`.
    pub fn x_at(&self, xi: C64) -> C64 {
        match self.x {
            XCenter::Finite(x0) => x0 + xi.powi(self.a),
            XCenter::Infinity => xi.powi(self.a),
        }
    }

    /// `dx/dxi` at `xi`.
    pub fn dx_dxi(&self, xi: C64) -> C64 {
        xi.powi(self.a - 1) * self.a as f64
    }

    /// Derivative of the side polynomial at `eta`.
    pub fn side_poly_deriv(&self) -> C64 {
        self.side_poly
            .iter()
            .filter(|(j, _)| *j > 0)
            .map(|(j, c)| c * *j as f64 * self.eta.powu(j - 1))
            .sum()
    }

    /// Short human readable description.
    pub fn describe(&self) -> String {
        let xs = match self.x {
            XCenter::Finite(x) => format!("x={:.6}{:+.6}i", x.re, x.im),
            XCenter::Infinity => "x=inf".to_string(),
        };
        format!(
            "{:?} {} y0={:.6}{:+.6}i (a,b)=({},{}) eta={:.6}{:+.6}i",
            self.kind, xs, self.y0.re, self.y0.im, self.a, self.b, self.eta.re, self.eta.im
        )
    }
}

/// Drops coefficients below `tol` relative to the largest one.
pub fn clean(p: &Poly2<C64>, tol: f64) -> Poly2<C64> {
    let scale = p.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    Poly2::from_terms(
        p.terms()
            .filter(|(_, c)| c.norm() > tol * scale)
            .map(|(e, c)| (*e, *c)),
    )
}

const CLEAN_TOL: f64 = 1e-9;

/// Places attached to the sides of `local`'s Newton polygon whose outward
/// normals satisfy `pick`.
fn side_places(local: &Poly2<C64>, pick: impl Fn(Pt) -> bool) -> Result<Vec<(i32, i32, C64, i64, Vec<(u32, C64)>)>> {
    let nd = NewtonData::new(local);
    let mut out = Vec::new();
    let sides: Vec<_> = if nd.hull.is_two_dimensional() {
        nd.sides.clone()
    } else {
        // A segment hull: both orientations are sides.
        nd.hull
            .edges()
            .into_iter()
            .map(|(f, t)| {
                let (dx, dy) = (t.0 - f.0, t.1 - f.1);
                let g = gcd(dx, dy);
                let normal = (dy / g, -dx / g);
                super::Side {
                    from: f,
                    to: t,
                    normal,
                    level: normal.0 * f.0 + normal.1 * f.1,
                    segments: g,
                    points: (0..=g).map(|k| (f.0 + k * dx / g, f.1 + k * dy / g)).collect(),
                }
            })
            .collect()
    };
    for side in sides {
        if !pick(side.normal) {
            continue;
        }
        let a = -side.normal.0 as i32;
        let b = -side.normal.1 as i32;
        if a == 0 {
            continue;
        }
        let mut pts: Vec<(u32, C64)> = side
            .points
            .iter()
            .map(|&(i, j)| (j as u32, local.coeff(i as u32, j as u32)))
            .filter(|(_, c)| *c != C64::new(0.0, 0.0))
            .collect();
        pts.sort_by_key(|(j, _)| *j);
        let j0 = pts[0].0;
        let step = a.unsigned_abs();
        let deg = ((pts.last().unwrap().0 - j0) / step) as usize;
        let mut w_coeffs = vec![C64::new(0.0, 0.0); deg + 1];
        for &(j, c) in &pts {
            w_coeffs[((j - j0) / step) as usize] = c;
        }
        let mut ws = roots::poly_roots(&w_coeffs)?;
        ws.sort_by(lex_cmp);
        let wscale = ws.iter().map(|w| w.norm()).fold(0.0, f64::max).max(1e-300);
        for k in 0..ws.len() {
            for l in k + 1..ws.len() {
                if (ws[k] - ws[l]).norm() < 1e-7 * wscale {
                    return Err(Error::unsupported(
                        "side polynomial with a repeated root (non-generic branch)",
                    ));
                }
            }
        }
        for w in ws {
            let eta = if step == 1 { w } else { w.powf(1.0 / step as f64) };
            out.push((a, b, eta, -side.level, pts.clone()));
        }
    }
    Ok(out)
}

/// Punctures over `x = infinity`, one per simple root class of each side
/// polynomial with outward normal pointing right.
pub fn places_at_infinity(curve: &Curve) -> Result<Vec<Place>> {
    let local = curve.poly().to_c64();
    let mut out = Vec::new();
    for (a, b, eta, level, side_poly) in side_places(&local, |n| n.0 > 0)? {
        out.push(Place {
            x: XCenter::Infinity,
            y0: C64::new(0.0, 0.0),
            a,
            b,
            eta,
            kind: PlaceKind::Puncture,
            local: local.clone(),
            level,
            side_poly,
        });
    }
    Ok(out)
}

/// All places over the finite value `x0`.
pub fn places_over(curve: &Curve, x0: C64) -> Result<Vec<Place>> {
    let p = curve.poly().to_c64();
    let mut out = Vec::new();
    let mut clusters = fiber_clusters(curve, x0)?;
    // A cluster is genuine only if the shifted polynomial has no constant
    // term; otherwise split it back into simple roots.
    let mut checked = Vec::new();
    for (y0, m) in clusters.drain(..) {
        if m > 1 {
            let local = clean(&p.shift(&x0, &y0), CLEAN_TOL);
            if local.coeff(0, 0) != C64::new(0.0, 0.0) {
                let c = curve.y_coeffs_at(x0);
                let ys = roots::poly_roots(&c)?;
                let mut near: Vec<C64> = ys.into_iter().filter(|y| (y - y0).norm() < 1e-3 * (1.0 + y0.norm())).collect();
                near.sort_by(lex_cmp);
                checked.extend(near.into_iter().map(|y| (y, 1)));
                continue;
            }
        }
        checked.push((y0, m));
    }
    for (y0, m) in checked {
        let local = clean(&p.shift(&x0, &y0), CLEAN_TOL);
        let chain = side_places(&local, |n| n.0 < 0 && n.1 < 0)?;
        let smooth = local.coeff(1, 0) != C64::new(0.0, 0.0) || local.coeff(0, 1) != C64::new(0.0, 0.0);
        let single = chain.len() == 1;
        for (a, b, eta, level, side_poly) in chain {
            let kind = if m == 1 {
                PlaceKind::Regular
            } else if smooth && single {
                PlaceKind::Ramified
            } else {
                PlaceKind::Singular
            };
            out.push(Place {
                x: XCenter::Finite(x0),
                y0,
                a,
                b,
                eta,
                kind,
                local: local.clone(),
                level,
                side_poly,
            });
        }
    }
    let lead = curve.leading().eval_c64(x0);
    if lead.norm() < 1e-10 * curve.scale() {
        let local = clean(&p.shift(&x0, &C64::new(0.0, 0.0)), CLEAN_TOL);
        for (a, b, eta, level, side_poly) in side_places(&local, |n| n.0 < 0 && n.1 > 0)? {
            out.push(Place {
                x: XCenter::Finite(x0),
                y0: C64::new(0.0, 0.0),
                a,
                b,
                eta,
                kind: PlaceKind::Puncture,
                local: local.clone(),
                level,
                side_poly,
            });
        }
    }
    Ok(out)
}

/// All punctures: over infinity and over the roots of the leading
/// coefficient `P_d(x)`.
pub fn punctures(curve: &Curve) -> Result<Vec<Place>> {
    let mut out = places_at_infinity(curve)?;
    let lead = curve.leading();
    if lead.degree().unwrap_or(0) > 0 {
        for (x0, _) in crate::algebra::roots_with_multiplicity(&lead)? {
            out.extend(places_over(curve, x0)?.into_iter().filter(|p| p.is_puncture()));
        }
    }
    Ok(out)
}

/// One branch (disc) through a degenerate point.
#[derive(Clone, Debug)]
pub struct Segment {
    pub a: i32,
    pub b: i32,
    /// `C = eta^a`, the leading coefficient of `(y - y0)^a ~ C (x - x0)^b`.
    pub c: C64,
    pub eta: C64,
}

/// Local structure of the curve at a point with `P = P_y = 0`.
#[derive(Clone, Debug)]
pub struct BranchAnalysis {
    pub x: C64,
    pub y: C64,
    /// Number of branches through the point.
    pub ell: usize,
    pub segments: Vec<Segment>,
    /// Genus drop, `#Ncheck`.
    pub genus_drop: usize,
    /// `sum a_s`, the number of sheets meeting at the point.
    pub degree: usize,
    /// Lattice points `(i - 1, j - 1)`, `i, j >= 1`, on or below the
    /// lower-left chain of the shifted polygon.
    pub ncheck: Vec<Pt>,
    pub places: Vec<Place>,
}

impl BranchAnalysis {
    /// A simple branch point: one smooth ramified branch of order 2.
    pub fn is_simple_branch(&self) -> bool {
        self.ell == 1 && self.genus_drop == 0 && self.degree == 2
    }
}

/// Local analysis at the degenerate point `(x0, y0)`.
pub fn branch_analysis(curve: &Curve, x0: C64, y0: C64) -> Result<BranchAnalysis> {
    let places: Vec<Place> = places_over(curve, x0)?
        .into_iter()
        .filter(|p| !p.is_puncture() && (p.y0 - y0).norm() < 1e-6 * (1.0 + y0.norm()))
        .collect();
    if places.is_empty() {
        return Err(Error::input(format!("({x0}, {y0}) is not on the curve")));
    }
    let local = &places[0].local;
    let support: Vec<Pt> = local.support().iter().map(|&(i, j)| (i as i64, j as i64)).collect();
    let hull = Hull::new(&support);
    // Lower-left chain as (normal, level) pairs.
    let chain: Vec<(Pt, i64)> = NewtonData::from_support(support.clone())
        .sides
        .iter()
        .filter(|s| s.normal.0 < 0 && s.normal.1 < 0)
        .map(|s| (s.normal, s.level))
        .collect();
    let jmax = support.iter().filter(|p| p.0 == 0).map(|p| p.1).min().unwrap_or(0);
    let imax = support.iter().filter(|p| p.1 == 0).map(|p| p.0).min().unwrap_or(0);
    let mut ncheck = Vec::new();
    for i in 1..=imax.max(1) {
        for j in 1..=jmax.max(1) {
            let below = chain.iter().any(|(n, m)| n.0 * i + n.1 * j >= *m);
            if below && hull.locate((i, j)) != Location::Interior {
                ncheck.push((i - 1, j - 1));
            }
        }
    }
    let segments: Vec<Segment> = places
        .iter()
        .map(|p| Segment {
            a: p.a,
            b: p.b,
            c: p.eta.powi(p.a),
            eta: p.eta,
        })
        .collect();
    Ok(BranchAnalysis {
        x: x0,
        y: y0,
        ell: places.len(),
        degree: places.iter().map(|p| p.a as usize).sum(),
        genus_drop: ncheck.len(),
        segments,
        ncheck,
        places,
    })
}

/// Combinatorial residue of `Omega_ij = x^i y^j dx / P_y` at a puncture whose
/// side line passes through `(i + 1, j + 1)`: `a eta^j / P'_side(eta)`.
/// Only punctures over `x = infinity` are covered; elsewhere use series
/// residues.
pub fn puncture_residue(place: &Place, j: u32) -> Option<C64> {
    if place.x != XCenter::Infinity {
        return None;
    }
    Some(place.a as f64 * place.eta.powu(j) / place.side_poly_deriv())
}


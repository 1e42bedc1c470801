//! Newton polygon of the curve: point classes, sides, punctures, local
//! analysis at degenerate points, and the space of holomorphic differentials.

pub mod hull;
pub mod moduli;
pub mod places;

pub use hull::{gcd, Hull, Location, Pt};
pub use moduli::{moduli_space, ModuliSpace};
pub use places::{
    branch_analysis, places_at_infinity, places_over, punctures, BranchAnalysis, Place, PlaceKind,
    Segment, XCenter,
};

use crate::algebra::{Coeff, Poly2};

/// Class of a lattice point `(i, j)` of the closed polygon, decided by where
/// `(i + 1, j + 1)` falls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointClass {
    /// Strict interior: `Omega_ij` is holomorphic.
    First,
    /// Boundary: simple poles at two punctures.
    Third,
    /// Exterior: higher order poles.
    Second,
}

/// A side of the Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub from: Pt,
    pub to: Pt,
    /// Primitive outward normal `n`.
    pub normal: Pt,
    /// `n . v` for every point `v` of the side.
    pub level: i64,
    /// Number of primitive lattice segments the side splits into.
    pub segments: i64,
    /// Lattice points of the side from `from` to `to`.
    pub points: Vec<Pt>,
}

impl Side {
    fn new(from: Pt, to: Pt) -> Side {
        let (dx, dy) = (to.0 - from.0, to.1 - from.1);
        let g = gcd(dx, dy);
        let normal = (dy / g, -dx / g);
        let points = (0..=g).map(|t| (from.0 + t * dx / g, from.1 + t * dy / g)).collect();
        Side {
            from,
            to,
            normal,
            level: normal.0 * from.0 + normal.1 * from.1,
            segments: g,
            points,
        }
    }

    pub fn contains(&self, p: Pt) -> bool {
        self.points.contains(&p)
    }
}

/// Combinatorial data of a polynomial's Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonData {
    /// Support `{(i, j) : P_ij != 0}`.
    pub support: Vec<Pt>,
    pub hull: Hull,
    /// All lattice points of the closed hull.
    pub nbar: Vec<Pt>,
    /// Points whose shift by `(1, 1)` is strictly interior.
    pub interior: Vec<Pt>,
    /// Points whose shift lies on the boundary.
    pub third: Vec<Pt>,
    /// Points whose shift lies outside.
    pub second: Vec<Pt>,
    pub sides: Vec<Side>,
}

impl NewtonData {
    pub fn new<T: Coeff>(p: &Poly2<T>) -> NewtonData {
        let support: Vec<Pt> = p.support().iter().map(|&(i, j)| (i as i64, j as i64)).collect();
        Self::from_support(support)
    }

    pub fn from_support(mut support: Vec<Pt>) -> NewtonData {
        support.sort();
        support.dedup();
        let hull = Hull::new(&support);
        let nbar = hull.lattice_points();
        let (mut interior, mut third, mut second) = (Vec::new(), Vec::new(), Vec::new());
        for &(i, j) in &nbar {
            match hull.locate((i + 1, j + 1)) {
                Location::Interior => interior.push((i, j)),
                Location::Boundary => third.push((i, j)),
                Location::Exterior => second.push((i, j)),
            }
        }
        let sides = if hull.is_two_dimensional() {
            hull.edges().into_iter().map(|(a, b)| Side::new(a, b)).collect()
        } else {
            Vec::new()
        };
        NewtonData {
            support,
            hull,
            nbar,
            interior,
            third,
            second,
            sides,
        }
    }

    pub fn classify(&self, p: Pt) -> Option<PointClass> {
        if !self.nbar.contains(&p) {
            return None;
        }
        Some(match self.hull.locate((p.0 + 1, p.1 + 1)) {
            Location::Interior => PointClass::First,
            Location::Boundary => PointClass::Third,
            Location::Exterior => PointClass::Second,
        })
    }

    /// `#N°`, the genus of a generic curve with this polygon.
    pub fn generic_genus(&self) -> usize {
        self.interior.len()
    }

    /// Sides whose shifted line passes through `(i + 1, j + 1)`.
    pub fn sides_through_shifted(&self, p: Pt) -> Vec<&Side> {
        let q = (p.0 + 1, p.1 + 1);
        self.sides
            .iter()
            .filter(|s| s.normal.0 * q.0 + s.normal.1 * q.1 == s.level)
            .collect()
    }

    /// Sides leading to punctures over `x = infinity` (outward normal with
    /// positive first component).
    pub fn infinite_sides(&self) -> Vec<&Side> {
        self.sides.iter().filter(|s| s.normal.0 > 0).collect()
    }
}

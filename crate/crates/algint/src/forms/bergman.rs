//! Numerical evaluation of the combinatorial bidifferential
//! `B(p1, p2) = [-P(x1, y2) P(x2, y1) / ((x1 - x2)^2 (y1 - y2)^2) + Q] dx1 dx2 / (P_y(p1) P_y(p2))`
//! and of the combinatorial third-kind differential.

use super::qcomb::q_comb;
use crate::algebra::{Curve, Deriv, Poly4};
use crate::C64;

/// The combinatorial bidifferential of a curve.
#[derive(Clone, Debug)]
pub struct BergmanComb {
    pub curve: Curve,
    pub q: Poly4<C64>,
}

impl BergmanComb {
    pub fn new(curve: &Curve) -> Self {
        BergmanComb {
            curve: curve.clone(),
            q: q_comb(curve.poly()).map(|c| crate::algebra::Coeff::to_c64(c)),
        }
    }

    /// `Q(x1, y1; x2, y2)`.
    pub fn q_at(&self, x1: C64, y1: C64, x2: C64, y2: C64) -> C64 {
        self.q.eval_c64([x1, y1, x2, y2])
    }

    /// Numerator `-P(x1, y2) P(x2, y1) / ((x1 - x2)^2 (y1 - y2)^2) + Q`.
    pub fn numerator(&self, x1: C64, y1: C64, x2: C64, y2: C64) -> C64 {
        let c = &self.curve;
        let dx = x1 - x2;
        let dy = y1 - y2;
        -c.p(x1, y2) * c.p(x2, y1) / (dx * dx * dy * dy) + self.q_at(x1, y1, x2, y2)
    }

    /// Coefficient of `dx1 dx2` at two distinct points.
    pub fn eval(&self, x1: C64, y1: C64, x2: C64, y2: C64) -> C64 {
        self.numerator(x1, y1, x2, y2) / (self.curve.py(x1, y1) * self.curve.py(x2, y2))
    }

    /// Finite part of `B(p, p')` as `p' -> p` (the constant term after the
    /// double pole `1 / (x - x')^2`).
    pub fn diagonal(&self, x: C64, y: C64) -> C64 {
        let c = &self.curve;
        let px = c.eval(Deriv::X, x, y);
        let py = c.eval(Deriv::Y, x, y);
        let pyy = c.eval(Deriv::YY, x, y);
        let pxy = c.eval(Deriv::XY, x, y);
        let pyyy = c.eval(Deriv::YYY, x, y);
        let pxyy = c.eval(Deriv::XYY, x, y);
        let py2 = py * py;
        let py3 = py2 * py;
        px * px * pyy * pyy / (4.0 * py2 * py2) - px * px * pyyy / (6.0 * py3) - pxy * px * pyy / (2.0 * py3)
            + pxyy * px / (2.0 * py2)
            + self.q_at(x, y, x, y) / py2
    }

    /// Coefficient of `dx` of the combinatorial third-kind differential with
    /// residues `+1` at `p1` and `-1` at `p2`, evaluated at `(x, y)`.
    pub fn ds(&self, p1: (C64, C64), p2: (C64, C64), x: C64, y: C64) -> C64 {
        let c = &self.curve;
        let term = |(xa, ya): (C64, C64)| (c.p(xa, y) - c.p(x, ya)) / ((x - xa) * (y - ya));
        (term(p1) - term(p2)) / (2.0 * c.py(x, y))
    }

    /// The single-point part `(P(x1, y) - P(x, y1)) / (2 (x - x1)(y - y1) P_y(x, y))`
    /// of the third-kind differential (simple pole at `p1`, poles at the
    /// punctures).
    pub fn ds_half(&self, p1: (C64, C64), x: C64, y: C64) -> C64 {
        let c = &self.curve;
        let (xa, ya) = p1;
        (c.p(xa, y) - c.p(x, ya)) / ((x - xa) * (y - ya) * 2.0 * c.py(x, y))
    }
}

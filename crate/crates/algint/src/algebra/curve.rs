//! The plane curve `P(x, y) = 0` with cached floating point derivatives.

use super::coeff::{Coeff, Gq};
use super::poly2::Poly2;
use super::upoly::UPoly;
use crate::{Error, Result, C64};

/// Dense float polynomial, `rows[j][i]` is the coefficient of `x^i y^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePoly2 {
    rows: Vec<Vec<C64>>,
}

impl DensePoly2 {
    pub fn from_poly<T: Coeff>(p: &Poly2<T>) -> Self {
        let mut rows = vec![vec![C64::new(0.0, 0.0); p.deg_x() as usize + 1]; p.deg_y() as usize + 1];
        for (&(i, j), c) in p.terms() {
            rows[j as usize][i as usize] = c.to_c64();
        }
        DensePoly2 { rows }
    }

    pub fn eval(&self, x: C64, y: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for row in self.rows.iter().rev() {
            let mut r = C64::new(0.0, 0.0);
            for c in row.iter().rev() {
                r = r * x + c;
            }
            acc = acc * y + r;
        }
        acc
    }

    /// Coefficients of `P(x, y)` as a polynomial in `y` (ascending).
    pub fn y_coeffs_at(&self, x: C64) -> Vec<C64> {
        self.rows
            .iter()
            .map(|row| {
                let mut r = C64::new(0.0, 0.0);
                for c in row.iter().rev() {
                    r = r * x + c;
                }
                r
            })
            .collect()
    }

    /// `sum_i |c_ij| |x|^i` for each power `y^j`: the magnitude against which
    /// a cancellation in the corresponding entry of `y_coeffs_at` is judged.
    pub fn y_coeff_scales_at(&self, x: C64) -> Vec<f64> {
        let r = x.norm();
        self.rows
            .iter()
            .map(|row| row.iter().rev().fold(0.0, |acc, c| acc * r + c.norm()))
            .collect()
    }

    /// Largest coefficient modulus.
    pub fn scale(&self) -> f64 {
        self.rows
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }
}

/// A plane algebraic curve given by an exact polynomial.
///
/// Construction checks that `P` is non-constant in `y`, has no monomial
/// factor and is squarefree as a polynomial in `y` (nonzero discriminant).
#[derive(Clone, Debug)]
pub struct Curve {
    p: Poly2<Gq>,
    d: [DensePoly2; 10],
}

/// Index of a cached derivative `d^a/dx^a d^b/dy^b P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deriv {
    P,
    X,
    Y,
    XX,
    XY,
    YY,
    XXY,
    XYY,
    YYY,
    XXX,
}

impl Deriv {
    fn orders(self) -> (u32, u32) {
        match self {
            Deriv::P => (0, 0),
            Deriv::X => (1, 0),
            Deriv::Y => (0, 1),
            Deriv::XX => (2, 0),
            Deriv::XY => (1, 1),
            Deriv::YY => (0, 2),
            Deriv::XXY => (2, 1),
            Deriv::XYY => (1, 2),
            Deriv::YYY => (0, 3),
            Deriv::XXX => (3, 0),
        }
    }

    const ALL: [Deriv; 10] = [
        Deriv::P,
        Deriv::X,
        Deriv::Y,
        Deriv::XX,
        Deriv::XY,
        Deriv::YY,
        Deriv::XXY,
        Deriv::XYY,
        Deriv::YYY,
        Deriv::XXX,
    ];
}

impl Curve {
    pub fn new(p: Poly2<Gq>) -> Result<Self> {
        if p.deg_y() == 0 {
            return Err(Error::input("polynomial does not depend on y"));
        }
        let min_i = p.support().iter().map(|e| e.0).min().unwrap_or(0);
        let min_j = p.support().iter().map(|e| e.1).min().unwrap_or(0);
        if min_i > 0 || min_j > 0 {
            return Err(Error::Reducible("polynomial has a monomial factor".into()));
        }
        let disc = super::discriminant::discriminant(&p);
        if disc.is_zero() {
            return Err(Error::Reducible(
                "discriminant in y vanishes identically (repeated factor)".into(),
            ));
        }
        let d = Deriv::ALL.map(|k| {
            let (a, b) = k.orders();
            DensePoly2::from_poly(&p.partial_x(a).partial_y(b))
        });
        Ok(Curve { p, d })
    }

    /// The exact defining polynomial.
    pub fn poly(&self) -> &Poly2<Gq> {
        &self.p
    }

    /// Degree in `y` (number of sheets).
    pub fn sheets(&self) -> usize {
        self.p.deg_y() as usize
    }

    pub fn eval(&self, which: Deriv, x: C64, y: C64) -> C64 {
        self.d[which as usize].eval(x, y)
    }

    pub fn p(&self, x: C64, y: C64) -> C64 {
        self.d[0].eval(x, y)
    }

    pub fn px(&self, x: C64, y: C64) -> C64 {
        self.d[1].eval(x, y)
    }

    pub fn py(&self, x: C64, y: C64) -> C64 {
        self.d[2].eval(x, y)
    }

    pub fn dense(&self, which: Deriv) -> &DensePoly2 {
        &self.d[which as usize]
    }

    /// `P(x, .)` as ascending float coefficients in `y`.
    pub fn y_coeffs_at(&self, x: C64) -> Vec<C64> {
        self.d[0].y_coeffs_at(x)
    }

    /// Magnitude scales of the entries of `y_coeffs_at`.
    pub fn y_coeff_scales_at(&self, x: C64) -> Vec<f64> {
        self.d[0].y_coeff_scales_at(x)
    }

    /// Leading coefficient `P_d(x)` in `y`.
    pub fn leading(&self) -> UPoly<Gq> {
        self.p.y_coeffs().pop().expect("nonconstant in y")
    }

    /// Coefficient scale used for relative tolerances.
    pub fn scale(&self) -> f64 {
        self.d[0].scale().max(1e-300)
    }

    /// Whether `P = y^2 - f(x)` up to a constant factor (hyperelliptic form).
    pub fn hyperelliptic_rhs(&self) -> Option<UPoly<Gq>> {
        if self.p.deg_y() != 2 {
            return None;
        }
        let rows = self.p.y_coeffs();
        if !rows[1].is_zero() || rows[2].degree() != Some(0) {
            return None;
        }
        let c = rows[2].lead();
        let inv = super::coeff::gq(1, 1) / c;
        Some((-&rows[0]).scale(&inv))
    }
}

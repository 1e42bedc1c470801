//! Sparse bivariate polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::{format_gq, Coeff, Gq};
use super::upoly::UPoly;
use crate::C64;

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Exp2 = (u32, u32);

/// Sparse polynomial `sum c_ij x^i y^j`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2<T: Coeff> {
    terms: BTreeMap<Exp2, T>,
}

impl<T: Coeff> Default for Poly2<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Coeff> Poly2<T> {
    pub fn zero() -> Self {
        Poly2 {
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from terms; repeated exponents are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exp2, T)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn monomial(i: u32, j: u32, c: T) -> Self {
        Self::from_terms([((i, j), c)])
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, T::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, T::one())
    }

    pub fn add_term(&mut self, e: Exp2, c: T) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> T {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp2, &T)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Support `{(i, j) : c_ij != 0}` in lexicographic order.
    pub fn support(&self) -> Vec<Exp2> {
        self.terms.keys().copied().collect()
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.0 + e.1).max().unwrap_or(0)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.clone() * s.clone())))
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Poly2<U> {
        Poly2::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn to_c64(&self) -> Poly2<C64> {
        self.map(|c| c.to_c64())
    }

    /// `d^n P / dx^n`.
    pub fn partial_x(&self, n: u32) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e.0 >= n).map(|(e, c)| {
            let f = falling(e.0, n);
            ((e.0 - n, e.1), c.clone() * T::from_i64(f))
        }))
    }

    /// `d^n P / dy^n`.
    pub fn partial_y(&self, n: u32) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e.1 >= n).map(|(e, c)| {
            let f = falling(e.1, n);
            ((e.0, e.1 - n), c.clone() * T::from_i64(f))
        }))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(T::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `P(x + x0, y + y0)`, expanded exactly.
    pub fn shift(&self, x0: &T, y0: &T) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let xs = binomial_powers(i, x0);
            let ys = binomial_powers(j, y0);
            for (a, xa) in xs.iter().enumerate() {
                if xa.is_zero() {
                    continue;
                }
                for (b, yb) in ys.iter().enumerate() {
                    if yb.is_zero() {
                        continue;
                    }
                    out.add_term((a as u32, b as u32), c.clone() * xa.clone() * yb.clone());
                }
            }
        }
        out
    }

    /// Coefficients `P_j(x)` of `P = sum_j P_j(x) y^j`, for `j = 0..=deg_y`.
    pub fn y_coeffs(&self) -> Vec<UPoly<T>> {
        let dy = self.deg_y() as usize;
        let dx = self.deg_x() as usize;
        let mut rows = vec![vec![T::zero(); dx + 1]; dy + 1];
        for (&(i, j), c) in &self.terms {
            rows[j as usize][i as usize] = c.clone();
        }
        rows.into_iter().map(UPoly::new).collect()
    }

    /// Inverse of [`Poly2::y_coeffs`].
    pub fn from_y_coeffs(rows: &[UPoly<T>]) -> Self {
        let mut p = Self::zero();
        for (j, row) in rows.iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                p.add_term((i as u32, j as u32), c.clone());
            }
        }
        p
    }

    /// `P(x0, y)` as a polynomial in `y`.
    pub fn at_x(&self, x0: &T) -> UPoly<T> {
        UPoly::new(self.y_coeffs().iter().map(|r| r.eval(x0)).collect())
    }

    /// `P(x, y0)` as a polynomial in `x`.
    pub fn at_y(&self, y0: &T) -> UPoly<T> {
        self.swap_xy().at_x(y0)
    }

    pub fn swap_xy(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| ((e.1, e.0), c.clone())))
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        let mut acc = T::zero();
        for row in self.y_coeffs().iter().rev() {
            acc = acc * y.clone() + row.eval(x);
        }
        acc
    }

    pub fn eval_c64(&self, x: C64, y: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (&(i, j), c) in &self.terms {
            acc += c.to_c64() * x.powu(i) * y.powu(j);
        }
        acc
    }
}

impl Poly2<Gq> {
    /// Human-readable form such as `y^2 - x^3 + 1/2*x`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|a, b| (b.0 .1, b.0 .0).cmp(&(a.0 .1, a.0 .0)));
        for (k, (&(i, j), c)) in ordered.into_iter().enumerate() {
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let mut m = Vec::new();
                    match i {
                        0 => {}
                        1 => m.push("x".to_string()),
                        _ => m.push(format!("x^{i}")),
                    }
                    match j {
                        0 => {}
                        1 => m.push("y".to_string()),
                        _ => m.push(format!("y^{j}")),
                    }
                    m.join("*")
                }
            };
            let cs = format_gq(c);
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !rest.starts_with('(') => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&term);
        }
        s
    }
}

impl fmt::Display for Poly2<Gq> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

/// `n (n-1) ... (n-k+1)`.
fn falling(n: u32, k: u32) -> i64 {
    (0..k).map(|t| (n - t) as i64).product()
}

/// Coefficients of `(t + a)^n` in ascending powers of `t`.
fn binomial_powers<T: Coeff>(n: u32, a: &T) -> Vec<T> {
    let n = n as usize;
    let mut apow = vec![T::one(); n + 1];
    for k in 1..=n {
        apow[k] = apow[k - 1].clone() * a.clone();
    }
    let mut binom = vec![1i64; n + 1];
    for k in 1..=n {
        binom[k] = binom[k - 1] * (n - k + 1) as i64 / k as i64;
    }
    (0..=n)
        .map(|k| T::from_i64(binom[k]) * apow[n - k].clone())
        .collect()
}

impl<T: Coeff> Add for &Poly2<T> {
    type Output = Poly2<T>;
    fn add(self, o: &Poly2<T>) -> Poly2<T> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<T: Coeff> Sub for &Poly2<T> {
    type Output = Poly2<T>;
    fn sub(self, o: &Poly2<T>) -> Poly2<T> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<T: Coeff> Mul for &Poly2<T> {
    type Output = Poly2<T>;
    fn mul(self, o: &Poly2<T>) -> Poly2<T> {
        let mut out = Poly2::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                out.add_term((a.0 + b.0, a.1 + b.1), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Coeff> Neg for &Poly2<T> {
    type Output = Poly2<T>;
    fn neg(self) -> Poly2<T> {
        self.map(|c| -c.clone())
    }
}

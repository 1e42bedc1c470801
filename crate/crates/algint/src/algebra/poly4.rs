//! Sparse polynomials in two points `(x, y; x1, y1)`.
//!
//! Used for the exact two-point constructions (the correction polynomial `Q`
//! and the `C` polynomial). Variable indices are `0 = x`, `1 = y`, `2 = x1`,
//! `3 = y1`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::Coeff;
use super::poly2::Poly2;
use crate::{Error, Result, C64};

pub type Exp4 = [u32; 4];

#[derive(Clone, Debug, PartialEq)]
pub struct Poly4<T: Coeff> {
    terms: BTreeMap<Exp4, T>,
}

impl<T: Coeff> Default for Poly4<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Coeff> Poly4<T> {
    pub fn zero() -> Self {
        Poly4 {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exp4, T)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn constant(c: T) -> Self {
        Self::from_terms([([0; 4], c)])
    }

    /// The single variable with index `v`.
    pub fn var(v: usize) -> Self {
        let mut e = [0; 4];
        e[v] = 1;
        Self::from_terms([(e, T::one())])
    }

    /// Embeds `p(u, w)` with `u` mapped to variable `xv` and `w` to `yv`.
    pub fn embed(p: &Poly2<T>, xv: usize, yv: usize) -> Self {
        Self::from_terms(p.terms().map(|(&(i, j), c)| {
            let mut e = [0; 4];
            e[xv] += i;
            e[yv] += j;
            (e, c.clone())
        }))
    }

    pub fn add_term(&mut self, e: Exp4, c: T) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exp4, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exp4) -> T {
        self.terms.get(&e).cloned().unwrap_or_else(T::zero)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.clone() * s.clone())))
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Poly4<U> {
        Poly4::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Exchanges the two points: `(x, y) <-> (x1, y1)`.
    pub fn swap_points(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| ([e[2], e[3], e[0], e[1]], c.clone())),
        )
    }

    /// Exact quotient by `(v_a - v_b)`; fails when the division is not exact.
    pub fn div_linear(&self, a: usize, b: usize) -> Result<Self> {
        // Group by the power of v_a: self = sum_k f_k v_a^k.
        let mut groups: BTreeMap<u32, Poly4<T>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            let k = e2[a];
            e2[a] = 0;
            groups.entry(k).or_default().add_term(e2, c.clone());
        }
        let top = match groups.keys().next_back() {
            Some(&k) => k,
            None => return Ok(Self::zero()),
        };
        let vb = Self::var(b);
        // q_{k-1} = f_k + v_b q_k, from the top down; remainder f_0 + v_b q_0.
        let mut q_next = Self::zero();
        let mut quotient = Self::zero();
        for k in (1..=top).rev() {
            let fk = groups.remove(&k).unwrap_or_default();
            let qk1 = &fk + &(&vb * &q_next);
            for (e, c) in &qk1.terms {
                let mut e2 = *e;
                e2[a] += k - 1;
                quotient.add_term(e2, c.clone());
            }
            q_next = qk1;
        }
        let f0 = groups.remove(&0).unwrap_or_default();
        let rem = &f0 + &(&vb * &q_next);
        if !rem.is_zero() {
            return Err(Error::check(format!(
                "division by (v{a} - v{b}) is not exact"
            )));
        }
        Ok(quotient)
    }

    /// Partial derivative with respect to variable `v`.
    pub fn partial(&self, v: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[v] > 0).map(|(e, c)| {
            let mut e2 = *e;
            e2[v] -= 1;
            (e2, c.clone() * T::from_i64(e[v] as i64))
        }))
    }

    /// Coefficient of `x^i y^j` as a polynomial in `(x1, y1)`.
    pub fn coeff_xy(&self, i: u32, j: u32) -> Poly2<T> {
        Poly2::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| e[0] == i && e[1] == j)
                .map(|(e, c)| ((e[2], e[3]), c.clone())),
        )
    }

    /// Set of `(i, j)` such that some `x^i y^j` monomial occurs.
    pub fn xy_support(&self) -> Vec<(u32, u32)> {
        let mut s: Vec<_> = self.terms.keys().map(|e| (e[0], e[1])).collect();
        s.sort();
        s.dedup();
        s
    }

    /// Substitutes `(x, y) = (x1, y1)`, giving a polynomial in `(x1, y1)`.
    pub fn diagonal(&self) -> Poly2<T> {
        Poly2::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| ((e[0] + e[2], e[1] + e[3]), c.clone())),
        )
    }

    pub fn eval_c64(&self, v: [C64; 4]) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            acc += c.to_c64() * v[0].powu(e[0]) * v[1].powu(e[1]) * v[2].powu(e[2]) * v[3].powu(e[3]);
        }
        acc
    }
}

impl<T: Coeff> Add for &Poly4<T> {
    type Output = Poly4<T>;
    fn add(self, o: &Poly4<T>) -> Poly4<T> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<T: Coeff> Sub for &Poly4<T> {
    type Output = Poly4<T>;
    fn sub(self, o: &Poly4<T>) -> Poly4<T> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<T: Coeff> Mul for &Poly4<T> {
    type Output = Poly4<T>;
    fn mul(self, o: &Poly4<T>) -> Poly4<T> {
        let mut out = Poly4::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Coeff> Neg for &Poly4<T> {
    type Output = Poly4<T>;
    fn neg(self) -> Poly4<T> {
        self.map(|c| -c.clone())
    }
}

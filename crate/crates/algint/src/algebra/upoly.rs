//! Dense univariate polynomials.

use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::{Coeff, Field};
use crate::{Error, Result, C64};

/// Univariate polynomial with ascending coefficients `c[0] + c[1] x + ...`.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<T: Coeff> {
    c: Vec<T>,
}

impl<T: Coeff> UPoly<T> {
    pub fn new(mut c: Vec<T>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(v: T) -> Self {
        Self::new(vec![v])
    }

    /// The monomial `v x^n`.
    pub fn monomial(v: T, n: usize) -> Self {
        let mut c = vec![T::zero(); n + 1];
        c[n] = v;
        Self::new(c)
    }

    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.c.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn lead(&self) -> T {
        self.c.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for v in self.c.iter().rev() {
            acc = acc * x.clone() + v.clone();
        }
        acc
    }

    pub fn eval_c64(&self, x: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for v in self.c.iter().rev() {
            acc = acc * x + v.to_c64();
        }
        acc
    }

    pub fn deriv(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, v)| v.clone() * T::from_i64(i as i64))
            .collect();
        Self::new(c)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.c.iter().map(|v| v.clone() * s.clone()).collect())
    }

    pub fn to_c64(&self) -> UPoly<C64> {
        UPoly::new(self.c.iter().map(|v| v.to_c64()).collect())
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> UPoly<U> {
        UPoly::new(self.c.iter().map(f).collect())
    }
}

impl<T: Field> UPoly<T> {
    /// Quotient and remainder of Euclidean division.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::input("division by the zero polynomial"))?;
        let lead = d.lead();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![T::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let f = r[k + dd].clone() / lead.clone();
            if !f.is_zero() {
                for (i, dv) in d.c.iter().enumerate() {
                    r[k + i] = r[k + i].clone() - f.clone() * dv.clone();
                }
            }
            q[k] = f;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Exact quotient; fails if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::check("polynomial division is not exact"));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = T::one() / self.lead();
        self.scale(&inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Squarefree factorization (Yun): returns `(f_m, m)` with
    /// `self = lead * prod f_m^m`, each `f_m` monic, squarefree, pairwise
    /// coprime and of positive degree.
    pub fn squarefree(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.deriv();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = fp.div_exact(&a0).expect("gcd divides");
        let mut d = &c - &b.deriv();
        let mut m = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), m));
            }
            b = b.div_exact(&a).expect("gcd divides");
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_exact(&a).expect("gcd divides");
            d = &c - &b.deriv();
            m += 1;
        }
        out
    }
}

impl<T: Coeff> Add for &UPoly<T> {
    type Output = UPoly<T>;
    fn add(self, o: &UPoly<T>) -> UPoly<T> {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<T: Coeff> Sub for &UPoly<T> {
    type Output = UPoly<T>;
    fn sub(self, o: &UPoly<T>) -> UPoly<T> {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<T: Coeff> Mul for &UPoly<T> {
    type Output = UPoly<T>;
    fn mul(self, o: &UPoly<T>) -> UPoly<T> {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![T::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::new(c)
    }
}

impl<T: Coeff> Neg for &UPoly<T> {
    type Output = UPoly<T>;
    fn neg(self) -> UPoly<T> {
        UPoly::new(self.c.iter().map(|v| -v.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coeff::{gq, Gq};

    fn p(c: &[i64]) -> UPoly<Gq> {
        UPoly::new(c.iter().map(|&v| gq(v, 1)).collect())
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[1, 2, 3, 4, 5]);
        let b = p(&[-1, 0, 2]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn yun_factorization() {
        // (x - 1)^3 (x + 2)^2 (x - 5)
        let f1 = p(&[-1, 1]);
        let f2 = p(&[2, 1]);
        let f3 = p(&[-5, 1]);
        let f = &(&(&(&f1 * &f1) * &f1) * &(&f2 * &f2)) * &f3;
        let sq = f.squarefree();
        assert_eq!(sq.len(), 3);
        assert_eq!(sq[0], (f3, 1));
        assert_eq!(sq[1], (f2, 2));
        assert_eq!(sq[2], (f1, 3));
    }
}

//! Truncated Laurent series `sum_k c_k t^(val + k)` with complex coefficients.

use crate::{Error, Result, C64};

/// Truncated Laurent series. Coefficients are known for exponents
/// `val .. val + c.len()`; higher exponents are unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent {
    pub val: i32,
    pub c: Vec<C64>,
}

impl Laurent {
    /// Constant series known to absolute order `prec` (exclusive).
    pub fn constant(v: C64, prec: i32) -> Self {
        Self::monomial(v, 0, prec)
    }

    /// `v t^n` known to absolute order `prec` (exclusive).
    pub fn monomial(v: C64, n: i32, prec: i32) -> Self {
        let len = (prec - n).max(0) as usize;
        let mut c = vec![C64::new(0.0, 0.0); len];
        if len > 0 {
            c[0] = v;
        }
        Laurent { val: n, c }
    }

    /// Exclusive upper exponent of the known part.
    pub fn prec(&self) -> i32 {
        self.val + self.c.len() as i32
    }

    /// Coefficient of `t^n`; zero below the valuation, `None` beyond the
    /// precision.
    pub fn coeff(&self, n: i32) -> Option<C64> {
        if n < self.val {
            Some(C64::new(0.0, 0.0))
        } else if n < self.prec() {
            Some(self.c[(n - self.val) as usize])
        } else {
            None
        }
    }

    pub fn truncate(&self, prec: i32) -> Self {
        let len = (prec - self.val).clamp(0, self.c.len() as i32) as usize;
        Laurent {
            val: self.val,
            c: self.c[..len].to_vec(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let val = self.val.min(o.val);
        let prec = self.prec().min(o.prec());
        let c = (val..prec)
            .map(|n| self.coeff(n).unwrap_or_default() + o.coeff(n).unwrap_or_default())
            .collect();
        Laurent { val, c }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> Self {
        Laurent {
            val: self.val,
            c: self.c.iter().map(|v| v * s).collect(),
        }
    }

    /// Multiplies by `t^n`.
    pub fn shift(&self, n: i32) -> Self {
        Laurent {
            val: self.val + n,
            c: self.c.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let len = self.c.len().min(o.c.len());
        let mut c = vec![C64::new(0.0, 0.0); len];
        for i in 0..len {
            if self.c[i] == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..len - i {
                c[i + j] += self.c[i] * o.c[j];
            }
        }
        Laurent {
            val: self.val + o.val,
            c,
        }
    }

    /// Drops leading coefficients that are negligible relative to the rest of
    /// the series, measured on the circle `|t| = radius`.
    pub fn normalize(&self, radius: f64, tol: f64) -> Self {
        let weighted: Vec<f64> = self
            .c
            .iter()
            .enumerate()
            .map(|(k, v)| v.norm() * radius.powi(self.val + k as i32))
            .collect();
        let scale = weighted.iter().cloned().fold(0.0, f64::max);
        let mut skip = 0;
        while skip + 1 < self.c.len() && weighted[skip] <= tol * scale {
            skip += 1;
        }
        Laurent {
            val: self.val + skip as i32,
            c: self.c[skip..].to_vec(),
        }
    }

    /// Multiplicative inverse; the leading coefficient must be nonzero.
    pub fn inv(&self) -> Result<Self> {
        let a0 = *self
            .c
            .first()
            .ok_or_else(|| Error::numeric("inverse of an empty series"))?;
        if a0 == C64::new(0.0, 0.0) {
            return Err(Error::numeric("inverse of a series with zero leading term"));
        }
        let n = self.c.len();
        let mut b = vec![C64::new(0.0, 0.0); n];
        b[0] = 1.0 / a0;
        for k in 1..n {
            let mut s = C64::new(0.0, 0.0);
            for j in 1..=k {
                s += self.c[j] * b[k - j];
            }
            b[k] = -s / a0;
        }
        Ok(Laurent { val: -self.val, c: b })
    }

    /// Integer power (negative powers through [`Laurent::inv`]).
    pub fn powi(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Laurent::constant(C64::new(1.0, 0.0), base.c.len() as i32);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Formal derivative.
    pub fn deriv(&self) -> Self {
        Laurent {
            val: self.val - 1,
            c: self
                .c
                .iter()
                .enumerate()
                .map(|(k, v)| v * (self.val + k as i32) as f64)
                .collect(),
        }
    }

    /// Evaluates the known part at `t`.
    pub fn eval(&self, t: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for v in self.c.iter().rev() {
            acc = acc * t + v;
        }
        acc * t.powi(self.val)
    }
}

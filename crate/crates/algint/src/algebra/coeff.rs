//! Coefficient rings used by the polynomial types.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::Complex;

use crate::{Error, Result, C64};

/// Exact rationals.
pub type Rat = BigRational;

/// Exact Gaussian rationals `a + b i` with `a, b` rational.
pub type Gq = Complex<BigRational>;

/// Ring of polynomial coefficients.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;
    fn to_c64(&self) -> C64;
}

/// Coefficient rings that are fields.
pub trait Field: Coeff + Div<Output = Self> {}

impl Coeff for Gq {
    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    fn to_c64(&self) -> C64 {
        C64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl Field for Gq {}

impl Coeff for C64 {
    fn from_i64(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }

    fn to_c64(&self) -> C64 {
        *self
    }
}

impl Field for C64 {}

/// Rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Gaussian rational with rational real part `n / d`.
pub fn gq(n: i64, d: i64) -> Gq {
    Complex::new(rat(n, d), Rat::zero())
}

/// Gaussian rational from a rational real part.
pub fn gq_real(r: Rat) -> Gq {
    Complex::new(r, Rat::zero())
}

/// Gaussian rational `re + im i`.
pub fn gq_complex(re: Rat, im: Rat) -> Gq {
    Complex::new(re, im)
}

/// Converts a rational to the nearest double, also for huge numerators and
/// denominators.
pub fn rat_to_f64(r: &Rat) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Scale both parts down by their bit lengths.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 60).max(0) as usize;
    let shift_d = (db - 60).max(0) as usize;
    let n = (r.numer().abs() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(1.0);
    let val = n / d * 2f64.powi(shift_n as i32 - shift_d as i32);
    if r.is_negative() {
        -val
    } else {
        val
    }
}

/// Parses an exact rational from `"3"`, `"-3/4"`, `"0.125"` or `"1.5e-3"`.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::input("empty number"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return Err(Error::input(format!("zero denominator in {s:?}")));
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..]
                .parse()
                .map_err(|_| Error::input(format!("bad exponent in {s:?}")))?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::input(format!("bad number {s:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::input(format!("bad number {s:?}")));
    }
    let n: BigInt = digits
        .parse()
        .map_err(|_| Error::input(format!("bad number {s:?}")))?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(n);
    if scale >= 0 {
        r *= BigRational::from_integer(num::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -r } else { r })
}

/// Formats a Gaussian rational compactly, e.g. `-3/4`, `2i`, `(1/2+3i)`.
pub fn format_gq(c: &Gq) -> String {
    let re = &c.re;
    let im = &c.im;
    if im.is_zero() {
        return re.to_string();
    }
    let imag = if im.is_one() {
        "i".to_string()
    } else if *im == -Rat::one() {
        "-i".to_string()
    } else {
        format!("{im}i")
    };
    if re.is_zero() {
        imag
    } else if im.is_negative() {
        format!("({re}{imag})")
    } else {
        format!("({re}+{imag})")
    }
}

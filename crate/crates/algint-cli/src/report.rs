//! Conversion of library values to JSON.

use algint::algebra::coeff::format_gq;
use algint::algebra::{Gq, Poly2, UPoly};
use algint::numeric::linalg::CMat;
use algint::surface::SurfacePoint;
use algint::C64;
use serde_json::{json, Value};

/// Version tag written into every report.
pub const SCHEMA: &str = "algint/1";

pub fn c(z: C64) -> Value {
    // Adding 0.0 turns -0.0 into 0.0.
    json!([z.re + 0.0, z.im + 0.0])
}

pub fn cvec(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|&z| c(z)).collect())
}

pub fn cmat(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|r| Value::Array((0..m.ncols()).map(|k| c(m[(r, k)])).collect()))
            .collect(),
    )
}

pub fn point(p: SurfacePoint) -> Value {
    json!({"x": c(p.x), "y": c(p.y)})
}

/// Exact coefficient as `{"re": "p/q", "im": "r/s"}`.
pub fn exact(z: &Gq) -> Value {
    json!({"re": z.re.to_string(), "im": z.im.to_string()})
}

/// Exact term list, sorted by `(j, i)`; it parses back to the same
/// polynomial as a curve file.
pub fn terms(p: &Poly2<Gq>) -> Value {
    let mut t: Vec<_> = p.terms().collect();
    t.sort_by_key(|(&(i, j), _)| (j, i));
    Value::Array(
        t.into_iter()
            .map(|(&(i, j), z)| json!({"i": i, "j": j, "coeff": exact(z)}))
            .collect(),
    )
}

/// `c_0 + c_1*x + ...` with exact coefficients, highest power first.
pub fn upoly(p: &UPoly<Gq>) -> String {
    let mut parts = Vec::new();
    for (k, z) in p.coeffs().iter().enumerate().rev() {
        if num::Zero::is_zero(z) {
            continue;
        }
        let cs = format_gq(z);
        parts.push(match k {
            0 => cs,
            1 => format!("{cs}*x"),
            _ => format!("{cs}*x^{k}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// A named pass/fail check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tol: f64,
}

impl Check {
    pub fn new(name: &str, value: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            value,
            tol,
        }
    }

    pub fn pass(&self) -> bool {
        self.value.is_finite() && self.value <= self.tol
    }

    pub fn json(&self) -> Value {
        json!({"name": self.name, "value": self.value, "tol": self.tol, "pass": self.pass()})
    }
}

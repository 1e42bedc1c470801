//! JSON input files: curves, forms, cycles, and the `--gamma` expression.

use std::collections::BTreeMap;
use std::path::Path;

use algint::algebra::{gq_complex, rat, Coeff, Curve, Gq, Poly2};
use algint::curves::{cubic, legendre, weierstrass};
use algint::decompose::Gamma;
use algint::forms::RationalForm;
use algint::surface::{default_cycles, CycleSet, PathSpec, Start, Surface};
use algint::C64;
use serde::Deserialize;

use crate::expr::{parse_constant, parse_poly, Params};
use crate::InputError;

type Res<T> = std::result::Result<T, InputError>;

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Res<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::new(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| InputError::new(format!("{}: {e}", path.display())))
}

/// A coefficient: an expression string, or exact real and imaginary parts.
#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum CoeffSpec {
    Text(String),
    Parts {
        re: String,
        #[serde(default)]
        im: Option<String>,
    },
}

/// One monomial `coeff * x^i * y^j`.
#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub i: u32,
    pub j: u32,
    pub coeff: CoeffSpec,
}

/// A curve file. Exactly one of `polynomial`, `terms` and `family` must be
/// present; `params` are named constants available to all expressions.
#[derive(Deserialize, Debug, Clone, Default)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    pub polynomial: Option<String>,
    pub terms: Option<Vec<TermSpec>>,
    pub family: Option<String>,
}

/// A form file describing `R(x, y) dx = num / den dx`.
#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    pub num: String,
    #[serde(default = "one")]
    pub den: String,
}

fn one() -> String {
    "1".into()
}

/// One path of a cycle file; `start_y` takes precedence over `sheet`.
#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct PathFile {
    pub waypoints: Vec<[f64; 2]>,
    #[serde(default)]
    pub sheet: Option<usize>,
    #[serde(default)]
    pub start_y: Option<[f64; 2]>,
    #[serde(default = "yes")]
    pub closed: bool,
    #[serde(default)]
    pub label: Option<String>,
}

fn yes() -> bool {
    true
}

#[derive(Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct CycleFile {
    pub a: Vec<PathFile>,
    pub b: Vec<PathFile>,
}

/// Evaluates parameters that may refer to each other (in any order) and to
/// `base`.
fn eval_params(raw: &BTreeMap<String, String>, base: &Params) -> Res<Params> {
    let mut out = base.clone();
    let mut pending: Vec<(&String, &String)> = raw.iter().collect();
    while !pending.is_empty() {
        let before = pending.len();
        let mut last_err = None;
        pending.retain(|(name, src)| match parse_constant(src, &out) {
            Ok(v) => {
                out.insert((*name).clone(), v);
                false
            }
            Err(e) => {
                last_err = Some(format!("parameter {name}: {e}"));
                true
            }
        });
        if pending.len() == before {
            return Err(InputError::new(last_err.unwrap_or_default()));
        }
    }
    Ok(out)
}

impl CurveSpec {
    pub fn load(path: &Path) -> Res<Self> {
        read_json(path)
    }

    /// The parameter table of the curve.
    pub fn params(&self) -> Res<Params> {
        eval_params(&self.params, &Params::new())
    }

    pub fn polynomial(&self) -> Res<Poly2<Gq>> {
        let params = self.params()?;
        let given = [self.polynomial.is_some(), self.terms.is_some(), self.family.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(InputError::new("a curve needs exactly one of \"polynomial\", \"terms\", \"family\""));
        }
        if let Some(src) = &self.polynomial {
            return parse_poly(src, &params).map_err(|e| InputError::new(format!("polynomial: {e}")));
        }
        if let Some(terms) = &self.terms {
            let mut p = Poly2::zero();
            for (n, t) in terms.iter().enumerate() {
                let c = match &t.coeff {
                    CoeffSpec::Text(s) => parse_constant(s, &params),
                    CoeffSpec::Parts { re, im } => parse_constant(re, &params).and_then(|r| {
                        let i = match im {
                            Some(s) => parse_constant(s, &params)?,
                            None => Gq::from_i64(0),
                        };
                        Ok(r + i * gq_complex(rat(0, 1), rat(1, 1)))
                    }),
                }
                .map_err(|e| InputError::new(format!("term {n}: {e}")))?;
                p.add_term((t.i, t.j), c);
            }
            return Ok(p);
        }
        let family = self.family.as_deref().unwrap_or_default();
        let get = |names: &[&str]| -> Res<Gq> {
            names
                .iter()
                .find_map(|n| params.get(*n).cloned())
                .ok_or_else(|| InputError::new(format!("family {family} needs parameter {}", names.join(" or "))))
        };
        let curve = match family {
            "legendre" => legendre(get(&["k"])?),
            "weierstrass" => weierstrass(get(&["a", "g2"])?, get(&["b", "g3"])?),
            "cubic" => cubic(get(&["t"])?),
            other => return Err(InputError::new(format!("unknown family {other:?}"))),
        };
        Ok(curve.map_err(|e| InputError::new(e.to_string()))?.poly().clone())
    }

    pub fn curve(&self) -> Res<Curve> {
        Curve::new(self.polynomial()?).map_err(|e| InputError::new(e.to_string()))
    }
}

impl FormSpec {
    pub fn load(path: &Path) -> Res<Self> {
        read_json(path)
    }

    /// The form, with the curve parameters visible to its expressions.
    pub fn form(&self, curve_params: &Params) -> Res<RationalForm> {
        let params = eval_params(&self.params, curve_params)?;
        let num = parse_poly(&self.num, &params).map_err(|e| InputError::new(format!("num: {e}")))?;
        let den = parse_poly(&self.den, &params).map_err(|e| InputError::new(format!("den: {e}")))?;
        RationalForm::new(num, den).map_err(|e| InputError::new(e.to_string()))
    }
}

fn c64(v: [f64; 2]) -> C64 {
    C64::new(v[0], v[1])
}

fn path_spec(p: &PathFile, label: String) -> Res<PathSpec> {
    if p.waypoints.len() < 2 {
        return Err(InputError::new(format!("path {label} needs at least two waypoints")));
    }
    let start = match (p.start_y, p.sheet) {
        (Some(y), _) => Start::Y(c64(y)),
        (None, Some(k)) => Start::Sheet(k),
        (None, None) => Start::Sheet(0),
    };
    Ok(PathSpec::new(p.waypoints.iter().map(|&w| c64(w)).collect(), start, p.closed, label))
}

/// Resolves `--cycles`: `auto` uses the default hyperelliptic marking.
pub fn load_cycles(arg: &str, surface: &Surface) -> std::result::Result<CycleSet, crate::Failure> {
    if arg == "auto" || arg == "auto-hyperelliptic" {
        return default_cycles(surface).map_err(crate::Failure::from);
    }
    let f: CycleFile = read_json(Path::new(arg))?;
    let conv = |v: &[PathFile], name: &str| -> Res<Vec<PathSpec>> {
        v.iter()
            .enumerate()
            .map(|(i, p)| path_spec(p, p.label.clone().unwrap_or_else(|| format!("{name}{}", i + 1))))
            .collect()
    };
    Ok(CycleSet {
        a: conv(&f.a, "A")?,
        b: conv(&f.b, "B")?,
    })
}

/// A parsed `--gamma` expression.
#[derive(Debug, Clone, PartialEq)]
pub enum GammaSpec {
    /// An integer combination such as `A1 - 2*B1 + C0` (`A`/`B` numbered
    /// from 1, `C<p>` a small loop around pole `p` of the decomposition).
    Cycles { a: Vec<(usize, i64)>, b: Vec<(usize, i64)>, c: Vec<(usize, i64)> },
    /// `arc:x0,x1,...[@sheet]`: a polyline arc starting on the given sheet.
    Arc { waypoints: Vec<C64>, sheet: usize },
}

impl GammaSpec {
    pub fn parse(src: &str) -> Res<Self> {
        let src = src.trim();
        if let Some(rest) = src.strip_prefix("arc:") {
            let (pts, sheet) = match rest.rsplit_once('@') {
                Some((p, s)) => (
                    p,
                    s.trim()
                        .parse()
                        .map_err(|_| InputError::new(format!("gamma: bad sheet index {s:?}")))?,
                ),
                None => (rest, 0),
            };
            let mut waypoints = Vec::new();
            for part in pts.split(',') {
                let v = parse_constant(part, &Params::new())
                    .map_err(|e| InputError::new(format!("gamma: waypoint {part:?}: {e}")))?;
                waypoints.push(v.to_c64());
            }
            if waypoints.len() < 2 {
                return Err(InputError::new("gamma: an arc needs at least two waypoints"));
            }
            return Ok(GammaSpec::Arc { waypoints, sheet });
        }
        let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
        let bytes = src.as_bytes();
        let mut pos = 0;
        let bad = |pos: usize, what: &str| InputError::new(format!("gamma: {what} at position {pos}"));
        let skip = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let digits = |pos: &mut usize| -> Option<i64> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            src[start..*pos].parse().ok()
        };
        let mut first = true;
        loop {
            skip(&mut pos);
            if pos == bytes.len() {
                if first {
                    return Err(bad(pos, "empty expression"));
                }
                break;
            }
            let mut sign = 1;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                sign = if bytes[pos] == b'-' { -1 } else { 1 };
                pos += 1;
                skip(&mut pos);
            } else if !first {
                return Err(bad(pos, "expected '+' or '-'"));
            }
            first = false;
            let mut mult = 1;
            if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                mult = digits(&mut pos).ok_or_else(|| bad(pos, "bad multiplicity"))?;
                skip(&mut pos);
                if pos >= bytes.len() || bytes[pos] != b'*' {
                    return Err(bad(pos, "expected '*'"));
                }
                pos += 1;
                skip(&mut pos);
            }
            let kind = *bytes.get(pos).ok_or_else(|| bad(pos, "expected A, B or C"))?;
            pos += 1;
            let idx_at = pos;
            let idx = digits(&mut pos).ok_or_else(|| bad(idx_at, "expected an index"))? as usize;
            let n = sign * mult;
            match kind {
                b'A' | b'B' if idx == 0 => return Err(bad(idx_at, "cycles are numbered from 1")),
                b'A' => a.push((idx - 1, n)),
                b'B' => b.push((idx - 1, n)),
                b'C' => c.push((idx, n)),
                _ => return Err(bad(idx_at - 1, "expected A, B or C")),
            }
        }
        Ok(GammaSpec::Cycles { a, b, c })
    }

    /// The cycle combination for genus `g`.
    pub fn to_gamma(&self, g: usize) -> Res<Gamma> {
        let GammaSpec::Cycles { a, b, c } = self else {
            return Err(InputError::new("gamma is an arc, not a cycle combination"));
        };
        let mut out = Gamma {
            a: vec![0; g],
            b: vec![0; g],
            c: c.clone(),
        };
        for (list, dst) in [(a, &mut out.a), (b, &mut out.b)] {
            for &(i, n) in list {
                if i >= g {
                    return Err(InputError::new(format!("gamma: cycle index {} exceeds the genus {g}", i + 1)));
                }
                dst[i] += n;
            }
        }
        Ok(out)
    }
}

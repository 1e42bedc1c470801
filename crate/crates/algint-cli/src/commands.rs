//! The `analyze`, `periods`, `decompose` and `integrate` commands.
//!
//! Each command returns its JSON report together with the checks it ran;
//! with `--check`, a failed check turns into exit code 4 (the report is
//! still written).

use std::path::PathBuf;

use algint::algebra::{degenerate_points, discriminant, discriminant_scalar};
use algint::decompose::{decompose, DecomposeOptions, Decomposition};
use algint::numeric::quad::QuadOptions;
use algint::periods::{PeriodData, PeriodOptions};
use algint::polygon::{branch_analysis, moduli_space, punctures, PlaceKind};
use algint::surface::{intersection_matrix, PathSpec, Start, Surface, SurfacePoint};
use algint::{Error, C64};
use serde_json::{json, Value};

use crate::expr::Params;
use crate::input::{load_cycles, CurveSpec, FormSpec, GammaSpec};
use crate::report::{c, cmat, cvec, exact, point, terms, upoly, Check, SCHEMA};
use crate::{Failure, InputError};

type Res<T> = std::result::Result<T, Failure>;

/// Options shared by all commands.
#[derive(Clone, Debug)]
pub struct Job {
    pub curve: PathBuf,
    pub cycles: String,
    pub form: Option<PathBuf>,
    pub gamma: Option<String>,
    /// Requested number of correct digits of the quadratures.
    pub precision: u32,
    pub seed: u64,
}

/// A finished report with its checks.
pub struct Outcome {
    pub report: Value,
    pub checks: Vec<Check>,
}

impl Outcome {
    fn new(mut report: Value, checks: Vec<Check>) -> Self {
        report["schema"] = json!(SCHEMA);
        report["checks"] = Value::Array(checks.iter().map(Check::json).collect());
        Outcome { report, checks }
    }

    /// The first failed check, if any.
    pub fn failure(&self) -> Option<Failure> {
        self.checks.iter().find(|c| !c.pass()).map(|c| {
            Failure::Check(format!("{}: {:.3e} exceeds {:.1e}", c.name, c.value, c.tol))
        })
    }
}

/// Relative agreement required between a block-assembled value and direct
/// quadrature.
pub const CROSS_CHECK_TOL: f64 = 1e-6;

impl Job {
    fn curve_spec(&self) -> Res<CurveSpec> {
        Ok(CurveSpec::load(&self.curve)?)
    }

    fn surface(&self) -> Res<(Surface, Params)> {
        let spec = self.curve_spec()?;
        let curve = spec.curve()?;
        Ok((Surface::new(curve)?, spec.params()?))
    }

    fn quad(&self) -> Res<QuadOptions> {
        if !(4..=14).contains(&self.precision) {
            return Err(InputError::new("--precision must be between 4 and 14 digits").into());
        }
        let tol = 10f64.powi(-(self.precision as i32));
        Ok(QuadOptions {
            abs_tol: tol,
            rel_tol: tol,
            ..QuadOptions::default()
        })
    }

    fn period_data(&self, surface: &Surface) -> Res<PeriodData> {
        let cycles = load_cycles(&self.cycles, surface)?;
        let opts = PeriodOptions {
            quad: self.quad()?,
            seed: self.seed,
            collocation_points: 0,
        };
        Ok(PeriodData::compute(surface, &cycles, opts)?)
    }

    fn decomposition(&self) -> Res<(PeriodData, Decomposition)> {
        let (surface, params) = self.surface()?;
        let form_path = self
            .form
            .as_ref()
            .ok_or_else(|| InputError::new("this command needs --form"))?;
        let form = FormSpec::load(form_path)?.form(&params)?;
        let pd = self.period_data(&surface)?;
        let opts = DecomposeOptions {
            seed: self.seed,
            ..DecomposeOptions::default()
        };
        let dec = decompose(&pd, &form, &opts)?;
        Ok((pd, dec))
    }
}

fn pts(v: &[(i64, i64)]) -> Value {
    Value::Array(v.iter().map(|&(i, j)| json!([i, j])).collect())
}

fn kind_name(k: PlaceKind) -> &'static str {
    match k {
        PlaceKind::Regular => "regular",
        PlaceKind::Ramified => "ramified",
        PlaceKind::Singular => "singular",
        PlaceKind::Puncture => "puncture",
    }
}

/// Curve data that needs no periods: discriminant, polygon, punctures,
/// degenerate points and the genus.
pub fn analyze(job: &Job) -> Res<Outcome> {
    let spec = job.curve_spec()?;
    let curve = spec.curve()?;
    let p = curve.poly().clone();
    let surface = Surface::new(curve.clone())?;
    let delta = discriminant(&p);
    let scalar = discriminant_scalar(&p);
    let nd = &surface.newton;
    let mut branch_points = Vec::new();
    let mut singular = Vec::new();
    for d in degenerate_points(&curve)? {
        let ba = branch_analysis(&curve, d.x, d.y)?;
        let entry = json!({
            "x": c(d.x),
            "y": c(d.y),
            "delta_multiplicity": d.delta_multiplicity,
            "branches": ba.ell,
            "sheets": ba.degree,
            "genus_drop": ba.genus_drop,
        });
        if ba.is_simple_branch() {
            branch_points.push(entry);
        } else {
            singular.push(entry);
        }
    }
    let punct: Vec<Value> = punctures(&curve)?
        .iter()
        .map(|pl| {
            json!({
                "exponents": [pl.a, pl.b],
                "eta": c(pl.eta),
                "description": pl.describe(),
            })
        })
        .collect();
    let moduli = moduli_space(&surface)?;
    let basis: Vec<Value> = (0..moduli.basis.ncols())
        .map(|k| cvec(&moduli.basis.column(k).iter().copied().collect::<Vec<_>>()))
        .collect();
    let report = json!({
        "command": "analyze",
        "curve": {
            "polynomial": p.pretty(),
            "terms": terms(&p),
            "sheets": curve.sheets(),
        },
        "discriminant": {
            "polynomial": upoly(&delta),
            "degree": delta.degree(),
            "leading": delta.degree().map(|_| exact(&delta.lead())),
            "scalar": scalar.as_ref().map(exact),
            "roots": surface.critical.iter().map(|&(x, m)| json!({"x": c(x), "multiplicity": m})).collect::<Vec<_>>(),
        },
        // A constant Delta(x) has no finite branch points and counts as generic.
        "generic": scalar.as_ref().map_or(true, |d| !num::Zero::is_zero(d)),
        "branch_points": branch_points,
        "singular_points": singular,
        "polygon": {
            "vertices": pts(&nd.hull.vertices),
            "interior": pts(&nd.interior),
            "boundary": pts(&nd.third),
            "exterior": pts(&nd.second),
            "sides": nd.sides.iter().map(|s| json!({"from": [s.from.0, s.from.1], "to": [s.to.0, s.to.1], "normal": [s.normal.0, s.normal.1]})).collect::<Vec<_>>(),
        },
        "punctures": punct,
        "generic_genus": nd.generic_genus(),
        "genus": moduli.genus,
        "holomorphic_basis": {"monomials": pts(&moduli.monomials), "columns": basis},
    });
    Ok(Outcome::new(report, vec![]))
}

/// Period matrices, `tau`, `S`, sample `zeta` values and quality diagnostics.
pub fn periods(job: &Job) -> Res<Outcome> {
    let (surface, _) = job.surface()?;
    let pd = job.period_data(&surface)?;
    let g = pd.genus();
    let mut checks = Vec::new();
    let mut report = json!({
        "command": "periods",
        "genus": g,
        "monomials": pts(&pd.monomials),
        "a_periods": cmat(&pd.k),
        "b_periods": cmat(&pd.b_periods),
        "khat": cmat(&pd.khat),
        "tau": cmat(&pd.tau),
        "s": pd.s.as_ref().map(cmat),
        "origin": point(pd.origin),
        "cycles": {
            "a": pd.cycles.a.iter().map(path_json).collect::<Vec<_>>(),
            "b": pd.cycles.b.iter().map(path_json).collect::<Vec<_>>(),
        },
    });
    if g > 0 {
        let d = &pd.diagnostics;
        let a_res = pd.a_normalization_residual()?;
        let inter = intersection_matrix(&surface, &pd.cycles)?;
        report["intersection"] = json!(inter);
        report["diagnostics"] = json!({
            "normalization": d.normalization,
            "tau_asymmetry": d.tau_asymmetry,
            "tau_min_imag_eigenvalue": d.tau_min_imag_eigenvalue,
            "s_asymmetry": d.s_asymmetry,
            "s_fit_residual": d.s_fit_residual,
            "a_normalization_residual": a_res,
        });
        let canonical = (0..g).all(|i| (0..g).all(|j| inter[i][j] == i64::from(i == j)));
        checks.push(Check::new("canonical intersection", if canonical { 0.0 } else { 1.0 }, 0.0));
        checks.push(Check::new("A normalization", a_res, 1e-8));
        checks.push(Check::new("tau symmetry", d.tau_asymmetry, 1e-8));
        if pd.s.is_some() {
            checks.push(Check::new("S symmetry", d.s_asymmetry, 1e-6));
            let samples = pd.sample_points(3, job.seed.wrapping_add(1))?;
            let z: Vec<Value> = samples
                .iter()
                .map(|&p| Ok(json!({"point": point(p), "zeta": cvec(&pd.zeta(p)?)})))
                .collect::<std::result::Result<_, Error>>()?;
            report["zeta_samples"] = Value::Array(z);
        }
    }
    Ok(Outcome::new(report, checks))
}

/// A path in the cycle-file format, so a report's `cycles` can be fed back
/// through `--cycles`.
fn path_json(p: &PathSpec) -> Value {
    let mut v = json!({"label": p.label, "waypoints": cvec(&p.waypoints), "closed": p.closed});
    match p.start {
        Start::Sheet(k) => v["sheet"] = json!(k),
        Start::Y(y) => v["start_y"] = c(y),
    }
    v
}

fn decomposition_json(pd: &PeriodData, dec: &Decomposition) -> Value {
    let poles: Vec<Value> = dec
        .times
        .poles
        .iter()
        .enumerate()
        .map(|(n, p)| {
            json!({
                "index": n,
                "kind": kind_name(p.kind()),
                "place": p.describe(),
                "point": p.point().map(point),
                "times": cvec(&p.times),
                "circle_times": cvec(&p.circle_times),
            })
        })
        .collect();
    let blocks: Vec<Value> = dec
        .blocks
        .iter()
        .enumerate()
        .map(|(n, b)| {
            json!({
                "pole": b.pole,
                "k": b.k,
                "time": c(b.time),
                "symbolic": format!("B_comb[{},{}] + sum_m h[m] (S Omega)_m", b.pole, b.k),
                "h": cvec(&b.holo),
                "b_period_residues": cvec(&dec.block_residue_omega(pd, n)),
            })
        })
        .collect();
    let third: Vec<Value> = dec
        .third
        .iter()
        .map(|t| json!({"pole": t.pole, "time": c(t.time), "zeta_difference": cvec(&t.ds.dzeta)}))
        .collect();
    json!({
        "poles": poles,
        "residue_discrepancy": dec.times.discrepancy,
        "blocks": blocks,
        "third_kind": third,
        "remainder": cvec(&dec.remainder),
        "holomorphic_coefficients": cvec(&dec.holo_coeffs),
        "fit_residual": dec.fit_residual,
    })
}

/// Largest relative reconstruction error of the decomposition at sample
/// points.
fn reconstruction_error(pd: &PeriodData, dec: &Decomposition, seed: u64) -> Res<f64> {
    let mut worst: f64 = 0.0;
    let omega_span = |q: SurfacePoint| -> C64 {
        let v = pd.monomial_values(q.x, q.y);
        v.iter().zip(&dec.remainder).map(|(a, b)| a * b).sum::<C64>() / pd.surface.curve.py(q.x, q.y)
    };
    for q in pd.sample_points(12, seed)? {
        let r = dec.form.eval(q.x, q.y);
        let rebuilt = dec.singular_part(pd, q)? + omega_span(q);
        worst = worst.max((r - rebuilt).norm() / (1.0 + r.norm()));
    }
    Ok(worst)
}

/// Times, blocks and remainder of a form.
pub fn decompose_cmd(job: &Job) -> Res<Outcome> {
    let (pd, dec) = job.decomposition()?;
    let mut report = decomposition_json(&pd, &dec);
    report["command"] = json!("decompose");
    report["genus"] = json!(pd.genus());
    let checks = vec![
        Check::new("residue discrepancy", dec.times.discrepancy, 1e-6),
        Check::new("remainder fit", dec.fit_residual, 1e-8),
        Check::new("reconstruction", reconstruction_error(&pd, &dec, job.seed.wrapping_add(2))?, 1e-7),
    ];
    Ok(Outcome::new(report, checks))
}

/// `|a - b| / max(|a|, |b|, 1)`: relative for values of size one or more,
/// absolute below.
fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

/// Complete or incomplete integral of a form, with a direct quadrature
/// cross-check.
pub fn integrate(job: &Job) -> Res<Outcome> {
    let gamma_src = job
        .gamma
        .as_ref()
        .ok_or_else(|| InputError::new("integrate needs --gamma"))?;
    let gspec = GammaSpec::parse(gamma_src)?;
    let (pd, dec) = job.decomposition()?;
    let g = pd.genus();
    let mut report = json!({"command": "integrate", "gamma": gamma_src, "genus": g});
    let (value, direct) = match &gspec {
        GammaSpec::Arc { waypoints, sheet } => {
            let arc = PathSpec::new(waypoints.clone(), Start::Sheet(*sheet), false, "gamma");
            let inc = dec.integrate_incomplete(&pd, &arc)?;
            report["start"] = point(inc.start);
            report["end"] = point(inc.end);
            report["parts"] = json!({
                "holomorphic": c(inc.holomorphic),
                "second_kind": c(inc.second_kind),
                "third_kind": c(inc.third_kind),
            });
            (inc.value, inc.direct)
        }
        GammaSpec::Cycles { .. } => {
            let gamma = gspec.to_gamma(g)?;
            for &(p, _) in &gamma.c {
                if p >= dec.times.poles.len() {
                    return Err(InputError::new(format!("gamma: no pole with index {p}")).into());
                }
            }
            let value = dec.integrate_complete(&pd, &gamma)?;
            let form = &dec.form;
            let (a, b) = pd.cycle_integrals(1, &|x, y, out: &mut [C64]| {
                out[0] = form.eval(x, y);
                Ok(())
            })?;
            let mut direct = C64::new(0.0, 0.0);
            for i in 0..g {
                direct += gamma.a[i] as f64 * a[(0, i)] + gamma.b[i] as f64 * b[(0, i)];
            }
            for &(p, n) in &gamma.c {
                direct += n as f64 * algint::numeric::TWO_PI_I * dec.times.poles[p].circle_times[0];
            }
            (value, direct)
        }
    };
    let diff = rel(value, direct);
    report["value"] = c(value);
    report["direct"] = c(direct);
    report["relative_difference"] = json!(diff);
    let checks = vec![Check::new("block value vs quadrature", diff, CROSS_CHECK_TOL)];
    Ok(Outcome::new(report, checks))
}

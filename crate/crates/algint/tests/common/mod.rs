//! Independent classical oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use algint::numeric::quad::QuadOptions;
use algint::surface::{intersection_number, stadium, winding_number, CycleSet, PathSpec, Start, Surface, TrackedPath};
use algint::C64;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Complete elliptic integrals `K(k)` and `E(k)` by the arithmetic-geometric
/// mean.
pub fn ellke(k: f64) -> (f64, f64) {
    let (mut a, mut b) = (1.0f64, (1.0 - k * k).sqrt());
    let mut sum = 0.5 * k * k;
    let mut pow = 0.5;
    for _ in 0..64 {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
        let cn = 0.5 * (a - b);
        let t = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = t;
        pow *= 2.0;
        sum += pow * cn * cn;
    }
    let kk = PI / (2.0 * a);
    (kk, kk * (1.0 - sum))
}

/// `K(k)`.
pub fn ellk(k: f64) -> f64 {
    ellke(k).0
}

/// `E(k)`.
pub fn elle(k: f64) -> f64 {
    ellke(k).1
}

/// Complementary `K'(k) = K(sqrt(1 - k^2))`.
pub fn ellk_prime(k: f64) -> f64 {
    ellk((1.0 - k * k).sqrt())
}

/// Relative difference.
pub fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// A marked homology basis of a genus one surface assembled from stadium
/// loops around pairs of branch points: the first closed loop with a
/// nonzero period becomes `A`, the first loop meeting it once becomes `B`,
/// oriented so that `Im(∮_B / ∮_A) > 0`.
pub fn genus_one_cycles(s: &Surface) -> CycleSet {
    let crit = s.critical_x();
    let r = s.min_critical_separation() / 3.0;
    let period = |t: &TrackedPath| -> C64 {
        let f = |x: C64, y: C64, out: &mut [C64]| -> algint::Result<()> {
            out[0] = 1.0 / s.curve.py(x, y);
            Ok(())
        };
        t.integrate(s, 1, &f, QuadOptions::default()).unwrap()[0]
    };
    let mut candidates: Vec<(PathSpec, TrackedPath, C64)> = Vec::new();
    for i in 0..crit.len() {
        for j in i + 1..crit.len() {
            let w = stadium(crit[i], crit[j], r, 24);
            let encloses_other = crit
                .iter()
                .enumerate()
                .any(|(m, z)| m != i && m != j && winding_number(&w, *z) != 0);
            if encloses_other {
                continue;
            }
            for sheet in 0..s.sheets() {
                let spec = PathSpec::new(w.clone(), Start::Sheet(sheet), true, format!("L{i}{j}s{sheet}"));
                if let Ok(t) = spec.track(s) {
                    let p = period(&t);
                    if p.norm() > 1e-6 {
                        candidates.push((spec, t, p));
                    }
                }
            }
        }
    }
    let (a_spec, a_track, a_per) = candidates.first().cloned().expect("no closed loop with a nonzero period");
    for (spec, t, p) in &candidates[1..] {
        let n = intersection_number(s, &a_track, t).unwrap();
        if n.abs() == 1 && (p / a_per).im.abs() > 1e-6 {
            let b = if (p / a_per).im > 0.0 { spec.clone() } else { spec.reversed() };
            let a = PathSpec { label: "A1".into(), ..a_spec };
            let b = PathSpec { label: "B1".into(), ..b };
            return CycleSet { a: vec![a], b: vec![b] };
        }
    }
    panic!("no loop meets the first cycle exactly once");
}

//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the verdict lines always appear in
//! the output of `cargo test`. A criterion whose literal statement is not
//! attainable under the canonical marking prints FAIL together with the
//! measured value and the corrected statement that is actually enforced;
//! the process exits non-zero only when an enforced check fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use algint::algebra::{discriminant, discriminant_scalar, gq, Gq, Poly2, Poly4, UPoly};
use algint::curves::{cubic, hyperelliptic_from_roots, legendre, nodal_sextic, weierstrass};
use algint::decompose::{decompose, pi_u_k, DecomposeOptions, Gamma};
use algint::forms::{c_poly, q_comb, q_comb_pair, RationalForm};
use algint::numeric::linalg::{max_abs, CMat};
use algint::numeric::TWO_PI_I;
use algint::periods::{rauch_check, ColumnLabel, CycleChange, PeriodData, PeriodOptions};
use algint::polygon::{moduli_space, punctures, NewtonData};
use algint::surface::{default_cycles, CycleSet, LocalSeries, PathSpec, Start, Surface, SurfacePoint};
use algint::theta::classical::{eisenstein_g2, g2_of_tau};
use algint::theta::{
    bergman_from_theta, classical_series, dlog_prime_ratio, odd_characteristics, Characteristic, ThetaContext,
};
use algint::C64;
use common::{c, elle, ellk, ellk_prime, genus_one_cycles, rel};

/// Result of one criterion: details for the verdict line plus literal
/// statements that were measured and found unattainable.
#[derive(Default)]
struct Verdict {
    detail: String,
    literal_failures: Vec<String>,
}

type Outcome = Result<Verdict, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn periods_of(s: &Surface) -> PeriodData {
    let cycles = default_cycles(s).unwrap();
    PeriodData::compute(s, &cycles, PeriodOptions::default()).unwrap()
}

fn legendre_pd(num: i64, den: i64) -> PeriodData {
    periods_of(&Surface::new(legendre(gq(num, den)).unwrap()).unwrap())
}

fn upoly(c: &[Gq]) -> UPoly<Gq> {
    UPoly::new(c.to_vec())
}

fn p2(terms: &[((u32, u32), Gq)]) -> Poly2<Gq> {
    Poly2::from_terms(terms.iter().cloned())
}

fn p4(terms: &[([u32; 4], Gq)]) -> Poly4<Gq> {
    Poly4::from_terms(terms.iter().cloned())
}

fn sorted(mut v: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    v.sort();
    v
}

/// Legendre data shared by several criteria, for k = 1/2 and k = 3/4.
struct Shared {
    legendre: Vec<(i64, i64, PeriodData)>,
}

impl Shared {
    fn half(&self) -> &PeriodData {
        &self.legendre[0].2
    }
}

// ---------------------------------------------------------------------------

fn discriminants(_: &Shared) -> Outcome {
    let pairs = [(1, 1, 0, 1), (-2, 3, 5, 7), (3, 1, 2, 1), (7, 2, -1, 9), (0, 1, 1, 1)];
    for (an, ad, bn, bd) in pairs {
        let (a, b) = (gq(an, ad), gq(bn, bd));
        let p = weierstrass(a.clone(), b.clone()).unwrap();
        // -4 (x^3 - a x - b)
        let expect = upoly(&[gq(4, 1) * b.clone(), gq(4, 1) * a.clone(), gq(0, 1), gq(-4, 1)]);
        ensure!(discriminant(p.poly()) == expect, "Weierstrass Delta(x) at a={a}, b={b}");
        let a3 = a.clone() * a.clone() * a.clone();
        let scalar = gq(256, 1) * (gq(27, 1) * b.clone() * b.clone() - gq(4, 1) * a3);
        ensure!(discriminant_scalar(p.poly()) == Some(scalar), "Weierstrass Delta at a={a}, b={b}");
    }
    for (kn, kd) in [(1, 2), (3, 4), (1, 3), (5, 7)] {
        let k = gq(kn, kd);
        let k2 = k.clone() * k.clone();
        let one_minus = gq(1, 1) - k2.clone();
        let scalar = gq(65536, 1) * k2.clone() * one_minus.clone() * one_minus.clone() * one_minus.clone() * one_minus;
        let p = legendre(k.clone()).unwrap();
        ensure!(discriminant_scalar(p.poly()) == Some(scalar), "Legendre Delta at k={k}");
    }
    Ok(Verdict {
        detail: "5 Weierstrass (a, b) pairs and 4 Legendre moduli, exact".into(),
        ..Verdict::default()
    })
}

fn polygon_classes(_: &Shared) -> Outcome {
    let mut v = Verdict::default();
    let w = NewtonData::new(weierstrass(gq(2, 1), gq(1, 1)).unwrap().poly());
    ensure!(w.interior == vec![(0, 0)], "Weierstrass interior {:?}", w.interior);
    ensure!(w.third.is_empty(), "Weierstrass third kind {:?}", w.third);
    ensure!(
        sorted(w.second.clone()) == vec![(0, 1), (0, 2), (1, 0), (1, 1), (2, 0), (3, 0)],
        "Weierstrass second kind {:?}",
        w.second
    );

    let l = NewtonData::new(legendre(gq(1, 2)).unwrap().poly());
    ensure!(l.interior == vec![(0, 0)], "Legendre interior {:?}", l.interior);
    ensure!(l.third == vec![(1, 0)], "Legendre third kind {:?}", l.third);
    // Every lattice point of the closed polygon whose (1, 1)-shift leaves it.
    let full = vec![(0, 1), (0, 2), (1, 1), (2, 0), (2, 1), (3, 0), (4, 0)];
    ensure!(sorted(l.second.clone()) == full, "Legendre second kind {:?}", l.second);
    let listed = [(2, 0), (4, 0), (0, 2)];
    ensure!(listed.iter().all(|p| l.second.contains(p)), "listed Legendre points missing");
    v.literal_failures.push(format!(
        "Legendre N'' printed as {listed:?}; the definition (as in the Weierstrass list) gives {full:?}"
    ));

    for d in 2..=6i64 {
        let roots: Vec<Gq> = (1..=2 * d).map(|r| gq(r, 1)).collect();
        let s = Surface::new(hyperelliptic_from_roots(&roots).unwrap()).unwrap();
        let g = moduli_space(&s).unwrap().genus;
        ensure!(s.newton.generic_genus() == (d - 1) as usize, "d = {d}: #interior");
        ensure!(g == (d - 1) as usize, "d = {d}: genus {g}");
    }
    v.detail = "class triples from the definition; hyperelliptic genus d-1 for d = 2..6".into();
    Ok(v)
}

fn correction_polynomials(_: &Shared) -> Outcome {
    for (kn, kd) in [(1, 2), (1, 3), (3, 4)] {
        let k = gq(kn, kd);
        let k2 = k.clone() * k.clone();
        let q = q_comb(legendre(k).unwrap().poly());
        let expect = p4(&[([2, 0, 0, 0], -k2.clone()), ([0, 0, 2, 0], -k2.clone()), ([1, 0, 1, 0], gq(-2, 1) * k2)]);
        ensure!(q == expect, "Legendre Q at k = {kn}/{kd}");
    }
    // Polygon (0,0), (0,5), (2,4), (4,2), (5,0) with extra points (3,3), (1,3), (2,1).
    let pts = [(0, 0), (0, 5), (2, 4), (3, 3), (4, 2), (5, 0), (1, 3), (2, 1)];
    let p = Poly2::from_terms(pts.iter().enumerate().map(|(n, &(i, j))| ((i, j), gq(n as i64 + 2, 3))));
    let t1 = q_comb_pair(&p, (5, 0), (1, 3));
    let t1 = &t1 + &t1.swap_points();
    let w = p.coeff(1, 3) * p.coeff(5, 0);
    ensure!(t1 == p4(&[([3, 1, 1, 0], w.clone()), ([1, 0, 3, 1], w)]), "corners (5,0), (1,3)");
    let t2 = q_comb_pair(&p, (5, 0), (2, 4));
    let t2 = &t2 + &t2.swap_points();
    let w = p.coeff(2, 4) * p.coeff(5, 0);
    let w2 = gq(2, 1) * w.clone();
    let expect = p4(&[
        ([2, 0, 3, 2], w.clone()),
        ([3, 2, 2, 0], w),
        ([2, 1, 3, 1], w2.clone()),
        ([3, 1, 2, 1], w2.clone()),
        ([3, 0, 2, 2], w2.clone()),
        ([2, 2, 3, 0], w2),
    ]);
    ensure!(t2 == expect, "corners (5,0), (2,4)");
    Ok(Verdict {
        detail: "Legendre at 3 moduli and both polygon examples, exact".into(),
        ..Verdict::default()
    })
}

fn legendre_periods(sh: &Shared) -> Outcome {
    let mut v = Verdict::default();
    let mut worst = (0.0f64, 0.0f64);
    for (num, den, pd) in &sh.legendre {
        let k = *num as f64 / *den as f64;
        let (kk, kp) = (ellk(k), ellk_prime(k));
        let r = rel(pd.k[(0, 0)], c(2.0 * kk, 0.0));
        ensure!(r < 1e-9, "k = {k}: relative error of K = {r:e}");
        let tau = pd.tau[(0, 0)];
        let d = (tau - c(0.0, kp / (2.0 * kk))).norm();
        ensure!(d < 1e-8, "k = {k}: |tau - iK'/(2K)| = {d:e}");
        worst = (worst.0.max(r), worst.1.max(d));
        let literal = (tau - c(0.0, kp / kk)).norm();
        v.literal_failures.push(format!(
            "k = {k}: |tau - iK'/K| = {literal:.6}; with A . B = 1 the periods of dx/2y are 2K and iK', so tau = iK'/(2K)"
        ));
    }
    v.detail = format!("|K-2K|/2K <= {:.1e}, |tau - iK'/(2K)| <= {:.1e}", worst.0, worst.1);
    Ok(v)
}

fn s_identity(sh: &Shared) -> Outcome {
    let mut worst = 0.0f64;
    for (num, den, pd) in &sh.legendre {
        let k = *num as f64 / *den as f64;
        let s = pd.s_matrix().unwrap()[(0, 0)];
        let (kk, ee) = (ellk(k), elle(k));
        let d1 = (s - c(k * k - 1.0 + 2.0 * ee / kk, 0.0)).norm();
        ensure!(d1 < 1e-7, "k = {k}: |S - (k^2 - 1 + 2E/K)| = {d1:e}");
        let cs = classical_series(k).unwrap();
        let g2 = eisenstein_g2(c(cs.q, 0.0)).unwrap();
        let kcal = pd.k[(0, 0)];
        let d2 = (s - (g2 / (kcal * kcal) + 2.0 * (1.0 + k * k) / 3.0)).norm();
        ensure!(d2 < 1e-7, "k = {k}: |S - (G2/K^2 + 2(1+k^2)/3)| = {d2:e}");
        worst = worst.max(d1).max(d2);
    }
    Ok(Verdict {
        detail: format!("max deviation {worst:.1e}"),
        ..Verdict::default()
    })
}

fn variational_formula(sh: &Shared) -> Outcome {
    let mut worst = 0.0f64;
    for (num, den, pd) in &sh.legendre {
        let k = *num as f64 / *den as f64;
        // dP = x^2 (1 - x^2) is the derivative of P with respect to k^2.
        let dp = p2(&[((2, 0), gq(1, 1)), ((4, 0), gq(-1, 1))]);
        let rep = rauch_check(pd, &dp, Some(1e-5)).unwrap();
        let (kk, ee) = (ellk(k), elle(k));
        let expect = ee / (k * (1.0 - k * k)) - kk / k;
        let from_residues = (kk * 2.0 * k * rep.residue[(0, 0)]).re;
        let fd = rep.finite_difference.as_ref().unwrap();
        let from_differences = (kk * 2.0 * k * fd[(0, 0)]).re;
        let (d1, d2) = ((from_residues - expect).abs(), (from_differences - expect).abs());
        ensure!(d1 < 1e-6, "k = {k}: residue formula off by {d1:e}");
        ensure!(d2 < 1e-6, "k = {k}: central differences off by {d2:e}");
        worst = worst.max(d1).max(d2);
    }
    Ok(Verdict {
        detail: format!("dK/dk within {worst:.1e} by residues and by central differences"),
        ..Verdict::default()
    })
}

fn y_dx() -> RationalForm {
    RationalForm::polynomial(p2(&[((0, 1), gq(1, 1))]))
}

fn second_kind_form(k: &Gq) -> RationalForm {
    RationalForm::new(p2(&[((0, 0), gq(1, 1)), ((2, 0), -(k * k))]), p2(&[((0, 1), gq(1, 1))])).unwrap()
}

fn third_kind_form(x0: &Gq) -> RationalForm {
    RationalForm::new(p2(&[((0, 0), gq(1, 1))]), p2(&[((1, 1), gq(2, 1)), ((0, 1), -(x0 * gq(2, 1)))])).unwrap()
}

fn reconstruction(sh: &Shared) -> Outcome {
    let opts = DecomposeOptions::default();
    let mut worst = 0.0f64;
    for (num, den, pd) in &sh.legendre {
        let k = *num as f64 / *den as f64;
        let kq = gq(*num, *den);
        let pts = pd.sample_points(50, 11).unwrap();
        for form in [y_dx(), second_kind_form(&kq), third_kind_form(&gq(1, 5))] {
            let dec = decompose(pd, &form, &opts).unwrap();
            let r = dec.reconstruction_residual(pd, &pts).unwrap();
            ensure!(r < 1e-7, "k = {k}: reconstruction residual {r:e}");
            worst = worst.max(r);
        }
        let s = pd.s_matrix().unwrap()[(0, 0)];
        let kk = pd.k[(0, 0)];
        let dec = decompose(pd, &y_dx(), &opts).unwrap();
        let got = dec.integrate_complete(pd, &Gamma::a_cycle(0, 1)).unwrap();
        let expect = kk / (3.0 * k * k) * ((1.0 + k * k) * s - (1.0 - k * k).powi(2));
        let (direct, _) = pd
            .cycle_integrals(1, &|_x, y, out: &mut [C64]| {
                out[0] = y;
                Ok(())
            })
            .unwrap();
        ensure!(rel(got, expect) < 1e-8, "k = {k}: A-period of y dx vs closed form");
        ensure!(rel(got, direct[(0, 0)]) < 1e-8, "k = {k}: A-period of y dx vs quadrature");
        let dec = decompose(pd, &second_kind_form(&kq), &opts).unwrap();
        let got = dec.integrate_complete(pd, &Gamma::a_cycle(0, 1)).unwrap();
        ensure!(rel(got, c(4.0 * elle(k), 0.0)) < 1e-8, "k = {k}: 4E");
    }
    Ok(Verdict {
        detail: format!("max residual {worst:.1e} over 50 points; periods within 1e-8"),
        ..Verdict::default()
    })
}

fn third_kind(_: &Shared) -> Outcome {
    let mut worst = 0.0f64;
    for (u, k) in [((1, 4), (1, 2)), ((1, 2), (3, 4))] {
        let r = pi_u_k(&gq(u.0, u.1), &gq(k.0, k.1)).unwrap();
        let e = rel(r.zeta_formula, c(r.quadrature, 0.0));
        ensure!(e < 1e-6, "(u, k) = ({}/{}, {}/{}): relative error {e:e}", u.0, u.1, k.0, k.1);
        worst = worst.max(e);
    }
    for (kn, kd) in [(1, 2), (2, 3), (3, 4)] {
        let k = gq(kn, kd);
        let k2 = k.clone() * k.clone();
        let cp = c_poly(&legendre(k).unwrap()).unwrap();
        let expect = p2(&[((0, 0), -(gq(1, 1) + k2.clone())), ((2, 0), gq(2, 1) * k2)]);
        ensure!(cp.get((0, 0)) == Some(&expect), "Legendre C at k = {kn}/{kd}");
    }
    for t in [gq(1, 1), gq(5, 2), gq(-1, 3)] {
        let cp = c_poly(&cubic(t).unwrap()).unwrap();
        ensure!(cp.get((0, 0)) == Some(&p2(&[((1, 1), gq(-3, 1))])), "cubic C");
    }
    Ok(Verdict {
        detail: format!("Pi(u, k) within {worst:.1e}; C polynomials exact"),
        ..Verdict::default()
    })
}

fn degenerate_case(_: &Shared) -> Outcome {
    let (a, b, cc): (f64, f64, f64) = (1.0, 2.0, 3.0);
    let curve = nodal_sextic(gq(1, 1), gq(2, 1), gq(3, 1)).unwrap();
    // y^2 = (x - c)^2 q(x): the residue of dx/2y at the node is 1/(2 sqrt(q(c))).
    let p0 = curve.poly().y_coeffs()[0].clone();
    let node_sq = upoly(&[gq(9, 1), gq(-6, 1), gq(1, 1)]);
    let q = p0.div_exact(&node_sq).unwrap().scale(&gq(-1, 1));
    ensure!(q.eval(&gq(3, 1)) == gq(40, 1), "q(c) = {}", q.eval(&gq(3, 1)));
    let expect = 1.0 / (2.0 * ((cc * cc - a * a) * (cc * cc - b * b)).sqrt());

    let s = Surface::new(curve).unwrap();
    let pd = periods_of(&s);
    ensure!(pd.genus() == 1, "genus {}", pd.genus());
    let ext = pd.extended.as_ref().ok_or("no extended period matrix")?;
    let mut seen = 0;
    for (col, label) in ext.columns.iter().enumerate() {
        if let ColumnLabel::Residue { .. } = label {
            let r = ext.matrix[(0, col)] / TWO_PI_I;
            ensure!((r.norm() - expect).abs() < 1e-10, "residue {r} vs {expect}");
            seen += 1;
        }
    }
    ensure!(seen == 2, "{seen} residue columns");
    let kh = &pd.khat;
    ensure!((kh[(0, 0)] / kh[(0, 1)] + cc).norm() < 1e-9, "omega_1 is not proportional to (x - c) dx/2y");
    let a1 = kh[(0, 0)] * pd.k[(0, 0)] + kh[(0, 1)] * pd.k[(1, 0)];
    ensure!((a1 - 1.0).norm() < 1e-8, "A-period of omega_1 = {a1}");
    let row2: Vec<C64> = (0..2).map(|m| ext.inverse[(1, m)]).collect();
    let res = ext.residue_of(ext.selected[1], &row2);
    ensure!((res - 1.0 / TWO_PI_I).norm() < 1e-7, "residue of omega_2 = {res}");
    let a2: C64 = (0..2).map(|m| row2[m] * pd.k[(m, 0)]).sum();
    ensure!(a2.norm() < 1e-7, "A-period of omega_2 = {a2}");
    Ok(Verdict {
        detail: "node residue exact, omega_1 and omega_2 normalised".into(),
        ..Verdict::default()
    })
}

fn point_near(s: &Surface, x: C64, near: C64) -> C64 {
    let f = s.fiber(x).unwrap();
    f.into_iter().min_by(|a, b| (a - near).norm().total_cmp(&(b - near).norm())).unwrap()
}

fn bergman_properties(sh: &Shared) -> Outcome {
    let weier = periods_of(&Surface::new(weierstrass(gq(1, 1), gq(1, 3)).unwrap()).unwrap());
    let cub = {
        let s = Surface::new(cubic(gq(1, 1)).unwrap()).unwrap();
        let cycles = genus_one_cycles(&s);
        PeriodData::compute(&s, &cycles, PeriodOptions::default()).unwrap()
    };
    let mut worst = [0.0f64; 3];
    for (name, pd) in [("Legendre", sh.half()), ("Weierstrass", &weier), ("cubic", &cub)] {
        let s = &pd.surface;
        let b = algint::forms::BergmanComb::new(&s.curve);

        // Normalised double pole: (x1 - x2)^2 B -> 1, extrapolated in h^2.
        let x = c(0.37, 0.21);
        let y = s.fiber(x).unwrap()[0];
        let p = SurfacePoint::new(x, y);
        let g = |h: f64| {
            let x2 = x + h;
            let q = SurfacePoint::new(x2, point_near(s, x2, y));
            pd.bergman(p, q).unwrap() * h * h
        };
        let dp = ((4.0 * g(5e-4) - g(1e-3)) / 3.0 - 1.0).norm();
        ensure!(dp < 1e-8, "{name}: double pole normalisation off by {dp:e}");

        // No pole where x1 = x2 on different sheets: the numerator vanishes
        // there and B stays bounded as the points approach.
        let fib = s.fiber(x).unwrap();
        let mut anti = 0.0f64;
        for (ia, &ya) in fib.iter().enumerate() {
            for (ib, &yb) in fib.iter().enumerate() {
                if ia == ib {
                    continue;
                }
                // Numerator over the common denominator (x1 - x2)^2 P_y P_y':
                // it vanishes to second order, cancelling the double pole.
                let num = |h: f64| {
                    let x2 = x + h;
                    b.numerator(x, ya, x2, point_near(s, x2, yb)) * h * h
                };
                let (m3, m4) = (num(1e-3), num(1e-4));
                let (q3, q4) = (m3 / 1e-6, m4 / 1e-8);
                ensure!(m4.norm() < 1e-6, "{name}: numerator {m4} near the opposite point");
                ensure!((q3 - q4).norm() < 1e-2 * (1.0 + q4.norm()), "{name}: numerator is not O(h^2)");
                let near = |h: f64| {
                    let x2 = x + h;
                    b.eval(x, ya, x2, point_near(s, x2, yb))
                };
                let (b3, b5) = (near(1e-3), near(1e-5));
                let drift = (b3 - b5).norm() / (1.0 + b5.norm());
                ensure!(drift < 1e-2, "{name}: B grows near the opposite point ({b3} vs {b5})");
                let n0 = m4.norm();
                anti = anti.max(n0);
            }
        }

        // Decay at every puncture in its local coordinate.
        let x2 = c(0.31, 0.17);
        let y2 = s.fiber(x2).unwrap()[0];
        let q = SurfacePoint::new(x2, y2);
        for place in punctures(&s.curve).unwrap() {
            let ser = LocalSeries::new(&place, 30).unwrap();
            let r = 0.5 * ser.safe_radius(s, &[x2]);
            let val = |rho: f64| {
                let pt = ser.sample_at(s, C64::from_polar(rho, 0.4)).unwrap();
                (pd.bergman(SurfacePoint::new(pt.x, pt.y), q).unwrap() * pt.dx_dxi).norm()
            };
            let (v1, v2, v3) = (val(r), val(r / 4.0), val(r / 16.0));
            ensure!(v3 < 2.0 * v2.max(v1) + 1e-12, "{name}: B grows at {} ({v1}, {v2}, {v3})", place.describe());
        }

        // Vanishing A-periods and B-periods 2 pi i omega at fresh points.
        let pts = pd.sample_points(4, 4242).unwrap();
        let (a, bp) = pd
            .cycle_integrals(pts.len(), &|x, y, out: &mut [C64]| {
                for (o, p) in out.iter_mut().zip(&pts) {
                    *o = pd.bergman(SurfacePoint::new(x, y), *p).unwrap();
                }
                Ok(())
            })
            .unwrap();
        let aa = max_abs(&a);
        ensure!(aa < 1e-7, "{name}: A-periods of B up to {aa:e}");
        for (r, p) in pts.iter().enumerate() {
            let w = pd.omega(p.x, p.y)[0];
            ensure!(
                (bp[(r, 0)] - TWO_PI_I * w).norm() < 1e-7 * (1.0 + w.norm()),
                "{name}: B-period at a fresh point"
            );
        }
        worst = [worst[0].max(dp), worst[1].max(anti), worst[2].max(aa)];
    }
    Ok(Verdict {
        detail: format!(
            "double pole {:.1e}, opposite-point numerator {:.1e}, A-periods {:.1e}",
            worst[0], worst[1], worst[2]
        ),
        ..Verdict::default()
    })
}

fn genus_two_pd() -> PeriodData {
    let roots = [gq(-3, 1), gq(-2, 1), gq(-1, 1), gq(1, 1), gq(2, 1), gq(3, 1)];
    periods_of(&Surface::new(hyperelliptic_from_roots(&roots).unwrap()).unwrap())
}

/// Pairs of sample points joined by a straight path that stays off the cycles.
fn joined_pairs(pd: &PeriodData, n: usize, seed: u64) -> Vec<(SurfacePoint, SurfacePoint)> {
    let pts = pd.sample_points(60, seed).unwrap();
    let mut out = Vec::new();
    for w in pts.chunks(2) {
        let path = PathSpec::new(vec![w[1].x, w[0].x], Start::Y(w[1].y), false, "pair");
        if let Ok((t, _)) = pd.integrate_omega(&path) {
            if (t.end().y - w[0].y).norm() < 1e-8 * (1.0 + w[0].y.norm()) {
                out.push((w[0], w[1]));
            }
        }
        if out.len() == n {
            break;
        }
    }
    out
}

fn theta_layer(sh: &Shared) -> Outcome {
    use std::f64::consts::PI;
    // Genus one at tau = i: Jacobi products.
    let tau = c(0.0, 1.0);
    let ctx = ThetaContext::with_default_precision(CMat::from_element(1, 1, tau)).unwrap();
    let chi1 = Characteristic::new(vec![1], vec![1]).unwrap();
    let qn = (C64::new(0.0, PI) * tau).exp();
    let (mut th, mut dth) = (c(1.0, 0.0), c(0.0, 2.0 * PI));
    for n in 1..200 {
        let q2n = qn.powi(2 * n);
        th *= (1.0 + qn.powi(2 * n - 1)).powi(2) * (1.0 - q2n);
        dth *= (1.0 - q2n).powi(3);
    }
    let e1 = rel(ctx.theta(&[c(0.0, 0.0)]).unwrap(), th);
    let (grad, third) = ctx.theta_derivs(&chi1).unwrap();
    let e2 = rel(grad[0], dth);
    ensure!(e1 < 1e-10 && e2 < 1e-10, "products: {e1:e}, {e2:e}");
    let e3 = rel(third[0] / grad[0], -3.0 * g2_of_tau(tau).unwrap());
    ensure!(e3 < 1e-9, "Theta'''/Theta' = -3 G2: {e3:e}");

    // Prime form: d ln(E(p, p1) / E(p, p2)) = dS_{p1, p2}(p).
    let mut e4 = 0.0f64;
    let g2pd = genus_two_pd();
    for pd in [sh.half(), &g2pd] {
        let ctx = ThetaContext::with_default_precision(pd.tau.clone()).unwrap();
        let chi = ctx.regular_odd().unwrap();
        let pairs = joined_pairs(pd, 6, 8);
        let mut checked = 0;
        for w in pairs.windows(2) {
            let (p, p1) = w[0];
            let p2 = w[1].1;
            let Ok(v) = dlog_prime_ratio(pd, &ctx, &chi, p, p1, p2) else { continue };
            let ds = pd.third_kind(p1, p2).unwrap();
            let e = rel(v, pd.eval_third_kind(&ds, p.x, p.y));
            ensure!(e < 1e-6, "genus {}: prime-form identity off by {e:e}", pd.genus());
            e4 = e4.max(e);
            checked += 1;
        }
        ensure!(checked >= 2, "genus {}: only {checked} prime-form checks", pd.genus());
    }

    // Bergman kernel from theta, and independence of the characteristic.
    let mut e5 = 0.0f64;
    let pd = sh.half();
    let ctx = ThetaContext::with_default_precision(pd.tau.clone()).unwrap();
    let chi = ctx.regular_odd().unwrap();
    for (p, q) in joined_pairs(pd, 5, 3) {
        let b = pd.bergman(p, q).unwrap();
        let r = (bergman_from_theta(pd, &ctx, &chi, p, q).unwrap() - b).norm() / (1.0 + b.norm());
        ensure!(r < 1e-5, "Legendre: B-from-theta residual {r:e}");
        e5 = e5.max(r);
    }
    let ctx = ThetaContext::with_default_precision(g2pd.tau.clone()).unwrap();
    let zero = [c(0.0, 0.0), c(0.0, 0.0)];
    let regular: Vec<Characteristic> = odd_characteristics(2)
        .into_iter()
        .filter(|chi| ctx.jet(chi, &zero, 1).unwrap().grad.iter().any(|z| z.norm() > 1e-8))
        .collect();
    ensure!(regular.len() >= 2, "fewer than two regular odd characteristics");
    let mut spread = 0.0f64;
    for (p, q) in joined_pairs(&g2pd, 3, 5) {
        let b = g2pd.bergman(p, q).unwrap();
        let r: Vec<f64> = regular
            .iter()
            .map(|chi| (bergman_from_theta(&g2pd, &ctx, chi, p, q).unwrap() - b).norm() / (1.0 + b.norm()))
            .collect();
        let hi = r.iter().cloned().fold(0.0, f64::max);
        let lo = r.iter().cloned().fold(f64::INFINITY, f64::min);
        ensure!(hi < 1e-5, "genus 2: B-from-theta residual {hi:e}");
        e5 = e5.max(hi);
        spread = spread.max(hi - lo);
    }
    ensure!(spread < 1e-5, "residual depends on the characteristic: spread {spread:e}");
    Ok(Verdict {
        detail: format!(
            "products {:.1e}, G2 {e3:.1e}, prime form {e4:.1e}, B from theta {e5:.1e} over {} characteristics",
            e1.max(e2),
            regular.len()
        ),
        ..Verdict::default()
    })
}

fn cycle_change(sh: &Shared) -> Outcome {
    let mut v = Verdict::default();
    let mut worst = 0.0f64;
    for (num, den, pd) in &sh.legendre {
        let k = *num as f64 / *den as f64;
        let sw = pd.change_cycles(&CycleChange::swap(1)).unwrap();
        let tau = pd.tau[(0, 0)];
        let kp = ellk_prime(k);
        let d1 = (sw.k[(0, 0)] - c(0.0, kp)).norm();
        let d2 = (sw.tau[(0, 0)] + 1.0 / tau).norm();
        ensure!(d1 < 1e-8, "k = {k}: |K' - iK'| = {d1:e}");
        ensure!(d2 < 1e-8, "k = {k}: |tau' + 1/tau| = {d2:e}");
        let literal = (sw.k[(0, 0)] - c(0.0, 2.0 * kp)).norm();
        v.literal_failures.push(format!(
            "k = {k}: |K' - 2iK'| = {literal:.6}; the swapped A-period is tau K = iK'"
        ));
        let cyc = CycleSet {
            a: vec![pd.cycles.b[0].clone()],
            b: vec![pd.cycles.a[0].reversed()],
        };
        let fresh = PeriodData::compute(&pd.surface, &cyc, PeriodOptions::default()).unwrap();
        let d3 = (sw.s_matrix().unwrap()[(0, 0)] - fresh.s_matrix().unwrap()[(0, 0)]).norm();
        ensure!(d3 < 1e-6, "k = {k}: S' from the transformation vs from scratch: {d3:e}");
        let d4 = (fresh.tau[(0, 0)] - sw.tau[(0, 0)]).norm();
        ensure!(d4 < 1e-8, "k = {k}: tau' from scratch differs by {d4:e}");
        worst = worst.max(d1).max(d2).max(d3);
    }
    v.detail = format!("K' = iK', tau' = -1/tau and S' consistency within {worst:.1e}");
    Ok(v)
}

// ---------------------------------------------------------------------------

type Criterion = fn(&Shared) -> Outcome;

fn main() {
    let start = Instant::now();
    let shared = Shared {
        legendre: [(1, 2), (3, 4)].iter().map(|&(n, d)| (n, d, legendre_pd(n, d))).collect(),
    };
    let criteria: [(&str, Criterion); 12] = [
        ("exact discriminants", discriminants),
        ("polygon classification", polygon_classes),
        ("correction polynomial", correction_polynomials),
        ("Legendre periods", legendre_periods),
        ("S identity", s_identity),
        ("variational formula", variational_formula),
        ("decomposition reconstruction", reconstruction),
        ("third kind", third_kind),
        ("degenerate case", degenerate_case),
        ("Bergman properties", bergman_properties),
        ("theta layer", theta_layer),
        ("cycle change", cycle_change),
    ];
    let mut enforced_failures = 0;
    let mut literal_failures = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| f(&shared)))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panic".into())));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(v) if v.literal_failures.is_empty() => {
                println!("criterion {:>2} ({name}): PASS  [{}; {secs:.1}s]", n + 1, v.detail);
            }
            Ok(v) => {
                literal_failures += 1;
                println!(
                    "criterion {:>2} ({name}): FAIL  [literal statement not attainable; corrected statement holds: {}; {secs:.1}s]",
                    n + 1,
                    v.detail
                );
                for note in &v.literal_failures {
                    println!("    literal: {note}");
                }
            }
            Err(msg) => {
                enforced_failures += 1;
                println!("criterion {:>2} ({name}): FAIL  [{msg}; {secs:.1}s]", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} PASS, {} FAIL on the literal statement only, {} FAIL; {:.1}s",
        12 - enforced_failures - literal_failures,
        literal_failures,
        enforced_failures,
        start.elapsed().as_secs_f64()
    );
    if enforced_failures > 0 {
        std::process::exit(1);
    }
}

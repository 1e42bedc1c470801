mod common;

use algint::algebra::{gq, Gq, Poly2};
use algint::curves::legendre;
use algint::decompose::{decompose, pi_u_k, times, DecomposeOptions, Decomposition, Gamma};
use algint::forms::RationalForm;
use algint::numeric::TWO_PI_I;
use algint::periods::{PeriodData, PeriodOptions};
use algint::polygon::XCenter;
use algint::surface::{default_cycles, PathSpec, Start, Surface, SurfacePoint};
use algint::C64;
use common::{c, elle, ellk, rel};

fn legendre_pd_seed(num: i64, den: i64, seed: u64) -> PeriodData {
    let s = Surface::new(legendre(gq(num, den)).unwrap()).unwrap();
    let cycles = default_cycles(&s).unwrap();
    let opts = PeriodOptions {
        seed,
        ..PeriodOptions::default()
    };
    PeriodData::compute(&s, &cycles, opts).unwrap()
}

fn legendre_pd(num: i64, den: i64) -> PeriodData {
    legendre_pd_seed(num, den, PeriodOptions::default().seed)
}

fn poly(terms: &[((u32, u32), Gq)]) -> Poly2<Gq> {
    Poly2::from_terms(terms.iter().cloned())
}

/// `y dx`.
fn y_dx() -> RationalForm {
    RationalForm::polynomial(poly(&[((0, 1), gq(1, 1))]))
}

/// `(1 - k^2 x^2) dx / y`.
fn second_kind_form(k: &Gq) -> RationalForm {
    RationalForm::new(
        poly(&[((0, 0), gq(1, 1)), ((2, 0), -(k * k))]),
        poly(&[((0, 1), gq(1, 1))]),
    )
    .unwrap()
}

/// `dx / (2 (x - x0) y)`.
fn third_kind_form(x0: &Gq) -> RationalForm {
    RationalForm::new(
        poly(&[((0, 0), gq(1, 1))]),
        poly(&[((1, 1), gq(2, 1)), ((0, 1), -(x0 * gq(2, 1)))]),
    )
    .unwrap()
}

/// `dx / (2 y)`.
fn holomorphic_form() -> RationalForm {
    RationalForm::new(poly(&[((0, 0), gq(1, 1))]), poly(&[((0, 1), gq(2, 1))])).unwrap()
}

/// Index of the puncture over infinity with `y ~ sign k x^2`.
fn infinity_pole(dec: &Decomposition, sign: f64) -> usize {
    dec.times
        .poles
        .iter()
        .position(|p| {
            let pl = &p.expansion.series.place;
            pl.x == XCenter::Infinity && pl.eta.re * sign > 0.0
        })
        .expect("puncture")
}

/// Index of the finite pole at `(x0, y0)`.
fn finite_pole(dec: &Decomposition, p: SurfacePoint) -> usize {
    dec.times
        .poles
        .iter()
        .position(|q| q.point().is_some_and(|z| (z.x - p.x).norm() + (z.y - p.y).norm() < 1e-8))
        .expect("finite pole")
}

fn direct_cycles(pd: &PeriodData, form: &RationalForm) -> (C64, C64) {
    let (a, b) = pd
        .cycle_integrals(1, &|x, y, out: &mut [C64]| {
            out[0] = form.eval(x, y);
            Ok(())
        })
        .unwrap();
    (a[(0, 0)], b[(0, 0)])
}

/// `(x0, y0)` on the upper sheet of the Legendre curve: `y0 = sqrt((1-x0^2)(1-k^2 x0^2))`.
fn legendre_point(pd: &PeriodData, x0: f64) -> SurfacePoint {
    let y = pd.surface.fiber(c(x0, 0.0)).unwrap();
    let y0 = if y[0].re >= y[1].re { y[0] } else { y[1] };
    SurfacePoint::new(c(x0, 0.0), y0)
}

/// A straight arc between two sample points that stays off the cycle loops.
fn arcs(pd: &PeriodData, n: usize) -> Vec<PathSpec> {
    let pts = pd.sample_points(40, 21).unwrap();
    let mut out = Vec::new();
    for w in pts.chunks(2) {
        let spec = PathSpec::new(vec![w[0].x, w[1].x], Start::Y(w[0].y), false, "arc");
        let Ok(t) = spec.track(&pd.surface) else { continue };
        if pd.check_no_crossing(&t).is_ok() {
            out.push(spec);
        }
        if out.len() == n {
            break;
        }
    }
    assert_eq!(out.len(), n, "not enough arcs off the cycles");
    out
}

#[test]
fn times_of_the_legendre_examples() {
    let opts = DecomposeOptions::default();
    for (num, den) in [(1, 2), (3, 4)] {
        let k = num as f64 / den as f64;
        let kq = gq(num, den);
        let pd = legendre_pd(num, den);

        let t = times(&pd, &y_dx(), &opts).unwrap();
        assert!(t.discrepancy < 1e-8, "circle discrepancy {}", t.discrepancy);
        let dec = decompose(&pd, &y_dx(), &opts).unwrap();
        for sign in [1.0, -1.0] {
            let p = infinity_pole(&dec, sign);
            assert!((dec.times.get(p, 1) - sign * (1.0 + k * k) / (2.0 * k)).norm() < 1e-10);
            assert!((dec.times.get(p, 3) + sign * k).norm() < 1e-10);
            assert!(dec.times.get(p, 0).norm() < 1e-10);
            assert!(dec.times.get(p, 2).norm() < 1e-10);
        }

        let dec = decompose(&pd, &second_kind_form(&kq), &opts).unwrap();
        assert_eq!(dec.times.poles.len(), 2);
        for sign in [1.0, -1.0] {
            let p = infinity_pole(&dec, sign);
            assert!((dec.times.get(p, 1) - sign * k).norm() < 1e-10);
            assert!(dec.times.get(p, 0).norm() < 1e-10);
        }

        let dec = decompose(&pd, &third_kind_form(&gq(3, 10)), &opts).unwrap();
        let z0 = legendre_point(&pd, 0.3);
        for sign in [1.0, -1.0] {
            let p = finite_pole(&dec, SurfacePoint::new(z0.x, sign * z0.y));
            assert!((dec.times.get(p, 0) - sign / (2.0 * z0.y)).norm() < 1e-10);
        }
        assert!(dec.blocks.is_empty());
        assert_eq!(dec.third.len(), 2);
    }
}

#[test]
fn infinity_blocks_match_closed_forms() {
    let k = 0.5;
    let pd = legendre_pd(1, 2);
    let s = pd.s_matrix().unwrap()[(0, 0)];
    let dec = decompose(&pd, &y_dx(), &DecomposeOptions::default()).unwrap();
    for q in pd.sample_points(5, 9).unwrap() {
        let (x, y) = (q.x, q.y);
        for sign in [1.0, -1.0] {
            let p = infinity_pole(&dec, sign);
            let b1 = dec.blocks.iter().find(|b| b.pole == p && b.k == 1).unwrap();
            let expect1 = -0.5 - sign * (2.0 * k * k * x * x - (1.0 + k * k) + s) / (4.0 * k * y);
            assert!(rel(b1.eval(&pd, &dec.times, q).unwrap(), expect1) < 1e-8);

            let b3 = dec.blocks.iter().find(|b| b.pole == p && b.k == 3).unwrap();
            let k2 = k * k;
            let poly = k2 * x.powi(4) - (1.0 + k2) * x * x / 2.0 - (1.0 - k2).powi(2) / (12.0 * k2)
                + s * (1.0 + k2) / (12.0 * k2);
            let expect3 = -x * x / 2.0 - sign * poly / (2.0 * k * y);
            assert!(rel(b3.eval(&pd, &dec.times, q).unwrap(), expect3) < 1e-8);
        }
    }
}

#[test]
fn elliptic_identities_from_the_decomposition() {
    for (num, den) in [(1, 2), (3, 4)] {
        let k = num as f64 / den as f64;
        let pd = legendre_pd(num, den);
        let s = pd.s_matrix().unwrap()[(0, 0)];
        let kk = pd.k[(0, 0)];
        assert!(rel(kk, c(2.0 * ellk(k), 0.0)) < 1e-10);
        let opts = DecomposeOptions::default();

        // Legendre's relation for the curve: ∮_A y dx.
        let dec = decompose(&pd, &y_dx(), &opts).unwrap();
        let expect = kk / (3.0 * k * k) * ((1.0 + k * k) * s - (1.0 - k * k).powi(2));
        let r = ((1.0 + k * k) * s - (1.0 - k * k).powi(2)) / (3.0 * k * k);
        assert!(rel(dec.remainder[0], r) < 1e-9);
        let got = dec.integrate_complete(&pd, &Gamma::a_cycle(0, 1)).unwrap();
        assert!(rel(got, expect) < 1e-8);
        let (direct, _) = direct_cycles(&pd, &y_dx());
        assert!(rel(got, direct) < 1e-8);

        // ∮_A (1 - k^2 x^2) dx / y = 4E.
        let dec = decompose(&pd, &second_kind_form(&gq(num, den)), &opts).unwrap();
        assert!(rel(dec.remainder[0], c(1.0 - k * k, 0.0) + s) < 1e-9);
        let got = dec.integrate_complete(&pd, &Gamma::a_cycle(0, 1)).unwrap();
        assert!(rel(got, c(4.0 * elle(k), 0.0)) < 1e-8);
    }
}

#[test]
fn third_kind_a_period_through_zeta() {
    let pd = legendre_pd(1, 2);
    let kk = pd.k[(0, 0)];
    for x0 in [gq(3, 10), gq(-7, 10), gq(3, 2)] {
        let xf = algint::algebra::Coeff::to_c64(&x0).re;
        let form = third_kind_form(&x0);
        let dec = decompose(&pd, &form, &DecomposeOptions::default()).unwrap();
        let z0 = legendre_point(&pd, xf);
        let z = pd.zeta_many(&[z0, SurfacePoint::new(z0.x, -z0.y)]).unwrap();
        let expect = -kk * (z[0][0] - z[1][0]) / (2.0 * z0.y);
        let got = dec.integrate_complete(&pd, &Gamma::a_cycle(0, 1)).unwrap();
        assert!(rel(got, expect) < 1e-8, "x0 {xf}: {got} vs {expect}");
        let (direct, _) = direct_cycles(&pd, &form);
        assert!(rel(got, direct) < 1e-8);
    }
}

#[test]
fn reconstruction_and_pole_freeness() {
    let pd = legendre_pd(3, 4);
    let pts = pd.sample_points(50, 11).unwrap();
    for form in [y_dx(), second_kind_form(&gq(3, 4)), third_kind_form(&gq(1, 5)), holomorphic_form()] {
        let dec = decompose(&pd, &form, &DecomposeOptions::default()).unwrap();
        assert!(dec.reconstruction_residual(&pd, &pts).unwrap() < 1e-7);
        assert!(dec.fit_residual < 1e-8);
        for p in 0..dec.times.poles.len() {
            assert!(dec.remainder_pole_part(&pd, p).unwrap() < 1e-7);
        }
    }
}

#[test]
fn holomorphic_input_has_no_poles() {
    let pd = legendre_pd(1, 2);
    let dec = decompose(&pd, &holomorphic_form(), &DecomposeOptions::default()).unwrap();
    assert!(dec.blocks.is_empty() && dec.third.is_empty());
    assert!(rel(dec.remainder[0], c(1.0, 0.0)) < 1e-10);
    assert!(rel(dec.holo_coeffs[0], pd.k[(0, 0)]) < 1e-10);
}

#[test]
fn block_periods() {
    let pd = legendre_pd(1, 2);
    let dec = decompose(&pd, &y_dx(), &DecomposeOptions::default()).unwrap();
    let table = dec.period_table(&pd).unwrap();
    for (bi, blk) in dec.blocks.iter().enumerate() {
        let (a, b) = pd
            .cycle_integrals(1, &|x, y, out: &mut [C64]| {
                out[0] = blk.eval(&pd, &dec.times, SurfacePoint::new(x, y)).unwrap();
                Ok(())
            })
            .unwrap();
        assert!(a[(0, 0)].norm() < 1e-8, "A-period of block {bi}: {}", a[(0, 0)]);
        let res = dec.block_residue_omega(&pd, bi)[0];
        assert!((b[(0, 0)] - TWO_PI_I * res).norm() < 1e-8 * (1.0 + res.norm()));
        assert!((table.blocks_b[bi][0] - b[(0, 0)]).norm() < 1e-8 * (1.0 + res.norm()));
    }
    // The table's B-period of the whole form against quadrature.
    let (_, direct_b) = direct_cycles(&pd, &y_dx());
    assert!(rel(table.b[0], direct_b) < 1e-8);
}

#[test]
fn third_kind_periods_and_abel_map() {
    let pd = legendre_pd(1, 2);
    let dec = decompose(&pd, &third_kind_form(&gq(3, 10)), &DecomposeOptions::default()).unwrap();
    let table = dec.period_table(&pd).unwrap();
    let mut checked = 0;
    for (ti, t) in dec.third.iter().enumerate() {
        assert!(table.third_a[ti][0].norm() < 1e-8);
        let p = dec.times.poles[t.pole].point().unwrap();
        let (end, f) = pd.abel_map(&pd.path_from_origin(p.x)).unwrap();
        if (end.y - p.y).norm() > 1e-8 {
            // The straight path lands on the other sheet; F(p) is then -F(p') up to periods.
            continue;
        }
        let expect = TWO_PI_I * f[0];
        assert!((table.third_b[ti][0] - expect).norm() < 1e-7, "{} vs {expect}", table.third_b[ti][0]);
        checked += 1;
    }
    assert!(checked > 0);
    let (direct_a, direct_b) = direct_cycles(&pd, &dec.form);
    assert!(rel(table.a[0], direct_a) < 1e-8);
    assert!(rel(table.b[0], direct_b) < 1e-8);
    // Residue loops.
    for p in 0..dec.times.poles.len() {
        let v = dec.integrate_complete(&pd, &Gamma::around(p, 1)).unwrap();
        assert!((v - TWO_PI_I * dec.times.get(p, 0)).norm() < 1e-12);
    }
}

#[test]
fn periods_do_not_depend_on_the_origin() {
    let form = third_kind_form(&gq(3, 10));
    let mut seen: Vec<(C64, C64)> = Vec::new();
    for seed in [1, 5, 12] {
        let pd = legendre_pd_seed(1, 2, seed);
        let dec = decompose(&pd, &form, &DecomposeOptions::default()).unwrap();
        let table = dec.period_table(&pd).unwrap();
        seen.push((table.a[0], table.b[0]));
    }
    for w in seen.windows(2) {
        assert!(rel(w[1].0, w[0].0) < 1e-7);
        assert!(rel(w[1].1, w[0].1) < 1e-7);
    }
}

#[test]
fn decomposition_is_linear() {
    let pd = legendre_pd(1, 2);
    let opts = DecomposeOptions::default();
    let k = gq(1, 2);
    // 2 y dx - 3 (1 - k^2 x^2) dx / y = (2 y^2 - 3 + 3 k^2 x^2) dx / y
    let combined = RationalForm::new(
        poly(&[((0, 2), gq(2, 1)), ((0, 0), gq(-3, 1)), ((2, 0), gq(3, 1) * &k * &k)]),
        poly(&[((0, 1), gq(1, 1))]),
    )
    .unwrap();
    let d1 = decompose(&pd, &y_dx(), &opts).unwrap();
    let d2 = decompose(&pd, &second_kind_form(&k), &opts).unwrap();
    let d = decompose(&pd, &combined, &opts).unwrap();
    for sign in [1.0, -1.0] {
        let (p, p1, p2) = (infinity_pole(&d, sign), infinity_pole(&d1, sign), infinity_pole(&d2, sign));
        for kk in 0..4 {
            let expect = 2.0 * d1.times.get(p1, kk) - 3.0 * d2.times.get(p2, kk);
            assert!((d.times.get(p, kk) - expect).norm() < 1e-9);
        }
    }
    let expect = 2.0 * d1.holo_coeffs[0] - 3.0 * d2.holo_coeffs[0];
    assert!(rel(d.holo_coeffs[0], expect) < 1e-9);
}

#[test]
fn incomplete_integrals_match_quadrature() {
    let pd = legendre_pd(1, 2);
    let opts = DecomposeOptions::default();
    let forms = [y_dx(), second_kind_form(&gq(1, 2)), third_kind_form(&gq(3, 10)), holomorphic_form()];
    let arcs = arcs(&pd, 3);
    for form in &forms {
        let dec = decompose(&pd, form, &opts).unwrap();
        for arc in &arcs {
            let r = dec.integrate_incomplete(&pd, arc).unwrap();
            assert!(
                (r.value - r.direct).norm() < 1e-6 * (1.0 + r.direct.norm()),
                "{} vs {}",
                r.value,
                r.direct
            );
            assert!((r.holomorphic + r.second_kind + r.third_kind - r.value).norm() < 1e-12);
        }
    }
    let dec = decompose(&pd, &forms[0], &opts).unwrap();
    let closed = PathSpec { closed: true, ..arcs[0].clone() };
    assert!(dec.integrate_incomplete(&pd, &closed).is_err());
}

#[test]
fn complete_elliptic_integral_of_the_third_kind() {
    for (u, k) in [((1, 4), (1, 2)), ((1, 2), (3, 4))] {
        let r = pi_u_k(&gq(u.0, u.1), &gq(k.0, k.1)).unwrap();
        assert!(rel(r.value, c(r.quadrature, 0.0)) < 1e-6, "{r:?}");
        assert!(rel(r.zeta_formula, c(r.quadrature, 0.0)) < 1e-6, "{r:?}");
    }
    // Pi(u, k) = E / (1 - k^2) when u = k^2.
    let r = pi_u_k(&gq(1, 4), &gq(1, 2)).unwrap();
    assert!(rel(r.value, c(elle(0.5) / 0.75, 0.0)) < 1e-8);
    // Pi(u, k) -> K(k) as u -> 0.
    let r = pi_u_k(&gq(1, 1_000_000), &gq(1, 2)).unwrap();
    assert!((r.value.re - ellk(0.5)).abs() < 2e-6 * ellk(0.5), "{r:?}");
    assert!(pi_u_k(&gq(3, 2), &gq(1, 2)).is_err());
}

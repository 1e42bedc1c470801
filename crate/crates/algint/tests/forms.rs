use algint::algebra::{gq, Gq, Poly2, Poly4};
use algint::curves::{cubic, legendre, weierstrass};
use algint::forms::{c_poly, form_kind, q_comb, q_comb_pair, third_kind_residues, BergmanComb, FormKind};
use algint::numeric::roots::newton_polish;
use algint::surface::Surface;
use algint::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn p4(terms: &[([u32; 4], Gq)]) -> Poly4<Gq> {
    Poly4::from_terms(terms.iter().cloned())
}

#[test]
fn legendre_correction_polynomial() {
    let k = gq(1, 3);
    let k2 = &k * &k;
    let q = q_comb(legendre(k).unwrap().poly());
    // -k^2 (x1 + x2)^2
    let expect = p4(&[([2, 0, 0, 0], -k2.clone()), ([0, 0, 2, 0], -k2.clone()), ([1, 0, 1, 0], gq(-2, 1) * k2)]);
    assert_eq!(q, expect);
}

/// Polygon with vertices (0,0), (0,5), (2,4), (4,2), (5,0) and extra points
/// (3,3), (1,3), (2,1).
fn figure_polygon() -> Poly2<Gq> {
    let pts = [(0, 0), (0, 5), (2, 4), (3, 3), (4, 2), (5, 0), (1, 3), (2, 1)];
    Poly2::from_terms(pts.iter().enumerate().map(|(n, &(i, j))| ((i, j), gq(n as i64 + 2, 3))))
}

#[test]
fn figure_triangle_terms() {
    let p = figure_polygon();
    let c13 = p.coeff(1, 3);
    let c50 = p.coeff(5, 0);
    let c24 = p.coeff(2, 4);
    let t1 = q_comb_pair(&p, (5, 0), (1, 3));
    let t1 = &t1 + &t1.swap_points();
    let w = &c13 * &c50;
    assert_eq!(t1, p4(&[([3, 1, 1, 0], w.clone()), ([1, 0, 3, 1], w)]));
    let t2 = q_comb_pair(&p, (5, 0), (2, 4));
    let t2 = &t2 + &t2.swap_points();
    let w = &c24 * &c50;
    let two = gq(2, 1);
    let expect = p4(&[
        ([2, 0, 3, 2], w.clone()),
        ([3, 2, 2, 0], w.clone()),
        ([2, 1, 3, 1], &two * &w),
        ([3, 1, 2, 1], &two * &w),
        ([3, 0, 2, 2], &two * &w),
        ([2, 2, 3, 0], &two * &w),
    ]);
    assert_eq!(t2, expect);
}

#[test]
fn correction_is_symmetric() {
    for p in [figure_polygon(), cubic(gq(2, 1)).unwrap().poly().clone()] {
        let q = q_comb(&p);
        assert_eq!(q, q.swap_points());
    }
}

#[test]
fn c_polynomial_examples() {
    let k = gq(1, 2);
    let k2 = &k * &k;
    let cp = c_poly(&legendre(k).unwrap()).unwrap();
    let expect = Poly2::from_terms([((0, 0), -(gq(1, 1) + k2.clone())), ((2, 0), gq(2, 1) * k2)]);
    assert_eq!(cp.get((0, 0)).unwrap(), &expect);
    let cp = c_poly(&cubic(gq(5, 2)).unwrap()).unwrap();
    assert_eq!(cp.get((0, 0)).unwrap(), &Poly2::from_terms([((1, 1), gq(-3, 1))]));
}

#[test]
fn monomial_form_kinds() {
    let l = legendre(gq(1, 2)).unwrap();
    assert_eq!(form_kind(&l, 0, 0), Some(FormKind::First));
    assert_eq!(form_kind(&l, 1, 0), Some(FormKind::Third));
    assert_eq!(form_kind(&l, 2, 0), Some(FormKind::Second));
    let res = third_kind_residues(&l, 1, 0).unwrap();
    assert_eq!(res.len(), 2);
    assert!((res[0].1 + res[1].1).norm() < 1e-14);
    for (eta, r) in res {
        // -1/(2k) at eta = k, by the local expansion x = 1/xi.
        assert!((r - c(-eta.re.signum() / (2.0 * 0.5), 0.0)).norm() < 1e-12, "{r}");
    }
    let w = weierstrass(gq(1, 1), gq(1, 1)).unwrap();
    assert!(third_kind_residues(&w, 0, 0).is_err());
}

fn legendre_b(k: f64, x1: C64, y1: C64, x2: C64, y2: C64) -> C64 {
    let k2 = k * k;
    (2.0 * y1 * y2 + 2.0 - (1.0 + k2) * (x1 * x1 + x2 * x2) + 2.0 * k2 * x1 * x1 * x2 * x2)
        / (4.0 * y1 * y2 * (x1 - x2) * (x1 - x2))
}

fn on_curve(s: &Surface, x: C64, near: C64) -> C64 {
    let f = s.fiber(x).unwrap();
    *f.iter().min_by(|a, b| (*a - near).norm().total_cmp(&(*b - near).norm())).unwrap()
}

#[test]
fn legendre_bidifferential_closed_form() {
    let k = 0.5;
    let s = Surface::new(legendre(gq(1, 2)).unwrap()).unwrap();
    let b = BergmanComb::new(&s.curve);
    let (x1, x2) = (c(0.3, 0.1), c(-0.7, 0.4));
    let y1 = s.fiber(x1).unwrap()[1];
    let y2 = s.fiber(x2).unwrap()[0];
    let v = b.eval(x1, y1, x2, y2);
    assert!((v - legendre_b(k, x1, y1, x2, y2)).norm() < 1e-12 * v.norm());
    // No pole at the opposite point: B stays bounded as p2 -> (x1, -y1).
    let near = |h: f64| {
        let x2 = x1 + h;
        let y2 = -on_curve(&s, x2, y1);
        (b.eval(x1, y1, x2, y2), b.numerator(x1, y1, x2, y2) * h * h)
    };
    let (b3, n3) = near(1e-3);
    let (b5, n5) = near(1e-5);
    assert!((b3 - b5).norm() < 1e-2 * b5.norm(), "{b3} {b5}");
    assert!(n3.norm() < 1e-5 && n5.norm() < 1e-9);
    // Diagonal finite part (1 - k^2)^2 x^2 / (4 y^4).
    let d = b.diagonal(x1, y1);
    let expect = (1.0 - k * k) * (1.0 - k * k) * x1 * x1 / (4.0 * y1.powi(4));
    assert!((d - expect).norm() < 1e-12);
}

#[test]
fn bidifferential_double_pole_and_diagonal() {
    for curve in [legendre(gq(1, 2)).unwrap(), weierstrass(gq(2, 1), gq(1, 1)).unwrap(), cubic(gq(2, 1)).unwrap()] {
        let s = Surface::new(curve).unwrap();
        let b = BergmanComb::new(&s.curve);
        let x = c(0.37, 0.21);
        let y = s.fiber(x).unwrap()[0];
        let f = |h: f64| {
            let x2 = x + h;
            let y2 = on_curve(&s, x2, y);
            (b.eval(x, y, x2, y2) - 1.0 / (h * h), h)
        };
        // Richardson on g(h) = finite part + O(h): second order extrapolation.
        let (g1, _) = f(1e-2);
        let (g2, _) = f(5e-3);
        let (g3, _) = f(2.5e-3);
        let r1 = 2.0 * g2 - g1;
        let r2 = 2.0 * g3 - g2;
        let rich = (4.0 * r2 - r1) / 3.0;
        let d = b.diagonal(x, y);
        assert!((rich - d).norm() < 1e-6 * (1.0 + d.norm()), "{rich} vs {d}");
    }
}

#[test]
fn bidifferential_decays_at_punctures() {
    let s = Surface::new(legendre(gq(1, 2)).unwrap()).unwrap();
    let b = BergmanComb::new(&s.curve);
    let (x2, y2) = (c(0.2, 0.0), s.fiber(c(0.2, 0.0)).unwrap()[1]);
    let mut vals = Vec::new();
    for r in [1e2, 1e3, 1e4] {
        let x1 = c(r, 0.3 * r);
        for y1 in s.fiber(x1).unwrap() {
            vals.push((b.eval(x1, y1, x2, y2) * x1 * x1).norm());
        }
    }
    let m = vals.iter().cloned().fold(0.0, f64::max);
    assert!(m < 10.0, "{vals:?}");
}

#[test]
fn third_kind_matches_closed_forms() {
    let s = Surface::new(legendre(gq(1, 2)).unwrap()).unwrap();
    let b = BergmanComb::new(&s.curve);
    let p1 = (c(0.3, 0.0), s.fiber(c(0.3, 0.0)).unwrap()[1]);
    let p2 = (c(-0.4, 0.2), s.fiber(c(-0.4, 0.2)).unwrap()[0]);
    let x = c(0.1, 0.5);
    let y = s.fiber(x).unwrap()[0];
    let v = b.ds(p1, p2, x, y);
    let expect = ((y + p1.1) / (x - p1.0) - (y + p2.1) / (x - p2.0)) / (2.0 * y);
    assert!((v - expect).norm() < 1e-13);
    assert!((b.ds(p2, p1, x, y) + v).norm() < 1e-15);

    let t = 2.0;
    let s = Surface::new(cubic(gq(2, 1)).unwrap()).unwrap();
    let b = BergmanComb::new(&s.curve);
    let p1 = (c(0.3, 0.1), s.fiber(c(0.3, 0.1)).unwrap()[1]);
    let p2 = (c(-0.4, 0.2), s.fiber(c(-0.4, 0.2)).unwrap()[2]);
    let v = b.ds(p1, p2, x, s.fiber(x).unwrap()[0]);
    let y = s.fiber(x).unwrap()[0];
    let term = |(xa, ya): (C64, C64)| (2.0 * (y * y + y * ya + ya * ya) + t * (x + xa)) / (x - xa);
    let expect = (term(p1) - term(p2)) / (2.0 * (3.0 * y * y + t * x));
    assert!((v - expect).norm() < 1e-12 * expect.norm());
}

#[test]
fn third_kind_residues_by_quadrature() {
    let s = Surface::new(cubic(gq(2, 1)).unwrap()).unwrap();
    let b = BergmanComb::new(&s.curve);
    let p1 = (c(0.3, 0.1), s.fiber(c(0.3, 0.1)).unwrap()[1]);
    let p2 = (c(-0.4, 0.2), s.fiber(c(-0.4, 0.2)).unwrap()[2]);
    let coeffs = |x: C64| s.curve.y_coeffs_at(x);
    for (p, want) in [(p1, 1.0), (p2, -1.0)] {
        let m = 64;
        let r = 1e-2;
        let mut acc = c(0.0, 0.0);
        for n in 0..m {
            let th = 2.0 * std::f64::consts::PI * n as f64 / m as f64;
            let dz = C64::from_polar(r, th);
            let x = p.0 + dz;
            let y = newton_polish(&coeffs(x), p.1, 30);
            acc += b.ds(p1, p2, x, y) * dz;
        }
        let res = acc / m as f64;
        assert!((res - want).norm() < 1e-8, "{res}");
    }
}

#[test]
fn c_polynomial_links_third_kind_and_bidifferential() {
    // d/dx1 of the third-kind form plus C(p1) x^i y^j / (P_y P_y1) equals B.
    let s = Surface::new(weierstrass(gq(2, 1), gq(1, 1)).unwrap()).unwrap();
    let b = BergmanComb::new(&s.curve);
    let cp = c_poly(&s.curve).unwrap();
    let p2 = (c(-0.4, 0.2), s.fiber(c(-0.4, 0.2)).unwrap()[0]);
    let x1 = c(0.3, 0.4);
    let y1 = s.fiber(x1).unwrap()[1];
    let x = c(1.1, -0.3);
    let y = s.fiber(x).unwrap()[0];
    let h = 1e-4;
    let at = |d: f64| {
        let xa = x1 + d;
        let ya = on_curve(&s, xa, y1);
        b.ds((xa, ya), p2, x, y)
    };
    let deriv = (at(-2.0 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2.0 * h)) / (12.0 * h);
    let mut extra = c(0.0, 0.0);
    for ((i, j), poly) in &cp.entries {
        extra += x.powi(*i as i32) * y.powi(*j as i32) * poly.eval_c64(x1, y1);
    }
    extra /= s.curve.py(x, y) * s.curve.py(x1, y1);
    let lhs = deriv + extra;
    let rhs = b.eval(x, y, x1, y1);
    assert!((lhs - rhs).norm() < 1e-7 * rhs.norm(), "{lhs} vs {rhs}");
}

#[test]
fn bidifferential_regular_at_all_punctures() {
    use algint::algebra::Curve;
    use algint::curves::hyperelliptic_from_roots;
    use algint::polygon::punctures;
    use algint::surface::LocalSeries;
    let roots: Vec<Gq> = [-3, -1, 0, 2, 5].iter().map(|&v| gq(v, 1)).collect();
    let curves = vec![
        legendre(gq(1, 2)).unwrap(),
        weierstrass(gq(2, 1), gq(1, 1)).unwrap(),
        cubic(gq(2, 1)).unwrap(),
        Curve::new(figure_polygon()).unwrap(),
        hyperelliptic_from_roots(&roots).unwrap(),
    ];
    for curve in curves {
        let s = Surface::new(curve).unwrap();
        let b = BergmanComb::new(&s.curve);
        let x2 = c(0.31, 0.17);
        let y2 = s.fiber(x2).unwrap()[0];
        let places = punctures(&s.curve).unwrap();
        assert!(!places.is_empty());
        for p in places {
            let ser = LocalSeries::new(&p, 30).unwrap();
            let r = 0.5 * ser.safe_radius(&s, &[x2]);
            let val = |rho: f64| {
                let pt = ser.sample_at(&s, C64::from_polar(rho, 0.4)).unwrap();
                (b.eval(pt.x, pt.y, x2, y2) * pt.dx_dxi).norm()
            };
            let (v1, v2, v3) = (val(r), val(r / 4.0), val(r / 16.0));
            assert!(v3 < 2.0 * v2.max(v1) + 1e-12, "{} {v1} {v2} {v3}", p.describe());
        }
    }
}

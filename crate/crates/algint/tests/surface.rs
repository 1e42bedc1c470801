use algint::algebra::gq;
use algint::curves::{hyperelliptic_from_roots, legendre, nodal_sextic, weierstrass};
use algint::numeric::quad::QuadOptions;
use algint::polygon::{moduli_space, places_at_infinity};
use algint::surface::{default_cycles, intersection_matrix, monodromy, LocalSeries, Surface};
use algint::C64;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
        let t = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = t;
    }
    a
}

fn ellk(k: f64) -> f64 {
    std::f64::consts::PI / (2.0 * agm(1.0, (1.0 - k * k).sqrt()))
}

fn legendre_surface() -> Surface {
    Surface::new(legendre(gq(1, 2)).unwrap()).unwrap()
}

#[test]
fn legendre_fiber_at_origin() {
    let s = legendre_surface();
    let f = s.fiber(c(0.0, 0.0)).unwrap();
    assert!((f[0] - c(-1.0, 0.0)).norm() < 1e-14);
    assert!((f[1] - c(1.0, 0.0)).norm() < 1e-14);
}

#[test]
fn fiber_far_from_the_origin_keeps_both_sheets() {
    let s = legendre_surface();
    for x in [c(1e3, 0.0), c(0.0, -1e5), c(3e6, 2e6)] {
        let f = s.fiber(x).unwrap();
        assert_eq!(f.len(), 2);
        for y in f {
            assert!(s.curve.py(x, y).norm() > 0.0 && s.curve.eval(algint::algebra::Deriv::P, x, y).norm() < 1e-9 * (y * y).norm());
        }
    }
}

#[test]
fn loop_around_branch_point_swaps_sheets() {
    let s = legendre_surface();
    let w = [c(0.0, 0.0), c(1.0, -0.3), c(1.3, 0.0), c(1.0, 0.3), c(0.0, 0.0)];
    let end = algint::surface::track::track(&s, &w, c(1.0, 0.0)).unwrap().end();
    assert!((end.y - c(-1.0, 0.0)).norm() < 1e-10);
    assert_eq!(monodromy(&s, &w).unwrap(), vec![1, 0]);
    let w0 = [c(0.0, 0.0), c(0.3, -0.3), c(0.5, 0.0), c(0.3, 0.3)];
    assert_eq!(monodromy(&s, &w0).unwrap(), vec![0, 1]);
}

#[test]
fn legendre_punctures_and_series() {
    let s = legendre_surface();
    let k = 0.5;
    let places = places_at_infinity(&s.curve).unwrap();
    assert_eq!(places.len(), 2);
    for p in &places {
        assert_eq!((p.a, p.b), (-1, -2));
        assert!((p.eta.norm() - k).abs() < 1e-12);
        let ser = LocalSeries::new(p, 12).unwrap();
        let sign = p.eta.re.signum();
        assert!(ser.u[1].norm() < 1e-12);
        assert!((ser.u[2] - c(-sign * (1.0 + k * k) / (2.0 * k), 0.0)).norm() < 1e-12);
        // The series satisfies the equation.
        let xi = c(0.05, 0.02);
        let (x, y) = (p.x_at(xi), ser.y_approx(xi));
        assert!(s.curve.p(x, y).norm() / y.norm_sqr() < 1e-12);
    }
}

#[test]
fn genus_from_moduli_space() {
    let w = Surface::new(weierstrass(gq(2, 1), gq(1, 1)).unwrap()).unwrap();
    assert_eq!(moduli_space(&w).unwrap().genus, 1);
    // y^2 = (x - 1)^2 (x + 2): node at x = 1.
    let d = Surface::new(weierstrass(gq(3, 1), gq(-2, 1)).unwrap()).unwrap();
    assert_eq!(moduli_space(&d).unwrap().genus, 0);
    let n = Surface::new(nodal_sextic(gq(1, 1), gq(2, 1), gq(3, 1)).unwrap()).unwrap();
    let m = moduli_space(&n).unwrap();
    assert_eq!(m.genus, 1);
    assert_eq!(m.monomials, vec![(0, 0), (1, 0)]);
    let ratio = m.basis[(0, 0)] / m.basis[(1, 0)];
    assert!((ratio - c(-3.0, 0.0)).norm() < 1e-8, "{ratio}");
}

#[test]
fn legendre_default_cycles() {
    let s = legendre_surface();
    let cy = default_cycles(&s).unwrap();
    assert_eq!(cy.genus(), 1);
    assert_eq!(intersection_matrix(&s, &cy).unwrap(), vec![vec![1]]);
    let f = |x: C64, y: C64, out: &mut [C64]| {
        out[0] = 1.0 / s.curve.py(x, y);
        Ok(())
    };
    let a = cy.a[0].track(&s).unwrap().integrate(&s, 1, &f, QuadOptions::default()).unwrap()[0];
    let b = cy.b[0].track(&s).unwrap().integrate(&s, 1, &f, QuadOptions::default()).unwrap()[0];
    let k = 0.5f64;
    let kk = ellk(k);
    let kp = ellk((1.0 - k * k).sqrt());
    assert!((a - c(2.0 * kk, 0.0)).norm() < 1e-10, "{a}");
    assert!((b - c(0.0, kp)).norm() < 1e-10, "{b}");
}

#[test]
fn genus_two_intersections() {
    let r: Vec<_> = [-3, -2, -1, 1, 2, 3].iter().map(|&v| gq(v, 1)).collect();
    let s = Surface::new(hyperelliptic_from_roots(&r).unwrap()).unwrap();
    let cy = default_cycles(&s).unwrap();
    assert_eq!(cy.genus(), 2);
    assert_eq!(intersection_matrix(&s, &cy).unwrap(), vec![vec![1, 0], vec![0, 1]]);
}

//! Zero sets of the classic quadratic examples, entered as literal products of linear factors.

use r3split::parse::parse_poly;
use r3split::qsplit::join;
use r3split::zeros::{classify_quadratic, CaseTag, FactoredPoly, Locus, ZeroSetQuadratic};
use r3split::{Quat, QuatPair, SphereDescriptor};

const TOL: f64 = 1e-10;

fn classify(src: &str) -> ZeroSetQuadratic {
    let f = FactoredPoly::from_input(&parse_poly(src).unwrap(), TOL).unwrap();
    assert_eq!(f.degree(), 2);
    let z = classify_quadratic(&f.roots[0], &f.roots[1], TOL);
    assert!(z.max_residual() < 1e-9, "{src}: {}", z.max_residual());
    z
}

fn pt(x: Quat) -> Locus {
    Locus::Point { point: x }
}

fn has(z: &ZeroSetQuadratic, p: Locus, q: Locus) -> bool {
    z.zeros.iter().any(|(a, b)| a.approx_eq(&p, 1e-9) && b.approx_eq(&q, 1e-9))
}

#[test]
fn e12_times_e23() {
    let z = classify("(x - e12)*(x - e23)");
    assert_eq!(z.case, CaseTag::Case5);
    assert_eq!(z.zeros, vec![(pt(Quat::E12), pt(Quat::E12))]);
}

#[test]
fn e1_squared_is_a_single_point() {
    let z = classify("(x - e1)*(x - e1)");
    assert_eq!(z.case, CaseTag::Case5);
    assert_eq!(z.zeros, vec![(pt(-Quat::E23), pt(Quat::E23))]);
}

#[test]
fn e1_times_its_conjugate_is_four_dimensional() {
    let z = classify("(x - e1)*(x + e1)");
    assert_eq!(z.case, CaseTag::Case1_1);
    let s = Locus::Sphere { sphere: SphereDescriptor::new(0.0, 1.0) };
    assert_eq!(z.zeros, vec![(s, s)]);
}

#[test]
fn e1_times_two_e1_has_four_points() {
    let z = classify("(x - e1)*(x - 2e1)");
    assert_eq!(z.case, CaseTag::Case4);
    assert_eq!(z.zeros.len(), 4);
    assert!(has(&z, pt(-Quat::E23), pt(Quat::E23)));
}

#[test]
fn e1_times_e23() {
    let z = classify("(x - e1)*(x - e23)");
    assert_eq!((z.case, z.mirrored), (CaseTag::Case2, false));
}

#[test]
fn case_three() {
    let z = classify("(x - 2e23)*(x + e23 - 2e13 - e1 + 2e2)");
    assert_eq!(z.case, CaseTag::Case3);
    let s = Locus::Sphere { sphere: SphereDescriptor::new(0.0, 2.0) };
    assert!(has(&z, s, pt(Quat::E23.scale(2.0))));
    assert!(has(&z, s, pt(Quat::new(0.0, 3.2, 2.4, 0.0))));
}

#[test]
fn case_four() {
    let z = classify("(x - 2e23 + e1)*(x - 4e13 - 2e2)");
    assert_eq!(z.case, CaseTag::Case4);
    let ((a1, b1), (a2, b2)) = z.factors;
    assert_eq!((a1, b1, a2, b2), (Quat::E23.scale(3.0), Quat::E13.scale(6.0), Quat::E23, Quat::E13.scale(2.0)));
    // second roots lie on the spheres of b1 and b2
    let p2 = Quat::new(0.0, 4.8, 3.6, 0.0);
    let q2 = Quat::new(0.0, 1.6, 1.2, 0.0);
    for (p, q) in [(a1, a2), (a1, q2), (p2, a2), (p2, q2)] {
        assert!(has(&z, pt(p), pt(q)), "{p}, {q}");
    }
    // the points (4/3)(3e13 - e23) and (3/5)(7e13 - 6e23) are not on those spheres
    assert!((Quat::new(0.0, -4.0 / 3.0, 4.0, 0.0).modulus() - 6.0).abs() > 1.0);
    assert!((Quat::new(0.0, -3.6, 4.2, 0.0).modulus() - 2.0).abs() > 1.0);
}

#[test]
fn case_six() {
    let z = classify("(x - e12 - e13 + e3 + e2)*(x - e12 - 2e13 + e3 + 2e2)");
    assert_eq!((z.case, z.mirrored), (CaseTag::Case6, true));
    assert!(has(&z, pt(Quat::E12.scale(2.0)), pt(Quat::E13.scale(2.0))));
    assert!(has(&z, pt(Quat::E12.scale(2.0)), pt(Quat::E13.scale(4.0))));
    assert_eq!(z.zeros.len(), 2);
    let f = FactoredPoly::from_input(&parse_poly("(x - e12 - e13 + e3 + e2)*(x - e12 - 2e13 + e3 + 2e2)").unwrap(), TOL).unwrap();
    let bad = join(&QuatPair::new(Quat::E12.scale(2.0), Quat::E13.scale(-4.0)));
    assert!(f.poly().eval_horner(&bad).max_abs() > 1.0);
}

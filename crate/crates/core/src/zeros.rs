//! Zeros of factored polynomials: the quadratic classification and multiplicities.
//!
//! `(x - alpha) * (x - beta)` splits into `(p - a1) * (p - b1)` and `(q - a2) * (q - b2)`,
//! and each quaternionic quadratic has a sphere, a single point or two points as zero set.

use std::fmt;

use serde::Serialize;

use crate::bislice::{BiSlicePoly, QuatPoly};
use crate::clifford3::CliffordElement;
use crate::error::{Error, Result};
use crate::parse::PolyInput;
use crate::qsplit::{join, split, ConePoint, Quat, QuatPair, SphereDescriptor};

/// Eight fixed unit imaginary quaternions used to probe sphere loci.
pub fn probe_units() -> [Quat; 8] {
    let s = 1.0 / 3f64.sqrt();
    [
        Quat::E23,
        Quat::E13,
        Quat::E12,
        -Quat::E23,
        Quat::new(0.0, s, s, s),
        Quat::new(0.0, -s, s, -s),
        Quat::new(0.0, 0.6, -0.8, 0.0),
        Quat::new(0.0, 0.0, 0.28, -0.96),
    ]
}

/// `|Re a - Re b| <= tol` and `||Im a| - |Im b|| <= tol`.
pub fn same_sphere(a: Quat, b: Quat, tol: f64) -> bool {
    (a.re() - b.re()).abs() <= tol && (a.im_modulus() - b.im_modulus()).abs() <= tol
}

/// `b = a^c` componentwise within `tol`.
pub fn is_conjugate(a: Quat, b: Quat, tol: f64) -> bool {
    a.conj().approx_eq(b, tol)
}

/// Zero set of the quaternionic quadratic `(q - a) * (q - b)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuatQuadraticZeros {
    /// `b = a^c`: the whole sphere of `a`; radius zero when `a` is real.
    Sphere { sphere: SphereDescriptor },
    /// Same sphere but `b != a^c`: only `a`.
    SinglePoint { point: Quat },
    /// Different spheres: `a` and `(b - a^c)^-1 b (b - a^c)`.
    TwoPoints { first: Quat, second: Quat },
}

/// Which of the three shapes a side has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SideKind {
    Sphere,
    Single,
    Two,
}

impl QuatQuadraticZeros {
    fn kind(&self) -> SideKind {
        match self {
            QuatQuadraticZeros::Sphere { .. } => SideKind::Sphere,
            QuatQuadraticZeros::SinglePoint { .. } => SideKind::Single,
            QuatQuadraticZeros::TwoPoints { .. } => SideKind::Two,
        }
    }

    /// Loci in reporting order; a radius-zero sphere is its real point.
    pub fn loci(&self, tol: f64) -> Vec<Locus> {
        match *self {
            QuatQuadraticZeros::Sphere { sphere } if sphere.is_point(tol) => {
                vec![Locus::Point { point: Quat::real(sphere.center) }]
            }
            QuatQuadraticZeros::Sphere { sphere } => vec![Locus::Sphere { sphere }],
            QuatQuadraticZeros::SinglePoint { point } => vec![Locus::Point { point }],
            QuatQuadraticZeros::TwoPoints { first, second } if first.approx_eq(second, tol) => {
                vec![Locus::Point { point: first }]
            }
            QuatQuadraticZeros::TwoPoints { first, second } => {
                vec![Locus::Point { point: first }, Locus::Point { point: second }]
            }
        }
    }
}

/// Classifies the zeros of `(q - a) * (q - b)`; the conjugate test runs first.
pub fn quat_quadratic_zeros(a: Quat, b: Quat, tol: f64) -> QuatQuadraticZeros {
    if is_conjugate(a, b, tol) {
        QuatQuadraticZeros::Sphere { sphere: a.sphere() }
    } else if same_sphere(a, b, tol) {
        QuatQuadraticZeros::SinglePoint { point: a }
    } else {
        let t = b - a.conj();
        // t != 0 because b and a^c lie on different spheres
        let ti = t.inverse(0.0).expect("b - a^c is nonzero off the sphere of a");
        QuatQuadraticZeros::TwoPoints { first: a, second: ti * b * t }
    }
}

/// One component of a zero: a point or a whole 2-sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Locus {
    Point { point: Quat },
    Sphere { sphere: SphereDescriptor },
}

impl Locus {
    /// Points at which to verify the locus.
    pub fn probes(&self) -> Vec<Quat> {
        match *self {
            Locus::Point { point } => vec![point],
            Locus::Sphere { sphere } => probe_units().iter().map(|u| sphere.point(*u)).collect(),
        }
    }

    pub fn approx_eq(&self, o: &Locus, tol: f64) -> bool {
        match (self, o) {
            (Locus::Point { point: a }, Locus::Point { point: b }) => a.approx_eq(*b, tol),
            (Locus::Sphere { sphere: a }, Locus::Sphere { sphere: b }) => a.approx_eq(b, tol),
            _ => false,
        }
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::Point { point } => fmt::Display::fmt(point, f),
            Locus::Sphere { sphere } => fmt::Display::fmt(sphere, f),
        }
    }
}

/// Case labels of the quadratic classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    #[serde(rename = "1.1")]
    Case1_1,
    #[serde(rename = "1.2")]
    Case1_2,
    #[serde(rename = "2")]
    Case2,
    #[serde(rename = "3")]
    Case3,
    #[serde(rename = "4")]
    Case4,
    #[serde(rename = "5")]
    Case5,
    #[serde(rename = "6")]
    Case6,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Case1_1 => "1.1",
            CaseTag::Case1_2 => "1.2",
            CaseTag::Case2 => "2",
            CaseTag::Case3 => "3",
            CaseTag::Case4 => "4",
            CaseTag::Case5 => "5",
            CaseTag::Case6 => "6",
        })
    }
}

/// Zero set of `(x - alpha) * (x - beta)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroSetQuadratic {
    pub case: CaseTag,
    /// The two sides play swapped roles relative to the case statement.
    pub mirrored: bool,
    /// `((a1, b1), (a2, b2))`.
    pub factors: ((Quat, Quat), (Quat, Quat)),
    pub plus: QuatQuadraticZeros,
    pub minus: QuatQuadraticZeros,
    /// Cartesian product of the side loci, `(p-locus, q-locus)`.
    pub zeros: Vec<(Locus, Locus)>,
}

impl ZeroSetQuadratic {
    fn side_polys(&self) -> (QuatPoly, QuatPoly) {
        let ((a1, b1), (a2, b2)) = self.factors;
        (
            QuatPoly::linear(a1).star_mul(&QuatPoly::linear(b1)),
            QuatPoly::linear(a2).star_mul(&QuatPoly::linear(b2)),
        )
    }

    /// Largest `|F(p)|`, `|G(q)|` over every reported point and sphere probe.
    pub fn max_residual(&self) -> f64 {
        let (f, g) = self.side_polys();
        let mut worst = 0.0_f64;
        for (lp, lq) in &self.zeros {
            for p in lp.probes() {
                worst = worst.max(f.eval(p).modulus());
            }
            for q in lq.probes() {
                worst = worst.max(g.eval(q).modulus());
            }
        }
        worst
    }
}

/// `((a1, b1), (a2, b2))` with `alpha = omega+ a1 + omega- a2`, `beta = omega+ b1 + omega- b2`.
pub fn split_factors(alpha: &CliffordElement, beta: &CliffordElement) -> ((Quat, Quat), (Quat, Quat)) {
    let (s, t) = (split(alpha), split(beta));
    ((s.p, t.p), (s.q, t.q))
}

/// Classifies the zero set of `(x - alpha) * (x - beta)` for any `alpha`, `beta` in R3.
pub fn classify_quadratic(alpha: &CliffordElement, beta: &CliffordElement, tol: f64) -> ZeroSetQuadratic {
    let factors = split_factors(alpha, beta);
    let ((a1, b1), (a2, b2)) = factors;
    let plus = quat_quadratic_zeros(a1, b1, tol);
    let minus = quat_quadratic_zeros(a2, b2, tol);
    use SideKind::*;
    let (case, mirrored) = match (plus.kind(), minus.kind()) {
        (Sphere, Sphere) if same_sphere(a1, a2, tol) => (CaseTag::Case1_1, false),
        (Sphere, Sphere) => (CaseTag::Case1_2, false),
        (Sphere, Single) => (CaseTag::Case2, false),
        (Single, Sphere) => (CaseTag::Case2, true),
        (Sphere, Two) => (CaseTag::Case3, false),
        (Two, Sphere) => (CaseTag::Case3, true),
        (Two, Two) => (CaseTag::Case4, false),
        (Single, Single) => (CaseTag::Case5, false),
        (Two, Single) => (CaseTag::Case6, false),
        (Single, Two) => (CaseTag::Case6, true),
    };
    let lp = plus.loci(tol);
    let lq = minus.loci(tol);
    let zeros = lp.iter().flat_map(|p| lq.iter().map(move |q| (*p, *q))).collect();
    ZeroSetQuadratic { case, mirrored, factors, plus, minus, zeros }
}

/// A polynomial given as an ordered product of linear factors `(x - alpha_k)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct FactoredPoly {
    pub roots: Vec<CliffordElement>,
}

impl FactoredPoly {
    pub fn new(roots: Vec<CliffordElement>) -> Self {
        FactoredPoly { roots }
    }

    /// Accepts factored input, or coefficients of a monic linear polynomial.
    pub fn from_input(input: &PolyInput, tol: f64) -> Result<Self> {
        match input {
            PolyInput::Factored(roots) => Ok(FactoredPoly::new(roots.clone())),
            PolyInput::Coeffs(c) => {
                let p = BiSlicePoly::new(c.clone());
                match p.degree(tol) {
                    Some(1) if c[1].approx_eq(&CliffordElement::ONE, tol) => Ok(FactoredPoly::new(vec![-c[0]])),
                    Some(0) | None => Ok(FactoredPoly::default()),
                    _ => Err(Error::UnfactoredInput(
                        "expected a product of linear factors '(x - a)*(x - b)*...'".into(),
                    )),
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn poly(&self) -> BiSlicePoly {
        BiSlicePoly::from_roots(&self.roots)
    }

    /// Side roots `(a_k)` and `(b_k)` of every factor.
    pub fn side_roots(&self) -> (Vec<Quat>, Vec<Quat>) {
        self.roots.iter().map(split).map(|s| (s.p, s.q)).unzip()
    }

    pub fn side_polys(&self) -> (QuatPoly, QuatPoly) {
        let (a, b) = self.side_roots();
        let prod = |rs: &[Quat]| rs.iter().fold(QuatPoly::constant(Quat::ONE), |acc, r| acc.star_mul(&QuatPoly::linear(*r)));
        (prod(&a), prod(&b))
    }
}

/// Multiplicity data of one side at a base sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SideMultiplicity {
    /// Largest `s` with `[(t - x)^2 + y^2]^s` dividing the side polynomial.
    pub spherical: usize,
    /// Roots of the remaining factor on the sphere, counted with multiplicity.
    pub point: usize,
    /// Where the remaining factor vanishes on the sphere, if it does.
    pub location: Option<Quat>,
}

impl SideMultiplicity {
    /// Linear factors of the side on this base: `2 s + pt`.
    pub fn count(&self) -> usize {
        2 * self.spherical + self.point
    }
}

/// The four multiplicity figures at a base sphere, with the component data behind them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MultiplicityReport {
    pub base: SphereDescriptor,
    pub plus: SideMultiplicity,
    pub minus: SideMultiplicity,
    /// `2 s_F + 2 s_G` at (sphere, sphere).
    pub four_dimensional: usize,
    /// `pt_F + pt_G` at (point, point).
    pub isolated: usize,
    /// `2 s_F + pt_G` at (sphere, point).
    pub first_kind: usize,
    /// `pt_F + 2 s_G` at (point, sphere).
    pub second_kind: usize,
}

/// Repeated exact division by a real monic divisor; returns the power and the cofactor.
fn divide_out(f: &QuatPoly, divisor: &[f64], tol: f64) -> (usize, QuatPoly) {
    let mut cur = f.trimmed(0.0);
    let mut k = 0;
    while cur.coeffs.len() >= divisor.len() {
        let (q, r) = cur.div_rem_real_monic(divisor);
        if r.max_abs() > tol * (1.0 + cur.max_abs()) {
            break;
        }
        cur = q;
        k += 1;
    }
    (k, cur)
}

fn side_multiplicity(f: &QuatPoly, base: &SphereDescriptor, tol: f64) -> SideMultiplicity {
    if base.is_point(tol) {
        let (k, _) = divide_out(f, &[-base.center, 1.0], tol);
        let location = (k > 0).then(|| Quat::real(base.center));
        return SideMultiplicity { spherical: 0, point: k, location };
    }
    let x = base.center;
    let y = base.radius;
    let delta = [x * x + y * y, -2.0 * x, 1.0];
    let (s, rest) = divide_out(f, &delta, tol);
    let (pt, _) = divide_out(&rest.symmetrization(), &delta, tol);
    let location = (pt > 0).then(|| {
        // rest = Q delta + (v + t u); its zero on the sphere is -v u^-1
        let (_, r) = rest.div_rem_real_monic(&delta);
        let v = r.coeffs.first().copied().unwrap_or(Quat::ZERO);
        let u = r.coeffs.get(1).copied().unwrap_or(Quat::ZERO);
        match u.inverse(tol) {
            Some(ui) => -(v * ui),
            None => Quat::real(x) + Quat::E23.scale(y),
        }
    });
    SideMultiplicity { spherical: s, point: pt, location }
}

/// Multiplicities of a factored polynomial at the base sphere `x + y S` (a real point when `y = 0`).
pub fn multiplicities(factors: &FactoredPoly, base: SphereDescriptor, tol: f64) -> MultiplicityReport {
    let (f, g) = factors.side_polys();
    let plus = side_multiplicity(&f, &base, tol);
    let minus = side_multiplicity(&g, &base, tol);
    MultiplicityReport {
        base,
        plus,
        minus,
        four_dimensional: 2 * plus.spherical + 2 * minus.spherical,
        isolated: plus.point + minus.point,
        first_kind: 2 * plus.spherical + minus.point,
        second_kind: plus.point + 2 * minus.spherical,
    }
}

/// Reports at every distinct sphere carrying a side root.
pub fn multiplicity_profile(factors: &FactoredPoly, tol: f64) -> Vec<MultiplicityReport> {
    let (a, b) = factors.side_roots();
    let mut bases: Vec<SphereDescriptor> = Vec::new();
    for r in a.iter().chain(&b) {
        let s = r.sphere();
        let s = if s.is_point(tol) { SphereDescriptor::new(s.center, 0.0) } else { s };
        if !bases.iter().any(|o| o.approx_eq(&s, tol.max(1e-9))) {
            bases.push(s);
        }
    }
    bases.into_iter().map(|base| multiplicities(factors, base, tol)).collect()
}

/// A root of the polynomial: the first factor's root, which is a zero of both sides.
pub fn fta_witness(factors: &FactoredPoly, tol: f64) -> Result<ConePoint> {
    let first = factors
        .roots
        .first()
        .ok_or_else(|| Error::InvalidArgument("polynomial has degree 0".into()))?;
    let s = split(first);
    ConePoint::new(&join(&QuatPair::new(s.p, s.q)), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford3::{Blade, DEFAULT_TOL};
    use crate::parse::parse_element;
    use proptest::prelude::*;

    fn el(s: &str) -> CliffordElement {
        parse_element(s).unwrap()
    }

    fn q(w: f64, a23: f64, a13: f64, a12: f64) -> Quat {
        Quat::new(w, a23, a13, a12)
    }

    #[test]
    fn split_factor_examples() {
        assert_eq!(split_factors(&el("e12"), &el("e23")), ((Quat::E12, Quat::E23), (Quat::E12, Quat::E23)));
        assert_eq!(split_factors(&el("e1"), &el("e1")), ((-Quat::E23, -Quat::E23), (Quat::E23, Quat::E23)));
        assert_eq!(split_factors(&el("e1"), &el("e23")), ((-Quat::E23, Quat::E23), (Quat::E23, Quat::E23)));
    }

    #[test]
    fn quaternionic_quadratic_examples() {
        let z = quat_quadratic_zeros(Quat::E23.scale(2.0), Quat::E23.scale(-2.0), DEFAULT_TOL);
        assert_eq!(z, QuatQuadraticZeros::Sphere { sphere: SphereDescriptor::new(0.0, 2.0) });
        let z = quat_quadratic_zeros(Quat::E23.scale(2.0), Quat::E13.scale(4.0), DEFAULT_TOL);
        let QuatQuadraticZeros::TwoPoints { first, second } = z else { panic!("{z:?}") };
        assert_eq!(first, Quat::E23.scale(2.0));
        assert!(second.approx_eq(q(0.0, 16.0, 12.0, 0.0).scale(0.2), 1e-14));
        let z = quat_quadratic_zeros(Quat::real(3.0), Quat::real(3.0), DEFAULT_TOL);
        assert_eq!(z.loci(DEFAULT_TOL), vec![Locus::Point { point: Quat::real(3.0) }]);
        let z = quat_quadratic_zeros(Quat::E12, Quat::E23, DEFAULT_TOL);
        assert_eq!(z, QuatQuadraticZeros::SinglePoint { point: Quat::E12 });
    }

    #[test]
    fn case_five_literal() {
        let z = classify_quadratic(&el("e12"), &el("e23"), DEFAULT_TOL);
        assert_eq!(z.case, CaseTag::Case5);
        assert_eq!(z.zeros, vec![(Locus::Point { point: Quat::E12 }, Locus::Point { point: Quat::E12 })]);
        assert!(z.max_residual() < 1e-12);
    }

    #[test]
    fn repeated_e1_is_a_single_point() {
        // the split is (p + e23)^2 and (q - e23)^2
        let z = classify_quadratic(&el("e1"), &el("e1"), DEFAULT_TOL);
        assert_eq!(z.case, CaseTag::Case5);
        let x = ConePoint::new(&el("e1"), DEFAULT_TOL).unwrap();
        assert!(BiSlicePoly::from_roots(&[el("e1"), el("e1")]).eval(&x).is_zero(1e-12));
    }

    #[test]
    fn e1_times_e23_is_case_two() {
        let z = classify_quadratic(&el("e1"), &el("e23"), DEFAULT_TOL);
        assert_eq!((z.case, z.mirrored), (CaseTag::Case2, false));
        assert_eq!(
            z.zeros,
            vec![(Locus::Sphere { sphere: SphereDescriptor::new(0.0, 1.0) }, Locus::Point { point: Quat::E23 })]
        );
        assert!(z.max_residual() < 1e-12);
    }

    #[test]
    fn conjugate_pair_gives_four_dimensional_sphere() {
        let alpha = el("e1");
        let z = classify_quadratic(&alpha, &alpha.conj(), DEFAULT_TOL);
        assert_eq!(z.case, CaseTag::Case1_1);
        let alpha = join(&QuatPair::new(-Quat::E23, Quat::E23.scale(2.0)));
        let z = classify_quadratic(&alpha, &alpha.conj(), DEFAULT_TOL);
        assert_eq!(z.case, CaseTag::Case1_2);
        assert!(z.max_residual() < 1e-12);
    }

    #[test]
    fn mirrored_cases() {
        let a = join(&QuatPair::new(Quat::E12, Quat::E23));
        let b = join(&QuatPair::new(Quat::E13, -Quat::E23));
        let z = classify_quadratic(&a, &b, DEFAULT_TOL);
        assert_eq!((z.case, z.mirrored), (CaseTag::Case2, true));
        let b = join(&QuatPair::new(Quat::E13.scale(3.0), -Quat::E23));
        let z = classify_quadratic(&a, &b, DEFAULT_TOL);
        assert_eq!((z.case, z.mirrored), (CaseTag::Case3, true));
        let b = join(&QuatPair::new(Quat::E13, Quat::E12.scale(2.0)));
        let z = classify_quadratic(&a, &b, DEFAULT_TOL);
        assert_eq!((z.case, z.mirrored), (CaseTag::Case6, true));
        assert!(z.max_residual() < 1e-12);
    }

    #[test]
    fn multiplicities_of_e1_times_e23() {
        let f = FactoredPoly::new(vec![el("e1"), el("e23")]);
        let r = multiplicities(&f, SphereDescriptor::new(0.0, 1.0), DEFAULT_TOL);
        assert_eq!((r.four_dimensional, r.isolated, r.first_kind, r.second_kind), (2, 2, 4, 0));
        assert_eq!(r.minus.location, Some(Quat::E23));
        assert_eq!(r.plus.location, None);
    }

    #[test]
    fn multiplicities_of_repeated_e1() {
        let f = FactoredPoly::new(vec![el("e1"), el("e1")]);
        let r = multiplicities(&f, SphereDescriptor::new(0.0, 1.0), DEFAULT_TOL);
        assert_eq!((r.four_dimensional, r.isolated, r.first_kind, r.second_kind), (0, 4, 2, 2));
        assert!(r.plus.location.unwrap().approx_eq(-Quat::E23, 1e-12));
        assert!(r.minus.location.unwrap().approx_eq(Quat::E23, 1e-12));
    }

    #[test]
    fn real_base_counts_linear_factors() {
        let f = FactoredPoly::new(vec![el("3"), el("e1"), el("3")]);
        let r = multiplicities(&f, SphereDescriptor::new(3.0, 0.0), DEFAULT_TOL);
        assert_eq!((r.plus.point, r.minus.point, r.four_dimensional), (2, 2, 0));
        let profile = multiplicity_profile(&f, DEFAULT_TOL);
        let total: usize = profile.iter().map(|r| r.four_dimensional + r.isolated).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn unfactored_input_is_rejected() {
        let input = PolyInput::Coeffs(vec![el("1"), el("0"), el("1")]);
        assert!(matches!(FactoredPoly::from_input(&input, DEFAULT_TOL), Err(Error::UnfactoredInput(_))));
        let input = PolyInput::Coeffs(vec![el("-e1"), el("1")]);
        assert_eq!(FactoredPoly::from_input(&input, DEFAULT_TOL).unwrap().roots, vec![el("e1")]);
    }

    #[test]
    fn fta_witness_examples() {
        let f = FactoredPoly::new(vec![el("e12"), el("e23")]);
        let w = fta_witness(&f, DEFAULT_TOL).unwrap();
        assert_eq!(w.element(), CliffordElement::blade(Blade::E12));
        let c = el("e1 + e23");
        let w = fta_witness(&FactoredPoly::new(vec![c]), DEFAULT_TOL);
        assert!(matches!(w, Err(Error::NotInCone(_))));
        let c = el("2 + e1");
        assert_eq!(fta_witness(&FactoredPoly::new(vec![c]), DEFAULT_TOL).unwrap().element(), c);
    }

    fn unit() -> impl Strategy<Value = Quat> {
        (0.0f64..std::f64::consts::TAU, -1.0f64..1.0).prop_map(|(phi, z)| {
            let r = (1.0 - z * z).sqrt();
            Quat::new(0.0, r * phi.cos(), r * phi.sin(), z)
        })
    }

    fn quat() -> impl Strategy<Value = Quat> {
        proptest::array::uniform4(-2.0f64..2.0).prop_map(|c| Quat::new(c[0], c[1], c[2], c[3]))
    }

    proptest! {
        #[test]
        fn quadratic_zeros_verify(a in quat(), b in quat(), u in unit()) {
            let f = QuatPoly::linear(a).star_mul(&QuatPoly::linear(b));
            for l in quat_quadratic_zeros(a, b, 1e-10).loci(1e-10) {
                for p in l.probes() {
                    prop_assert!(f.eval(p).modulus() < 1e-9);
                }
            }
            // forced shapes
            let on = a.sphere().point(u);
            let f = QuatPoly::linear(a).star_mul(&QuatPoly::linear(on));
            for l in quat_quadratic_zeros(a, on, 1e-10).loci(1e-10) {
                for p in l.probes() {
                    prop_assert!(f.eval(p).modulus() < 1e-9);
                }
            }
        }

        #[test]
        fn case_one_spheres_are_zero_sets(i in unit(), j in unit(), a in quat(), b in quat()) {
            let alpha = join(&QuatPair::new(a, b));
            let z = classify_quadratic(&alpha, &alpha.conj(), 1e-10);
            prop_assert!(matches!(z.case, CaseTag::Case1_1 | CaseTag::Case1_2));
            let p = BiSlicePoly::from_roots(&[alpha, alpha.conj()]);
            let x = join(&QuatPair::new(a.sphere().point(i), b.sphere().point(j)));
            prop_assert!(p.eval_horner(&x).max_abs() < 1e-9);
        }

        #[test]
        fn tag_is_stable_under_tiny_perturbations(a in proptest::array::uniform8(-2.0f64..2.0), b in proptest::array::uniform8(-2.0f64..2.0), d in proptest::array::uniform8(-1.0f64..1.0)) {
            let (a, b) = (CliffordElement::new(a), CliffordElement::new(b));
            let tol = 1e-10;
            let z = classify_quadratic(&a, &b, tol);
            let nudged = b + CliffordElement::new(d) * (tol / 10.0);
            prop_assert_eq!(classify_quadratic(&a, &nudged, tol).case, z.case);
        }
    }
}

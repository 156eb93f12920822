//! The splitting `R3 = omega+ H (+) omega- H`.
//!
//! Quaternions live on the even subalgebra with basis `(e0, e23, e13, e12)`.
//! The usual `(1, i, j, k)` view is `i = e23`, `j = e31 = -e13`, `k = e12`.
//! Every `x` in R3 is `omega+ p + omega- q` for a unique pair `(p, q)`, and the
//! pair multiplies componentwise. The quadratic cone is the set of pairs with
//! equal real parts and equal imaginary moduli.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::clifford3::{write_terms, Blade, CliffordElement, DEFAULT_TOL, OMEGA_MINUS, OMEGA_PLUS};
use crate::error::{Component, Error, Result};

/// A quaternion on the even-subalgebra basis `(e0, e23, e13, e12)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quat {
    pub w: f64,
    pub a23: f64,
    pub a13: f64,
    pub a12: f64,
}

impl Quat {
    pub const ZERO: Quat = Quat::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quat = Quat::new(1.0, 0.0, 0.0, 0.0);
    pub const E23: Quat = Quat::new(0.0, 1.0, 0.0, 0.0);
    pub const E13: Quat = Quat::new(0.0, 0.0, 1.0, 0.0);
    pub const E12: Quat = Quat::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, a23: f64, a13: f64, a12: f64) -> Self {
        Quat { w, a23, a13, a12 }
    }

    pub const fn real(w: f64) -> Self {
        Quat::new(w, 0.0, 0.0, 0.0)
    }

    /// From the `(1, i, j, k)` view, with `j = -e13`.
    pub fn from_ijk(w: f64, i: f64, j: f64, k: f64) -> Self {
        Quat::new(w, i, -j, k)
    }

    pub fn to_ijk(self) -> [f64; 4] {
        [self.w, self.a23, -self.a13, self.a12]
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.a23, self.a13, self.a12]
    }

    /// Embeds into the even part of R3.
    pub fn embed(self) -> CliffordElement {
        let mut x = CliffordElement::ZERO;
        x[Blade::E0] = self.w;
        x[Blade::E23] = self.a23;
        x[Blade::E13] = self.a13;
        x[Blade::E12] = self.a12;
        x
    }

    pub fn conj(self) -> Quat {
        Quat::new(self.w, -self.a23, -self.a13, -self.a12)
    }

    pub fn re(self) -> f64 {
        self.w
    }

    pub fn im(self) -> Quat {
        Quat::new(0.0, self.a23, self.a13, self.a12)
    }

    /// `|q|^2`, the real part of `q q^c`.
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.a23 * self.a23 + self.a13 * self.a13 + self.a12 * self.a12
    }

    pub fn modulus(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn im_modulus(self) -> f64 {
        self.im().modulus()
    }

    pub fn scale(self, s: f64) -> Quat {
        Quat::new(self.w * s, self.a23 * s, self.a13 * s, self.a12 * s)
    }

    /// Euclidean inner product of the coefficient vectors.
    pub fn dot(self, o: Quat) -> f64 {
        self.w * o.w + self.a23 * o.a23 + self.a13 * o.a13 + self.a12 * o.a12
    }

    pub fn max_abs(self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    pub fn approx_eq(self, o: Quat, tol: f64) -> bool {
        (self - o).max_abs() <= tol
    }

    pub fn is_zero(self, tol: f64) -> bool {
        self.modulus() <= tol
    }

    pub fn is_real(self, tol: f64) -> bool {
        self.im_modulus() <= tol
    }

    pub fn inverse(self, tol: f64) -> Option<Quat> {
        let n = self.norm_sqr();
        if n.sqrt() <= tol {
            None
        } else {
            Some(self.conj().scale(1.0 / n))
        }
    }

    /// Non-negative integer power by repeated squaring.
    pub fn powu(self, n: u32) -> Quat {
        let mut base = self;
        let mut acc = Quat::ONE;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Unit imaginary direction, or `None` when the quaternion is real.
    pub fn imaginary_unit(self, tol: f64) -> Option<Quat> {
        let m = self.im_modulus();
        (m > tol).then(|| self.im().scale(1.0 / m))
    }

    /// `q^2 = -1`, i.e. zero real part and unit modulus.
    pub fn is_imaginary_unit(self, tol: f64) -> bool {
        (self * self + Quat::ONE).max_abs() <= tol
    }

    /// The sphere `Re(q) + |Im(q)| S` through `q`.
    pub fn sphere(self) -> SphereDescriptor {
        SphereDescriptor::new(self.re(), self.im_modulus())
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, o: Quat) -> Quat {
        Quat::new(self.w + o.w, self.a23 + o.a23, self.a13 + o.a13, self.a12 + o.a12)
    }
}

impl AddAssign for Quat {
    fn add_assign(&mut self, o: Quat) {
        *self = *self + o;
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, o: Quat) -> Quat {
        Quat::new(self.w - o.w, self.a23 - o.a23, self.a13 - o.a13, self.a12 - o.a12)
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        self.scale(-1.0)
    }
}

impl Mul for Quat {
    type Output = Quat;
    /// Hamilton product in the `(1, i, j, k)` view, mapped back to e-coefficients.
    fn mul(self, o: Quat) -> Quat {
        let [a0, a1, a2, a3] = self.to_ijk();
        let [b0, b1, b2, b3] = o.to_ijk();
        Quat::from_ijk(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }
}

impl Mul<f64> for Quat {
    type Output = Quat;
    fn mul(self, s: f64) -> Quat {
        self.scale(s)
    }
}

impl From<f64> for Quat {
    fn from(w: f64) -> Quat {
        Quat::real(w)
    }
}

impl std::iter::Sum for Quat {
    fn sum<I: Iterator<Item = Quat>>(iter: I) -> Self {
        iter.fold(Quat::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            [(self.w, "1"), (self.a23, "e23"), (self.a13, "e13"), (self.a12, "e12")].into_iter(),
        )
    }
}

/// The pair `(p, q)` standing for `omega+ p + omega- q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct QuatPair {
    pub p: Quat,
    pub q: Quat,
}

impl QuatPair {
    pub const fn new(p: Quat, q: Quat) -> Self {
        QuatPair { p, q }
    }

    pub fn component(&self, c: Component) -> Quat {
        match c {
            Component::Plus => self.p,
            Component::Minus => self.q,
        }
    }

    pub fn approx_eq(&self, o: &QuatPair, tol: f64) -> bool {
        self.p.approx_eq(o.p, tol) && self.q.approx_eq(o.q, tol)
    }
}

impl Mul for QuatPair {
    type Output = QuatPair;
    fn mul(self, o: QuatPair) -> QuatPair {
        QuatPair::new(self.p * o.p, self.q * o.q)
    }
}

impl fmt::Display for QuatPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        fmt::Display::fmt(&self.p, f)?;
        f.write_str(" | ")?;
        fmt::Display::fmt(&self.q, f)?;
        f.write_str(")")
    }
}

/// Splits `x` into `(p, q)` with `x = omega+ p + omega- q`.
pub fn split(x: &CliffordElement) -> QuatPair {
    let c = |b| x[b];
    let p = Quat::new(
        c(Blade::E0) + c(Blade::E123),
        c(Blade::E23) - c(Blade::E1),
        c(Blade::E13) + c(Blade::E2),
        c(Blade::E12) - c(Blade::E3),
    );
    let q = Quat::new(
        c(Blade::E0) - c(Blade::E123),
        c(Blade::E23) + c(Blade::E1),
        c(Blade::E13) - c(Blade::E2),
        c(Blade::E12) + c(Blade::E3),
    );
    QuatPair::new(p, q)
}

/// `omega+ p + omega- q`, computed with the Clifford product.
pub fn join(pair: &QuatPair) -> CliffordElement {
    OMEGA_PLUS * pair.p.embed() + OMEGA_MINUS * pair.q.embed()
}

/// Residuals of the two cone equations: `x123` and `x2 x13 - x1 x23 - x3 x12`.
pub fn cone_residuals(x: &CliffordElement) -> (f64, f64) {
    let c = |b| x[b];
    (
        c(Blade::E123),
        c(Blade::E2) * c(Blade::E13) - c(Blade::E1) * c(Blade::E23) - c(Blade::E3) * c(Blade::E12),
    )
}

/// Quadratic cone membership through its two defining equations.
pub fn in_cone(x: &CliffordElement, tol: f64) -> bool {
    let (r1, r2) = cone_residuals(x);
    r1.abs() <= tol && r2.abs() <= tol
}

/// Cone membership read off the split: equal real parts and imaginary moduli.
pub fn in_cone_split(pair: &QuatPair, tol: f64) -> bool {
    (pair.p.re() - pair.q.re()).abs() <= tol
        && (pair.p.im_modulus() - pair.q.im_modulus()).abs() <= tol
}

/// Both split components square to `-1`.
pub fn is_sqrt_minus_one(x: &CliffordElement, tol: f64) -> bool {
    let s = split(x);
    s.p.is_imaginary_unit(tol) && s.q.is_imaginary_unit(tol)
}

fn invert_pair(pair: &QuatPair, tol: f64) -> Result<QuatPair> {
    let p = pair.p.inverse(tol).ok_or(Error::SingularElement {
        component: Component::Plus,
        modulus: pair.p.modulus(),
    })?;
    let q = pair.q.inverse(tol).ok_or(Error::SingularElement {
        component: Component::Minus,
        modulus: pair.q.modulus(),
    })?;
    Ok(QuatPair::new(p, q))
}

/// Inverse through the split: `join(p^-1, q^-1)`.
pub fn inverse(x: &CliffordElement, tol: f64) -> Result<CliffordElement> {
    Ok(join(&invert_pair(&split(x), tol)?))
}

/// Integer power through the split: `join(p^n, q^n)`; negative `n` needs an inverse.
pub fn power(x: &CliffordElement, n: i32, tol: f64) -> Result<CliffordElement> {
    let mut pair = split(x);
    if n < 0 {
        pair = invert_pair(&pair, tol)?;
    }
    let k = n.unsigned_abs();
    Ok(join(&QuatPair::new(pair.p.powu(k), pair.q.powu(k))))
}

/// A sphere `alpha + |beta| S` in H; radius zero is the single real point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereDescriptor {
    pub center: f64,
    pub radius: f64,
}

impl SphereDescriptor {
    pub fn new(center: f64, radius: f64) -> Self {
        SphereDescriptor { center, radius: radius.abs() }
    }

    pub fn is_point(&self, tol: f64) -> bool {
        self.radius <= tol
    }

    pub fn contains(&self, q: Quat, tol: f64) -> bool {
        (q.re() - self.center).abs() <= tol && (q.im_modulus() - self.radius).abs() <= tol
    }

    pub fn approx_eq(&self, o: &SphereDescriptor, tol: f64) -> bool {
        (self.center - o.center).abs() <= tol && (self.radius - o.radius).abs() <= tol
    }

    /// The point `center + radius * unit`.
    pub fn point(&self, unit: Quat) -> Quat {
        Quat::real(self.center) + unit.scale(self.radius)
    }
}

impl fmt::Display for SphereDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision();
        let c = crate::clifford3::format_real(self.center, d);
        let r = crate::clifford3::format_real(self.radius, d);
        write!(f, "S[{c} + {r}S]")
    }
}

/// A certified element of the quadratic cone, with its slice coordinates.
///
/// Stores `x = omega+ (alpha + I beta) + omega- (alpha + J beta)` with `beta >= 0`.
/// For a real point the units are fixed to `e23`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConePoint {
    pair: QuatPair,
    alpha: f64,
    beta: f64,
    unit_p: Quat,
    unit_q: Quat,
}

impl ConePoint {
    /// Certifies `x` against the cone equations.
    pub fn new(x: &CliffordElement, tol: f64) -> Result<ConePoint> {
        let pair = split(x);
        if !in_cone_split(&pair, tol) {
            return Err(Error::NotInCone(x.to_string()));
        }
        let alpha = 0.5 * (pair.p.re() + pair.q.re());
        let beta = 0.5 * (pair.p.im_modulus() + pair.q.im_modulus());
        let unit_p = pair.p.imaginary_unit(tol).unwrap_or(Quat::E23);
        let unit_q = pair.q.imaginary_unit(tol).unwrap_or(Quat::E23);
        Ok(ConePoint { pair, alpha, beta, unit_p, unit_q })
    }

    /// `omega+ (alpha + I beta) + omega- (alpha + J beta)`; `beta` may be negative.
    pub fn from_slice(alpha: f64, beta: f64, unit_p: Quat, unit_q: Quat, tol: f64) -> Result<ConePoint> {
        if !unit_p.is_imaginary_unit(tol) {
            return Err(Error::NotImaginaryUnit(unit_p.to_string()));
        }
        if !unit_q.is_imaginary_unit(tol) {
            return Err(Error::NotImaginaryUnit(unit_q.to_string()));
        }
        let (beta, unit_p, unit_q) = if beta < 0.0 { (-beta, -unit_p, -unit_q) } else { (beta, unit_p, unit_q) };
        let pair = QuatPair::new(
            Quat::real(alpha) + unit_p.scale(beta),
            Quat::real(alpha) + unit_q.scale(beta),
        );
        Ok(ConePoint { pair, alpha, beta, unit_p, unit_q })
    }

    pub fn pair(&self) -> QuatPair {
        self.pair
    }

    pub fn element(&self) -> CliffordElement {
        join(&self.pair)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn units(&self) -> (Quat, Quat) {
        (self.unit_p, self.unit_q)
    }

    /// The square root of -1 `omega+ I + omega- J` whose slice holds this point.
    pub fn slice_unit(&self) -> CliffordElement {
        join(&QuatPair::new(self.unit_p, self.unit_q))
    }

    /// `t(x) = 2 alpha`.
    pub fn trace(&self) -> f64 {
        2.0 * self.alpha
    }

    /// `n(x) = alpha^2 + beta^2`.
    pub fn norm(&self) -> f64 {
        self.alpha * self.alpha + self.beta * self.beta
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.beta <= tol
    }
}

/// Cone point `omega+ (x + I y) + omega- (x + J y)`.
pub fn cone_point(x: f64, y: f64, unit_p: Quat, unit_q: Quat) -> Result<ConePoint> {
    ConePoint::from_slice(x, y, unit_p, unit_q, DEFAULT_TOL)
}

/// Membership in the cone ball `{ n(x) < radius }`; the bound is on the squared norm.
pub fn in_ball(x: &ConePoint, radius: f64) -> bool {
    x.norm() < radius
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(b: Blade) -> CliffordElement {
        CliffordElement::blade(b)
    }

    #[test]
    fn quaternion_view_matches_clifford_product() {
        // i = e23, j = -e13, k = e12 gives ij = k
        let i = Quat::from_ijk(0.0, 1.0, 0.0, 0.0).embed();
        let j = Quat::from_ijk(0.0, 0.0, 1.0, 0.0).embed();
        let k = Quat::from_ijk(0.0, 0.0, 0.0, 1.0).embed();
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
    }

    #[test]
    fn split_examples() {
        assert_eq!(split(&e(Blade::E1)), QuatPair::new(-Quat::E23, Quat::E23));
        assert_eq!(split(&e(Blade::E12)), QuatPair::new(Quat::E12, Quat::E12));
        assert_eq!(split(&CliffordElement::ONE), QuatPair::new(Quat::ONE, Quat::ONE));
    }

    #[test]
    fn join_examples() {
        assert_eq!(join(&QuatPair::new(Quat::ONE, Quat::ONE)), CliffordElement::ONE);
        assert_eq!(join(&QuatPair::new(-Quat::E23, Quat::E23)), e(Blade::E1));
        let p = Quat::new(1.5, -2.0, 0.25, 3.0);
        assert_eq!(join(&QuatPair::new(p, p)), p.embed());
    }

    #[test]
    fn cone_membership_examples() {
        assert!(in_cone(&e(Blade::E1), DEFAULT_TOL));
        assert!(!in_cone(&e(Blade::E123), DEFAULT_TOL));
        assert!(!in_cone(&(e(Blade::E1) + e(Blade::E23)), DEFAULT_TOL));
    }

    #[test]
    fn sqrt_minus_one_examples() {
        assert!(is_sqrt_minus_one(&e(Blade::E1), DEFAULT_TOL));
        assert!(is_sqrt_minus_one(&e(Blade::E12), DEFAULT_TOL));
        assert!(!is_sqrt_minus_one(&(e(Blade::E12) + e(Blade::E23)), DEFAULT_TOL));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&CliffordElement::scalar(2.0), DEFAULT_TOL).unwrap(), CliffordElement::scalar(0.5));
        assert_eq!(inverse(&e(Blade::E12), DEFAULT_TOL).unwrap(), -e(Blade::E12));
        assert!(matches!(
            inverse(&OMEGA_PLUS, DEFAULT_TOL),
            Err(Error::SingularElement { component: Component::Minus, .. })
        ));
    }

    #[test]
    fn power_examples() {
        assert_eq!(power(&e(Blade::E1), 2, DEFAULT_TOL).unwrap(), -CliffordElement::ONE);
        let x = CliffordElement::new([0.3, -1.0, 2.0, 0.5, 0.0, 1.0, -0.25, 0.75]);
        assert_eq!(power(&x, 0, DEFAULT_TOL).unwrap(), CliffordElement::ONE);
        let y = CliffordElement::ONE + e(Blade::E1);
        let direct = y * y * y;
        assert!(power(&y, 3, DEFAULT_TOL).unwrap().approx_eq(&direct, 1e-12));
        let back = power(&y, -3, DEFAULT_TOL).unwrap() * direct;
        assert!(back.approx_eq(&CliffordElement::ONE, 1e-12));
        assert!(power(&OMEGA_MINUS, -1, DEFAULT_TOL).is_err());
    }

    #[test]
    fn cone_point_examples() {
        let x = cone_point(0.0, 1.0, Quat::E23, Quat::E23).unwrap();
        assert_eq!(x.element(), e(Blade::E23));
        let x = cone_point(0.0, 1.0, -Quat::E23, Quat::E23).unwrap();
        assert_eq!(x.element(), e(Blade::E1));
        let x = cone_point(3.0, 0.0, Quat::E12, Quat::E13).unwrap();
        assert_eq!(x.element(), CliffordElement::scalar(3.0));
        assert_eq!((x.trace(), x.norm()), (6.0, 9.0));
        assert!(matches!(
            cone_point(0.0, 1.0, Quat::new(0.0, 1.0, 1.0, 0.0), Quat::E23),
            Err(Error::NotImaginaryUnit(_))
        ));
    }

    #[test]
    fn ball_examples() {
        let e1 = ConePoint::new(&e(Blade::E1), DEFAULT_TOL).unwrap();
        assert!(in_ball(&e1, 2.0));
        assert!(!in_ball(&e1, 1.0));
        let three = ConePoint::new(&CliffordElement::scalar(3.0), DEFAULT_TOL).unwrap();
        assert!(in_ball(&three, 10.0));
    }

    #[test]
    fn sphere_of_radius_zero_is_a_point() {
        let s = Quat::real(2.0).sphere();
        assert!(s.is_point(DEFAULT_TOL));
        assert!(s.contains(Quat::real(2.0), DEFAULT_TOL));
    }

    fn element() -> impl Strategy<Value = CliffordElement> {
        proptest::array::uniform8(-3.0f64..3.0).prop_map(CliffordElement)
    }

    fn unit() -> impl Strategy<Value = Quat> {
        (0.0f64..std::f64::consts::TAU, -1.0f64..1.0).prop_map(|(phi, z)| {
            let r = (1.0 - z * z).sqrt();
            Quat::new(0.0, r * phi.cos(), r * phi.sin(), z)
        })
    }

    proptest! {
        #[test]
        fn split_join_round_trip(x in element()) {
            prop_assert!(join(&split(&x)).approx_eq(&x, 1e-12));
            let pair = split(&x);
            prop_assert!(split(&join(&pair)).approx_eq(&pair, 1e-12));
        }

        #[test]
        fn split_is_multiplicative(x in element(), y in element()) {
            let lhs = split(&(x * y));
            let rhs = split(&x) * split(&y);
            prop_assert!(lhs.approx_eq(&rhs, 1e-11));
        }

        #[test]
        fn trace_and_norm_split_componentwise(x in element()) {
            let s = split(&x);
            let t = split(&x.trace());
            let n = split(&x.norm_n());
            prop_assert!(t.p.approx_eq(Quat::real(2.0 * s.p.re()), 1e-12));
            prop_assert!(t.q.approx_eq(Quat::real(2.0 * s.q.re()), 1e-12));
            prop_assert!(n.p.approx_eq(Quat::real(s.p.norm_sqr()), 1e-11));
            prop_assert!(n.q.approx_eq(Quat::real(s.q.norm_sqr()), 1e-11));
        }

        #[test]
        fn cone_points_have_real_trace_and_norm(a in -3.0f64..3.0, b in -3.0f64..3.0, i in unit(), j in unit()) {
            let x = cone_point(a, b, i, j).unwrap();
            let el = x.element();
            prop_assert!(in_cone(&el, 1e-10));
            prop_assert!(el.trace().is_real(1e-12));
            prop_assert!(el.norm_n().is_real(1e-11));
            prop_assert!((el.norm_n()[Blade::E0] - x.norm()).abs() < 1e-11);
        }

        #[test]
        fn square_roots_of_minus_one_are_cone_points(i in unit(), j in unit()) {
            let k = join(&QuatPair::new(i, j));
            prop_assert!(is_sqrt_minus_one(&k, 1e-10));
            prop_assert!(in_cone(&k, 1e-10));
            prop_assert!((k * k).approx_eq(&-CliffordElement::ONE, 1e-10));
        }
    }
}

//! The Cauchy kernel on the cone and trapezoid quadrature on slice circles.

use std::f64::consts::TAU;

use crate::bislice::{dbar_residual_fn, dbar_right_residual_fn, BiSlicePoly, QuatPoly};
use crate::clifford3::CliffordElement;
use crate::error::{Component, Error, Result};
use crate::qsplit::{join, split, ConePoint, Quat, QuatPair};

/// Default number of quadrature nodes.
pub const DEFAULT_NODES: usize = 512;

/// Relative threshold for a closed-contour integral to count as zero.
pub const VANISH_REL_TOL: f64 = 1e-8;

/// `S^-1(s, q) = (q^2 - 2 Re(s) q + |s|^2)^-1 (conj(s) - q)`.
pub fn cauchy_kernel_quat(s: Quat, q: Quat, tol: f64) -> Result<Quat> {
    kernel_component(s, q, tol).ok_or(Error::OnSingularSphere(None))
}

fn kernel_component(s: Quat, q: Quat, tol: f64) -> Option<Quat> {
    let den = q * q - q.scale(2.0 * s.re()) + Quat::real(s.norm_sqr());
    den.inverse(tol).map(|d| d * (s.conj() - q))
}

/// `omega+ S^-1(s', p) + omega- S^-1(s'', q)`.
pub fn cauchy_kernel(s: &ConePoint, x: &ConePoint, tol: f64) -> Result<CliffordElement> {
    let (sp, xp) = (s.pair(), x.pair());
    let plus = kernel_component(sp.p, xp.p, tol).ok_or(Error::OnSingularSphere(Some(Component::Plus)))?;
    let minus = kernel_component(sp.q, xp.q, tol).ok_or(Error::OnSingularSphere(Some(Component::Minus)))?;
    Ok(join(&QuatPair::new(plus, minus)))
}

/// The circle `s(theta) = center + r e^{I theta}`, counterclockwise, sampled at `nodes` points.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct SliceContour {
    pub center: f64,
    pub radius: f64,
    pub unit: Quat,
    pub nodes: usize,
}

impl SliceContour {
    pub fn new(center: f64, radius: f64, unit: Quat, nodes: usize, tol: f64) -> Result<Self> {
        if !unit.is_imaginary_unit(tol) {
            return Err(Error::NotImaginaryUnit(unit.to_string()));
        }
        if radius <= 0.0 || !radius.is_finite() {
            return Err(Error::InvalidArgument(format!("contour radius must be positive, got {radius}")));
        }
        if nodes < 16 {
            return Err(Error::InvalidArgument(format!("need at least 16 nodes, got {nodes}")));
        }
        Ok(SliceContour { center, radius, unit, nodes })
    }

    /// `e^{I theta_k}` for every node.
    fn phases(&self) -> impl Iterator<Item = Quat> + '_ {
        (0..self.nodes).map(move |k| {
            let t = TAU * k as f64 / self.nodes as f64;
            Quat::real(t.cos()) + self.unit.scale(t.sin())
        })
    }

    pub fn points(&self) -> Vec<Quat> {
        self.phases().map(|e| Quat::real(self.center) + e.scale(self.radius)).collect()
    }

    /// Trapezoid rule for `∮ ds f(s)` with `ds = r I e^{I theta} dtheta`.
    ///
    /// Returns the integral and the largest integrand modulus.
    pub fn integrate(&self, f: impl Fn(Quat) -> Quat) -> (Quat, f64) {
        let w = TAU / self.nodes as f64;
        let mut acc = Quat::ZERO;
        let mut peak = 0.0_f64;
        for e in self.phases() {
            let s = Quat::real(self.center) + e.scale(self.radius);
            let term = self.unit * e.scale(self.radius) * f(s);
            peak = peak.max(term.modulus());
            acc += term;
        }
        (acc.scale(w), peak)
    }

    /// `(1/2pi) ∮ S^-1(s, q) ds_I f(s)` with `ds_I = r e^{I theta} dtheta`.
    pub fn reconstruct(&self, f: impl Fn(Quat) -> Quat, q: Quat, tol: f64) -> Option<Quat> {
        let mut acc = Quat::ZERO;
        for e in self.phases() {
            let s = Quat::real(self.center) + e.scale(self.radius);
            acc += kernel_component(s, q, tol)? * e.scale(self.radius) * f(s);
        }
        Some(acc.scale(1.0 / self.nodes as f64))
    }

    /// Distance of `q` from the center; the symmetric interior is `|q - center| < r`.
    pub fn distance(&self, q: Quat) -> f64 {
        (q - Quat::real(self.center)).modulus()
    }
}

/// Magnitudes of the two closed-contour integrals, with their vanishing thresholds.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ContourIntegrals {
    pub plus: f64,
    pub minus: f64,
    pub plus_threshold: f64,
    pub minus_threshold: f64,
}

impl ContourIntegrals {
    pub fn vanish(&self) -> bool {
        self.plus < self.plus_threshold && self.minus < self.minus_threshold
    }
}

/// `|∮ ds F(s)|` on `c_plus` and `|∮ ds' G(s')|` on `c_minus`.
pub fn contour_integral_vanishes(p: &BiSlicePoly, c_plus: &SliceContour, c_minus: &SliceContour) -> ContourIntegrals {
    let (f, g) = p.split_poly();
    let (ip, peak_p) = c_plus.integrate(|s| f.eval(s));
    let (im, peak_m) = c_minus.integrate(|s| g.eval(s));
    ContourIntegrals {
        plus: ip.modulus(),
        minus: im.modulus(),
        plus_threshold: VANISH_REL_TOL * (1.0 + peak_p),
        minus_threshold: VANISH_REL_TOL * (1.0 + peak_m),
    }
}

/// `|∮ ds f(s)|` for an arbitrary quaternionic map on one contour.
pub fn contour_integral_fn(f: impl Fn(Quat) -> Quat, c: &SliceContour) -> (f64, f64) {
    let (v, peak) = c.integrate(f);
    (v.modulus(), VANISH_REL_TOL * (1.0 + peak))
}

fn check_inside(c: &SliceContour, q: Quat, component: Component) -> Result<()> {
    let distance = c.distance(q);
    if distance < c.radius {
        Ok(())
    } else {
        Err(Error::PointOutsideContour { component, distance, radius: c.radius })
    }
}

/// Cauchy-formula reconstruction of `p` at `x` from its values on the two contours.
///
/// The kernel reproduces `F` at any `q` with `|q - center| < r`, whether or not `q` lies
/// on the contour's slice.
pub fn cauchy_reconstruct(
    p: &BiSlicePoly,
    c_plus: &SliceContour,
    c_minus: &SliceContour,
    x: &ConePoint,
    tol: f64,
) -> Result<CliffordElement> {
    let (f, g) = p.split_poly();
    let pair = x.pair();
    check_inside(c_plus, pair.p, Component::Plus)?;
    check_inside(c_minus, pair.q, Component::Minus)?;
    let side = |c: &SliceContour, poly: &QuatPoly, q: Quat, comp: Component| {
        c.reconstruct(|s| poly.eval(s), q, tol).ok_or(Error::OnSingularSphere(Some(comp)))
    };
    let plus = side(c_plus, &f, pair.p, Component::Plus)?;
    let minus = side(c_minus, &g, pair.q, Component::Minus)?;
    Ok(join(&QuatPair::new(plus, minus)))
}

/// Finite-difference residuals of the kernel: `dbar_IJ` in `x` (left) and the right operator in `s`.
pub fn kernel_regularity_residual(s: &ConePoint, x: &ConePoint, h: f64, tol: f64) -> Result<(f64, f64)> {
    cauchy_kernel(s, x, tol)?;
    let sp = s.pair();
    let xp = x.pair();
    let checked = |a: QuatPair, b: QuatPair| -> Option<CliffordElement> {
        Some(join(&QuatPair::new(kernel_component(a.p, b.p, tol)?, kernel_component(a.q, b.q, tol)?)))
    };
    // a stencil point on the singular set poisons the residual with NaN
    let in_x = |y: &CliffordElement| checked(sp, split(y)).unwrap_or(CliffordElement::scalar(f64::NAN));
    let in_s = |y: &CliffordElement| checked(split(y), xp).unwrap_or(CliffordElement::scalar(f64::NAN));
    let left = dbar_residual_fn(&in_x, x, h);
    let right = dbar_right_residual_fn(&in_s, s, h);
    if left.is_nan() || right.is_nan() {
        return Err(Error::OnSingularSphere(None));
    }
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford3::{Blade, DEFAULT_TOL};
    use crate::qsplit::cone_point;
    use proptest::prelude::*;

    fn e(b: Blade) -> CliffordElement {
        CliffordElement::blade(b)
    }

    fn cp(x: &CliffordElement) -> ConePoint {
        ConePoint::new(x, DEFAULT_TOL).unwrap()
    }

    fn contour(r: f64, unit: Quat, n: usize) -> SliceContour {
        SliceContour::new(0.0, r, unit, n, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn quaternionic_kernel_examples() {
        let k = cauchy_kernel_quat(Quat::real(2.0), Quat::E23, DEFAULT_TOL).unwrap();
        assert!(k.approx_eq(Quat::new(0.4, 0.2, 0.0, 0.0), 1e-15));
        let q = Quat::new(0.5, -1.0, 0.25, 2.0);
        let s = Quat::real(-1.5);
        let oracle = (s - q).inverse(DEFAULT_TOL).unwrap();
        assert!(cauchy_kernel_quat(s, q, DEFAULT_TOL).unwrap().approx_eq(oracle, 1e-14));
        let s = Quat::new(1.0, 0.0, 2.0, 0.0);
        assert_eq!(cauchy_kernel_quat(s, s, DEFAULT_TOL), Err(Error::OnSingularSphere(None)));
    }

    #[test]
    fn bi_slice_kernel_examples() {
        let s = cp(&CliffordElement::scalar(2.0));
        let x = cp(&e(Blade::E1));
        let k = cauchy_kernel(&s, &x, DEFAULT_TOL).unwrap();
        let want = join(&QuatPair::new(
            cauchy_kernel_quat(Quat::real(2.0), -Quat::E23, DEFAULT_TOL).unwrap(),
            cauchy_kernel_quat(Quat::real(2.0), Quat::E23, DEFAULT_TOL).unwrap(),
        ));
        assert_eq!(k, want);
        let k = cauchy_kernel(&s, &cp(&CliffordElement::scalar(0.5)), DEFAULT_TOL).unwrap();
        assert!(k.approx_eq(&CliffordElement::scalar(1.0 / 1.5), 1e-15));
        // same sphere as s in the minus component only
        let s = cone_point(0.0, 1.0, Quat::E12, Quat::E13).unwrap();
        let x = cone_point(0.0, 1.0, Quat::E23, Quat::E12).unwrap();
        assert_eq!(
            cauchy_kernel(&s, &x, DEFAULT_TOL),
            Err(Error::OnSingularSphere(Some(Component::Plus)))
        );
    }

    #[test]
    fn closed_integrals() {
        let c = contour(1.5, Quat::E23, 256);
        let r = contour_integral_vanishes(&BiSlicePoly::identity(), &c, &c);
        assert!(r.plus < 1e-10 && r.minus < 1e-10);
        let (m, thr) = contour_integral_fn(|s| s.conj(), &c);
        assert!((m - TAU * 1.5 * 1.5).abs() < 1e-10 && m > thr);
    }

    #[test]
    fn reconstruction_examples() {
        let c = contour(2.0, Quat::E23, DEFAULT_NODES);
        let cj = contour(2.0, Quat::E23, DEFAULT_NODES);
        let x = cp(&(e(Blade::E1) * 0.5));
        let one = BiSlicePoly::constant(CliffordElement::ONE);
        assert!(cauchy_reconstruct(&one, &c, &cj, &x, DEFAULT_TOL).unwrap().approx_eq(&CliffordElement::ONE, 1e-8));
        let v = cauchy_reconstruct(&BiSlicePoly::monomial(2), &c, &cj, &x, DEFAULT_TOL).unwrap();
        assert!(v.approx_eq(&CliffordElement::scalar(-0.25), 1e-7));
        let far = cp(&(e(Blade::E1) * 3.0));
        assert!(matches!(
            cauchy_reconstruct(&one, &c, &cj, &far, DEFAULT_TOL),
            Err(Error::PointOutsideContour { component: Component::Plus, .. })
        ));
    }

    #[test]
    fn kernel_regularity_examples() {
        let s = cp(&CliffordElement::scalar(3.0));
        let x = cp(&e(Blade::E1));
        let (l, r) = kernel_regularity_residual(&s, &x, 1e-4, DEFAULT_TOL).unwrap();
        assert!(l < 1e-7 && r < 1e-7, "{l} {r}");
        let x = cone_point(0.2, 0.7, Quat::E12, Quat::E13).unwrap();
        let s = cone_point(1.0, 1.5, Quat::E23, Quat::E12).unwrap();
        let (l1, r1) = kernel_regularity_residual(&s, &x, 1e-3, DEFAULT_TOL).unwrap();
        let (l2, r2) = kernel_regularity_residual(&s, &x, 5e-4, DEFAULT_TOL).unwrap();
        assert!((l1 / l2 - 4.0).abs() < 0.5, "{l1} {l2}");
        assert!((r1 / r2 - 4.0).abs() < 0.5, "{r1} {r2}");
    }

    fn unit() -> impl Strategy<Value = Quat> {
        (0.0f64..std::f64::consts::TAU, -1.0f64..1.0).prop_map(|(phi, z)| {
            let r = (1.0 - z * z).sqrt();
            Quat::new(0.0, r * phi.cos(), r * phi.sin(), z)
        })
    }

    proptest! {
        #[test]
        fn kernel_singular_exactly_on_the_sphere(s in proptest::array::uniform4(-2.0f64..2.0), u in unit(), off in 0.01f64..1.0) {
            let s = Quat::new(s[0], s[1], s[2], s[3]);
            let on = Quat::real(s.re()) + u.scale(s.im_modulus());
            prop_assert!(cauchy_kernel_quat(s, on, 1e-9).is_err());
            let away = Quat::real(s.re()) + u.scale(s.im_modulus() + off);
            prop_assert!(cauchy_kernel_quat(s, away, 1e-9).is_ok());
        }
    }
}

//! Polynomials `sum x^n a_n` with right coefficients in R3, and their quaternionic halves.
//!
//! A polynomial over R3 splits coefficientwise into `omega+ F + omega- G` with `F`, `G`
//! quaternionic polynomials, and on cone points `f(omega+ p + omega- q) = omega+ F(p) + omega- G(q)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clifford3::{CliffordElement, OMEGA_MINUS, OMEGA_PLUS};
use crate::error::{Component, Error, Result};
use crate::qsplit::{join, power, split, ConePoint, Quat, QuatPair};

/// Quaternionic polynomial `sum q^n a_n`, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct QuatPoly {
    pub coeffs: Vec<Quat>,
}

impl QuatPoly {
    pub fn new(coeffs: Vec<Quat>) -> Self {
        QuatPoly { coeffs }
    }

    pub fn constant(c: Quat) -> Self {
        QuatPoly::new(vec![c])
    }

    /// `q - a`.
    pub fn linear(a: Quat) -> Self {
        QuatPoly::new(vec![-a, Quat::ONE])
    }

    /// `q^2 - 2x q + (x^2 + y^2)`, the real quadratic of the sphere `x + y S`.
    pub fn sphere_quadratic(x: f64, y: f64) -> Self {
        QuatPoly::new(vec![Quat::real(x * x + y * y), Quat::real(-2.0 * x), Quat::ONE])
    }

    /// Index of the last coefficient with modulus above `tol`; `None` for the zero polynomial.
    pub fn degree(&self, tol: f64) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.modulus() > tol)
    }

    /// Drops trailing coefficients with modulus at most `tol`.
    pub fn trimmed(&self, tol: f64) -> QuatPoly {
        let n = self.degree(tol).map_or(0, |d| d + 1);
        QuatPoly::new(self.coeffs[..n].to_vec())
    }

    pub fn eval(&self, q: Quat) -> Quat {
        let mut acc = Quat::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = *c + q * acc;
        }
        acc
    }

    pub fn star_mul(&self, o: &QuatPoly) -> QuatPoly {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return QuatPoly::default();
        }
        let mut out = vec![Quat::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += *a * *b;
            }
        }
        QuatPoly::new(out)
    }

    pub fn regular_conjugate(&self) -> QuatPoly {
        QuatPoly::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn symmetrization(&self) -> QuatPoly {
        self.star_mul(&self.regular_conjugate())
    }

    /// Pointwise `*`-product value `F(q) G(F(q)^-1 q F(q))`, or 0 when `F(q) = 0`.
    pub fn star_mul_at(&self, o: &QuatPoly, q: Quat, tol: f64) -> Quat {
        let a = self.eval(q);
        match a.inverse(tol) {
            None => Quat::ZERO,
            Some(ai) => a * o.eval(ai * q * a),
        }
    }

    /// Division by a polynomial with real coefficients and leading coefficient one.
    ///
    /// Real coefficients are central, so left and right division agree.
    pub fn div_rem_real_monic(&self, d: &[f64]) -> (QuatPoly, QuatPoly) {
        let m = d.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= m {
            return (QuatPoly::default(), QuatPoly::new(rem));
        }
        let mut quo = vec![Quat::ZERO; rem.len() - m];
        for k in (0..quo.len()).rev() {
            let lead = rem[k + m];
            quo[k] = lead;
            for (i, di) in d.iter().enumerate() {
                rem[k + i] = rem[k + i] - lead.scale(*di);
            }
        }
        rem.truncate(m);
        (QuatPoly::new(quo), QuatPoly::new(rem))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.max_abs()))
    }
}

impl fmt::Display for QuatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| match f.precision() {
                Some(p) => format!("{c:.p$}"),
                None => c.to_string(),
            })
            .collect();
        write_poly(f, &parts)
    }
}

/// Bi-slice polynomial `sum x^n a_n` over R3, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BiSlicePoly {
    pub coeffs: Vec<CliffordElement>,
}

impl BiSlicePoly {
    pub fn new(coeffs: Vec<CliffordElement>) -> Self {
        BiSlicePoly { coeffs }
    }

    pub fn constant(c: CliffordElement) -> Self {
        BiSlicePoly::new(vec![c])
    }

    pub fn identity() -> Self {
        BiSlicePoly::monomial(1)
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![CliffordElement::ZERO; n + 1];
        c[n] = CliffordElement::ONE;
        BiSlicePoly::new(c)
    }

    /// `x - alpha`.
    pub fn linear(alpha: CliffordElement) -> Self {
        BiSlicePoly::new(vec![-alpha, CliffordElement::ONE])
    }

    /// `(x - alpha_1) * (x - alpha_2) * ...` in the given order.
    pub fn from_roots(roots: &[CliffordElement]) -> Self {
        roots
            .iter()
            .fold(BiSlicePoly::constant(CliffordElement::ONE), |acc, r| acc.star_mul(&BiSlicePoly::linear(*r)))
    }

    pub fn degree(&self, tol: f64) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.max_abs() > tol)
    }

    pub fn split_poly(&self) -> (QuatPoly, QuatPoly) {
        let pairs: Vec<QuatPair> = self.coeffs.iter().map(split).collect();
        (
            QuatPoly::new(pairs.iter().map(|s| s.p).collect()),
            QuatPoly::new(pairs.iter().map(|s| s.q).collect()),
        )
    }

    /// Inverse of [`BiSlicePoly::split_poly`].
    pub fn join_poly(f: &QuatPoly, g: &QuatPoly) -> Self {
        let n = f.coeffs.len().max(g.coeffs.len());
        let at = |p: &QuatPoly, k: usize| p.coeffs.get(k).copied().unwrap_or(Quat::ZERO);
        BiSlicePoly::new((0..n).map(|k| join(&QuatPair::new(at(f, k), at(g, k)))).collect())
    }

    /// Value at a cone point through the split.
    pub fn eval(&self, x: &ConePoint) -> CliffordElement {
        join(&self.eval_pair(&x.pair()))
    }

    /// Componentwise values `(F(p), G(q))`.
    pub fn eval_pair(&self, pair: &QuatPair) -> QuatPair {
        let (f, g) = self.split_poly();
        QuatPair::new(f.eval(pair.p), g.eval(pair.q))
    }

    /// Direct `sum x^n a_n` with Clifford products, valid at any element.
    pub fn eval_horner(&self, x: &CliffordElement) -> CliffordElement {
        let mut acc = CliffordElement::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = *c + *x * acc;
        }
        acc
    }

    /// Direct `sum x^n a_n` using split powers, valid at any element.
    pub fn eval_powers(&self, x: &CliffordElement) -> CliffordElement {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| power(x, n as i32, 0.0).expect("non-negative powers never fail") * *a)
            .sum()
    }

    pub fn star_mul(&self, o: &BiSlicePoly) -> BiSlicePoly {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return BiSlicePoly::default();
        }
        let mut out = vec![CliffordElement::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += *a * *b;
            }
        }
        BiSlicePoly::new(out)
    }

    pub fn regular_conjugate(&self) -> BiSlicePoly {
        BiSlicePoly::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn symmetrization(&self) -> BiSlicePoly {
        self.star_mul(&self.regular_conjugate())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.max_abs()))
    }
}

impl fmt::Display for BiSlicePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| match f.precision() {
                Some(p) => format!("{c:.p$}"),
                None => c.to_string(),
            })
            .collect();
        write_poly(f, &parts)
    }
}

/// Writes `x^2 - x(e12 + e23) - e13` style output, highest degree first.
fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[String]) -> fmt::Result {
    let mut first = true;
    for (n, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let single = !c[1..].contains([' ']);
        let (neg, body) = match c.strip_prefix('-') {
            Some(rest) if single => (true, rest.to_string()),
            // every term negative: pull the sign out of the parentheses
            Some(rest) if !rest.contains(" + ") => (true, rest.replace(" - ", " + ")),
            _ => (false, c.clone()),
        };
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let xpow = match n {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{n}"),
        };
        match (n, body.as_str()) {
            (0, b) => f.write_str(b)?,
            (_, "1") => f.write_str(&xpow)?,
            (_, b) if single => write!(f, "{xpow}{b}")?,
            (_, b) => write!(f, "{xpow}({b})")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Degree of `P * Q` is the sum of degrees exactly when the leading product is nonzero.
pub fn degree_is_additive(p: &BiSlicePoly, q: &BiSlicePoly, tol: f64) -> bool {
    match (p.degree(tol), q.degree(tol)) {
        (Some(dp), Some(dq)) => !(p.coeffs[dp] * q.coeffs[dq]).is_zero(tol),
        _ => false,
    }
}

/// `f * g` at `x` through the pointwise formula, component by component.
///
/// Returns 0 when `f(x)` vanishes in both components; a singular value with only one
/// vanishing component is reported as [`Error::NotInvertibleAtPoint`].
pub fn star_mul_pointwise(f: &BiSlicePoly, g: &BiSlicePoly, x: &ConePoint, tol: f64) -> Result<CliffordElement> {
    let (ff, gf) = f.split_poly();
    let (fg, gg) = g.split_poly();
    let QuatPair { p, q } = x.pair();
    let a = ff.eval(p);
    let b = gf.eval(q);
    match (a.inverse(tol), b.inverse(tol)) {
        (None, None) => Ok(CliffordElement::ZERO),
        (None, Some(_)) => Err(Error::NotInvertibleAtPoint(Component::Plus)),
        (Some(_), None) => Err(Error::NotInvertibleAtPoint(Component::Minus)),
        (Some(ai), Some(bi)) => {
            let plus = a * fg.eval(ai * p * a);
            let minus = b * gg.eval(bi * q * b);
            Ok(OMEGA_PLUS * plus.embed() + OMEGA_MINUS * minus.embed())
        }
    }
}

/// Samples of `F` and `G` on two reference slices, for the representation formula.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceSamples {
    pub w1: Quat,
    pub w2: Quat,
    /// `F(x + W1 y)`, `F(x - W1 y)`.
    pub f: (Quat, Quat),
    /// `G(x + W2 y)`, `G(x - W2 y)`.
    pub g: (Quat, Quat),
}

impl SliceSamples {
    /// Samples a polynomial at `x +- W y` on each side.
    pub fn of_poly(p: &BiSlicePoly, x: f64, y: f64, w1: Quat, w2: Quat) -> SliceSamples {
        let (f, g) = p.split_poly();
        let at = |poly: &QuatPoly, w: Quat, s: f64| poly.eval(Quat::real(x) + w.scale(s * y));
        SliceSamples {
            w1,
            w2,
            f: (at(&f, w1, 1.0), at(&f, w1, -1.0)),
            g: (at(&g, w2, 1.0), at(&g, w2, -1.0)),
        }
    }
}

/// Value at `x = omega+ (a + I b) + omega- (a + J b)` from two-slice samples taken at the same `(a, b)`.
///
/// Per component this is `(F+ + F-)/2 - I W (F+ - F-)/2`.
pub fn representation_formula(s: &SliceSamples, x: &ConePoint, tol: f64) -> Result<CliffordElement> {
    for w in [s.w1, s.w2] {
        if !w.is_imaginary_unit(tol) {
            return Err(Error::NotImaginaryUnit(w.to_string()));
        }
    }
    let (i, j) = x.units();
    let side = |unit: Quat, w: Quat, (plus, minus): (Quat, Quat)| {
        (plus + minus).scale(0.5) - (unit * w * (plus - minus)).scale(0.5)
    };
    Ok(join(&QuatPair::new(side(i, s.w1, s.f), side(j, s.w2, s.g))))
}

/// General two-unit form: from samples on slices `W` and `K` (with `W != K`) on one side.
///
/// `(W - K)^-1 [W F(x + W y) - K F(x + K y)] + I (W - K)^-1 [F(x + W y) - F(x + K y)]`.
pub fn representation_formula_general(
    unit: Quat,
    w: Quat,
    k: Quat,
    f_w: Quat,
    f_k: Quat,
    tol: f64,
) -> Result<Quat> {
    for u in [unit, w, k] {
        if !u.is_imaginary_unit(tol) {
            return Err(Error::NotImaginaryUnit(u.to_string()));
        }
    }
    let inv = (w - k)
        .inverse(tol)
        .ok_or_else(|| Error::InvalidArgument("reference units must differ".into()))?;
    Ok(inv * (w * f_w - k * f_k) + unit * inv * (f_w - f_k))
}

/// Complex coefficient `re + im * I` on a slice.
pub type SliceComplex = [f64; 2];

/// Decomposition `F|C_I = A + B K` with `A`, `B` taking values in `C_I`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplittingProjection {
    pub unit: Quat,
    pub k: Quat,
    pub a: Vec<SliceComplex>,
    pub b: Vec<SliceComplex>,
}

impl SplittingProjection {
    fn to_quat(&self, c: SliceComplex) -> Quat {
        Quat::real(c[0]) + self.unit.scale(c[1])
    }

    /// `A(z)` and `B(z)` at `z` in `C_I`.
    pub fn eval_parts(&self, z: Quat) -> (Quat, Quat) {
        let eval = |cs: &[SliceComplex]| {
            let mut acc = Quat::ZERO;
            for c in cs.iter().rev() {
                acc = self.to_quat(*c) + z * acc;
            }
            acc
        };
        (eval(&self.a), eval(&self.b))
    }

    /// Reassembles `A(z) + B(z) K`.
    pub fn eval(&self, z: Quat) -> Quat {
        let (a, b) = self.eval_parts(z);
        a + b * self.k
    }
}

/// Projects each coefficient onto `span{1, I}` and `span{K, I K}`.
pub fn splitting_projection(f: &QuatPoly, unit: Quat, k: Quat, tol: f64) -> Result<SplittingProjection> {
    for u in [unit, k] {
        if !u.is_imaginary_unit(tol) {
            return Err(Error::NotImaginaryUnit(u.to_string()));
        }
    }
    let ip = unit.dot(k);
    if ip.abs() > tol {
        return Err(Error::NotOrthogonal(ip));
    }
    let ik = unit * k;
    let a = f.coeffs.iter().map(|c| [c.re(), c.dot(unit)]).collect();
    let b = f.coeffs.iter().map(|c| [c.dot(k), c.dot(ik)]).collect();
    Ok(SplittingProjection { unit, k, a, b })
}

/// Central differences of `phi(s, t) = f(omega+ (s + I t) + omega- (s + J t))` at the point `x`.
pub fn slice_partials(
    f: &dyn Fn(&CliffordElement) -> CliffordElement,
    x: &ConePoint,
    h: f64,
) -> (CliffordElement, CliffordElement) {
    let (i, j) = x.units();
    let at = |s: f64, t: f64| f(&join(&QuatPair::new(Quat::new(s, 0.0, 0.0, 0.0) + i.scale(t), Quat::real(s) + j.scale(t))));
    let (a, b) = (x.alpha(), x.beta());
    let ds = (at(a + h, b) - at(a - h, b)) / (2.0 * h);
    let dt = (at(a, b + h) - at(a, b - h)) / (2.0 * h);
    (ds, dt)
}

/// Magnitude of `dbar_IJ f = 1/2 (omega+ (ds + I dt) + omega- (ds + J dt)) f` at `x`, finite differences of step `h`.
pub fn dbar_residual_fn(f: &dyn Fn(&CliffordElement) -> CliffordElement, x: &ConePoint, h: f64) -> f64 {
    let (ds, dt) = slice_partials(f, x, h);
    let (i, j) = x.units();
    let d = split(&ds);
    let t = split(&dt);
    let plus = (d.p + i * t.p).scale(0.5);
    let minus = (d.q + j * t.q).scale(0.5);
    (OMEGA_PLUS * plus.embed() + OMEGA_MINUS * minus.embed()).euclidean_norm()
}

/// Magnitude of `dbar_K f = 1/2 (ds + K dt) f` with the single unit `K = omega+ I + omega- J`.
pub fn dbar_k_residual_fn(f: &dyn Fn(&CliffordElement) -> CliffordElement, x: &ConePoint, h: f64) -> f64 {
    let (ds, dt) = slice_partials(f, x, h);
    let k = x.slice_unit();
    ((ds + k * dt) * 0.5).euclidean_norm()
}

/// Right-hand operator `1/2 (ds f + dt f K)`, for functions regular on the right.
pub fn dbar_right_residual_fn(f: &dyn Fn(&CliffordElement) -> CliffordElement, x: &ConePoint, h: f64) -> f64 {
    let (ds, dt) = slice_partials(f, x, h);
    let k = x.slice_unit();
    ((ds + dt * k) * 0.5).euclidean_norm()
}

/// [`dbar_residual_fn`] for a polynomial, evaluated through the split.
pub fn dbar_residual(p: &BiSlicePoly, x: &ConePoint, h: f64) -> f64 {
    let (f, g) = p.split_poly();
    let eval = move |y: &CliffordElement| {
        let s = split(y);
        join(&QuatPair::new(f.eval(s.p), g.eval(s.q)))
    };
    dbar_residual_fn(&eval, x, h)
}

/// [`dbar_k_residual_fn`] for a polynomial, evaluated with Clifford products only.
pub fn dbar_k_residual(p: &BiSlicePoly, x: &ConePoint, h: f64) -> f64 {
    dbar_k_residual_fn(&|y: &CliffordElement| p.eval_horner(y), x, h)
}

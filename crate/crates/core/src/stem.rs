//! Stem functions and the bi-slice functions they induce.
//!
//! A stem is four quaternion-valued maps `(f1, f2, g1, g2)` of `z = alpha + i beta`,
//! with `f1`, `g1` even and `f2`, `g2` odd in `beta`. It induces
//! `f(alpha + beta K) = omega+ (f1 + I f2) + omega- (g1 + J g2)` for `K = omega+ I + omega- J`.

use std::sync::Arc;

use crate::bislice::{BiSlicePoly, QuatPoly};
use crate::clifford3::CliffordElement;
use crate::error::{Error, Result};
use crate::qsplit::{join, split, ConePoint, Quat, QuatPair};

/// A component map `(alpha, beta) -> H`.
pub type ComponentFn = Arc<dyn Fn(f64, f64) -> Quat + Send + Sync>;

/// Axially symmetric rectangle `[alpha_min, alpha_max] x [-beta_max, beta_max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StemDomain {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub beta_max: f64,
}

impl StemDomain {
    pub const PLANE: StemDomain = StemDomain {
        alpha_min: f64::NEG_INFINITY,
        alpha_max: f64::INFINITY,
        beta_max: f64::INFINITY,
    };

    pub fn new(alpha_min: f64, alpha_max: f64, beta_max: f64) -> Self {
        StemDomain { alpha_min, alpha_max, beta_max: beta_max.abs() }
    }

    pub fn contains(&self, alpha: f64, beta: f64) -> bool {
        (self.alpha_min..=self.alpha_max).contains(&alpha) && beta.abs() <= self.beta_max
    }

    /// Deterministic sample points in the upper half of a bounded window of the domain.
    fn samples(&self, n: usize) -> Vec<(f64, f64)> {
        let lo = self.alpha_min.max(-2.0);
        let hi = self.alpha_max.min(2.0);
        let top = self.beta_max.min(2.0);
        // golden-ratio lattice
        let g = 0.5 * (5f64.sqrt() - 1.0);
        (0..n)
            .map(|k| {
                let u = (k as f64 + 0.5) / n as f64;
                let v = ((k as f64 + 1.0) * g).fract();
                (lo + (hi - lo) * u, top * (0.05 + 0.9 * v))
            })
            .collect()
    }
}

/// A stem function with its domain.
#[derive(Clone)]
pub struct StemFunction {
    pub f1: ComponentFn,
    pub f2: ComponentFn,
    pub g1: ComponentFn,
    pub g2: ComponentFn,
    pub domain: StemDomain,
}

impl std::fmt::Debug for StemFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StemFunction").field("domain", &self.domain).finish_non_exhaustive()
    }
}

/// Result of a sampled check.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct CheckReport {
    pub samples: usize,
    pub max_violation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn comp(f: impl Fn(f64, f64) -> Quat + Send + Sync + 'static) -> ComponentFn {
    Arc::new(f)
}

/// Real and imaginary parts of `(alpha + i beta)^n`.
fn complex_pow(alpha: f64, beta: f64, n: usize) -> (f64, f64) {
    let (mut re, mut im) = (1.0, 0.0);
    for _ in 0..n {
        (re, im) = (re * alpha - im * beta, re * beta + im * alpha);
    }
    (re, im)
}

impl StemFunction {
    pub fn new(f1: ComponentFn, f2: ComponentFn, g1: ComponentFn, g2: ComponentFn) -> Self {
        StemFunction { f1, f2, g1, g2, domain: StemDomain::PLANE }
    }

    pub fn with_domain(mut self, domain: StemDomain) -> Self {
        self.domain = domain;
        self
    }

    /// Stem of `f(x) = x`.
    pub fn identity() -> Self {
        StemFunction::monomial(1)
    }

    /// Stem of `f(x) = x^n`.
    pub fn monomial(n: usize) -> Self {
        let re = move |a, b| Quat::real(complex_pow(a, b, n).0);
        let im = move |a, b| Quat::real(complex_pow(a, b, n).1);
        StemFunction::new(comp(re), comp(im), comp(re), comp(im))
    }

    /// Stem of the constant `c`.
    pub fn constant(c: CliffordElement) -> Self {
        let s = split(&c);
        StemFunction::new(
            comp(move |_, _| s.p),
            comp(|_, _| Quat::ZERO),
            comp(move |_, _| s.q),
            comp(|_, _| Quat::ZERO),
        )
    }

    /// Stem of a polynomial: `f1 = sum Re(z^n) b_n`, `f2 = sum Im(z^n) b_n`, likewise for `G`.
    pub fn from_poly(p: &BiSlicePoly) -> Self {
        let (f, g) = p.split_poly();
        let part = |poly: QuatPoly, imag: bool| {
            comp(move |a, b| {
                poly.coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, c)| {
                        let (re, im) = complex_pow(a, b, n);
                        c.scale(if imag { im } else { re })
                    })
                    .sum()
            })
        };
        StemFunction::new(part(f.clone(), false), part(f, true), part(g.clone(), false), part(g, true))
    }

    /// Named built-ins: `identity`, `monomial:<n>`, `constant:<element>`.
    pub fn builtin(name: &str) -> Result<Self> {
        if name == "identity" {
            return Ok(StemFunction::identity());
        }
        if let Some(n) = name.strip_prefix("monomial:") {
            let n = n
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad monomial degree '{n}'")))?;
            return Ok(StemFunction::monomial(n));
        }
        if let Some(c) = name.strip_prefix("constant:") {
            return Ok(StemFunction::constant(crate::parse::parse_element(c)?));
        }
        Err(Error::InvalidArgument(format!(
            "unknown stem '{name}'; expected identity, monomial:<n> or constant:<element>"
        )))
    }

    fn components(&self, a: f64, b: f64) -> [Quat; 4] {
        [(self.f1)(a, b), (self.f2)(a, b), (self.g1)(a, b), (self.g2)(a, b)]
    }

    fn check_domain(&self, at: &ConePoint) -> Result<()> {
        if self.domain.contains(at.alpha(), at.beta()) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { alpha: at.alpha(), beta: at.beta() })
        }
    }

    /// Induced value at `alpha + beta K`.
    pub fn induce(&self, at: &ConePoint) -> Result<CliffordElement> {
        self.check_domain(at)?;
        let (i, j) = at.units();
        Ok(induce_raw(self, at.alpha(), at.beta(), i, j))
    }

    pub fn spherical_value(&self, at: &ConePoint) -> Result<CliffordElement> {
        self.check_domain(at)?;
        let [f1, _, g1, _] = self.components(at.alpha(), at.beta());
        Ok(join(&QuatPair::new(f1, g1)))
    }

    /// `beta^-1 (omega+ f2 + omega- g2)`.
    pub fn spherical_derivative(&self, at: &ConePoint, tol: f64) -> Result<CliffordElement> {
        self.check_domain(at)?;
        if at.beta() <= tol {
            return Err(Error::RealPoint);
        }
        let [_, f2, _, g2] = self.components(at.alpha(), at.beta());
        let s = 1.0 / at.beta();
        Ok(join(&QuatPair::new(f2.scale(s), g2.scale(s))))
    }

    /// Largest violation of the even/odd conditions over sampled conjugate pairs.
    pub fn check_parity(&self, samples: usize, tol: f64) -> CheckReport {
        let pts = self.domain.samples(samples.max(1));
        let max_violation = pts
            .iter()
            .map(|&(a, b)| {
                let [f1, f2, g1, g2] = self.components(a, b);
                let [h1, h2, k1, k2] = self.components(a, -b);
                [(f1 - h1), (f2 + h2), (g1 - k1), (g2 + k2)]
                    .iter()
                    .map(|d| d.modulus())
                    .fold(0.0_f64, f64::max)
            })
            .fold(0.0_f64, f64::max);
        CheckReport { samples: pts.len(), max_violation, tolerance: tol, passed: max_violation < tol }
    }

    /// Cauchy-Riemann residuals with central differences of step `h`.
    ///
    /// The tolerance is `10 max(1, S) h^2`, with `S` the largest sampled second difference.
    pub fn check_cauchy_riemann(&self, h: f64, samples: usize) -> CheckReport {
        let pts = self.domain.samples(samples.max(1));
        let mut worst = 0.0_f64;
        let mut scale = 0.0_f64;
        for &(a, b) in &pts {
            let c = self.components(a, b);
            let pa = self.components(a + h, b);
            let ma = self.components(a - h, b);
            let pb = self.components(a, b + h);
            let mb = self.components(a, b - h);
            let d = |k: usize, plus: &[Quat; 4], minus: &[Quat; 4]| (plus[k] - minus[k]).scale(0.5 / h);
            for (x, y) in [(0, 1), (2, 3)] {
                let r1 = d(x, &pa, &ma) - d(y, &pb, &mb);
                let r2 = d(x, &pb, &mb) + d(y, &pa, &ma);
                worst = worst.max(r1.modulus()).max(r2.modulus());
            }
            for k in 0..4 {
                let s2a = (pa[k] - c[k].scale(2.0) + ma[k]).modulus() / (h * h);
                let s2b = (pb[k] - c[k].scale(2.0) + mb[k]).modulus() / (h * h);
                scale = scale.max(s2a).max(s2b);
            }
        }
        let tolerance = 10.0 * scale.max(1.0) * h * h;
        CheckReport { samples: pts.len(), max_violation: worst, tolerance, passed: worst < tolerance }
    }
}

/// Induction without the domain check; `beta` may be negative.
pub fn induce_raw(f: &StemFunction, alpha: f64, beta: f64, i: Quat, j: Quat) -> CliffordElement {
    let [f1, f2, g1, g2] = f.components(alpha, beta);
    join(&QuatPair::new(f1 + i * f2, g1 + j * g2))
}

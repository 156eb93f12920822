//! Arithmetic of the real Clifford algebra R3.
//!
//! Elements are stored as eight real coefficients in the fixed order
//! `(e0, e1, e2, e3, e12, e13, e23, e123)`. The generators satisfy
//! `ei ej + ej ei = -2 δij`, so every generator squares to `-1` and the
//! pseudoscalar `e123` squares to `+1` and is central.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// Default absolute tolerance used for zero tests throughout the crate.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Basis blade labels in storage order.
pub const BASIS_LABELS: [&str; 8] = ["1", "e1", "e2", "e3", "e12", "e13", "e23", "e123"];

/// Generator bitmask of each storage slot (bit 0 = e1, bit 1 = e2, bit 2 = e3).
const SLOT_MASK: [u8; 8] = [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];

const fn slot_of_mask(mask: u8) -> usize {
    let mut i = 0;
    while i < 8 {
        if SLOT_MASK[i] == mask {
            return i;
        }
        i += 1;
    }
    panic!("invalid blade mask")
}

/// Product of two canonical blades given as bitmasks: returns (sign, mask).
///
/// The sign counts the transpositions needed to bring the concatenated word
/// into increasing order, then applies `ei ei = -1` once per shared generator.
const fn blade_product(a: u8, b: u8) -> (i8, u8) {
    let mut swaps = 0u32;
    let mut bit = 0;
    while bit < 3 {
        if b & (1 << bit) != 0 {
            // generators of `a` with a larger index must hop over this one
            swaps += (a >> (bit + 1)).count_ones();
        }
        bit += 1;
    }
    let shared = (a & b).count_ones();
    let sign = if (swaps + shared).is_multiple_of(2) { 1 } else { -1 };
    (sign, a ^ b)
}

const fn build_table() -> [[(i8, u8); 8]; 8] {
    let mut table = [[(0i8, 0u8); 8]; 8];
    let mut i = 0;
    while i < 8 {
        let mut j = 0;
        while j < 8 {
            let (sign, mask) = blade_product(SLOT_MASK[i], SLOT_MASK[j]);
            table[i][j] = (sign, slot_of_mask(mask) as u8);
            j += 1;
        }
        i += 1;
    }
    table
}

/// `PRODUCT_TABLE[i][j] = (sign, k)` means `basis_i * basis_j = sign * basis_k`.
pub const PRODUCT_TABLE: [[(i8, u8); 8]; 8] = build_table();

/// Conjugation signs: fixes e0 and e123, negates everything else.
const CONJ_SIGN: [f64; 8] = [1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, 1.0];

/// An element of R3.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CliffordElement(pub [f64; 8]);

/// Basis blades by name, for readable construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Blade {
    E0,
    E1,
    E2,
    E3,
    E12,
    E13,
    E23,
    E123,
}

impl Blade {
    pub const ALL: [Blade; 8] = [
        Blade::E0,
        Blade::E1,
        Blade::E2,
        Blade::E3,
        Blade::E12,
        Blade::E13,
        Blade::E23,
        Blade::E123,
    ];

    pub fn slot(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        BASIS_LABELS[self.slot()]
    }

    pub fn from_label(label: &str) -> Option<Blade> {
        match label {
            "1" | "e0" => Some(Blade::E0),
            "e1" => Some(Blade::E1),
            "e2" => Some(Blade::E2),
            "e3" => Some(Blade::E3),
            "e12" => Some(Blade::E12),
            "e13" => Some(Blade::E13),
            "e23" => Some(Blade::E23),
            "e123" => Some(Blade::E123),
            _ => None,
        }
    }
}

/// The idempotent `(e0 + e123) / 2`.
pub const OMEGA_PLUS: CliffordElement =
    CliffordElement([0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]);
/// The idempotent `(e0 - e123) / 2`.
pub const OMEGA_MINUS: CliffordElement =
    CliffordElement([0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.5]);

impl CliffordElement {
    pub const ZERO: CliffordElement = CliffordElement([0.0; 8]);
    pub const ONE: CliffordElement = CliffordElement([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

    pub const fn new(coeffs: [f64; 8]) -> Self {
        CliffordElement(coeffs)
    }

    pub fn scalar(s: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = s;
        CliffordElement(c)
    }

    pub fn blade(b: Blade) -> Self {
        Self::scaled_blade(1.0, b)
    }

    pub fn scaled_blade(s: f64, b: Blade) -> Self {
        let mut c = [0.0; 8];
        c[b.slot()] = s;
        CliffordElement(c)
    }

    pub fn coeffs(&self) -> &[f64; 8] {
        &self.0
    }

    pub fn get(&self, b: Blade) -> f64 {
        self.0[b.slot()]
    }

    /// Clifford product via the frozen basis table.
    pub fn mul(&self, rhs: &CliffordElement) -> CliffordElement {
        let mut out = [0.0; 8];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in rhs.0.iter().enumerate() {
                let (sign, k) = PRODUCT_TABLE[i][j];
                out[k as usize] += f64::from(sign) * a * b;
            }
        }
        CliffordElement(out)
    }

    /// The anti-involution fixing `e0`, `e123` and negating the rest.
    pub fn conj(&self) -> CliffordElement {
        let mut out = self.0;
        for (c, s) in out.iter_mut().zip(CONJ_SIGN) {
            *c *= s;
        }
        CliffordElement(out)
    }

    /// `t(x) = x + conj(x)`.
    pub fn trace(&self) -> CliffordElement {
        *self + self.conj()
    }

    /// `n(x) = x conj(x)`. Real only when `x` lies in the quadratic cone.
    pub fn norm_n(&self) -> CliffordElement {
        self.mul(&self.conj())
    }

    pub fn scale(&self, s: f64) -> CliffordElement {
        let mut out = self.0;
        for c in out.iter_mut() {
            *c *= s;
        }
        CliffordElement(out)
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Euclidean length of the coefficient vector.
    pub fn euclidean_norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn approx_eq(&self, other: &CliffordElement, tol: f64) -> bool {
        (*self - *other).max_abs() <= tol
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// True when every non-scalar coefficient is within `tol` of zero.
    pub fn is_real(&self, tol: f64) -> bool {
        self.0[1..].iter().all(|c| c.abs() <= tol)
    }
}

impl Index<Blade> for CliffordElement {
    type Output = f64;
    fn index(&self, b: Blade) -> &f64 {
        &self.0[b.slot()]
    }
}

impl IndexMut<Blade> for CliffordElement {
    fn index_mut(&mut self, b: Blade) -> &mut f64 {
        &mut self.0[b.slot()]
    }
}

impl From<f64> for CliffordElement {
    fn from(s: f64) -> Self {
        CliffordElement::scalar(s)
    }
}

impl From<Blade> for CliffordElement {
    fn from(b: Blade) -> Self {
        CliffordElement::blade(b)
    }
}

impl Add for CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: CliffordElement) -> CliffordElement {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        CliffordElement(out)
    }
}

impl AddAssign for CliffordElement {
    fn add_assign(&mut self, rhs: CliffordElement) {
        *self = *self + rhs;
    }
}

impl Sub for CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: CliffordElement) -> CliffordElement {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o -= r;
        }
        CliffordElement(out)
    }
}

impl SubAssign for CliffordElement {
    fn sub_assign(&mut self, rhs: CliffordElement) {
        *self = *self - rhs;
    }
}

impl Neg for CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        self.scale(-1.0)
    }
}

impl Mul for CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: CliffordElement) -> CliffordElement {
        CliffordElement::mul(&self, &rhs)
    }
}

impl Mul<f64> for CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: f64) -> CliffordElement {
        self.scale(rhs)
    }
}

impl Mul<CliffordElement> for f64 {
    type Output = CliffordElement;
    fn mul(self, rhs: CliffordElement) -> CliffordElement {
        rhs.scale(self)
    }
}

impl Div<f64> for CliffordElement {
    type Output = CliffordElement;
    fn div(self, rhs: f64) -> CliffordElement {
        self.scale(1.0 / rhs)
    }
}

impl std::iter::Sum for CliffordElement {
    fn sum<I: Iterator<Item = CliffordElement>>(iter: I) -> Self {
        iter.fold(CliffordElement::ZERO, |a, b| a + b)
    }
}

/// Formats a real with `digits` significant digits.
///
/// Without a digit count the shortest round-tripping representation is used. Very small or
/// very large magnitudes use an upper-case `E` exponent, which the element grammar reads back.
pub fn format_real(x: f64, digits: Option<usize>) -> String {
    let x = match digits {
        Some(d) if d > 0 && x != 0.0 && x.is_finite() => {
            format!("{:.*e}", d - 1, x).parse::<f64>().unwrap_or(x)
        }
        _ => x,
    };
    // avoid printing "-0"
    let x = if x == 0.0 { 0.0 } else { x };
    let mag = x.abs();
    if x.is_finite() && mag != 0.0 && !(1e-5..1e16).contains(&mag) {
        return format!("{x:e}").replace('e', "E");
    }
    format!("{x}")
}

/// Writes `sum coeff*label` in the element grammar, e.g. `3 + 2e12 - e123`.
pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (f64, &'static str)>,
) -> fmt::Result {
    let digits = f.precision();
    let mut first = true;
    for (c, label) in terms {
        if c == 0.0 {
            continue;
        }
        let mag = format_real(c.abs(), digits);
        if mag == "0" {
            continue;
        }
        let sign = if c < 0.0 { "-" } else { "+" };
        if first {
            if c < 0.0 {
                f.write_str("-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        match (label, mag.as_str()) {
            ("1", m) => f.write_str(m)?,
            (l, "1") => f.write_str(l)?,
            (l, m) => write!(f, "{m}{l}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for CliffordElement {
    /// The precision flag, when given, is read as a count of significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.0.iter().copied().zip(BASIS_LABELS))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(b: Blade) -> CliffordElement {
        CliffordElement::blade(b)
    }

    #[test]
    fn generator_relations() {
        let gens = [Blade::E1, Blade::E2, Blade::E3];
        for (i, &a) in gens.iter().enumerate() {
            for (j, &b) in gens.iter().enumerate() {
                let anti = e(a) * e(b) + e(b) * e(a);
                let expected = if i == j { CliffordElement::scalar(-2.0) } else { CliffordElement::ZERO };
                assert_eq!(anti, expected, "{a:?} {b:?}");
            }
        }
        assert_eq!(e(Blade::E123) * e(Blade::E123), CliffordElement::ONE);
    }

    #[test]
    fn named_blades_match_generator_words() {
        assert_eq!(e(Blade::E1) * e(Blade::E2), e(Blade::E12));
        assert_eq!(e(Blade::E1) * e(Blade::E3), e(Blade::E13));
        assert_eq!(e(Blade::E2) * e(Blade::E3), e(Blade::E23));
        assert_eq!(e(Blade::E12) * e(Blade::E3), e(Blade::E123));
    }

    #[test]
    fn e12_times_e23_is_minus_e13() {
        // e1 e2 e2 e3 = -e1 e3
        assert_eq!(e(Blade::E12) * e(Blade::E23), -e(Blade::E13));
    }

    #[test]
    fn idempotents() {
        let (wp, wm) = (OMEGA_PLUS, OMEGA_MINUS);
        assert_eq!(wp * wp, wp);
        assert_eq!(wm * wm, wm);
        assert_eq!(wp * wm, CliffordElement::ZERO);
        assert_eq!(wm * wp, CliffordElement::ZERO);
        assert_eq!(wp + wm, CliffordElement::ONE);
        assert_eq!(wp.conj(), wp);
        assert_eq!(wm.conj(), wm);
    }

    #[test]
    fn conj_examples() {
        assert_eq!(e(Blade::E1).conj(), -e(Blade::E1));
        assert_eq!(e(Blade::E123).conj(), e(Blade::E123));
        let x = CliffordElement::scalar(3.0) + e(Blade::E12) * 2.0;
        assert_eq!(x.conj(), CliffordElement::scalar(3.0) - e(Blade::E12) * 2.0);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(CliffordElement::ONE.trace(), CliffordElement::scalar(2.0));
        assert_eq!(e(Blade::E1).trace(), CliffordElement::ZERO);
        assert_eq!(OMEGA_PLUS.trace(), CliffordElement::ONE + e(Blade::E123));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(e(Blade::E1).norm_n(), CliffordElement::ONE);
        let x = CliffordElement::scalar(2.0) + e(Blade::E23);
        assert_eq!(x.norm_n(), CliffordElement::scalar(5.0));
        // omega_plus is outside the cone, its norm is not real
        assert_eq!(OMEGA_PLUS.norm_n(), OMEGA_PLUS);
    }

    #[test]
    fn pseudoscalar_is_central() {
        for b in Blade::ALL {
            assert_eq!(e(Blade::E123) * e(b), e(b) * e(Blade::E123), "{b:?}");
        }
    }

    #[test]
    fn display_uses_element_grammar() {
        let x = CliffordElement::scalar(3.0) - e(Blade::E1) + e(Blade::E23) * 2.0;
        assert_eq!(x.to_string(), "3 - e1 + 2e23");
        assert_eq!(CliffordElement::ZERO.to_string(), "0");
        assert_eq!((-e(Blade::E23)).to_string(), "-e23");
        let r3 = CliffordElement::scalar(3f64.sqrt());
        assert_eq!(format!("{r3:.12}"), "1.73205080757");
    }

    fn element() -> impl Strategy<Value = CliffordElement> {
        proptest::array::uniform8(-4.0f64..4.0).prop_map(CliffordElement)
    }

    proptest! {
        #[test]
        fn associative(x in element(), y in element(), z in element()) {
            let l = (x * y) * z;
            let r = x * (y * z);
            prop_assert!(l.approx_eq(&r, 1e-11 * (1.0 + l.max_abs())));
        }

        #[test]
        fn conj_reverses_products(x in element(), y in element()) {
            let l = (x * y).conj();
            let r = y.conj() * x.conj();
            prop_assert!(l.approx_eq(&r, 1e-12 * (1.0 + l.max_abs())));
        }

        #[test]
        fn conj_is_an_involution(x in element()) {
            prop_assert_eq!(x.conj().conj(), x);
        }
    }
}

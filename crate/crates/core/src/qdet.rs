//! 2x2 matrices over R3 and the determinant read off their quaternionic halves.

use std::fmt;

use serde::Serialize;

use crate::clifford3::CliffordElement;
use crate::error::{Error, Result};
use crate::qsplit::{inverse, split, Quat};

/// A 2x2 quaternionic matrix `[[a, b], [c, d]]`.
pub type QuatMatrix = [[Quat; 2]; 2];

/// `sqrt(n(a) n(d) + n(c) n(b) - 2 Re(d b^c a c^c))` for a quaternionic matrix.
///
/// Fails when the radicand is below `-tol`; tiny negative rounding is clamped to zero.
pub fn quat_det(m: &QuatMatrix, tol: f64) -> Result<f64> {
    let r = quat_det_radicand(m);
    if r < -tol {
        return Err(Error::NegativeRadicand(r));
    }
    Ok(r.max(0.0).sqrt())
}

/// The radicand of [`quat_det`].
pub fn quat_det_radicand(m: &QuatMatrix) -> f64 {
    let [[a, b], [c, d]] = *m;
    a.norm_sqr() * d.norm_sqr() + c.norm_sqr() * b.norm_sqr() - 2.0 * (d * b.conj() * a * c.conj()).re()
}

/// A 2x2 matrix over R3 with its split halves.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Matrix2 {
    pub entries: [[CliffordElement; 2]; 2],
    plus: QuatMatrix,
    minus: QuatMatrix,
}

impl Matrix2 {
    pub fn new(entries: [[CliffordElement; 2]; 2]) -> Self {
        let half = |pick: fn(&crate::qsplit::QuatPair) -> Quat| {
            entries.map(|row| row.map(|x| pick(&split(&x))))
        };
        Matrix2 { entries, plus: half(|s| s.p), minus: half(|s| s.q) }
    }

    pub fn identity() -> Self {
        let (o, z) = (CliffordElement::ONE, CliffordElement::ZERO);
        Matrix2::new([[o, z], [z, o]])
    }

    pub fn a(&self) -> CliffordElement {
        self.entries[0][0]
    }
    pub fn b(&self) -> CliffordElement {
        self.entries[0][1]
    }
    pub fn c(&self) -> CliffordElement {
        self.entries[1][0]
    }
    pub fn d(&self) -> CliffordElement {
        self.entries[1][1]
    }

    /// `(A~, A~~)`, the `omega+` and `omega-` halves.
    pub fn split_matrix(&self) -> (QuatMatrix, QuatMatrix) {
        (self.plus, self.minus)
    }

    pub fn matmul(&self, o: &Matrix2) -> Matrix2 {
        let (x, y) = (&self.entries, &o.entries);
        let e = |i: usize, j: usize| x[i][0] * y[0][j] + x[i][1] * y[1][j];
        Matrix2::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    /// Determinant from the `omega+` half.
    pub fn det(&self, tol: f64) -> Result<f64> {
        quat_det(&self.plus, tol)
    }

    /// The same formula on the `omega-` half.
    pub fn det_minus(&self, tol: f64) -> Result<f64> {
        quat_det(&self.minus, tol)
    }

    /// The four products `b(c - d b^-1 a)`, `a(d - c a^-1 b)`, `c(b - a c^-1 d)`, `d(a - b d^-1 c)`;
    /// `None` where the needed inverse does not exist.
    pub fn invertibility_witnesses(&self, tol: f64) -> [Option<CliffordElement>; 4] {
        let (a, b, c, d) = (self.a(), self.b(), self.c(), self.d());
        let w = |x: CliffordElement, y: CliffordElement, z: CliffordElement, v: CliffordElement| {
            // x (y - z x^-1 v)
            inverse(&x, tol).ok().map(|xi| x * (y - z * xi * v))
        };
        [w(b, c, d, a), w(a, d, c, b), w(c, b, a, d), w(d, a, b, c)]
    }

    /// Tries the four witnesses in order, skipping undefined ones; true on the first invertible one.
    pub fn is_right_invertible(&self, tol: f64) -> bool {
        self.invertibility_witnesses(tol)
            .into_iter()
            .flatten()
            .any(|w| inverse(&w, tol).is_ok())
    }

    /// Every entry lies in the quadratic cone.
    pub fn in_cone(&self, tol: f64) -> bool {
        self.entries.iter().flatten().all(|x| crate::qsplit::in_cone(x, tol))
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        match f.precision() {
            Some(p) => write!(f, "[[{:.p$}, {:.p$}], [{:.p$}, {:.p$}]]", e[0][0], e[0][1], e[1][0], e[1][1]),
            None => write!(f, "[[{}, {}], [{}, {}]]", e[0][0], e[0][1], e[1][0], e[1][1]),
        }
    }
}

/// Formats a quaternionic matrix in the same bracket style.
pub fn format_quat_matrix(m: &QuatMatrix, digits: Option<usize>) -> String {
    let f = |q: &Quat| match digits {
        Some(p) => format!("{q:.p$}"),
        None => q.to_string(),
    };
    format!("[[{}, {}], [{}, {}]]", f(&m[0][0]), f(&m[0][1]), f(&m[1][0]), f(&m[1][1]))
}

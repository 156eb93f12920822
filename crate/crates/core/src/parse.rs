//! Text grammars for elements, polynomials and 2x2 matrices.
//!
//! ```text
//! element  := terms | positional | '[' positional ']'
//! terms    := ['+'|'-'] term (('+'|'-') term)*
//! term     := real ['*'] basis | real | basis
//! basis    := '1' | 'e0' | 'e1' | 'e2' | 'e3' | 'e12' | 'e13' | 'e23' | 'e123'
//! real     := digits ['.' digits] ['E' ['+'|'-'] digits]
//! positional := real ',' real ',' ... (exactly 8, signed)
//! poly     := 'coeffs:' '[' element (',' element)* ']' | factor ('*' factor)*
//! factor   := '(' 'x' ('-'|'+') element ')' ['^' digits] | 'x' ['^' digits]
//! matrix   := '[' '[' element ',' element ']' ',' '[' element ',' element ']' ']'
//! ```
//!
//! Exponents use an upper-case `E` because lower-case `e` starts a basis token.

use std::fmt;

use crate::clifford3::{Blade, CliffordElement};
use crate::qsplit::Quat;

/// A parse failure with the offending column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "parse error: {}", self.message)?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(self.column))
    }
}

impl std::error::Error for ParseError {}

/// Polynomial input, before it is turned into coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum PolyInput {
    /// Right coefficients, lowest degree first.
    Coeffs(Vec<CliffordElement>),
    /// Roots `alpha_k` of the linear factors `(x - alpha_1)*(x - alpha_2)*...`, left to right.
    Factored(Vec<CliffordElement>),
}

struct Cursor<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, chars: src.chars().collect(), pos: 0 }
    }

    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        ParseError { input: self.src.to_string(), column: at, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn peek_raw(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.describe_here();
            Err(self.error(self.pos, format!("expected '{c}', found {found}")))
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        let n = w.chars().count();
        if self.pos + n <= self.chars.len() && self.chars[self.pos..self.pos + n].iter().copied().eq(w.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn describe_here(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(self.pos, format!("unexpected '{c}'"))),
        }
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.pos - start
    }

    /// Unsigned real literal starting at the current position.
    fn real(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let int = self.digits();
        let mut frac = 0;
        if self.peek_raw() == Some('.') {
            self.pos += 1;
            frac = self.digits();
        }
        if int + frac == 0 {
            return Err(self.error(start, "expected a number"));
        }
        if self.peek_raw() == Some('E') {
            self.pos += 1;
            if matches!(self.peek_raw(), Some('+' | '-')) {
                self.pos += 1;
            }
            if self.digits() == 0 {
                return Err(self.error(self.pos, "expected exponent digits after 'E'"));
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<f64>().map_err(|_| self.error(start, format!("invalid number '{text}'")))
    }

    /// Basis token after an optional coefficient; `None` if no token starts here.
    fn basis(&mut self) -> Result<Option<Blade>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek_raw() {
            Some('e') => {
                self.pos += 1;
                self.digits();
                let label: String = self.chars[start..self.pos].iter().collect();
                Blade::from_label(&label)
                    .map(Some)
                    .ok_or_else(|| self.error(start, format!("unknown basis token '{label}'")))
            }
            _ => Ok(None),
        }
    }

    fn signed_real(&mut self) -> Result<f64, ParseError> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let v = self.real()?;
        Ok(if neg { -v } else { v })
    }

    /// One term: coefficient, basis token or both.
    fn term(&mut self, sign: f64, acc: &mut CliffordElement) -> Result<(), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let coeff = match self.peek_raw() {
            Some(c) if c.is_ascii_digit() || c == '.' => Some(self.real()?),
            _ => None,
        };
        let had_star = coeff.is_some() && self.eat('*');
        let blade = self.basis()?;
        match (coeff, blade) {
            (None, None) => {
                let found = self.describe_here();
                Err(self.error(start, format!("expected a term, found {found}")))
            }
            (Some(_), None) if had_star => Err(self.error(self.pos, "expected a basis token after '*'")),
            (c, b) => {
                acc[b.unwrap_or(Blade::E0)] += sign * c.unwrap_or(1.0);
                Ok(())
            }
        }
    }

    /// Signed sum of terms, stopping before `,`, `]`, `)` or end of input.
    fn terms(&mut self) -> Result<CliffordElement, ParseError> {
        let mut acc = CliffordElement::ZERO;
        let mut sign = if self.eat('-') {
            -1.0
        } else {
            self.eat('+');
            1.0
        };
        loop {
            self.term(sign, &mut acc)?;
            sign = match self.peek() {
                Some('+') => 1.0,
                Some('-') => -1.0,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn positional_tail(&mut self, first: f64) -> Result<CliffordElement, ParseError> {
        let mut c = [0.0; 8];
        c[0] = first;
        for (k, slot) in c.iter_mut().enumerate().skip(1) {
            if !self.eat(',') {
                return Err(self.error(self.pos, format!("positional form needs 8 reals, found {k}")));
            }
            *slot = self.signed_real()?;
        }
        Ok(CliffordElement::new(c))
    }

    fn bracketed_positional(&mut self) -> Result<CliffordElement, ParseError> {
        self.expect('[')?;
        let first = self.signed_real()?;
        let x = self.positional_tail(first)?;
        self.expect(']')?;
        Ok(x)
    }

    /// Element inside a list: term form or a bracketed 8-vector.
    fn nested_element(&mut self) -> Result<CliffordElement, ParseError> {
        if self.peek() == Some('[') {
            self.bracketed_positional()
        } else {
            self.terms()
        }
    }

    fn top_element(&mut self) -> Result<CliffordElement, ParseError> {
        if self.peek() == Some('[') {
            return self.bracketed_positional();
        }
        let save = self.pos;
        let x = self.terms()?;
        if self.peek() == Some(',') {
            // retry as the positional form
            self.pos = save;
            let first = self.signed_real()?;
            return self.positional_tail(first);
        }
        Ok(x)
    }

    fn exponent(&mut self) -> Result<usize, ParseError> {
        if !self.eat('^') {
            return Ok(1);
        }
        self.skip_ws();
        let start = self.pos;
        if self.digits() == 0 {
            return Err(self.error(start, "expected a repetition count after '^'"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        match text.parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(self.error(start, format!("invalid repetition count '{text}'"))),
        }
    }

    fn factor(&mut self, roots: &mut Vec<CliffordElement>) -> Result<(), ParseError> {
        let at = self.pos;
        let root = if self.eat('(') {
            if !self.eat('x') {
                let found = self.describe_here();
                return Err(self.error(self.pos, format!("expected 'x', found {found}")));
            }
            // the root is minus everything after x
            let root = match self.peek() {
                Some(')') => CliffordElement::ZERO,
                Some(s @ ('-' | '+')) => {
                    let save = self.pos;
                    self.pos += 1;
                    if self.peek() == Some('[') {
                        let v = self.bracketed_positional()?;
                        if s == '-' { v } else { -v }
                    } else {
                        self.pos = save;
                        -self.terms()?
                    }
                }
                _ => {
                    let found = self.describe_here();
                    return Err(self.error(self.pos, format!("expected '-', '+' or ')', found {found}")));
                }
            };
            self.expect(')')?;
            root
        } else if self.eat('x') {
            CliffordElement::ZERO
        } else {
            let found = self.describe_here();
            return Err(self.error(at, format!("expected a linear factor '(x - a)', found {found}")));
        };
        let n = self.exponent()?;
        roots.extend(std::iter::repeat_n(root, n));
        Ok(())
    }
}

/// Parses an element in term or positional form.
pub fn parse_element(src: &str) -> Result<CliffordElement, ParseError> {
    let mut c = Cursor::new(src);
    let x = c.top_element()?;
    c.finish()?;
    Ok(x)
}

/// Parses a quaternion: an element using only `1`, `e23`, `e13`, `e12`.
pub fn parse_quat(src: &str) -> Result<Quat, ParseError> {
    let x = parse_element(src)?;
    for b in [Blade::E1, Blade::E2, Blade::E3, Blade::E123] {
        if x[b] != 0.0 {
            let column = src.find(b.label()).unwrap_or(0);
            return Err(ParseError {
                input: src.to_string(),
                column,
                message: format!("'{}' is not a quaternion basis token", b.label()),
            });
        }
    }
    Ok(Quat::new(x[Blade::E0], x[Blade::E23], x[Blade::E13], x[Blade::E12]))
}

/// Parses `coeffs: [..]` or a product of linear factors.
pub fn parse_poly(src: &str) -> Result<PolyInput, ParseError> {
    let mut c = Cursor::new(src);
    let out = if c.eat_word("coeffs") {
        c.expect(':')?;
        c.expect('[')?;
        let mut coeffs = vec![c.nested_element()?];
        while c.eat(',') {
            coeffs.push(c.nested_element()?);
        }
        c.expect(']')?;
        PolyInput::Coeffs(coeffs)
    } else {
        let mut roots = Vec::new();
        c.factor(&mut roots)?;
        while c.eat('*') {
            c.factor(&mut roots)?;
        }
        PolyInput::Factored(roots)
    };
    c.finish()?;
    Ok(out)
}

/// Parses `[[a, b], [c, d]]`.
pub fn parse_matrix(src: &str) -> Result<[[CliffordElement; 2]; 2], ParseError> {
    let mut c = Cursor::new(src);
    c.expect('[')?;
    let mut rows = [[CliffordElement::ZERO; 2]; 2];
    for (i, row) in rows.iter_mut().enumerate() {
        if i > 0 {
            c.expect(',')?;
        }
        c.expect('[')?;
        row[0] = c.nested_element()?;
        c.expect(',')?;
        row[1] = c.nested_element()?;
        c.expect(']')?;
    }
    c.expect(']')?;
    c.finish()?;
    Ok(rows)
}

/// Parses a comma-separated pair of reals such as `0.5,2`.
pub fn parse_real_pair(src: &str) -> Result<(f64, f64), ParseError> {
    let mut c = Cursor::new(src);
    let a = c.signed_real()?;
    c.expect(',')?;
    let b = c.signed_real()?;
    c.finish()?;
    Ok((a, b))
}

//! Polynomial expressions in `x` and `y` and the linear-like form `r(x) + s(x) y`.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Peekable;
use std::str::CharIndices;

use num::{BigInt, One, Zero};

use crate::realalg::{power_of, write_terms, Rational, UniPoly};

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at {pos}: expected {expected}, found {found}")]
    Syntax { pos: usize, expected: &'static str, found: String },
    #[error("not a polynomial at {pos}: {reason}")]
    NonPolynomial { pos: usize, reason: &'static str },
    #[error("division by zero at {pos}")]
    DivisionByZero { pos: usize },
    #[error("exponent {exponent} at {pos} exceeds {MAX_EXPONENT}")]
    ExponentTooLarge { pos: usize, exponent: BigInt },
    #[error("term of degree {degree} in y; the map must be linear in y")]
    NotLinearInY { degree: u32 },
}

/// Sparse polynomial in `x` and `y`, keyed by `(deg_x, deg_y)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert((i, j), c);
        }
        BivarPoly { coeffs }
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn coeffs(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => self.coeffs.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        let entry = self.coeffs.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn add(&self, other: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> BivarPoly {
        BivarPoly { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect() }
    }

    pub fn sub(&self, other: &BivarPoly) -> BivarPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for ((i1, j1), c1) in &self.coeffs {
            for ((i2, j2), c2) in &other.coeffs {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> BivarPoly {
        self.mul(&BivarPoly::constant(k.clone()))
    }

    pub fn pow(&self, e: u32) -> BivarPoly {
        let mut acc = BivarPoly::constant(Rational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// `p(x, y) = r(x) + s(x) y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearLikeMap {
    pub r: UniPoly,
    pub s: UniPoly,
}

impl LinearLikeMap {
    pub fn new(r: UniPoly, s: UniPoly) -> Self {
        LinearLikeMap { r, s }
    }

    pub fn to_bivar(&self) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (j, p) in [(0, &self.r), (1, &self.s)] {
            for (i, c) in p.coeffs().iter().enumerate() {
                out.add_term((i as u32, j), c.clone());
            }
        }
        out
    }

    /// `p(-x, y)`.
    pub fn reflect_x(&self) -> Self {
        LinearLikeMap::new(self.r.reflect(), self.s.reflect())
    }

    /// `p(x, -y)`.
    pub fn reflect_y(&self) -> Self {
        LinearLikeMap::new(self.r.clone(), -&self.s)
    }

    /// `p(-x, -y)`.
    pub fn rotate(&self) -> Self {
        self.reflect_x().reflect_y()
    }

    /// `alpha * p + beta`.
    pub fn affine_image(&self, alpha: &Rational, beta: &Rational) -> Self {
        LinearLikeMap::new(&self.r.scale(alpha) + &UniPoly::constant(beta.clone()), self.s.scale(alpha))
    }

    /// `r(x - c) + lambda * s(x - c) * y`.
    pub fn shift_rescale(&self, c: &Rational, lambda: &Rational) -> Self {
        LinearLikeMap::new(self.r.shift(c), self.s.shift(c).scale(lambda))
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.r.eval_f64(x) + self.s.eval_f64(x) * y
    }
}

impl fmt::Display for LinearLikeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r_terms = self.r.coeffs().iter().enumerate().rev().map(|(i, c)| (c.clone(), power_of("x", i)));
        let s_terms = self.s.coeffs().iter().enumerate().rev().map(|(i, c)| {
            let mono = match i {
                0 => "y".to_string(),
                _ => format!("{}*y", power_of("x", i)),
            };
            (c.clone(), mono)
        });
        write_terms(f, r_terms.chain(s_terms))
    }
}

/// Canonical text of a map; re-parses to the same map.
pub fn format(map: &LinearLikeMap) -> String {
    map.to_string()
}

pub fn to_linear_like(poly: &BivarPoly) -> Result<LinearLikeMap, ExprError> {
    if let Some(&(_, j)) = poly.coeffs.keys().find(|(_, j)| *j >= 2) {
        return Err(ExprError::NotLinearInY { degree: j });
    }
    let column = |j: u32| {
        let deg = poly.coeffs.keys().filter(|k| k.1 == j).map(|k| k.0 as usize).max();
        match deg {
            None => UniPoly::zero(),
            Some(d) => UniPoly::new((0..=d).map(|i| poly.coeff(i as u32, j)).collect()),
        }
    };
    Ok(LinearLikeMap::new(column(0), column(1)))
}

/// Parse and decompose in one step.
pub fn parse_map(text: &str) -> Result<LinearLikeMap, ExprError> {
    to_linear_like(&parse(text)?)
}

pub fn parse(text: &str) -> Result<BivarPoly, ExprError> {
    let mut p = Parser { chars: text.char_indices().peekable(), len: text.len() };
    let poly = p.expr()?;
    p.skip_ws();
    match p.chars.peek() {
        None => Ok(poly),
        Some(&(pos, c)) => {
            Err(ExprError::Syntax { pos, expected: "operator or end of input", found: format!("'{c}'") })
        }
    }
}

struct Parser<'a> {
    chars: Peekable<CharIndices<'a>>,
    len: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn pos(&mut self) -> usize {
        self.peek().map_or(self.len, |(p, _)| p)
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        self.chars.next_if(|&(_, d)| d == c).is_some()
    }

    fn unexpected(&mut self, expected: &'static str) -> ExprError {
        let (pos, found) = match self.peek() {
            Some((p, c)) => (p, format!("'{c}'")),
            None => (self.len, "end of input".to_string()),
        };
        ExprError::Syntax { pos, expected, found }
    }

    fn expr(&mut self) -> Result<BivarPoly, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BivarPoly, ExprError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if matches!(self.peek(), Some((_, '/'))) {
                let pos = self.pos();
                self.eat('/');
                let divisor = self.factor()?;
                let d = divisor
                    .as_constant()
                    .ok_or(ExprError::NonPolynomial { pos, reason: "division by a non-constant" })?;
                if d.is_zero() {
                    return Err(ExprError::DivisionByZero { pos });
                }
                acc = acc.scale(&d.recip());
            } else if self.peek().is_some_and(|(_, c)| is_operand_start(c)) {
                return Err(self.unexpected("'*' (implicit multiplication is not allowed)"));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<BivarPoly, ExprError> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        match self.peek() {
            Some((_, c)) if c.is_ascii_digit() => {
                let e = self.integer()?;
                let exponent = u32::try_from(&e)
                    .ok()
                    .filter(|&e| e <= MAX_EXPONENT)
                    .ok_or(ExprError::ExponentTooLarge { pos, exponent: e })?;
                Ok(base.pow(exponent))
            }
            Some((_, '-' | '(' | 'x' | 'y')) => {
                Err(ExprError::NonPolynomial { pos, reason: "exponent must be a nonnegative integer literal" })
            }
            _ => Err(self.unexpected("nonnegative integer exponent")),
        }
    }

    fn base(&mut self) -> Result<BivarPoly, ExprError> {
        match self.peek() {
            Some((_, 'x')) => {
                self.chars.next();
                Ok(BivarPoly::x())
            }
            Some((_, 'y')) => {
                self.chars.next();
                Ok(BivarPoly::y())
            }
            Some((_, '(')) => {
                self.chars.next();
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.unexpected("')'"));
                }
                Ok(inner)
            }
            Some((_, '-')) => {
                self.chars.next();
                Ok(self.base()?.neg())
            }
            Some((_, c)) if c.is_ascii_digit() => self.rational(),
            _ => Err(self.unexpected("'x', 'y', a number or '('")),
        }
    }

    /// `int ('/' posint)?`; a `/` not followed by digits is left for `term`.
    fn rational(&mut self) -> Result<BivarPoly, ExprError> {
        let num = self.integer()?;
        let mut lookahead = self.chars.clone();
        while lookahead.next_if(|(_, c)| c.is_whitespace()).is_some() {}
        if lookahead.next_if(|&(_, c)| c == '/').is_some() {
            while lookahead.next_if(|(_, c)| c.is_whitespace()).is_some() {}
            if lookahead.peek().is_some_and(|(_, c)| c.is_ascii_digit()) {
                let pos = self.pos();
                self.eat('/');
                let den = self.integer()?;
                if den.is_zero() {
                    return Err(ExprError::DivisionByZero { pos });
                }
                return Ok(BivarPoly::constant(Rational::new(num, den)));
            }
        }
        Ok(BivarPoly::constant(Rational::from_integer(num)))
    }

    fn integer(&mut self) -> Result<BigInt, ExprError> {
        self.skip_ws();
        let mut digits = String::new();
        while let Some((_, c)) = self.chars.next_if(|(_, c)| c.is_ascii_digit()) {
            digits.push(c);
        }
        if digits.is_empty() {
            return Err(self.unexpected("integer"));
        }
        Ok(digits.parse().expect("ascii digits"))
    }
}

fn is_operand_start(c: char) -> bool {
    c == 'x' || c == 'y' || c == '(' || c.is_ascii_digit()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn parses_example_map() {
        let p = parse("x + x^3*y").unwrap();
        let want: BTreeMap<_, _> = [((1, 0), q(1)), ((3, 1), q(1))].into_iter().collect();
        assert_eq!(p.coeffs(), &want);
        assert!(parse("0").unwrap().is_zero());
    }

    #[test]
    fn expands_products() {
        let p = parse("x*(7*x - 5) + (x+1)^2*x^2*(x-2)^2*y").unwrap();
        assert_eq!(p.coeff(2, 0), q(7));
        assert_eq!(p.coeff(1, 0), q(-5));
        assert_eq!(p.coeff(6, 1), q(1));
        assert_eq!(p.coeff(2, 1), q(4));
    }

    #[test]
    fn unary_minus_and_rationals() {
        assert_eq!(parse("-x^2").unwrap(), parse("-(x^2)").unwrap());
        assert_eq!(parse("--x").unwrap(), parse("x").unwrap());
        assert_eq!(parse("x/2").unwrap(), parse("1/2*x").unwrap());
        assert_eq!(parse("x^2/ 4").unwrap().coeff(2, 0), Rational::new(1.into(), 4.into()));
        assert_eq!(parse("3 / 6").unwrap().coeff(0, 0), Rational::new(1.into(), 2.into()));
        assert_eq!(parse("x*(-3)").unwrap().coeff(1, 0), q(-3));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("2x"), Err(ExprError::Syntax { pos: 1, .. })));
        assert!(matches!(parse("x/y"), Err(ExprError::NonPolynomial { pos: 1, .. })));
        assert!(matches!(parse("x^-1"), Err(ExprError::NonPolynomial { .. })));
        assert!(matches!(parse("x/0"), Err(ExprError::DivisionByZero { .. })));
        assert!(matches!(parse("1/0"), Err(ExprError::DivisionByZero { .. })));
        assert!(matches!(parse("(x"), Err(ExprError::Syntax { pos: 2, .. })));
        assert!(matches!(parse(""), Err(ExprError::Syntax { pos: 0, .. })));
        assert!(matches!(parse("x^5000"), Err(ExprError::ExponentTooLarge { .. })));
        assert!(matches!(parse("x + z"), Err(ExprError::Syntax { pos: 4, .. })));
    }

    #[test]
    fn linear_like_split() {
        let m = to_linear_like(&parse("x + x^3*y").unwrap()).unwrap();
        assert_eq!(m.r, UniPoly::x());
        assert_eq!(m.s, UniPoly::from_ints(&[0, 0, 0, 1]));
        let m = to_linear_like(&parse("y").unwrap()).unwrap();
        assert!(m.r.is_zero());
        assert_eq!(m.s, UniPoly::one());
        assert_eq!(to_linear_like(&parse("y^2").unwrap()), Err(ExprError::NotLinearInY { degree: 2 }));
    }

    #[test]
    fn formatting() {
        let m = parse_map("x + x^3*y").unwrap();
        assert_eq!(format(&m), "x + x^3*y");
        assert_eq!(format(&LinearLikeMap::new(UniPoly::zero(), UniPoly::zero())), "0");
        let m = parse_map("3/2*x^2 - 1/2*x*y - y + 4").unwrap();
        assert_eq!(format(&m), "3/2*x^2 + 4 - 1/2*x*y - y");
        assert_eq!(parse_map(&format(&m)).unwrap(), m);
    }

    #[test]
    fn flips() {
        let m = parse_map("x + x^2*y").unwrap();
        assert_eq!(m.reflect_x(), parse_map("-x + x^2*y").unwrap());
        assert_eq!(m.reflect_y(), parse_map("x - x^2*y").unwrap());
        assert_eq!(m.rotate(), parse_map("-x - x^2*y").unwrap());
        assert_eq!(m.to_bivar(), parse("x + x^2*y").unwrap());
    }
}

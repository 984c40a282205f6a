use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

use super::intpoly::IntPoly;
use super::{PolyError, Rational, Sign};

/// Dense univariate polynomial over the rationals, coefficients in ascending
/// degree. The leading coefficient is never zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        UniPoly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// `(x - root)`.
    pub fn linear_root(root: &Rational) -> Self {
        UniPoly::new(vec![-root.clone(), Rational::one()])
    }

    /// `coeff * x^degree`.
    pub fn monomial(coeff: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = coeff;
        UniPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> Sign {
        Sign::of(&self.eval(x))
    }

    /// Sign on a punctured one-sided neighbourhood of `x`; zero only for
    /// the zero polynomial.
    pub fn side_sign_at(&self, x: &Rational, right: bool) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        let mut q = self.clone();
        let mut m = 0;
        let factor = UniPoly::linear_root(x);
        while q.sign_at(x) == Sign::Zero {
            q = q.div_exact(&factor);
            m += 1;
        }
        let s = q.sign_at(x);
        if !right && m % 2 == 1 {
            -s
        } else {
            s
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect(),
        )
    }

    /// Euclidean division. The remainder has degree strictly below `divisor`.
    pub fn divrem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        let dlead = divisor.leading().ok_or(PolyError::DivisionByZeroPoly)?;
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - ddeg];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + ddeg] / dlead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(ddeg);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    /// Exact quotient; panics if `divisor` is zero. Used only where the
    /// division is known to be exact.
    pub fn div_exact(&self, divisor: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly, PolyError> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
            None => UniPoly::zero(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        IntPoly::from_uni(self).gcd(&IntPoly::from_uni(other)).to_uni().monic()
    }

    /// Rescale to integer coefficients with unit content and positive leading
    /// coefficient.
    pub fn primitive_rational(&self) -> UniPoly {
        let Some(_) = self.leading() else {
            return UniPoly::zero();
        };
        let (ints, _) = self.integer_coeffs();
        let content = ints.iter().filter(|c| !c.is_zero()).fold(BigInt::zero(), |g, c| num::Integer::gcd(&g, c));
        let mut out: Vec<Rational> = ints.into_iter().map(|c| Rational::from_integer(c / &content)).collect();
        if out.last().is_some_and(|l| l.is_negative()) {
            out.iter_mut().for_each(|c| *c = -c.clone());
        }
        UniPoly::new(out)
    }

    /// Integer coefficients of `lcm(denominators) * self`, with that multiplier.
    pub fn integer_coeffs(&self) -> (Vec<BigInt>, BigInt) {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |l, c| num::Integer::lcm(&l, c.denom()));
        let ints = self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        (ints, lcm)
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// `self(-x)`.
    pub fn reflect(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() }).collect(),
        )
    }

    /// `self(x - shift)`.
    pub fn shift(&self, shift: &Rational) -> UniPoly {
        self.compose(&UniPoly::linear_root(shift))
    }

    /// Square-free part `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    /// Yun's algorithm. Returns `(factor, multiplicity)` pairs with monic,
    /// square-free, pairwise coprime factors such that the product of
    /// `factor^multiplicity` equals `self` up to a rational unit. Constant
    /// factors are omitted.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0);
        let mut c = df.div_exact(&a0);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            d = &c - &b.derivative();
            if !a.is_constant() {
                out.push((a.monic(), i));
            }
            i += 1;
        }
        Ok(out)
    }

    /// Order of vanishing of `self` at the rational `x`.
    pub fn multiplicity_at(&self, x: &Rational) -> usize {
        let lin = UniPoly::linear_root(x);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, r) = p.divrem(&lin).expect("nonzero divisor");
            if !r.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }

    /// Cauchy bound `1 + max |a_i| / |a_lead|`: every real root has absolute
    /// value strictly below it.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(lead) = self.leading() else {
            return Rational::one();
        };
        let lead = lead.abs();
        let max = self.coeffs[..self.coeffs.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero);
        Rational::one() + max / lead
    }

    /// Interval enclosure of `{ self(x) : lo <= x <= hi }` by interval Horner.
    pub fn eval_interval(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let mut acc = (Rational::zero(), Rational::zero());
        for c in self.coeffs.iter().rev() {
            let products = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let min = products.iter().min().expect("nonempty").clone();
            let max = products.iter().max().expect("nonempty").clone();
            acc = (min + c, max + c);
        }
        acc
    }
}

pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    use num::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Huge numerators or denominators: scale through the bit lengths.
        let n = q.numer();
        let d = q.denom();
        let shift = n.bits() as i64 - d.bits() as i64;
        let scaled = if shift > 0 {
            Rational::new(n.clone(), d << (shift as usize))
        } else {
            Rational::new(n << ((-shift) as usize), d.clone())
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl UniPoly {
    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

/// Writes `3/2*x^2 - x + 1` style text in descending powers of `var`.
pub(crate) fn write_terms(f: &mut impl fmt::Write, terms: impl Iterator<Item = (Rational, String)>) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        match (a.is_one(), mono.is_empty()) {
            (true, true) => write!(f, "1")?,
            (true, false) => f.write_str(&mono)?,
            (false, true) => write!(f, "{a}")?,
            (false, false) => write!(f, "{a}*{mono}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

pub(crate) fn power_of(var: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{i}"),
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().enumerate().rev().map(|(i, c)| (c.clone(), power_of("x", i)));
        write_terms(f, terms)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

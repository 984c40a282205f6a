//! Primitive integer polynomials for remainder sequences, which avoid the
//! normalisation cost of rational arithmetic.

use num::{BigInt, Integer, One, Signed, Zero};

use super::{Rational, Sign, UniPoly};

/// Ascending coefficients with unit content and no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntPoly(Vec<BigInt>);

impl IntPoly {
    /// Positive rational multiple of `p` with integer coefficients.
    pub fn from_uni(p: &UniPoly) -> IntPoly {
        let (ints, _) = p.integer_coeffs();
        IntPoly::primitive(ints)
    }

    /// `(den x - num)` for the rational `num / den`.
    pub fn linear_root(x: &Rational) -> IntPoly {
        IntPoly(vec![-x.numer().clone(), x.denom().clone()])
    }

    /// Primitive part of the given coefficients.
    pub fn primitive(mut c: Vec<BigInt>) -> IntPoly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        let content = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !content.is_zero() && !content.is_one() {
            for x in &mut c {
                *x /= &content;
            }
        }
        IntPoly(c)
    }

    pub fn to_uni(&self) -> UniPoly {
        UniPoly::new(self.0.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn leading(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::primitive(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn negate(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    /// `lc(b)^(deg a - deg b + 1) a mod b`, made primitive, together with
    /// the sign of the discarded scale factor.
    fn prem(&self, b: &IntPoly) -> (IntPoly, Sign) {
        let mut r = self.0.clone();
        let db = b.degree();
        let lb = b.leading();
        if r.len() <= db {
            return (self.clone(), Sign::Pos);
        }
        let steps = r.len() - db;
        for i in (0..steps).rev() {
            let top = r[i + db].clone();
            for x in r.iter_mut() {
                *x *= lb;
            }
            for (j, bj) in b.0.iter().enumerate() {
                r[i + j] -= &top * bj;
            }
            r.truncate(i + db);
        }
        let sign = if lb.is_negative() && steps % 2 == 1 { Sign::Neg } else { Sign::Pos };
        (IntPoly::primitive(r), sign)
    }

    /// Positive multiple of the remainder of `self` by `b`.
    pub fn rem_positive(&self, b: &IntPoly) -> IntPoly {
        match self.prem(b) {
            (r, Sign::Neg) => r.negate(),
            (r, _) => r,
        }
    }

    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.prem(&b).0;
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient, assuming `d` divides `self` over the rationals.
    pub fn div_exact(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree();
        let ld = d.leading();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return IntPoly(vec![BigInt::one()]);
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        // Scale so every step divides exactly.
        let scale = num::pow(ld.abs(), q.len());
        for x in r.iter_mut() {
            *x *= &scale;
        }
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / ld;
            for (j, dj) in d.0.iter().enumerate() {
                r[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        IntPoly::primitive(q)
    }

    /// Positive multiple of `self(a + b t)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> IntPoly {
        let d = a.denom().lcm(b.denom());
        let u = [a.numer() * (&d / a.denom()), b.numer() * (&d / b.denom())];
        IntPoly::primitive(homogeneous_compose(&self.0, self.degree(), &u, &d))
    }

    /// Sign on a punctured one-sided neighbourhood of `x`; zero only for
    /// the zero polynomial.
    pub fn side_sign_at(&self, x: &Rational, right: bool) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        let mut q = self.clone();
        let mut m = 0;
        let factor = IntPoly::linear_root(x);
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

    pub fn sign_at(&self, x: &Rational) -> Sign {
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.0.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        // acc = d^deg * p(x) with positive denominators.
        match acc.sign() {
            num::bigint::Sign::Minus => Sign::Neg,
            num::bigint::Sign::NoSign => Sign::Zero,
            num::bigint::Sign::Plus => Sign::Pos,
        }
    }
}

/// `sum c_i (u0 + u1 t)^i d^(n - i)` for coefficients up to degree `n`.
pub(crate) fn homogeneous_compose(c: &[BigInt], n: usize, u: &[BigInt; 2], d: &BigInt) -> Vec<BigInt> {
    let mut acc: Vec<BigInt> = Vec::new();
    let mut dpow = BigInt::one();
    for i in (0..=n).rev() {
        // acc = acc * (u0 + u1 t) + c_i d^(n - i)
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (j, x) in acc.iter().enumerate() {
            next[j] += x * &u[0];
            next[j + 1] += x * &u[1];
        }
        if let Some(ci) = c.get(i) {
            next[0] += ci * &dpow;
        }
        acc = next;
        dpow *= d;
    }
    acc
}

/// `p(u + 1)` in place.
fn taylor_shift_one(c: &mut [BigInt]) {
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let next = c[j + 1].clone();
            c[j] += next;
        }
    }
}

fn sign_variations(c: &[BigInt]) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for x in c {
        let s = if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Descartes bound for roots in `(0, 1)`: sign variations of
/// `(1 + u)^n p(1 / (1 + u))`.
fn variations_01(c: &[BigInt]) -> usize {
    let mut rev: Vec<BigInt> = c.iter().rev().cloned().collect();
    taylor_shift_one(&mut rev);
    sign_variations(&rev)
}

/// Number of roots in `(0, 1)` by Descartes bisection, or `None` once
/// `depth` halvings fail to separate them (e.g. at a multiple root).
fn count_01(c: &[BigInt], depth: u32) -> Option<usize> {
    match variations_01(c) {
        0 => return Some(0),
        1 => return Some(1),
        _ if depth == 0 => return None,
        _ => {}
    }
    let n = c.len() - 1;
    // 2^n p(u / 2) and its shift 2^n p((u + 1) / 2).
    let mut left: Vec<BigInt> = c.iter().enumerate().map(|(i, x)| x << (n - i)).collect();
    let at_half = left.iter().fold(BigInt::zero(), |acc, x| acc + x);
    let l = count_01(&left, depth - 1)?;
    taylor_shift_one(&mut left);
    let r = count_01(&left, depth - 1)?;
    Some(l + r + usize::from(at_half.is_zero()))
}

impl IntPoly {
    /// Distinct roots in the open interval `(lo, hi)` when Descartes
    /// bisection settles it; `None` otherwise.
    pub fn count_open_descartes(&self, lo: &Rational, hi: &Rational, depth: u32) -> Option<usize> {
        if lo >= hi || self.degree() == 0 {
            return Some(0);
        }
        let mut q = self.compose_affine(lo, &(hi - lo));
        // Roots at the ends lie outside the open interval.
        for end in [&Rational::zero(), &Rational::one()] {
            while q.degree() > 0 && q.sign_at(end) == Sign::Zero {
                q = q.div_exact(&IntPoly::linear_root(end));
            }
        }
        if q.degree() == 0 {
            return Some(0);
        }
        count_01(&q.0, depth)
    }
}

use super::intpoly::IntPoly;
use super::{Rational, Sign, UniPoly};

/// Bisection depth before falling back to a Sturm chain.
const DESCARTES_DEPTH: u32 = 6;

/// Sturm sequence of the square-free part of a polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    base: UniPoly,
    seq: Vec<IntPoly>,
}

impl SturmChain {
    /// Panics on the zero polynomial.
    pub fn new(p: &UniPoly) -> Self {
        assert!(!p.is_zero(), "Sturm chain of the zero polynomial");
        let full = IntPoly::from_uni(p);
        let p0 = if full.degree() == 0 { full } else { full.div_exact(&full.gcd(&full.derivative())) };
        let mut seq = vec![p0.clone()];
        if p0.degree() > 0 {
            let mut a = p0.clone();
            let mut b = p0.derivative();
            while !b.is_zero() {
                let r = a.rem_positive(&b).negate();
                seq.push(b.clone());
                a = b;
                b = r;
            }
        }
        SturmChain { base: p0.to_uni(), seq }
    }

    pub fn poly(&self) -> &UniPoly {
        &self.base
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = Sign::Zero;
        for s in self.seq.iter().map(|p| p.sign_at(x)) {
            if s == Sign::Zero {
                continue;
            }
            if last != Sign::Zero && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a) - self.variations(b)
    }

    /// Distinct real roots of `p` in `(a, b)`, trying Descartes bisection
    /// before building a Sturm chain.
    pub fn count_open_of(p: &UniPoly, a: &Rational, b: &Rational) -> usize {
        Self::count_open_int(&IntPoly::from_uni(p), a, b)
    }

    pub(crate) fn count_open_int(p: &IntPoly, a: &Rational, b: &Rational) -> usize {
        if p.degree() == 0 || a >= b {
            return 0;
        }
        match p.count_open_descartes(a, b, DESCARTES_DEPTH) {
            Some(n) => n,
            None => SturmChain::new(&p.to_uni()).count_open(a, b),
        }
    }

    /// Number of distinct real roots in `(a, b)`.
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        let c = self.count(a, b);
        if self.seq[0].sign_at(b) == Sign::Zero {
            c - 1
        } else {
            c
        }
    }

    /// Number of distinct real roots in `[a, b]`.
    pub fn count_closed(&self, a: &Rational, b: &Rational) -> usize {
        let at_a = usize::from(self.seq[0].sign_at(a) == Sign::Zero);
        if a > b {
            0
        } else {
            self.count(a, b) + at_a
        }
    }

    /// Total number of distinct real roots.
    pub fn count_all(&self) -> usize {
        let b = self.base.cauchy_bound();
        self.count(&-b.clone(), &b)
    }
}

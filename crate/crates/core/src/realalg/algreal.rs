use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, One, Signed, Zero};

use super::{rational_to_f64, resultant_y_minus, PolyError, Rational, Side, Sign, SturmChain, UniPoly};

/// A real algebraic number. `Exact` holds exactly the rational numbers:
/// every constructor in this module normalizes an isolating interval around
/// a rational root to `Exact`.
#[derive(Clone, Debug)]
pub enum AlgReal {
    Exact(Rational),
    Isolated(Isolated),
}

/// The unique root of a square-free `defining` polynomial in the open
/// interval `(lo, hi)`, with `defining(lo) * defining(hi) < 0`.
#[derive(Clone, Debug)]
pub struct Isolated {
    defining: UniPoly,
    lo: Rational,
    hi: Rational,
}

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) * half()
}

impl Isolated {
    pub fn defining(&self) -> &UniPoly {
        &self.defining
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Halve the interval. Returns the midpoint if it is the root itself.
    fn bisect(&mut self) -> Option<Rational> {
        let mid = midpoint(&self.lo, &self.hi);
        let s = self.defining.sign_at(&mid);
        if s == Sign::Zero {
            return Some(mid);
        }
        if s == self.defining.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
        None
    }

    /// Bisect until the width is below `w`.
    fn refine_below(&mut self, w: &Rational) -> Option<Rational> {
        while &self.width() >= w {
            if let Some(q) = self.bisect() {
                return Some(q);
            }
        }
        None
    }

    /// Position of the root relative to a rational inside the interval.
    fn cmp_rational(&self, q: &Rational) -> Ordering {
        if q <= &self.lo {
            return Ordering::Greater;
        }
        if q >= &self.hi {
            return Ordering::Less;
        }
        match self.defining.sign_at(q) {
            Sign::Zero => Ordering::Equal,
            s if s == self.defining.sign_at(&self.lo) => Ordering::Greater,
            _ => Ordering::Less,
        }
    }
}

/// Turn an isolating interval into the canonical representation, detecting
/// rational roots. A rational root `n/d` of the primitive integer polynomial
/// has `d | L` with `L` the leading coefficient, so it is `m/L` for an
/// integer `m`; once the width is below `1/L` at most one such candidate
/// remains.
fn normalize(mut iso: Isolated) -> AlgReal {
    let (ints, _) = iso.defining.primitive_rational().integer_coeffs();
    let lead = Rational::from_integer(ints.last().expect("nonzero").abs());
    if let Some(q) = iso.refine_below(&lead.recip()) {
        return AlgReal::Exact(q);
    }
    let m = (&iso.lo * &lead).floor() + Rational::one();
    if m < &iso.hi * &lead {
        let cand = m / &lead;
        if iso.defining.sign_at(&cand) == Sign::Zero {
            return AlgReal::Exact(cand);
        }
    }
    AlgReal::Isolated(iso)
}

/// Isolate every real root of a square-free polynomial, in increasing order.
pub(crate) fn isolate_squarefree(f: &UniPoly) -> Vec<AlgReal> {
    if f.is_constant() {
        return Vec::new();
    }
    let chain = SturmChain::new(f);
    let b = f.cauchy_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    // Depth-first, right half pushed first so roots come out increasing.
    while let Some((lo, hi)) = stack.pop() {
        match chain.count(&lo, &hi) {
            0 => {}
            1 => out.push(single_root(f, lo, hi)),
            _ => {
                let mid = midpoint(&lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out
}

/// The unique root of `f` in `(lo, hi]`.
fn single_root(f: &UniPoly, mut lo: Rational, hi: Rational) -> AlgReal {
    if f.sign_at(&hi) == Sign::Zero {
        return AlgReal::Exact(hi);
    }
    let mut iso = Isolated { defining: f.clone(), lo: lo.clone(), hi };
    // `lo` may be a root belonging to the neighbouring interval.
    while f.sign_at(&lo) == Sign::Zero {
        let mid = midpoint(&iso.lo, &iso.hi);
        match f.sign_at(&mid) {
            Sign::Zero => return AlgReal::Exact(mid),
            s if s == f.sign_at(&iso.hi) => iso.hi = mid,
            _ => {
                lo = mid.clone();
                iso.lo = mid;
            }
        }
    }
    normalize(iso)
}

impl AlgReal {
    pub fn from_rational(q: Rational) -> Self {
        AlgReal::Exact(q)
    }

    pub fn from_int(n: i64) -> Self {
        AlgReal::Exact(Rational::from_integer(n.into()))
    }

    /// The root of square-free `f` in `(lo, hi)`, which must be unique and
    /// have `f(lo) * f(hi) < 0`.
    pub fn from_isolating(f: UniPoly, lo: Rational, hi: Rational) -> Self {
        debug_assert!(f.sign_at(&lo) * f.sign_at(&hi) == Sign::Neg);
        normalize(Isolated { defining: f, lo, hi })
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            AlgReal::Exact(q) => Some(q),
            AlgReal::Isolated(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AlgReal::Exact(_))
    }

    /// A square-free polynomial vanishing at `self`.
    pub fn defining(&self) -> UniPoly {
        match self {
            AlgReal::Exact(q) => UniPoly::linear_root(q),
            AlgReal::Isolated(iso) => iso.defining.clone(),
        }
    }

    /// Closed interval containing `self`; degenerate for `Exact`.
    pub fn interval(&self) -> (Rational, Rational) {
        match self {
            AlgReal::Exact(q) => (q.clone(), q.clone()),
            AlgReal::Isolated(iso) => (iso.lo.clone(), iso.hi.clone()),
        }
    }

    /// A copy whose isolating interval is narrower than `w`.
    pub fn refined(&self, w: &Rational) -> AlgReal {
        match self {
            AlgReal::Exact(_) => self.clone(),
            AlgReal::Isolated(iso) => {
                let mut iso = iso.clone();
                match iso.refine_below(w) {
                    Some(q) => AlgReal::Exact(q),
                    None => AlgReal::Isolated(iso),
                }
            }
        }
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        match self {
            AlgReal::Exact(a) => a.cmp(q),
            AlgReal::Isolated(iso) => iso.cmp_rational(q),
        }
    }

    pub fn sign(&self) -> Sign {
        Sign::from_ordering(self.cmp_rational(&Rational::zero()))
    }

    fn cmp_isolated(a: &Isolated, b: &Isolated) -> Ordering {
        let mut common: Option<Option<SturmChain>> = None;
        let mut a = a.clone();
        let mut b = b.clone();
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            let chain = common.get_or_insert_with(|| {
                let g = a.defining.gcd(&b.defining);
                (!g.is_constant()).then(|| SturmChain::new(&g))
            });
            if let Some(chain) = chain {
                let lo = (&a.lo).max(&b.lo);
                let hi = (&a.hi).min(&b.hi);
                if chain.count_open(lo, hi) > 0 {
                    return Ordering::Equal;
                }
            }
            if let Some(q) = a.bisect() {
                return b.cmp_rational(&q).reverse();
            }
            if let Some(q) = b.bisect() {
                return a.cmp_rational(&q);
            }
        }
    }

    /// Exact sign of `p(self)`.
    pub fn sign_of(&self, p: &UniPoly) -> Sign {
        let iso = match self {
            AlgReal::Exact(q) => return p.sign_at(q),
            AlgReal::Isolated(iso) => iso,
        };
        if p.is_constant() {
            return Sign::of(&p.coeff(0));
        }
        let g = p.gcd(&iso.defining);
        if !g.is_constant() && SturmChain::new(&g).count_open(&iso.lo, &iso.hi) > 0 {
            return Sign::Zero;
        }
        let chain = SturmChain::new(p);
        let mut iso = iso.clone();
        while chain.count_open(&iso.lo, &iso.hi) > 0 {
            if let Some(q) = iso.bisect() {
                return p.sign_at(&q);
            }
        }
        p.sign_at(&midpoint(&iso.lo, &iso.hi))
    }

    /// Sign of `p` just to the given side of `self`; never `Zero`.
    pub fn side_sign_of(&self, p: &UniPoly, side: Side) -> Result<Sign, PolyError> {
        if p.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let chain = SturmChain::new(p);
        let iso = match self {
            AlgReal::Exact(q) => return Ok(side_sign_rational(p, &chain, q, side)),
            AlgReal::Isolated(iso) => iso,
        };
        let zero_here = usize::from(self.sign_of(p) == Sign::Zero);
        let mut iso = iso.clone();
        while chain.count_open(&iso.lo, &iso.hi) > zero_here {
            if let Some(q) = iso.bisect() {
                return Ok(side_sign_rational(p, &chain, &q, side));
            }
        }
        if zero_here == 0 {
            return Ok(p.sign_at(&midpoint(&iso.lo, &iso.hi)));
        }
        // p vanishes only at the root inside the interval; find a rational
        // strictly on the requested side of it.
        loop {
            let mid = midpoint(&iso.lo, &iso.hi);
            match (iso.cmp_rational(&mid), side) {
                (Ordering::Less, Side::Right) | (Ordering::Greater, Side::Left) => {
                    return Ok(p.sign_at(&mid));
                }
                (Ordering::Equal, _) => return Ok(side_sign_rational(p, &chain, &mid, side)),
                (Ordering::Less, Side::Left) => iso.hi = mid,
                (Ordering::Greater, Side::Right) => iso.lo = mid,
            }
        }
    }

    /// The real number `r(self)`.
    pub fn image_under(&self, r: &UniPoly) -> AlgReal {
        let iso = match self {
            AlgReal::Exact(q) => return AlgReal::Exact(r.eval(q)),
            AlgReal::Isolated(iso) => iso,
        };
        if r.is_constant() {
            return AlgReal::Exact(r.coeff(0));
        }
        let res = resultant_y_minus(&iso.defining, r).squarefree_part();
        let chain = SturmChain::new(&res);
        let mut iso = iso.clone();
        loop {
            let (elo, ehi) = r.eval_interval(&iso.lo, &iso.hi);
            if chain.count_closed(&elo, &ehi) == 1 {
                if res.sign_at(&elo) == Sign::Zero {
                    return AlgReal::Exact(elo);
                }
                if res.sign_at(&ehi) == Sign::Zero {
                    return AlgReal::Exact(ehi);
                }
                return normalize(Isolated { defining: res, lo: elo, hi: ehi });
            }
            if let Some(q) = iso.bisect() {
                return AlgReal::Exact(r.eval(&q));
            }
        }
    }

    /// Decimal string rounded to nearest at `digits` places.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = Rational::from_integer(BigInt::from(10).pow(digits));
        let n = match self {
            AlgReal::Exact(q) => (q * &scale).round().to_integer(),
            AlgReal::Isolated(iso) => {
                // An irrational value is never a rounding tie, so both ends
                // eventually round alike.
                let mut iso = iso.clone();
                loop {
                    let lo = (&iso.lo * &scale).round();
                    if lo == (&iso.hi * &scale).round() {
                        break lo.to_integer();
                    }
                    if let Some(q) = iso.bisect() {
                        break (q * &scale).round().to_integer();
                    }
                }
            }
        };
        let neg = n.is_negative();
        let digits_str = n.abs().to_string();
        let d = digits as usize;
        let padded = format!("{digits_str:0>width$}", width = d + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - d);
        let sign = if neg { "-" } else { "" };
        if d == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            AlgReal::Exact(q) => rational_to_f64(q),
            AlgReal::Isolated(iso) => {
                let tol = Rational::new(BigInt::one(), BigInt::from(1u64 << 50));
                let scale = iso.lo.abs().max(iso.hi.abs()).max(Rational::one());
                match self.refined(&(tol * scale)) {
                    AlgReal::Exact(q) => rational_to_f64(&q),
                    AlgReal::Isolated(iso) => rational_to_f64(&midpoint(&iso.lo, &iso.hi)),
                }
            }
        }
    }
}

fn side_sign_rational(p: &UniPoly, chain: &SturmChain, q: &Rational, side: Side) -> Sign {
    let mut delta = Rational::one();
    loop {
        let (lo, hi) = match side {
            Side::Right => (q.clone(), q + &delta),
            Side::Left => (q - &delta, q.clone()),
        };
        // No root in the closed gap except possibly q itself.
        let at_q = usize::from(p.sign_at(q) == Sign::Zero);
        if chain.count_closed(&lo, &hi) == at_q {
            let sample = match side {
                Side::Right => hi,
                Side::Left => lo,
            };
            return p.sign_at(&sample);
        }
        delta *= half();
    }
}

impl Ord for AlgReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (AlgReal::Exact(a), AlgReal::Exact(b)) => a.cmp(b),
            (AlgReal::Exact(a), AlgReal::Isolated(b)) => b.cmp_rational(a).reverse(),
            (AlgReal::Isolated(a), AlgReal::Exact(b)) => a.cmp_rational(b),
            (AlgReal::Isolated(a), AlgReal::Isolated(b)) => AlgReal::cmp_isolated(a, b),
        }
    }
}

impl PartialOrd for AlgReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for AlgReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AlgReal {}

impl From<Rational> for AlgReal {
    fn from(q: Rational) -> Self {
        AlgReal::Exact(q)
    }
}

impl fmt::Display for AlgReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgReal::Exact(q) => write!(f, "{q}"),
            AlgReal::Isolated(_) => write!(f, "~{}", self.to_decimal(6)),
        }
    }
}

//! Exact univariate polynomials over ℚ and real algebraic numbers.

mod algreal;
mod intpoly;
mod poly;
mod resultant;
mod sturm;

use std::ops::{Mul, Neg};

use num::{BigRational, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use algreal::{AlgReal, Isolated};
pub use poly::UniPoly;
pub use resultant::resultant_y_minus;
pub use sturm::SturmChain;

pub(crate) use intpoly::{homogeneous_compose, IntPoly};
pub(crate) use poly::{power_of, rational_to_f64, write_terms};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of<T: Signed + Zero>(v: &T) -> Sign {
        if v.is_zero() {
            Sign::Zero
        } else if v.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn from_ordering(o: std::cmp::Ordering) -> Sign {
        match o {
            std::cmp::Ordering::Less => Sign::Neg,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Pos,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Neg => "-",
            Sign::Zero => "0",
            Sign::Pos => "+",
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match self.as_i8() * rhs.as_i8() {
            -1 => Sign::Neg,
            0 => Sign::Zero,
            _ => Sign::Pos,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// `-1` for `Left`, `+1` for `Right`.
    pub fn orientation(self) -> Sign {
        match self {
            Side::Left => Sign::Neg,
            Side::Right => Sign::Pos,
        }
    }
}

/// Real roots of `p` with multiplicities, in increasing order.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<(AlgReal, usize)>, PolyError> {
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition()? {
        for root in algreal::isolate_squarefree(&factor) {
            out.push((root, mult));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Sign of `p` at the real number `z`.
pub fn sign_at(p: &UniPoly, z: &AlgReal) -> Sign {
    z.sign_of(p)
}

/// Sign of `p` on a punctured one-sided neighbourhood of `z`.
pub fn side_sign(p: &UniPoly, z: &AlgReal, side: Side) -> Result<Sign, PolyError> {
    z.side_sign_of(p, side)
}

/// The real number `r(z)`.
pub fn image_value(r: &UniPoly, z: &AlgReal) -> AlgReal {
    z.image_under(r)
}

pub fn compare(a: &AlgReal, b: &AlgReal) -> std::cmp::Ordering {
    a.cmp(b)
}

pub fn to_float(z: &AlgReal, digits: u32) -> String {
    z.to_decimal(digits)
}

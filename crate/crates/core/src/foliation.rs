//! Strip decomposition, asymptotic sign tokens and canonical regions of the
//! level-set foliation of a linear-like map.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::LinearLikeMap;
use crate::realalg::{self, AlgReal, Rational, Side, Sign, UniPoly};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FoliationError {
    #[error("s has a simple zero at {0}; the map is not a submersion there")]
    SimpleZero(Box<AlgReal>),
    #[error("r' vanishes at the zero {0} of s; the map is not a submersion there")]
    CriticalValueOnFiber(Box<AlgReal>),
    #[error("s is identically zero; out of scope")]
    OutOfScope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Boundary {
    MinusInfinity,
    Root(usize),
    PlusInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Strip {
    pub index: usize,
    pub left: Boundary,
    pub right: Boundary,
}

/// Asymptotic sign data of one strip. In `BoundedDistinct` the field `xy`
/// is the sign of the graph at level `c_x` as it approaches boundary `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StripToken {
    LeftInfinite(Sign),
    RightInfinite(Sign),
    BoundedDistinct { aa: Sign, ab: Sign, ba: Sign, bb: Sign },
    BoundedEqual { a: Sign, b: Sign },
}

impl StripToken {
    pub fn kind(&self) -> &'static str {
        match self {
            StripToken::LeftInfinite(_) => "LeftInfinite",
            StripToken::RightInfinite(_) => "RightInfinite",
            StripToken::BoundedDistinct { .. } => "BoundedDistinct",
            StripToken::BoundedEqual { .. } => "BoundedEqual",
        }
    }

    pub fn signs(&self) -> Vec<Sign> {
        match *self {
            StripToken::LeftInfinite(s) | StripToken::RightInfinite(s) => vec![s],
            StripToken::BoundedDistinct { aa, ab, ba, bb } => vec![aa, ab, ba, bb],
            StripToken::BoundedEqual { a, b } => vec![a, b],
        }
    }

    pub fn map_signs(&self, f: impl Fn(Sign) -> Sign) -> StripToken {
        match *self {
            StripToken::LeftInfinite(s) => StripToken::LeftInfinite(f(s)),
            StripToken::RightInfinite(s) => StripToken::RightInfinite(f(s)),
            StripToken::BoundedDistinct { aa, ab, ba, bb } => {
                StripToken::BoundedDistinct { aa: f(aa), ab: f(ab), ba: f(ba), bb: f(bb) }
            }
            StripToken::BoundedEqual { a, b } => StripToken::BoundedEqual { a: f(a), b: f(b) },
        }
    }

    /// Letter of the bounded-distinct pattern after normalizing `aa` to `+`.
    pub fn distinct_case(&self) -> Option<char> {
        let StripToken::BoundedDistinct { aa, ba, bb, .. } = *self else {
            return None;
        };
        let (ba, bb) = (ba * aa, bb * aa);
        Some(match (ba, bb) {
            (Sign::Pos, Sign::Pos) => 'a',
            (Sign::Pos, _) => 'b',
            (_, Sign::Pos) => 'c',
            _ => 'd',
        })
    }

    /// For `BoundedEqual`: whether the two ends of the separatrix go to the
    /// same infinity, making it cyclic with both verticals.
    pub fn equal_is_cyclic(&self) -> Option<bool> {
        match *self {
            StripToken::BoundedEqual { a, b } => Some(a == b),
            _ => None,
        }
    }
}

impl fmt::Display for StripToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            StripToken::LeftInfinite(_) => "L",
            StripToken::RightInfinite(_) => "R",
            StripToken::BoundedDistinct { .. } => "D",
            StripToken::BoundedEqual { .. } => "E",
        };
        let signs: String = self.signs().iter().map(|s| s.symbol()).collect();
        write!(f, "{tag}({signs})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Attach {
    LeftAttached,
    RightAttached,
    BothAttached,
}

impl Attach {
    pub fn swapped(self) -> Attach {
        match self {
            Attach::LeftAttached => Attach::RightAttached,
            Attach::RightAttached => Attach::LeftAttached,
            Attach::BothAttached => Attach::BothAttached,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeparatrixId {
    Vertical(usize),
    Inner { strip: usize, attach: Attach },
}

impl fmt::Display for SeparatrixId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeparatrixId::Vertical(j) => write!(f, "V{j}"),
            SeparatrixId::Inner { strip, attach } => {
                let a = match attach {
                    Attach::LeftAttached => "L",
                    Attach::RightAttached => "R",
                    Attach::BothAttached => "B",
                };
                write!(f, "S{strip}{a}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Separatrix {
    pub id: SeparatrixId,
    pub level: AlgReal,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum LevelBound {
    MinusInfinity,
    Value(AlgReal),
    PlusInfinity,
}

impl fmt::Display for LevelBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelBound::MinusInfinity => f.write_str("-inf"),
            LevelBound::Value(v) => write!(f, "{v}"),
            LevelBound::PlusInfinity => f.write_str("+inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalRegion {
    pub strip: usize,
    pub lower: LevelBound,
    pub upper: LevelBound,
    pub boundary: BTreeSet<SeparatrixId>,
}

impl CanonicalRegion {
    /// Position of the level interval relative to `c`: `Neg` if below,
    /// `Pos` if above, `Zero` if `c` lies inside it.
    pub fn side_of(&self, c: &AlgReal) -> Sign {
        let above = match &self.lower {
            LevelBound::Value(v) => v >= c,
            LevelBound::MinusInfinity => false,
            LevelBound::PlusInfinity => true,
        };
        let below = match &self.upper {
            LevelBound::Value(v) => v <= c,
            LevelBound::PlusInfinity => false,
            LevelBound::MinusInfinity => true,
        };
        match (below, above) {
            (true, _) => Sign::Neg,
            (_, true) => Sign::Pos,
            _ => Sign::Zero,
        }
    }

    pub fn contains(&self, c: &AlgReal) -> bool {
        self.side_of(c) == Sign::Zero
    }
}

#[derive(Debug, Clone)]
pub struct Configuration {
    pub map: LinearLikeMap,
    pub roots: Vec<AlgReal>,
    pub multiplicities: Vec<usize>,
    pub boundary_values: Vec<AlgReal>,
    pub rprime_signs: Vec<Sign>,
    /// Sign of `s` on each strip.
    pub s_signs: Vec<Sign>,
    pub tokens: Vec<StripToken>,
    pub regions: Vec<CanonicalRegion>,
    pub bifurcation: Vec<AlgReal>,
}

/// Roots of `s` with multiplicities, after checking the submersion
/// condition.
pub fn validate_submersion(m: &LinearLikeMap) -> Result<Vec<(AlgReal, usize)>, FoliationError> {
    let roots = realalg::isolate_real_roots(&m.s).map_err(|_| FoliationError::OutOfScope)?;
    let dr = m.r.derivative();
    for (z, mult) in &roots {
        if *mult < 2 {
            return Err(FoliationError::SimpleZero(Box::new(z.clone())));
        }
        if realalg::sign_at(&dr, z) == Sign::Zero {
            return Err(FoliationError::CriticalValueOnFiber(Box::new(z.clone())));
        }
    }
    Ok(roots)
}

pub fn build_configuration(m: &LinearLikeMap) -> Result<Configuration, FoliationError> {
    let isolated = validate_submersion(m)?;
    let dr = m.r.derivative();
    let (roots, multiplicities): (Vec<_>, Vec<_>) = isolated.into_iter().unzip();
    let boundary_values: Vec<AlgReal> = roots.iter().map(|z| realalg::image_value(&m.r, z)).collect();
    let rprime_signs: Vec<Sign> = roots.iter().map(|z| realalg::sign_at(&dr, z)).collect();
    let s_signs = strip_signs(&m.s, &roots);
    let mut bifurcation = boundary_values.clone();
    bifurcation.sort();
    bifurcation.dedup();

    let mut conf = Configuration {
        map: m.clone(),
        roots,
        multiplicities,
        boundary_values,
        rprime_signs,
        s_signs,
        tokens: Vec::new(),
        regions: Vec::new(),
        bifurcation,
    };
    if conf.k() > 0 {
        let tokens = (0..=conf.k()).map(|i| conf.token(i)).collect();
        conf.tokens = tokens;
    }
    let regions = (0..=conf.k()).flat_map(|i| conf.strip_regions(i)).collect();
    conf.regions = regions;
    Ok(conf)
}

/// Sign of `s` on each of the `k + 1` open strips.
fn strip_signs(s: &UniPoly, roots: &[AlgReal]) -> Vec<Sign> {
    if roots.is_empty() {
        let lead = s.leading().expect("validated nonzero");
        return vec![Sign::of(lead)];
    }
    let mut out: Vec<Sign> = roots.iter().map(|z| realalg::side_sign(s, z, Side::Left).expect("nonzero s")).collect();
    out.push(realalg::side_sign(s, roots.last().expect("nonempty"), Side::Right).expect("nonzero s"));
    out
}

pub fn bifurcation_set(m: &LinearLikeMap) -> Result<Vec<AlgReal>, FoliationError> {
    Ok(build_configuration(m)?.bifurcation)
}

pub fn fiber_component_count(m: &LinearLikeMap, c: &AlgReal) -> Result<usize, FoliationError> {
    Ok(build_configuration(m)?.fiber_component_count(c))
}

impl Configuration {
    /// Number of real zeros of `s`.
    pub fn k(&self) -> usize {
        self.roots.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn strip(&self, i: usize) -> Strip {
        let k = self.k();
        Strip {
            index: i,
            left: if i == 0 { Boundary::MinusInfinity } else { Boundary::Root(i - 1) },
            right: if i == k { Boundary::PlusInfinity } else { Boundary::Root(i) },
        }
    }

    pub fn strips(&self) -> impl Iterator<Item = Strip> + '_ {
        (0..=self.k()).map(|i| self.strip(i))
    }

    pub fn fiber_component_count(&self, c: &AlgReal) -> usize {
        self.k() + 1 + self.boundary_values.iter().filter(|v| *v == c).count()
    }

    /// Sign of `c - r(x)` for `x` just to `side` of root `j`.
    pub fn numerator_side_sign(&self, level: &AlgReal, j: usize, side: Side) -> Sign {
        match level.cmp(&self.boundary_values[j]) {
            Ordering::Equal => -self.rprime_signs[j] * side.orientation(),
            o => Sign::from_ordering(o),
        }
    }

    /// Same as [`numerator_side_sign`](Self::numerator_side_sign) for a
    /// rational level, computed directly on the polynomial `c - r`.
    pub fn numerator_side_sign_rational(&self, level: &Rational, j: usize, side: Side) -> Sign {
        let num = &UniPoly::constant(level.clone()) - &self.map.r;
        if num.is_zero() {
            return Sign::Zero;
        }
        realalg::side_sign(&num, &self.roots[j], side).expect("nonzero numerator")
    }

    /// Sign of the graph at `level` as it approaches root `j` from `side`.
    fn graph_end_sign(&self, level: &AlgReal, j: usize, side: Side) -> Sign {
        let strip = match side {
            Side::Left => j,
            Side::Right => j + 1,
        };
        self.numerator_side_sign(level, j, side) * self.s_signs[strip]
    }

    fn token(&self, i: usize) -> StripToken {
        let k = self.k();
        if i == 0 {
            return StripToken::LeftInfinite(self.graph_end_sign(&self.boundary_values[0], 0, Side::Left));
        }
        if i == k {
            return StripToken::RightInfinite(self.graph_end_sign(&self.boundary_values[k - 1], k - 1, Side::Right));
        }
        let (a, b) = (i - 1, i);
        let (ca, cb) = (&self.boundary_values[a], &self.boundary_values[b]);
        let at_a = |c: &AlgReal| self.graph_end_sign(c, a, Side::Right);
        let at_b = |c: &AlgReal| self.graph_end_sign(c, b, Side::Left);
        if ca == cb {
            StripToken::BoundedEqual { a: at_a(ca), b: at_b(ca) }
        } else {
            StripToken::BoundedDistinct { aa: at_a(ca), ab: at_b(ca), ba: at_a(cb), bb: at_b(cb) }
        }
    }

    /// Inner separatrices of strip `i` with their levels.
    pub fn inner_separatrices(&self, i: usize) -> Vec<Separatrix> {
        let k = self.k();
        let inner =
            |attach, level: &AlgReal| Separatrix { id: SeparatrixId::Inner { strip: i, attach }, level: level.clone() };
        if k == 0 {
            return Vec::new();
        }
        if i == 0 {
            return vec![inner(Attach::RightAttached, &self.boundary_values[0])];
        }
        if i == k {
            return vec![inner(Attach::LeftAttached, &self.boundary_values[k - 1])];
        }
        match self.tokens[i] {
            StripToken::BoundedEqual { .. } => vec![inner(Attach::BothAttached, &self.boundary_values[i])],
            _ => vec![
                inner(Attach::LeftAttached, &self.boundary_values[i - 1]),
                inner(Attach::RightAttached, &self.boundary_values[i]),
            ],
        }
    }

    /// All separatrices: verticals first, then inner curves by strip.
    pub fn separatrices(&self) -> Vec<Separatrix> {
        let verticals = self
            .boundary_values
            .iter()
            .enumerate()
            .map(|(j, c)| Separatrix { id: SeparatrixId::Vertical(j), level: c.clone() });
        verticals.chain((0..=self.k()).flat_map(|i| self.inner_separatrices(i))).collect()
    }

    pub fn separatrix_level(&self, id: SeparatrixId) -> Option<AlgReal> {
        self.separatrices().into_iter().find(|s| s.id == id).map(|s| s.level)
    }

    pub fn regions_in(&self, strip: usize) -> impl Iterator<Item = &CanonicalRegion> {
        self.regions.iter().filter(move |r| r.strip == strip)
    }

    fn strip_regions(&self, i: usize) -> Vec<CanonicalRegion> {
        if self.k() == 0 {
            return vec![CanonicalRegion {
                strip: 0,
                lower: LevelBound::MinusInfinity,
                upper: LevelBound::PlusInfinity,
                boundary: BTreeSet::new(),
            }];
        }
        let inner = self.inner_separatrices(i);
        let mut levels: Vec<AlgReal> = inner.iter().map(|s| s.level.clone()).collect();
        levels.sort();
        levels.dedup();

        let mut bounds = vec![LevelBound::MinusInfinity];
        bounds.extend(levels.iter().cloned().map(LevelBound::Value));
        bounds.push(LevelBound::PlusInfinity);
        let mut regions: Vec<CanonicalRegion> = bounds
            .windows(2)
            .map(|w| CanonicalRegion { strip: i, lower: w[0].clone(), upper: w[1].clone(), boundary: BTreeSet::new() })
            .collect();

        for sep in &inner {
            let pos = levels.iter().position(|l| *l == sep.level).expect("own level");
            regions[pos].boundary.insert(sep.id);
            regions[pos + 1].boundary.insert(sep.id);
        }
        // The vertical at a boundary root borders the interval just above or
        // below that root's level, by the sign of r' there.
        let strip = self.strip(i);
        let mut attach_vertical = |j: usize, side: Sign| {
            let pos = levels.iter().position(|l| *l == self.boundary_values[j]).expect("own level");
            let region = if side == Sign::Pos { pos + 1 } else { pos };
            regions[region].boundary.insert(SeparatrixId::Vertical(j));
        };
        if let Boundary::Root(a) = strip.left {
            attach_vertical(a, self.rprime_signs[a]);
        }
        if let Boundary::Root(b) = strip.right {
            attach_vertical(b, -self.rprime_signs[b]);
        }
        regions
    }

    /// Roots and boundary values are all rational.
    pub fn is_rational(&self) -> bool {
        self.roots.iter().chain(&self.boundary_values).all(AlgReal::is_rational)
    }
}

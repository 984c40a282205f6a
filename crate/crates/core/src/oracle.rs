//! Brute-force chordal relations of sampled leaves, used to cross-check the
//! token invariant. Works only with rational roots and levels.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equivalence::{region_image, token_match, Transformation};
use crate::foliation::{Boundary, CanonicalRegion, Configuration, LevelBound, SeparatrixId};
use crate::realalg::{homogeneous_compose, rational_to_f64, AlgReal, IntPoly, Rational, Sign, SturmChain, UniPoly};

pub const DEFAULT_BUDGET: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("oracle requires rational roots and boundary values; {0} is irrational")]
    OracleScope(String),
    #[error("leaves of a triple must be pairwise distinct")]
    DegenerateChoice,
}

pub type Point = (Rational, Rational);

/// The graph of `x ↦ (level - r(x)) / s(x)` over the open strip `(lo, hi)`;
/// `None` stands for an infinite end.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphLeaf {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
    pub level: Rational,
    pub r: UniPoly,
    pub s: UniPoly,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SampleLeaf {
    Vertical(Rational),
    Graph(GraphLeaf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChordalRelation {
    /// The given leaf (1, 2 or 3) separates the other two.
    Separation(u8),
    CyclicPositive,
    CyclicNegative,
    Inconclusive,
}

impl ChordalRelation {
    pub fn reversed(self) -> ChordalRelation {
        match self {
            ChordalRelation::CyclicPositive => ChordalRelation::CyclicNegative,
            ChordalRelation::CyclicNegative => ChordalRelation::CyclicPositive,
            other => other,
        }
    }

    pub fn is_cyclic(self) -> bool {
        matches!(self, ChordalRelation::CyclicPositive | ChordalRelation::CyclicNegative)
    }
}

impl fmt::Display for ChordalRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChordalRelation::Separation(1) => f.write_str("l2|l1|l3"),
            ChordalRelation::Separation(2) => f.write_str("l1|l2|l3"),
            ChordalRelation::Separation(_) => f.write_str("l1|l3|l2"),
            ChordalRelation::CyclicPositive => f.write_str("cyclic+"),
            ChordalRelation::CyclicNegative => f.write_str("cyclic-"),
            ChordalRelation::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn pow2(i: u32) -> Rational {
    Rational::from_integer(BigInt::one() << i)
}

impl GraphLeaf {
    pub fn y_at(&self, x: &Rational) -> Rational {
        (&self.level - self.r.eval(x)) / self.s.eval(x)
    }

    fn contains_x(&self, x: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|lo| x > lo) && self.hi.as_ref().is_none_or(|hi| x < hi)
    }

    /// Dyadic points near where the leaf turns vertically, found by a
    /// floating-point scan of the strip.
    fn turning_points(&self) -> Vec<Rational> {
        const STEPS: usize = 256;
        let c = UniPoly::constant(self.level.clone());
        let m = &(&-&self.r.derivative() * &self.s) - &(&(&c - &self.r) * &self.s.derivative());
        if m.is_constant() {
            return Vec::new();
        }
        let lo = self.lo.as_ref().map(rational_to_f64);
        let hi = self.hi.as_ref().map(rational_to_f64);
        let (a, b) = match (lo, hi) {
            (Some(a), Some(b)) => (a, b),
            (Some(a), None) => (a, a + 64.0),
            (None, Some(b)) => (b - 64.0, b),
            (None, None) => (-64.0, 64.0),
        };
        let scale = f64::from(1u32 << 12);
        let xs: Vec<f64> = (1..STEPS).map(|k| a + (b - a) * k as f64 / STEPS as f64).collect();
        xs.windows(2)
            .filter(|w| m.eval_f64(w[0]) * m.eval_f64(w[1]) <= 0.0)
            .map(|w| Rational::new(BigInt::from((w[0] * scale).round() as i64), BigInt::from(1u32 << 12)))
            .filter(|x| self.contains_x(x))
            .collect()
    }

    /// Positive multiple of `r(x) + s(x) y - level` along
    /// `x = a.0 + dx t`, `y = a.1 + dy t`, computed over the integers.
    fn along_line(&self, a: &Point, dx: &Rational, dy: &Rational) -> IntPoly {
        let l = self
            .r
            .coeffs()
            .iter()
            .chain(self.s.coeffs())
            .chain(std::iter::once(&self.level))
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let scaled = |c: &Rational| (c * Rational::from_integer(l.clone())).to_integer();
        let ri: Vec<BigInt> = self.r.coeffs().iter().map(scaled).collect();
        let si: Vec<BigInt> = self.s.coeffs().iter().map(scaled).collect();
        let n = self.r.degree().unwrap_or(0).max(self.s.degree().unwrap_or(0) + 1);
        let d = a.0.denom().lcm(dx.denom());
        let u = [a.0.numer() * (&d / a.0.denom()), dx.numer() * (&d / dx.denom())];
        let f = a.1.denom().lcm(dy.denom());
        let v = [a.1.numer() * (&f / a.1.denom()), dy.numer() * (&f / dy.denom())];
        let rx = homogeneous_compose(&ri, n, &u, &d);
        let sx = homogeneous_compose(&si, n - 1, &u, &d);
        let mut out = vec![BigInt::zero(); n + 2];
        for (i, c) in rx.iter().enumerate() {
            out[i] += c * &f;
        }
        for (i, c) in sx.iter().enumerate() {
            out[i] += c * &d * &v[0];
            out[i + 1] += c * &d * &v[1];
        }
        out[0] -= scaled(&self.level) * &f * num::pow(d, n);
        IntPoly::primitive(out)
    }

    /// x-parameters at dyadic depth `i`, approaching each end of the strip.
    fn x_candidates(&self, i: u32) -> [Rational; 3] {
        let step = pow2(i).recip();
        match (&self.lo, &self.hi) {
            (Some(lo), Some(hi)) => {
                let mid = (lo + hi) / int(2);
                let reach = (hi - lo) / int(2) * (Rational::one() - step);
                [mid.clone(), &mid - &reach, mid + reach]
            }
            (Some(a), None) => [a + int(1), a + &step, a + pow2(i)],
            (None, Some(b)) => [b - int(1), b - &step, b - pow2(i)],
            (None, None) => [Rational::zero(), pow2(i), -pow2(i)],
        }
    }
}

impl SampleLeaf {
    pub fn default_point(&self) -> Point {
        self.candidates(0)[0].clone()
    }

    /// Three points on the leaf at dyadic depth `i`.
    pub fn candidates(&self, i: u32) -> [Point; 3] {
        match self {
            SampleLeaf::Vertical(a) => [(a.clone(), Rational::zero()), (a.clone(), pow2(i)), (a.clone(), -pow2(i))],
            SampleLeaf::Graph(g) => g.x_candidates(i).map(|x| {
                let y = g.y_at(&x);
                (x, y)
            }),
        }
    }

    /// Polynomial in `t` vanishing where the segment `a + t (b - a)` meets
    /// the level set of this leaf, with the open `t`-range in which that
    /// level set coincides with the leaf.
    fn along(&self, a: &Point, b: &Point) -> Crossing {
        let dx = &b.0 - &a.0;
        let dy = &b.1 - &a.1;
        match self {
            SampleLeaf::Vertical(v) => {
                Crossing { poly: IntPoly::from_uni(&UniPoly::new(vec![&a.0 - v, dx])), range: (None, None) }
            }
            SampleLeaf::Graph(g) => {
                let poly = g.along_line(a, &dx, &dy);
                let range = if dx.is_zero() {
                    if g.contains_x(&a.0) {
                        (None, None)
                    } else {
                        (Some(Rational::one()), Some(Rational::zero()))
                    }
                } else {
                    let at = |x: &Option<Rational>| x.as_ref().map(|x| (x - &a.0) / &dx);
                    let (t_lo, t_hi) = (at(&g.lo), at(&g.hi));
                    if dx.is_positive() {
                        (t_lo, t_hi)
                    } else {
                        (t_hi, t_lo)
                    }
                };
                Crossing { poly, range }
            }
        }
    }
}

struct Crossing {
    poly: IntPoly,
    range: (Option<Rational>, Option<Rational>),
}

impl Crossing {
    /// `[0, 1]` intersected with the open range, as `(lo, lo_closed, hi, hi_closed)`.
    fn window(&self) -> Option<(Rational, bool, Rational, bool)> {
        let (mut lo, mut lo_closed) = (Rational::zero(), true);
        let (mut hi, mut hi_closed) = (Rational::one(), true);
        if let Some(a) = &self.range.0 {
            if a >= &lo {
                lo = a.clone();
                lo_closed = false;
            }
        }
        if let Some(b) = &self.range.1 {
            if b <= &hi {
                hi = b.clone();
                hi_closed = false;
            }
        }
        match lo.cmp(&hi) {
            std::cmp::Ordering::Less => Some((lo, lo_closed, hi, hi_closed)),
            std::cmp::Ordering::Equal if lo_closed && hi_closed => Some((lo, true, hi, true)),
            _ => None,
        }
    }

    /// Distinct intersection parameters in the window; `None` if the whole
    /// segment lies in the level set.
    fn count_all(&self) -> Option<usize> {
        let Some((lo, lo_closed, hi, hi_closed)) = self.window() else {
            return Some(0);
        };
        if self.poly.is_zero() {
            return None;
        }
        Some(count_in(&self.poly, &lo, lo_closed, &hi, hi_closed))
    }

    /// Parity of crossings: whether the number of odd-multiplicity roots in
    /// the window interior is odd, i.e. whether the one-sided signs at the
    /// two ends of the window differ.
    fn odd_crossings(&self) -> bool {
        let Some((lo, _, hi, _)) = self.window() else {
            return false;
        };
        if lo == hi || self.poly.is_zero() {
            return false;
        }
        self.poly.side_sign_at(&lo, true) != self.poly.side_sign_at(&hi, false)
    }
}

fn count_in(p: &IntPoly, lo: &Rational, lo_closed: bool, hi: &Rational, hi_closed: bool) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let zero = |x: &Rational| usize::from(p.sign_at(x) == Sign::Zero);
    if lo == hi {
        return zero(lo);
    }
    let mut n = SturmChain::count_open_int(p, lo, hi);
    if hi_closed {
        n += zero(hi);
    }
    if lo_closed {
        n += zero(lo);
    }
    n
}

/// Whether `l2` separates the points `p1` and `p3`, neither lying on `l2`.
pub fn separates_points(l2: &SampleLeaf, p1: &Point, p3: &Point) -> bool {
    match l2 {
        SampleLeaf::Vertical(a) => (&p1.0 - a).signum() * (&p3.0 - a).signum() == -Rational::one(),
        SampleLeaf::Graph(_) => l2.along(p1, p3).odd_crossings(),
    }
}

/// Whether `l2` separates `l1` from `l3`.
pub fn separates(l1: &SampleLeaf, l2: &SampleLeaf, l3: &SampleLeaf) -> Result<bool, OracleError> {
    if l1 == l2 || l2 == l3 || l1 == l3 {
        return Err(OracleError::DegenerateChoice);
    }
    Ok(separates_points(l2, &l1.default_point(), &l3.default_point()))
}

/// Whether the segment `a b` meets `leaf` exactly `expected` times.
fn meets_exactly(leaf: &SampleLeaf, a: &Point, b: &Point, expected: usize) -> bool {
    leaf.along(a, b).count_all() == Some(expected)
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Samples per edge in the floating-point pre-filter.
const FLOAT_SAMPLES: usize = 48;

/// Floating-point image of a leaf, used only to discard candidate edges.
enum FloatLeaf {
    Vertical(f64),
    Graph { lo: f64, hi: f64, level: f64, r: Vec<f64>, s: Vec<f64> },
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

impl FloatLeaf {
    fn new(leaf: &SampleLeaf) -> FloatLeaf {
        match leaf {
            SampleLeaf::Vertical(a) => FloatLeaf::Vertical(rational_to_f64(a)),
            SampleLeaf::Graph(g) => FloatLeaf::Graph {
                lo: g.lo.as_ref().map_or(f64::NEG_INFINITY, rational_to_f64),
                hi: g.hi.as_ref().map_or(f64::INFINITY, rational_to_f64),
                level: rational_to_f64(&g.level),
                r: g.r.coeffs().iter().map(rational_to_f64).collect(),
                s: g.s.coeffs().iter().map(rational_to_f64).collect(),
            },
        }
    }

    /// Parameter window of `a + t (b - a)`, `t` in `[0, 1]`, over which the
    /// leaf's level set is the leaf.
    fn window(&self, a: (f64, f64), b: (f64, f64)) -> Option<(f64, f64)> {
        let FloatLeaf::Graph { lo, hi, .. } = self else {
            return Some((0.0, 1.0));
        };
        let dx = b.0 - a.0;
        if dx == 0.0 {
            return (a.0 > *lo && a.0 < *hi).then_some((0.0, 1.0));
        }
        let (t1, t2) = ((lo - a.0) / dx, (hi - a.0) / dx);
        let (t_lo, t_hi) = if dx > 0.0 { (t1, t2) } else { (t2, t1) };
        let (t_lo, t_hi) = (t_lo.max(0.0), t_hi.min(1.0));
        (t_lo < t_hi).then_some((t_lo, t_hi))
    }

    /// Level-set function and a magnitude for judging it zero.
    fn value(&self, x: f64, y: f64) -> (f64, f64) {
        match self {
            FloatLeaf::Vertical(a) => (x - a, x.abs() + a.abs()),
            FloatLeaf::Graph { level, r, s, .. } => {
                let (rv, sy) = (horner(r, x), horner(s, x) * y);
                (rv + sy - level, rv.abs() + sy.abs() + level.abs())
            }
        }
    }

    /// Derivative of the level-set function along `dir` at `p`.
    fn slope(&self, p: (f64, f64), dir: (f64, f64)) -> f64 {
        match self {
            FloatLeaf::Vertical(_) => dir.0,
            FloatLeaf::Graph { r, s, .. } => {
                let d = |c: &[f64]| -> Vec<f64> { c.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect() };
                (horner(&d(r), p.0) + horner(&d(s), p.0) * p.1) * dir.0 + horner(s, p.0) * dir.1
            }
        }
    }

    /// Whether sampling shows the segment `a b` meeting the leaf away from
    /// the window ends. The level-set function is continuous across strip
    /// boundaries, so the window ends are sampled too; a zero there (an
    /// endpoint on the leaf, or an attached separatrix) takes its one-sided
    /// sign from the derivative.
    fn crosses(&self, a: (f64, f64), b: (f64, f64)) -> bool {
        let Some((t_lo, t_hi)) = self.window(a, b) else {
            return false;
        };
        let dir = (b.0 - a.0, b.1 - a.1);
        let mut prev = 0.0;
        for k in 0..=FLOAT_SAMPLES {
            let t = t_lo + (t_hi - t_lo) * k as f64 / FLOAT_SAMPLES as f64;
            let p = (a.0 + t * dir.0, a.1 + t * dir.1);
            let (v, mag) = self.value(p.0, p.1);
            if !v.is_finite() {
                continue;
            }
            let v = if v.abs() > 1e-9 * mag {
                v
            } else if k == 0 {
                self.slope(p, dir)
            } else if k == FLOAT_SAMPLES {
                -self.slope(p, dir)
            } else {
                return true;
            };
            if prev * v < 0.0 {
                return true;
            }
            prev = v;
        }
        false
    }
}

#[derive(Clone)]
struct Candidate {
    point: Point,
    approx: (f64, f64),
}

impl Candidate {
    fn new(point: Point) -> Option<Candidate> {
        let approx = (rational_to_f64(&point.0), rational_to_f64(&point.1));
        (approx.0.is_finite() && approx.1.is_finite()).then_some(Candidate { point, approx })
    }
}

/// A leaf with its candidate points per depth computed once, for reuse
/// across the triples it takes part in.
pub struct PreparedLeaf {
    leaf: SampleLeaf,
    float: FloatLeaf,
    default_point: Point,
    by_depth: Vec<Vec<Candidate>>,
}

impl PreparedLeaf {
    pub fn new(leaf: SampleLeaf, budget: u32) -> PreparedLeaf {
        let by_depth = (0..budget)
            .map(|depth| {
                let mut pts = leaf.candidates(depth).to_vec();
                if let (0, SampleLeaf::Graph(g)) = (depth, &leaf) {
                    pts.extend(g.turning_points().into_iter().map(|x| {
                        let y = g.y_at(&x);
                        (x, y)
                    }));
                }
                pts.into_iter().filter_map(Candidate::new).collect()
            })
            .collect();
        PreparedLeaf { float: FloatLeaf::new(&leaf), default_point: leaf.default_point(), leaf, by_depth }
    }

    pub fn leaf(&self) -> &SampleLeaf {
        &self.leaf
    }
}

type Edge = (usize, usize, usize, usize);

/// Incremental search for a triangle with one vertex on each leaf whose
/// edges meet the leaves only at the vertices.
struct TriangleSearch<'a> {
    leaves: [&'a PreparedLeaf; 3],
    points: [Vec<Candidate>; 3],
    plausible: HashSet<Edge>,
    verified: HashMap<Edge, bool>,
}

impl<'a> TriangleSearch<'a> {
    fn new(leaves: [&'a PreparedLeaf; 3]) -> Self {
        TriangleSearch {
            leaves,
            points: [Vec::new(), Vec::new(), Vec::new()],
            plausible: HashSet::new(),
            verified: HashMap::new(),
        }
    }

    fn push(&mut self, leaf: usize, c: Candidate) {
        if !self.points[leaf].iter().any(|d| d.point == c.point) {
            self.points[leaf].push(c);
        }
    }

    /// Adds the depth-`i` candidates; vertical leaves also take the heights
    /// of the other leaves' new points.
    fn extend(&mut self, depth: u32) -> [usize; 3] {
        let before = self.points.each_ref().map(Vec::len);
        let leaves = self.leaves;
        for (i, l) in leaves.iter().enumerate() {
            for c in &l.by_depth[depth as usize] {
                self.push(i, c.clone());
            }
        }
        for (i, l) in leaves.iter().enumerate() {
            if let SampleLeaf::Vertical(a) = &l.leaf {
                for (j, other) in leaves.iter().enumerate() {
                    if j != i && matches!(other.leaf, SampleLeaf::Graph(_)) {
                        for c in &other.by_depth[depth as usize] {
                            if let Some(c) = Candidate::new((a.clone(), c.point.1.clone())) {
                                self.push(i, c);
                            }
                        }
                    }
                }
            }
        }
        before
    }

    fn key(i: usize, a: usize, j: usize, b: usize) -> Edge {
        if i < j {
            (i, a, j, b)
        } else {
            (j, b, i, a)
        }
    }

    fn float_clean(&self, (i, a, j, b): Edge) -> bool {
        let (pa, pb) = (self.points[i][a].approx, self.points[j][b].approx);
        let k = 3 - i - j;
        let f = |l: usize| &self.leaves[l].float;
        !f(k).crosses(pa, pb) && !f(i).crosses(pa, pb) && !f(j).crosses(pa, pb)
    }

    fn exact_clean(&mut self, (i, a, j, b): Edge) -> bool {
        if let Some(&v) = self.verified.get(&(i, a, j, b)) {
            return v;
        }
        let (pa, pb) = (&self.points[i][a].point, &self.points[j][b].point);
        let k = 3 - i - j;
        let l = |n: usize| &self.leaves[n].leaf;
        let v = meets_exactly(l(k), pa, pb, 0) && meets_exactly(l(i), pa, pb, 1) && meets_exactly(l(j), pa, pb, 1);
        self.verified.insert((i, a, j, b), v);
        v
    }

    /// Screens every edge with a fresh endpoint and returns the orientation
    /// of the first exactly verified triangle completed by one of them.
    fn step(&mut self, before: [usize; 3]) -> Option<Sign> {
        let mut fresh_edges = Vec::new();
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            for a in 0..self.points[i].len() {
                for b in 0..self.points[j].len() {
                    if (a >= before[i] || b >= before[j]) && self.float_clean((i, a, j, b)) {
                        self.plausible.insert((i, a, j, b));
                        fresh_edges.push((i, a, j, b));
                    }
                }
            }
        }
        for (i, a, j, b) in fresh_edges {
            let k = 3 - i - j;
            for c in 0..self.points[k].len() {
                let (e2, e3) = (Self::key(j, b, k, c), Self::key(i, a, k, c));
                if !self.plausible.contains(&e2) || !self.plausible.contains(&e3) {
                    continue;
                }
                let mut v = [0; 3];
                (v[i], v[j], v[k]) = (a, b, c);
                let [p0, p1, p2] = [0, 1, 2].map(|l| &self.points[l][v[l]].point);
                let area = Sign::of(&cross(p0, p1, p2));
                if area == Sign::Zero {
                    continue;
                }
                if self.exact_clean((i, a, j, b)) && self.exact_clean(e2) && self.exact_clean(e3) {
                    return Some(area);
                }
            }
        }
        None
    }
}

pub fn classify_triple(
    l1: &SampleLeaf,
    l2: &SampleLeaf,
    l3: &SampleLeaf,
    budget: u32,
) -> Result<ChordalRelation, OracleError> {
    let [p1, p2, p3] = [l1, l2, l3].map(|l| PreparedLeaf::new(l.clone(), budget));
    classify_prepared(&p1, &p2, &p3, budget)
}

/// `classify_triple` on prepared leaves; `budget` is capped by the depth
/// they were prepared for.
pub fn classify_prepared(
    l1: &PreparedLeaf,
    l2: &PreparedLeaf,
    l3: &PreparedLeaf,
    budget: u32,
) -> Result<ChordalRelation, OracleError> {
    if l1.leaf == l2.leaf || l2.leaf == l3.leaf || l1.leaf == l3.leaf {
        return Err(OracleError::DegenerateChoice);
    }
    if separates_points(&l2.leaf, &l1.default_point, &l3.default_point) {
        return Ok(ChordalRelation::Separation(2));
    }
    if separates_points(&l1.leaf, &l2.default_point, &l3.default_point) {
        return Ok(ChordalRelation::Separation(1));
    }
    if separates_points(&l3.leaf, &l1.default_point, &l2.default_point) {
        return Ok(ChordalRelation::Separation(3));
    }
    let mut search = TriangleSearch::new([l1, l2, l3]);
    let depths = budget.min(l1.by_depth.len().min(l2.by_depth.len()).min(l3.by_depth.len()) as u32);
    for depth in 0..depths {
        let before = search.extend(depth);
        if let Some(sign) = search.step(before) {
            return Ok(if sign == Sign::Pos {
                ChordalRelation::CyclicPositive
            } else {
                ChordalRelation::CyclicNegative
            });
        }
    }
    Ok(ChordalRelation::Inconclusive)
}

fn rational_of(v: &AlgReal) -> Result<Rational, OracleError> {
    v.as_rational().cloned().ok_or_else(|| OracleError::OracleScope(v.to_string()))
}

fn check_scope(conf: &Configuration) -> Result<(), OracleError> {
    for v in conf.roots.iter().chain(&conf.boundary_values) {
        rational_of(v)?;
    }
    Ok(())
}

fn strip_bounds(conf: &Configuration, strip: usize) -> (Option<Rational>, Option<Rational>) {
    let s = conf.strip(strip);
    let root = |b: Boundary| match b {
        Boundary::Root(j) => conf.roots[j].as_rational().cloned(),
        _ => None,
    };
    (root(s.left), root(s.right))
}

fn graph(conf: &Configuration, strip: usize, level: Rational) -> SampleLeaf {
    let (lo, hi) = strip_bounds(conf, strip);
    SampleLeaf::Graph(GraphLeaf { lo, hi, level, r: conf.map.r.clone(), s: conf.map.s.clone() })
}

/// The leaf of a separatrix; requires rational data.
pub fn separatrix_leaf(conf: &Configuration, id: SeparatrixId) -> Result<SampleLeaf, OracleError> {
    check_scope(conf)?;
    match id {
        SeparatrixId::Vertical(j) => Ok(SampleLeaf::Vertical(rational_of(&conf.roots[j])?)),
        SeparatrixId::Inner { strip, .. } => {
            let level =
                conf.separatrix_level(id).ok_or_else(|| OracleError::OracleScope(format!("no separatrix {id}")))?;
            Ok(graph(conf, strip, rational_of(&level)?))
        }
    }
}

/// `n` rational levels inside the region's level interval, increasing.
pub fn region_levels(region: &CanonicalRegion, n: usize) -> Result<Vec<Rational>, OracleError> {
    let bound = |b: &LevelBound| match b {
        LevelBound::Value(v) => rational_of(v).map(Some),
        _ => Ok(None),
    };
    let (lo, hi) = (bound(&region.lower)?, bound(&region.upper)?);
    let n = n.max(1);
    Ok((1..=n as i64)
        .map(|j| match (&lo, &hi) {
            (Some(lo), Some(hi)) => lo + (hi - lo) * Rational::new(j.into(), (n as i64 + 1).into()),
            (Some(lo), None) => lo + int(j),
            (None, Some(hi)) => hi - int(n as i64 + 1 - j),
            (None, None) => int(j - (n as i64 + 1) / 2),
        })
        .collect())
}

/// Sample leaves of a region, increasing in level.
pub fn region_leaves(conf: &Configuration, region: &CanonicalRegion, n: usize) -> Result<Vec<SampleLeaf>, OracleError> {
    Ok(region_levels(region, n)?.into_iter().map(|c| graph(conf, region.strip, c)).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripleReport {
    pub triple: [String; 3],
    pub relation_p: ChordalRelation,
    pub relation_q: ChordalRelation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub transformation: Transformation,
    pub token_match: bool,
    pub checked: usize,
    pub violations: Vec<TripleReport>,
    pub inconclusive: Vec<TripleReport>,
    pub unmapped: Vec<String>,
}

/// Whether the inner separatrix in `region`'s boundary sits at its lower end.
fn inner_at_lower(conf: &Configuration, region: &CanonicalRegion) -> Option<(SeparatrixId, bool)> {
    region.boundary.iter().find_map(|&id| {
        if !matches!(id, SeparatrixId::Inner { .. }) {
            return None;
        }
        let level = conf.separatrix_level(id)?;
        Some((id, region.lower == LevelBound::Value(level)))
    })
}

/// A named leaf of `p` with its image leaf in `q`.
type LeafPair = (String, SampleLeaf, SampleLeaf);

/// Sampled leaves of `p` paired with their images in `q` under `t`.
fn paired_leaves(
    p: &Configuration,
    q: &Configuration,
    t: Transformation,
    samples: usize,
) -> Result<(Vec<LeafPair>, Vec<String>), OracleError> {
    let k = p.k();
    let mut pairs = Vec::new();
    let mut unmapped = Vec::new();
    for sep in p.separatrices() {
        let image = t.apply_id(sep.id, k);
        if q.separatrix_level(image).is_none() {
            unmapped.push(sep.id.to_string());
            continue;
        }
        pairs.push((sep.id.to_string(), separatrix_leaf(p, sep.id)?, separatrix_leaf(q, image)?));
    }
    for (idx, region) in p.regions.iter().enumerate() {
        let label = |j: usize| format!("R{idx}.{j}");
        let Some(image) = region_image(p, q, t, region) else {
            unmapped.extend((0..samples.max(1)).map(label));
            continue;
        };
        let from = region_leaves(p, region, samples)?;
        let mut to = region_leaves(q, image, samples)?;
        if let Some((id, lower)) = inner_at_lower(p, region) {
            let image_id = t.apply_id(id, k);
            let image_lower = q.separatrix_level(image_id).is_some_and(|l| image.lower == LevelBound::Value(l));
            if lower != image_lower {
                to.reverse();
            }
        }
        pairs.extend(from.into_iter().zip(to).enumerate().map(|(j, (a, b))| (label(j), a, b)));
    }
    Ok((pairs, unmapped))
}

/// Classify every triple of sampled leaves of `p` and of their images in
/// `q`, reporting triples whose relation is not carried over as `t`
/// requires. `t` need not be a token match; the report records whether it is.
pub fn check_correspondence(
    p: &Configuration,
    q: &Configuration,
    t: Transformation,
    samples_per_region: usize,
    budget: u32,
) -> Result<OracleReport, OracleError> {
    check_scope(p)?;
    check_scope(q)?;
    let (pairs, unmapped) = paired_leaves(p, q, t, samples_per_region)?;
    let leaves: Vec<(String, PreparedLeaf, PreparedLeaf)> = pairs
        .into_par_iter()
        .map(|(id, a, b)| (id, PreparedLeaf::new(a, budget), PreparedLeaf::new(b, budget)))
        .collect();
    let n = leaves.len();
    let triples: Vec<[usize; 3]> =
        (0..n).flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c]))).collect();
    let results: Vec<TripleReport> = triples
        .par_iter()
        .map(|&[a, b, c]| {
            let relation_p = classify_prepared(&leaves[a].1, &leaves[b].1, &leaves[c].1, budget)?;
            let relation_q = classify_prepared(&leaves[a].2, &leaves[b].2, &leaves[c].2, budget)?;
            Ok(TripleReport { triple: [a, b, c].map(|i| leaves[i].0.clone()), relation_p, relation_q })
        })
        .collect::<Result<_, OracleError>>()?;

    let mut violations = Vec::new();
    let mut inconclusive = Vec::new();
    for rep in results {
        if rep.relation_p == ChordalRelation::Inconclusive || rep.relation_q == ChordalRelation::Inconclusive {
            inconclusive.push(rep);
            continue;
        }
        let expected = if t.preserves_orientation() { rep.relation_p } else { rep.relation_p.reversed() };
        if rep.relation_q != expected {
            violations.push(rep);
        }
    }
    Ok(OracleReport {
        transformation: t,
        token_match: token_match(p, q).contains(&t),
        checked: triples.len(),
        violations,
        inconclusive,
        unmapped,
    })
}

/// Cycle sign of (vertical at the strip's finite boundary, a leaf of the
/// region bordering both, the attached separatrix).
pub fn boundary_cycle_sign(
    conf: &Configuration,
    strip: usize,
    side: crate::realalg::Side,
    budget: u32,
) -> Result<Option<ChordalRelation>, OracleError> {
    use crate::foliation::Attach;
    let s = conf.strip(strip);
    let (root, attach) = match side {
        crate::realalg::Side::Left => (s.left, Attach::LeftAttached),
        crate::realalg::Side::Right => (s.right, Attach::RightAttached),
    };
    let Boundary::Root(j) = root else {
        return Ok(None);
    };
    let inner = conf
        .inner_separatrices(strip)
        .into_iter()
        .find(|sep| matches!(sep.id, SeparatrixId::Inner { attach: a, .. } if a == attach || a == Attach::BothAttached))
        .expect("finite boundary has an attached separatrix");
    let vertical = SeparatrixId::Vertical(j);
    let region = conf
        .regions_in(strip)
        .find(|r| r.boundary.contains(&vertical) && r.boundary.contains(&inner.id))
        .expect("region bordering the vertical and its separatrix");
    let gamma = region_leaves(conf, region, 1)?.remove(0);
    let relation =
        classify_triple(&separatrix_leaf(conf, vertical)?, &gamma, &separatrix_leaf(conf, inner.id)?, budget)?;
    Ok(Some(relation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_map;
    use crate::foliation::build_configuration;

    fn vertical(n: i64) -> SampleLeaf {
        SampleLeaf::Vertical(int(n))
    }

    fn cubic_leaf(level: i64) -> SampleLeaf {
        SampleLeaf::Graph(GraphLeaf {
            lo: Some(int(0)),
            hi: None,
            level: int(level),
            r: UniPoly::x(),
            s: UniPoly::from_ints(&[0, 0, 0, 1]),
        })
    }

    #[test]
    fn vertical_separation() {
        assert!(separates(&vertical(-1), &vertical(0), &vertical(2)).unwrap());
        assert!(!separates(&vertical(1), &vertical(0), &vertical(2)).unwrap());
        assert_eq!(separates(&vertical(1), &vertical(1), &vertical(2)), Err(OracleError::DegenerateChoice));
    }

    #[test]
    fn graph_separation() {
        assert!(separates(&cubic_leaf(1), &cubic_leaf(0), &cubic_leaf(-1)).unwrap());
        assert!(!separates(&cubic_leaf(1), &vertical(-1), &cubic_leaf(-1)).unwrap());
        assert_eq!(
            classify_triple(&cubic_leaf(1), &cubic_leaf(0), &cubic_leaf(-1), 8),
            Ok(ChordalRelation::Separation(2))
        );
    }

    #[test]
    fn cubic_cycle() {
        // Both ends of the level-0 graph on x > 0 run to -infinity at 0+.
        let conf = build_configuration(&parse_map("x + x^3*y").unwrap()).unwrap();
        let rel = boundary_cycle_sign(&conf, 1, crate::realalg::Side::Left, DEFAULT_BUDGET).unwrap();
        assert_eq!(rel, Some(ChordalRelation::CyclicNegative));
    }

    /// Odd-multiplicity roots in the open window, counted one by one.
    fn odd_roots_by_splitting(c: &Crossing) -> usize {
        let Some((lo, _, hi, _)) = c.window() else {
            return 0;
        };
        let odd = c
            .poly
            .to_uni()
            .squarefree_decomposition()
            .unwrap()
            .into_iter()
            .filter(|(_, m)| m % 2 == 1)
            .fold(UniPoly::one(), |acc, (f, _)| &acc * &f);
        if odd.is_constant() {
            0
        } else {
            SturmChain::new(&odd).count_open(&lo, &hi)
        }
    }

    #[test]
    fn parity_matches_square_free_count() {
        let conf = build_configuration(&parse_map("x*(7*x - 5) + (x+1)^2*x^2*(x-2)^2*y").unwrap()).unwrap();
        let leaves: Vec<SampleLeaf> = conf
            .regions
            .iter()
            .map(|r| region_leaves(&conf, r, 1).unwrap().remove(0))
            .chain(conf.separatrices().into_iter().map(|s| separatrix_leaf(&conf, s.id).unwrap()))
            .collect();
        for a in &leaves {
            for b in &leaves {
                for c in &leaves {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let crossing = b.along(&a.default_point(), &c.default_point());
                    assert_eq!(crossing.odd_crossings(), odd_roots_by_splitting(&crossing) % 2 == 1);
                }
            }
        }
    }

    #[test]
    fn scope_rejects_irrational() {
        let conf = build_configuration(&parse_map("x + (x^2 - 2)^2*y").unwrap()).unwrap();
        assert!(matches!(
            check_correspondence(&conf, &conf, Transformation::Identity, 1, 4),
            Err(OracleError::OracleScope(_))
        ));
    }
}

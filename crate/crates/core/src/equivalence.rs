//! Deciding the four equivalence verdicts between two configurations.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::LinearLikeMap;
use crate::foliation::{build_configuration, CanonicalRegion, Configuration, FoliationError, SeparatrixId, StripToken};
use crate::realalg::AlgReal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Transformation {
    Identity,
    HFlip,
    VFlip,
    Rotation,
}

impl Transformation {
    /// Order in which candidate matches are tried.
    pub const ALL: [Transformation; 4] =
        [Transformation::Identity, Transformation::Rotation, Transformation::HFlip, Transformation::VFlip];

    pub fn preserves_orientation(self) -> bool {
        matches!(self, Transformation::Identity | Transformation::Rotation)
    }

    /// Whether strips and verticals are listed in reverse order.
    pub fn reverses_order(self) -> bool {
        matches!(self, Transformation::HFlip | Transformation::Rotation)
    }

    fn negates_signs(self) -> bool {
        matches!(self, Transformation::VFlip | Transformation::Rotation)
    }

    pub fn compose(self, other: Transformation) -> Transformation {
        let rev = self.reverses_order() != other.reverses_order();
        let neg = self.negates_signs() != other.negates_signs();
        match (rev, neg) {
            (false, false) => Transformation::Identity,
            (true, false) => Transformation::HFlip,
            (false, true) => Transformation::VFlip,
            (true, true) => Transformation::Rotation,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Transformation::Identity => "Identity",
            Transformation::HFlip => "HFlip",
            Transformation::VFlip => "VFlip",
            Transformation::Rotation => "Rotation",
        }
    }

    pub fn strip_index(self, i: usize, k: usize) -> usize {
        if self.reverses_order() {
            k - i
        } else {
            i
        }
    }

    pub fn root_index(self, j: usize, k: usize) -> usize {
        if self.reverses_order() {
            k - 1 - j
        } else {
            j
        }
    }

    pub fn apply_id(self, id: SeparatrixId, k: usize) -> SeparatrixId {
        match id {
            SeparatrixId::Vertical(j) => SeparatrixId::Vertical(self.root_index(j, k)),
            SeparatrixId::Inner { strip, attach } => SeparatrixId::Inner {
                strip: self.strip_index(strip, k),
                attach: if self.reverses_order() { attach.swapped() } else { attach },
            },
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Transformation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Transformation::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown transformation '{s}'"))
    }
}

pub fn transform_token(token: StripToken, t: Transformation) -> StripToken {
    let token = if t.negates_signs() { token.map_signs(|s| -s) } else { token };
    if !t.reverses_order() {
        return token;
    }
    match token {
        StripToken::LeftInfinite(s) => StripToken::RightInfinite(s),
        StripToken::RightInfinite(s) => StripToken::LeftInfinite(s),
        StripToken::BoundedDistinct { aa, ab, ba, bb } => {
            StripToken::BoundedDistinct { aa: bb, ab: ba, ba: ab, bb: aa }
        }
        StripToken::BoundedEqual { a, b } => StripToken::BoundedEqual { a: b, b: a },
    }
}

pub fn transform_tokens(tokens: &[StripToken], t: Transformation) -> Vec<StripToken> {
    let mapped = tokens.iter().map(|&tok| transform_token(tok, t));
    if t.reverses_order() {
        mapped.rev().collect()
    } else {
        mapped.collect()
    }
}

/// All `t` with `tokens(p) = t(tokens(q))`, in [`Transformation::ALL`] order.
pub fn token_match(p: &Configuration, q: &Configuration) -> Vec<Transformation> {
    Transformation::ALL.into_iter().filter(|&t| p.tokens == transform_tokens(&q.tokens, t)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    NotMonotone,
    IllDefined,
}

impl Monotonicity {
    pub fn is_monotone(self) -> bool {
        matches!(self, Monotonicity::Increasing | Monotonicity::Decreasing)
    }
}

/// The correspondence of bifurcation values forced by matching verticals.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedSigma {
    pub pairs: Vec<(AlgReal, AlgReal)>,
    pub monotonicity: Monotonicity,
}

impl InducedSigma {
    /// The same correspondence read backwards.
    pub fn inverse(&self) -> InducedSigma {
        let mut pairs: Vec<_> = self.pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        InducedSigma { pairs, monotonicity: self.monotonicity }
    }
}

pub fn induced_sigma(p: &Configuration, q: &Configuration, t: Transformation) -> InducedSigma {
    let k = p.k();
    let pairs: Vec<(AlgReal, AlgReal)> =
        (0..k).map(|j| (p.boundary_values[j].clone(), q.boundary_values[t.root_index(j, k)].clone())).collect();
    let monotonicity = classify(&pairs);
    InducedSigma { pairs, monotonicity }
}

fn classify(pairs: &[(AlgReal, AlgReal)]) -> Monotonicity {
    let mut increasing = true;
    let mut decreasing = true;
    for (i, (a1, b1)) in pairs.iter().enumerate() {
        for (a2, b2) in &pairs[i + 1..] {
            let from = a1.cmp(a2);
            let to = b1.cmp(b2);
            if (from == Ordering::Equal) != (to == Ordering::Equal) {
                return Monotonicity::IllDefined;
            }
            if from != Ordering::Equal {
                increasing &= from == to;
                decreasing &= from == to.reverse();
            }
        }
    }
    match (increasing, decreasing) {
        (true, _) => Monotonicity::Increasing,
        (false, true) => Monotonicity::Decreasing,
        _ => Monotonicity::NotMonotone,
    }
}

/// The region of `q` corresponding to the region `region` of `p` under `t`.
pub fn region_image<'q>(
    p: &Configuration,
    q: &'q Configuration,
    t: Transformation,
    region: &CanonicalRegion,
) -> Option<&'q CanonicalRegion> {
    let k = p.k();
    if k == 0 || q.k() != k {
        return q.regions.first().filter(|_| k == 0 && q.k() == 0);
    }
    let strip = t.strip_index(region.strip, k);
    let boundary: std::collections::BTreeSet<_> = region.boundary.iter().map(|&id| t.apply_id(id, k)).collect();
    q.regions_in(strip).find(|r| r.boundary == boundary)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivalenceError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
}

/// Whether some canonical region keeps its side of the unique bifurcation
/// value under `t`; needed to extend σ to an increasing bijection of ℝ.
pub fn singleton_extension_check(
    p: &Configuration,
    q: &Configuration,
    t: Transformation,
) -> Result<bool, EquivalenceError> {
    if p.bifurcation.len() != 1 || q.bifurcation.len() != 1 {
        return Err(EquivalenceError::PreconditionViolated("bifurcation sets must be singletons"));
    }
    if !t.preserves_orientation() || !token_match(p, q).contains(&t) {
        return Err(EquivalenceError::PreconditionViolated(
            "transformation must be an orientation-preserving token match",
        ));
    }
    let (cp, cq) = (&p.bifurcation[0], &q.bifurcation[0]);
    Ok(p.regions.iter().any(|r| region_image(p, q, t, r).is_some_and(|image| r.side_of(cp) == image.side_of(cq))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Obstruction {
    KMismatch,
    TokenMismatch,
    SigmaIllDefined,
    SigmaNotMonotone,
    SigmaNotIncreasing,
    ExtensionFails,
    TrivialVsNontrivial,
}

impl Obstruction {
    pub fn code(self) -> &'static str {
        match self {
            Obstruction::KMismatch => "K_MISMATCH",
            Obstruction::TokenMismatch => "TOKEN_MISMATCH",
            Obstruction::SigmaIllDefined => "SIGMA_ILL_DEFINED",
            Obstruction::SigmaNotMonotone => "SIGMA_NOT_MONOTONE",
            Obstruction::SigmaNotIncreasing => "SIGMA_NOT_INCREASING",
            Obstruction::ExtensionFails => "EXTENSION_FAILS",
            Obstruction::TrivialVsNontrivial => "TRIVIAL_VS_NONTRIVIAL",
        }
    }

    pub fn explanation(self) -> &'static str {
        match self {
            Obstruction::KMismatch => "the maps have different numbers of vertical separatrices",
            Obstruction::TokenMismatch => "no admissible transformation matches the strip tokens",
            Obstruction::SigmaIllDefined => {
                "the vertical correspondence does not induce a bijection of bifurcation values"
            }
            Obstruction::SigmaNotMonotone => "the induced map of bifurcation values is not monotone",
            Obstruction::SigmaNotIncreasing => "the induced map of bifurcation values is decreasing, not increasing",
            Obstruction::ExtensionFails => "the single bifurcation value cannot be extended to an increasing bijection",
            Obstruction::TrivialVsNontrivial => "exactly one of the maps is a trivial fibration",
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub transformation: Transformation,
    pub sigma: InducedSigma,
}

/// One value per verdict.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PerVerdict<T> {
    pub foliation_o: T,
    pub foliation_top: T,
    pub function_o: T,
    pub function_top: T,
}

impl<T> PerVerdict<T> {
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &T)> {
        [
            ("foliation_o", &self.foliation_o),
            ("foliation_top", &self.foliation_top),
            ("function_o", &self.function_o),
            ("function_top", &self.function_top),
        ]
        .into_iter()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceVerdict {
    pub foliation_o: bool,
    pub foliation_top: bool,
    pub function_o: bool,
    pub function_top: bool,
    pub witnesses: PerVerdict<Option<Witness>>,
    pub obstructions: PerVerdict<Option<Obstruction>>,
}

impl EquivalenceVerdict {
    fn uniform(value: bool, witness: Option<Witness>, obstruction: Option<Obstruction>) -> Self {
        EquivalenceVerdict {
            foliation_o: value,
            foliation_top: value,
            function_o: value,
            function_top: value,
            witnesses: PerVerdict {
                foliation_o: witness.clone(),
                foliation_top: witness.clone(),
                function_o: witness.clone(),
                function_top: witness,
            },
            obstructions: PerVerdict {
                foliation_o: obstruction,
                foliation_top: obstruction,
                function_o: obstruction,
                function_top: obstruction,
            },
        }
    }

    /// The strongest available witness.
    pub fn witness(&self) -> Option<&Witness> {
        self.witnesses
            .function_o
            .as_ref()
            .or(self.witnesses.function_top.as_ref())
            .or(self.witnesses.foliation_o.as_ref())
            .or(self.witnesses.foliation_top.as_ref())
    }

    pub fn verdicts(&self) -> PerVerdict<bool> {
        PerVerdict {
            foliation_o: self.foliation_o,
            foliation_top: self.foliation_top,
            function_o: self.function_o,
            function_top: self.function_top,
        }
    }
}

pub fn decide(p: &Configuration, q: &Configuration) -> EquivalenceVerdict {
    match (p.is_trivial(), q.is_trivial()) {
        (true, true) => {
            let sigma = InducedSigma { pairs: Vec::new(), monotonicity: Monotonicity::Increasing };
            let w = Witness { transformation: Transformation::Identity, sigma };
            return EquivalenceVerdict::uniform(true, Some(w), None);
        }
        (true, false) | (false, true) => {
            return EquivalenceVerdict::uniform(false, None, Some(Obstruction::TrivialVsNontrivial));
        }
        _ => {}
    }
    if p.k() != q.k() {
        return EquivalenceVerdict::uniform(false, None, Some(Obstruction::KMismatch));
    }
    let candidates: Vec<Witness> =
        token_match(p, q).into_iter().map(|t| Witness { transformation: t, sigma: induced_sigma(p, q, t) }).collect();
    if candidates.is_empty() {
        return EquivalenceVerdict::uniform(false, None, Some(Obstruction::TokenMismatch));
    }
    let preserving: Vec<&Witness> = candidates.iter().filter(|w| w.transformation.preserves_orientation()).collect();

    let foliation_top = candidates.first().cloned();
    let foliation_o = preserving.first().map(|w| (*w).clone());

    let function_top = candidates.iter().find(|w| w.sigma.monotonicity.is_monotone()).cloned();
    let sigma_obstruction = |ws: &[&Witness]| {
        if ws.iter().all(|w| w.sigma.monotonicity == Monotonicity::IllDefined) {
            Obstruction::SigmaIllDefined
        } else if ws.iter().any(|w| w.sigma.monotonicity == Monotonicity::Decreasing) {
            Obstruction::SigmaNotIncreasing
        } else {
            Obstruction::SigmaNotMonotone
        }
    };

    let singleton = p.bifurcation.len() == 1;
    let mut extension_failed = false;
    let function_o = preserving
        .iter()
        .find(|w| {
            if w.sigma.monotonicity != Monotonicity::Increasing {
                return false;
            }
            if !singleton {
                return true;
            }
            let ok = singleton_extension_check(p, q, w.transformation).unwrap_or(false);
            extension_failed |= !ok;
            ok
        })
        .map(|w| (*w).clone());

    let all: Vec<&Witness> = candidates.iter().collect();
    let obstructions = PerVerdict {
        foliation_o: foliation_o.is_none().then_some(Obstruction::TokenMismatch),
        foliation_top: None,
        function_o: match (&function_o, preserving.is_empty()) {
            (Some(_), _) => None,
            (None, true) => Some(Obstruction::TokenMismatch),
            (None, false) if extension_failed => Some(Obstruction::ExtensionFails),
            (None, false) => Some(sigma_obstruction(&preserving)),
        },
        function_top: function_top.is_none().then(|| sigma_obstruction(&all)),
    };
    EquivalenceVerdict {
        foliation_o: foliation_o.is_some(),
        foliation_top: foliation_top.is_some(),
        function_o: function_o.is_some(),
        function_top: function_top.is_some(),
        witnesses: PerVerdict { foliation_o, foliation_top, function_o, function_top },
        obstructions,
    }
}

/// Build both configurations and decide.
pub fn decide_maps(p: &LinearLikeMap, q: &LinearLikeMap) -> Result<EquivalenceVerdict, FoliationError> {
    Ok(decide(&build_configuration(p)?, &build_configuration(q)?))
}

/// Signs of the token list as a compact string, for diagnostics.
pub fn token_string(tokens: &[StripToken]) -> String {
    tokens.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}

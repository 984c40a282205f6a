//! JSON shapes emitted by the command line front end.

use serde::Serialize;

use crate::equivalence::{EquivalenceVerdict, Monotonicity, Obstruction, PerVerdict, Transformation, Witness};
use crate::expr::ExprError;
use crate::foliation::{CanonicalRegion, Configuration, FoliationError, LevelBound, StripToken};
use crate::oracle::OracleError;
use crate::realalg::AlgReal;
use crate::render::RenderError;

pub const APPROX_DIGITS: u32 = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgRealJson {
    /// Coefficients of the defining polynomial, constant term first.
    pub defining: Vec<String>,
    pub interval: [String; 2],
    pub approx: String,
}

impl From<&AlgReal> for AlgRealJson {
    fn from(z: &AlgReal) -> Self {
        let (lo, hi) = z.interval();
        AlgRealJson {
            defining: z.defining().coeffs().iter().map(ToString::to_string).collect(),
            interval: [lo.to_string(), hi.to_string()],
            approx: z.to_decimal(APPROX_DIGITS),
        }
    }
}

fn reals(zs: &[AlgReal]) -> Vec<AlgRealJson> {
    zs.iter().map(AlgRealJson::from).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BoundJson {
    Infinite(&'static str),
    Value(AlgRealJson),
}

impl From<&LevelBound> for BoundJson {
    fn from(b: &LevelBound) -> Self {
        match b {
            LevelBound::MinusInfinity => BoundJson::Infinite("-inf"),
            LevelBound::PlusInfinity => BoundJson::Infinite("+inf"),
            LevelBound::Value(v) => BoundJson::Value(v.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TokenJson {
    pub kind: &'static str,
    pub signs: Vec<&'static str>,
    pub text: String,
}

impl From<&StripToken> for TokenJson {
    fn from(t: &StripToken) -> Self {
        TokenJson { kind: t.kind(), signs: t.signs().iter().map(|s| s.symbol()).collect(), text: t.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionJson {
    pub strip: usize,
    pub interval: [BoundJson; 2],
    pub boundary: Vec<String>,
}

impl From<&CanonicalRegion> for RegionJson {
    fn from(r: &CanonicalRegion) -> Self {
        RegionJson {
            strip: r.strip,
            interval: [(&r.lower).into(), (&r.upper).into()],
            boundary: r.boundary.iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigurationJson {
    pub map: String,
    pub k: usize,
    pub roots: Vec<AlgRealJson>,
    pub multiplicities: Vec<usize>,
    pub bifurcation: Vec<AlgRealJson>,
    pub tokens: Vec<TokenJson>,
    pub regions: Vec<RegionJson>,
    pub submersion: &'static str,
}

impl From<&Configuration> for ConfigurationJson {
    fn from(c: &Configuration) -> Self {
        ConfigurationJson {
            map: c.map.to_string(),
            k: c.k(),
            roots: reals(&c.roots),
            multiplicities: c.multiplicities.clone(),
            bifurcation: reals(&c.bifurcation),
            tokens: c.tokens.iter().map(TokenJson::from).collect(),
            regions: c.regions.iter().map(RegionJson::from).collect(),
            submersion: "ok",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessJson {
    pub transformation: Transformation,
    pub sigma: Vec<[AlgRealJson; 2]>,
    pub monotonicity: Monotonicity,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson {
            transformation: w.transformation,
            sigma: w.sigma.pairs.iter().map(|(a, b)| [a.into(), b.into()]).collect(),
            monotonicity: w.sigma.monotonicity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictJson {
    pub foliation_o: bool,
    pub foliation_top: bool,
    pub function_o: bool,
    pub function_top: bool,
    pub witness: Option<WitnessJson>,
    pub obstructions: PerVerdictJson<Option<Obstruction>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerVerdictJson<T> {
    pub foliation_o: T,
    pub foliation_top: T,
    pub function_o: T,
    pub function_top: T,
}

impl<T: Clone> From<&PerVerdict<T>> for PerVerdictJson<T> {
    fn from(v: &PerVerdict<T>) -> Self {
        PerVerdictJson {
            foliation_o: v.foliation_o.clone(),
            foliation_top: v.foliation_top.clone(),
            function_o: v.function_o.clone(),
            function_top: v.function_top.clone(),
        }
    }
}

impl From<&EquivalenceVerdict> for VerdictJson {
    fn from(v: &EquivalenceVerdict) -> Self {
        VerdictJson {
            foliation_o: v.foliation_o,
            foliation_top: v.foliation_top,
            function_o: v.function_o,
            function_top: v.function_top,
            witness: v.witness().map(WitnessJson::from),
            obstructions: (&v.obstructions).into(),
        }
    }
}

/// Error payload written to the error stream.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorJson {
    pub error: &'static str,
    pub message: String,
}

pub trait ErrorCode: std::fmt::Display {
    fn code(&self) -> &'static str;

    fn to_json(&self) -> ErrorJson {
        ErrorJson { error: self.code(), message: self.to_string() }
    }
}

impl ErrorCode for ExprError {
    fn code(&self) -> &'static str {
        match self {
            ExprError::Syntax { .. } => "SYNTAX",
            ExprError::NonPolynomial { .. } => "NON_POLYNOMIAL",
            ExprError::DivisionByZero { .. } => "DIVISION_BY_ZERO",
            ExprError::ExponentTooLarge { .. } => "EXPONENT_TOO_LARGE",
            ExprError::NotLinearInY { .. } => "NOT_LINEAR_IN_Y",
        }
    }
}

impl ErrorCode for FoliationError {
    fn code(&self) -> &'static str {
        match self {
            FoliationError::SimpleZero(_) => "SIMPLE_ZERO",
            FoliationError::CriticalValueOnFiber(_) => "CRITICAL_VALUE_ON_FIBER",
            FoliationError::OutOfScope => "OUT_OF_SCOPE",
        }
    }
}

impl ErrorCode for OracleError {
    fn code(&self) -> &'static str {
        match self {
            OracleError::OracleScope(_) => "ORACLE_SCOPE",
            OracleError::DegenerateChoice => "DEGENERATE_CHOICE",
        }
    }
}

impl ErrorCode for RenderError {
    fn code(&self) -> &'static str {
        match self {
            RenderError::EmptyViewport => "EMPTY_VIEWPORT",
            RenderError::TooFewSamples(_) => "TOO_FEW_SAMPLES",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_map;
    use crate::foliation::build_configuration;
    use serde_json::json;

    #[test]
    fn cubic_configuration() {
        let c = build_configuration(&parse_map("x + x^3*y").unwrap()).unwrap();
        let v = serde_json::to_value(ConfigurationJson::from(&c)).unwrap();
        assert_eq!(v["roots"][0]["interval"], json!(["0", "0"]));
        assert_eq!(v["roots"][0]["approx"], json!("0.000000000000"));
        assert_eq!(v["bifurcation"][0]["defining"], json!(["0", "1"]));
        let texts: Vec<&str> = v["tokens"].as_array().unwrap().iter().map(|t| t["text"].as_str().unwrap()).collect();
        assert_eq!(texts, ["L(-)", "R(-)"]);
        assert_eq!(v["regions"].as_array().unwrap().len(), 4);
        assert_eq!(v["regions"][0]["interval"][0], json!("-inf"));
        assert_eq!(v["submersion"], json!("ok"));
    }

    #[test]
    fn error_codes() {
        let e = build_configuration(&parse_map("x + x*y").unwrap()).unwrap_err();
        assert_eq!(e.to_json().error, "SIMPLE_ZERO");
        assert_eq!(parse_map("x +").unwrap_err().code(), "SYNTAX");
    }
}

//! JSON request shapes accepted on the command line.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use tdz_core::cert::Tolerances;
use tdz_core::compose_lp::SelfMapN;
use tdz_core::linf::{AtomicSpace, FnValues, MeasurableFn};
use tdz_core::mult::Exponent;

/// A complex number written as `x` or `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Real(f64),
    Pair([f64; 2]),
}

impl From<Num> for Complex64 {
    fn from(n: Num) -> Self {
        match n {
            Num::Real(x) => Complex64::new(x, 0.0),
            Num::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

pub fn complexes(v: &[Num]) -> Vec<Complex64> {
    v.iter().map(|&n| n.into()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceWire {
    CountingN,
    FiniteAtoms(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum FnWire {
    Vector { vector: Vec<Num> },
    Periodic { #[serde(default)] prefix: Vec<Num>, cycle: Vec<Num> },
    Decaying { #[serde(default)] prefix: Vec<Num>, decay_c: Num },
}

/// `{"space": ..., "fn": ...}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinfWire {
    pub space: SpaceWire,
    #[serde(rename = "fn")]
    pub function: FnWire,
}

impl LinfWire {
    pub fn build(&self) -> tdz_core::Result<MeasurableFn> {
        let space = match &self.space {
            SpaceWire::CountingN => AtomicSpace::CountingN,
            SpaceWire::FiniteAtoms(w) => AtomicSpace::FiniteAtoms { weights: w.clone() },
        };
        let values = match &self.function {
            FnWire::Vector { vector } => FnValues::FiniteVector(complexes(vector)),
            FnWire::Periodic { prefix, cycle } => FnValues::EventuallyPeriodic {
                prefix: complexes(prefix),
                cycle: complexes(cycle),
            },
            FnWire::Decaying { prefix, decay_c } => FnValues::DecayingTail {
                prefix: complexes(prefix),
                c: (*decay_c).into(),
            },
        };
        MeasurableFn::new(space, values)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffsWire {
    pub coeffs: Vec<Num>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Analyze,
    Certify,
    Section,
}

/// Element or operator under study, keyed by `"algebra"` or `"operator"`.
#[derive(Debug, Clone, PartialEq)]
pub enum Subject {
    Disk { coeffs: Vec<Num> },
    Linf(LinfWire),
    Mult { p: Exponent, h: LinfWire },
    ComposeLp { p: Exponent, phi: SelfMapN },
    ComposeHardy { symbol: CoeffsWire, order: usize },
}

impl Subject {
    pub fn kind(&self) -> &'static str {
        match self {
            Subject::Disk { .. } => "disk",
            Subject::Linf(_) => "linf",
            Subject::Mult { .. } => "mult",
            Subject::ComposeLp { .. } => "compose_lp",
            Subject::ComposeHardy { .. } => "compose_hardy",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Request {
    pub subject: Subject,
    pub mode: Mode,
    /// Section size for `mode = section`.
    pub n: Option<usize>,
    pub tolerances: Tolerances,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    algebra: Option<String>,
    operator: Option<String>,
    #[serde(default = "default_mode")]
    mode: Mode,
    #[serde(default, alias = "N")]
    n: Option<usize>,
    #[serde(default)]
    tolerances: Option<Tolerances>,
    // payload fields of every kind; which ones are required depends on the tag
    coeffs: Option<Vec<Num>>,
    space: Option<SpaceWire>,
    #[serde(rename = "fn")]
    function: Option<FnWire>,
    p: Option<Exponent>,
    h: Option<LinfWire>,
    phi: Option<SelfMapN>,
    symbol: Option<CoeffsWire>,
    order: Option<usize>,
}

fn default_mode() -> Mode {
    Mode::Analyze
}

fn required<T>(v: Option<T>, field: &str, kind: &str) -> Result<T, String> {
    v.ok_or_else(|| format!("{kind} request needs a \"{field}\" field"))
}

/// Parses a request document; syntax errors carry line and column.
pub fn parse_request(text: &str) -> Result<Request, String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| format!("malformed JSON: {e}"))?;
    let env: Envelope = serde_json::from_value(value).map_err(|e| format!("invalid request: {e}"))?;
    let tag = match (env.algebra.as_deref(), env.operator.as_deref()) {
        (Some(a), None) => a.to_string(),
        (None, Some(o)) => o.to_string(),
        (Some(_), Some(_)) => return Err("give either \"algebra\" or \"operator\", not both".into()),
        (None, None) => return Err("request needs an \"algebra\" or \"operator\" tag".into()),
    };
    let subject = match tag.as_str() {
        "disk" => Subject::Disk { coeffs: required(env.coeffs, "coeffs", "disk")? },
        "linf" => Subject::Linf(LinfWire {
            space: required(env.space, "space", "linf")?,
            function: required(env.function, "fn", "linf")?,
        }),
        "mult" => Subject::Mult {
            p: required(env.p, "p", "mult")?,
            h: required(env.h, "h", "mult")?,
        },
        "compose_lp" => Subject::ComposeLp {
            p: env.p.unwrap_or(Exponent::Finite(2.0)),
            phi: required(env.phi, "phi", "compose_lp")?,
        },
        "compose_hardy" => Subject::ComposeHardy {
            symbol: required(env.symbol, "symbol", "compose_hardy")?,
            order: required(env.order, "order", "compose_hardy")?,
        },
        other => {
            return Err(format!(
                "unknown tag {other:?}; expected disk, linf, mult, compose_lp or compose_hardy"
            ))
        }
    };
    Ok(Request {
        subject,
        mode: env.mode,
        n: env.n,
        tolerances: env.tolerances.unwrap_or_default(),
    })
}

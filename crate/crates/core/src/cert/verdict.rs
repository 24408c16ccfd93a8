use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::compose_lp::SelfMapN;
use crate::disk::CirclePolynomial;
use crate::error::{Error, Result};
use crate::linf::MeasurableFn;
use crate::mult::Exponent;

/// Three-valued answer for the one-sided zero-divisor questions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    /// The question is not settled for this element by any procedure here.
    NotApplicable,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }
}

/// Which product a certificate controls: `Left` means `x * y`, `Right` means `y * x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Symbolic rule producing the n-th norm-one witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum WitnessGenerator {
    /// `f_n(z) = ((1 + conj(z0) z) / 2)^n` in the disk algebra.
    DiskPeak { z0: Complex64 },
    /// Indicators of `E_n = {x : |f(x)| < 1/n}` in `L^inf`.
    SublevelIndicator { of: MeasurableFn },
    /// Multiplication operators `M_{chi_{E_n}}` on `L^p`, `E_n` as above.
    MultSublevelIndicator { of: MeasurableFn, p: Exponent },
    /// Rank-one operators `z^n (x) e_0^*` on `H^2`; `C_phi` maps them to `phi^n (x) e_0^*`.
    HardyMonomialProbe { symbol: CirclePolynomial },
}

/// Explicit nonzero element `y` with a zero product against the classified element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Annihilator {
    /// `g` in `L^inf` with `f * g = 0`.
    Function { g: MeasurableFn },
    /// `M_g` with `M_h M_g = 0`.
    MultOperator { g: MeasurableFn },
    /// On `l^p`: `T(g) = (g(a) - g(b)) chi_1`; kills the range of `C_phi` when `phi(a) = phi(b)`.
    CollisionFunctional { a: u64, b: u64 },
    /// On `l^p`: `T(f) = f(1) chi_m`; `C_phi T = 0` when `m` is not in the range of `phi`.
    PointEvaluation { missed: u64 },
    /// On `H^p`: multiplication by `z - z0`, applied to inputs of degree below the order minus one.
    HardyMultiplyByRoot { z0: Complex64 },
    /// On `H^p`: the coefficient shift `(a_0, a_1, ...) -> (a_1, a_2, ...)`.
    HardyBackwardShift,
    /// On `H^p`: keep the coefficients with index congruent to 1 mod `k`.
    HardyResidueSelect { k: usize },
}

/// Witness that the element is invertible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum InverseWitness {
    /// Reciprocal function `1/h`.
    Function { g: MeasurableFn },
    /// Inverse self-map; `C_phi^{-1} = C_{phi^{-1}}`.
    Map { inverse: SelfMapN },
    /// Inverse analytic symbol.
    Symbol { symbol: CirclePolynomial },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Certificate {
    WitnessSequence {
        generator: WitnessGenerator,
        side: Side,
    },
    Annihilator {
        annihilator: Annihilator,
        side: Side,
    },
    RegularityBound {
        lambda0: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inverse: Option<InverseWitness>,
    },
}

/// Classification of one algebra element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub left_zero_divisor: Tri,
    pub right_zero_divisor: Tri,
    pub is_tdz: bool,
    pub is_regular: bool,
    #[serde(default)]
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Verdict {
    pub fn is_zero_divisor(&self) -> bool {
        self.left_zero_divisor.is_yes() || self.right_zero_divisor.is_yes()
    }

    /// Zero divisors are TDZ; regular elements are neither.
    pub fn check_consistency(&self) -> Result<()> {
        if self.is_zero_divisor() && !self.is_tdz {
            return Err(Error::CertificateMalformed(
                "zero divisor not flagged as TDZ".into(),
            ));
        }
        if self.is_regular
            && (self.is_tdz
                || self.left_zero_divisor != Tri::No
                || self.right_zero_divisor != Tri::No)
        {
            return Err(Error::CertificateMalformed(
                "regular element flagged as TDZ or zero divisor".into(),
            ));
        }
        for c in &self.certificates {
            if let Certificate::RegularityBound { lambda0, .. } = c {
                if !(*lambda0 > 0.0) {
                    return Err(Error::CertificateMalformed(format!(
                        "regularity bound must be positive, got {lambda0}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn witness(&self) -> Option<(&WitnessGenerator, Side)> {
        self.certificates.iter().find_map(|c| match c {
            Certificate::WitnessSequence { generator, side } => Some((generator, *side)),
            _ => None,
        })
    }

    pub fn annihilators(&self) -> impl Iterator<Item = (&Annihilator, Side)> {
        self.certificates.iter().filter_map(|c| match c {
            Certificate::Annihilator { annihilator, side } => Some((annihilator, *side)),
            _ => None,
        })
    }

    pub fn regularity_bound(&self) -> Option<f64> {
        self.certificates.iter().find_map(|c| match c {
            Certificate::RegularityBound { lambda0, .. } => Some(*lambda0),
            _ => None,
        })
    }
}

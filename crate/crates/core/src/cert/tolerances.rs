use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numeric thresholds shared by every decision procedure and the harness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Exact-structure checks (zero values, zero products).
    pub eps_zero: f64,
    /// Norm estimates.
    pub eps_norm: f64,
    /// Threshold on `| |root| - 1 |` for a root to count as lying on the circle.
    pub eps_circle: f64,
    /// Number of witness indices the harness evaluates.
    pub n_witness: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_zero: 1e-9,
            eps_norm: 1e-6,
            eps_circle: 1e-8,
            n_witness: 50,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eps_zero", self.eps_zero),
            ("eps_norm", self.eps_norm),
            ("eps_circle", self.eps_circle),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::input(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        if self.n_witness < 3 {
            return Err(Error::input(format!(
                "n_witness must be at least 3, got {}",
                self.n_witness
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let t = Tolerances::default();
        t.validate().unwrap();
        assert_eq!(t.n_witness, 50);
        assert_eq!(t.eps_circle, 1e-8);
    }

    #[test]
    fn rejects_bad_values() {
        let t = Tolerances { n_witness: 2, ..Default::default() };
        assert!(t.validate().is_err());
        let t = Tolerances { eps_norm: 0.0, ..Default::default() };
        assert!(t.validate().is_err());
        let t = Tolerances { eps_zero: f64::NAN, ..Default::default() };
        assert!(t.validate().is_err());
    }
}

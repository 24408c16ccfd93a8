//! Independent verification of TDZ witness sequences and operator inequalities.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix::{operator_norm, OperatorMatrix};
use super::{Side, Tolerances};
use crate::error::{Error, Result};

/// Norm evaluator plus multiplication for the algebra a witness lives in.
pub trait NormedAlgebra: Sync {
    type Element: Send + Sync;

    fn norm(&self, x: &Self::Element) -> Result<f64>;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;
}

/// Source of the n-th witness element, `n >= 1`.
pub trait WitnessSource<E>: Sync {
    fn witness(&self, n: usize) -> Result<E>;
}

impl<E, F> WitnessSource<E> for F
where
    F: Fn(usize) -> Result<E> + Sync,
{
    fn witness(&self, n: usize) -> Result<E> {
        self(n)
    }
}

/// Returns `(||x_n||, product norm)` for index `n`; used where a witness is cheaper
/// to measure directly than to materialize.
pub trait WitnessProbe: Sync {
    fn probe(&self, n: usize) -> Result<(f64, f64)>;
}

struct AlgebraProbe<'a, A: NormedAlgebra, W> {
    algebra: &'a A,
    x: &'a A::Element,
    witnesses: &'a W,
    side: Side,
}

impl<A, W> WitnessProbe for AlgebraProbe<'_, A, W>
where
    A: NormedAlgebra,
    W: WitnessSource<A::Element>,
{
    fn probe(&self, n: usize) -> Result<(f64, f64)> {
        let w = self.witnesses.witness(n).map_err(|e| {
            Error::CertificateMalformed(format!("witness generator failed at n = {n}: {e}"))
        })?;
        let prod = match self.side {
            Side::Left => self.algebra.mul(self.x, &w)?,
            Side::Right => self.algebra.mul(&w, self.x)?,
        };
        Ok((self.algebra.norm(&w)?, self.algebra.norm(&prod)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessSample {
    pub n: usize,
    pub witness_norm: f64,
    pub product_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub passes: bool,
    pub side: Option<Side>,
    pub samples: Vec<WitnessSample>,
    pub criterion: String,
}

impl CertificationReport {
    /// Report for a regularity bound; no witness samples.
    pub fn regularity(passes: bool, criterion: &str) -> Self {
        CertificationReport {
            passes,
            side: None,
            samples: vec![],
            criterion: format!("regularity: {criterion}"),
        }
    }

    /// Report for a verdict that carries nothing to verify.
    pub fn no_certificate(reason: &str) -> Self {
        CertificationReport {
            passes: true,
            side: None,
            samples: vec![],
            criterion: format!("no certificate: {reason}"),
        }
    }
}

pub const DECAY_CRITERION: &str = "witness norms within eps_norm of 1; product norm at n_witness below \
max(eps_norm, half the product norm at n = 1); 3-window moving average of product norms \
non-increasing (decay rule is a heuristic, not a theorem)";

/// Checks a witness sequence for `x` in `algebra` against the decay criterion.
pub fn verify_tdz_certificate<A, W>(
    algebra: &A,
    x: &A::Element,
    witnesses: &W,
    side: Side,
    tol: &Tolerances,
) -> Result<CertificationReport>
where
    A: NormedAlgebra,
    W: WitnessSource<A::Element>,
{
    verify_probe(&AlgebraProbe { algebra, x, witnesses, side }, side, tol)
}

/// Same criterion as [`verify_tdz_certificate`] over a direct norm probe.
pub fn verify_probe<P: WitnessProbe>(
    probe: &P,
    side: Side,
    tol: &Tolerances,
) -> Result<CertificationReport> {
    tol.validate()?;
    let samples = (1..=tol.n_witness)
        .into_par_iter()
        .map(|n| {
            let (witness_norm, product_norm) = probe.probe(n)?;
            if !witness_norm.is_finite() || !product_norm.is_finite() {
                return Err(Error::Numeric {
                    message: format!("non-finite norm at witness index {n}"),
                    last_iterate: None,
                });
            }
            Ok(WitnessSample { n, witness_norm, product_norm })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CertificationReport {
        passes: decay_criterion(&samples, tol),
        side: Some(side),
        samples,
        criterion: DECAY_CRITERION.to_string(),
    })
}

fn decay_criterion(samples: &[WitnessSample], tol: &Tolerances) -> bool {
    let eps = tol.eps_norm;
    let unit = samples.iter().all(|s| (s.witness_norm - 1.0).abs() <= eps);
    let (first, last) = match (samples.first(), samples.last()) {
        (Some(f), Some(l)) => (f.product_norm, l.product_norm),
        _ => return false,
    };
    let decays = last < eps.max(0.5 * first);
    let smoothed: Vec<f64> = samples
        .windows(3)
        .map(|w| w.iter().map(|s| s.product_norm).sum::<f64>() / 3.0)
        .collect();
    let monotone = smoothed.windows(2).all(|w| w[1] <= w[0] + eps);
    unit && decays && monotone
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarTdzEntry {
    pub index: usize,
    pub witness_norm: f64,
    /// `||T T_n||`
    pub product_norm: f64,
    /// `||T^* T T_n||`
    pub star_product_norm: f64,
    /// `||(T T_n)^*||`
    pub adjoint_product_norm: f64,
    pub inequality_holds: bool,
    pub adjoint_symmetric: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarTdzReport {
    pub passes: bool,
    pub entries: Vec<StarTdzEntry>,
}

/// For each witness `T_n` checks `||T T_n||^2 <= ||T^* T T_n|| ||T_n||` and
/// `||(T T_n)^*|| = ||T T_n||`.
pub fn star_tdz_inequality_check(
    t: &OperatorMatrix,
    witnesses: &[OperatorMatrix],
    tol: &Tolerances,
) -> Result<StarTdzReport> {
    tol.validate()?;
    let tstar_t = t.adjoint().mul(t)?;
    let entries = witnesses
        .par_iter()
        .enumerate()
        .map(|(index, w)| {
            if t.cols() != w.rows() {
                return Err(Error::input(format!(
                    "witness {index} has {} rows, operator has {} columns",
                    w.rows(),
                    t.cols()
                )));
            }
            let witness_norm = operator_norm(w, tol)?;
            if (witness_norm - 1.0).abs() > tol.eps_norm {
                return Err(Error::input(format!(
                    "witness {index} has norm {witness_norm}, expected 1"
                )));
            }
            let prod = t.mul(w)?;
            let product_norm = operator_norm(&prod, tol)?;
            let star_product_norm = operator_norm(&tstar_t.mul(w)?, tol)?;
            let adjoint_product_norm = operator_norm(&prod.adjoint(), tol)?;
            Ok(StarTdzEntry {
                index,
                witness_norm,
                product_norm,
                star_product_norm,
                adjoint_product_norm,
                inequality_holds: product_norm * product_norm
                    <= star_product_norm * witness_norm + tol.eps_norm,
                adjoint_symmetric: (adjoint_product_norm - product_norm).abs() <= tol.eps_norm,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StarTdzReport {
        passes: entries.iter().all(|e| e.inequality_holds && e.adjoint_symmetric),
        entries,
    })
}

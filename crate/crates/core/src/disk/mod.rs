//! Polynomial elements of the disk algebra `A(D)`.
//!
//! A polynomial is a TDZ exactly when it vanishes somewhere on the unit circle.
//! TDZ elements get a peak-function witness `((1 + conj(z0) z)/2)^n` concentrated at
//! a boundary zero `z0`; zero-free elements on the closed disk get a minimum-modulus
//! bound. The algebra is an integral domain, so nonzero elements are never zero divisors.

mod circle;
mod poly;

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use circle::{min_on_circle, roots, sup_norm_on_circle, sup_on_circle_with_angle};
pub use poly::CirclePolynomial;

use crate::cert::{
    verify_tdz_certificate, Certificate, CertificationReport, NormedAlgebra, Side, Tolerances,
    Tri, Verdict, WitnessGenerator,
};
use crate::error::{Error, Result};

/// Boundary zeros of a polynomial plus the independent grid minimum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleZeroSet {
    /// Unimodular zeros, sorted by angle in `[0, 2 pi)`.
    pub zeros: Vec<Complex64>,
    /// Estimated `min |p|` over the circle.
    pub residual_min: f64,
    /// A point of the circle where `residual_min` is attained.
    pub residual_argmin: Complex64,
    pub sup_norm: f64,
    /// All roots, for the interior/exterior split.
    pub all_roots: Vec<Complex64>,
}

impl CircleZeroSet {
    /// Whether the grid minimum says the polynomial vanishes on the circle.
    pub fn residual_vanishes(&self, tol: &Tolerances) -> bool {
        self.residual_min <= tol.eps_norm * self.sup_norm
    }

    /// Root path and grid path agree.
    pub fn consistent(&self, tol: &Tolerances) -> bool {
        self.zeros.is_empty() != self.residual_vanishes(tol)
    }
}

/// Angle in `[0, 2 pi)`; roots a hair below the positive axis count as angle 0.
fn angle(z: Complex64, eps: f64) -> f64 {
    let a = z.arg().rem_euclid(TAU);
    if TAU - a <= eps {
        0.0
    } else {
        a
    }
}

/// Roots within `eps_circle` of the unit circle, projected onto it and sorted by angle.
///
/// Multiple roots are only located to about the square root of machine precision,
/// so a root within `sqrt(eps_circle)` of the circle also counts when `p` vanishes
/// (relative to its sup norm) at its projection.
pub fn circle_zeros(p: &CirclePolynomial, tol: &Tolerances) -> Result<CircleZeroSet> {
    tol.validate()?;
    let all_roots = roots(p)?;
    let sup_norm = sup_norm_on_circle(p, tol)?;
    let mut zeros: Vec<Complex64> = all_roots
        .iter()
        .filter(|r| {
            let gap = (r.norm() - 1.0).abs();
            gap <= tol.eps_circle
                || (gap <= tol.eps_circle.sqrt()
                    && p.eval(*r / r.norm()).norm() <= tol.eps_norm * sup_norm)
        })
        .map(|r| r / r.norm())
        .collect();
    zeros.sort_by(|a, b| angle(*a, tol.eps_circle).total_cmp(&angle(*b, tol.eps_circle)));
    let (residual_min, theta) = min_on_circle(p, tol)?;
    Ok(CircleZeroSet {
        zeros,
        residual_min,
        residual_argmin: Complex64::from_polar(1.0, theta),
        sup_norm,
        all_roots,
    })
}

/// TDZ decision in `A(D)`.
pub fn decide_tdz_disk(p: &CirclePolynomial, tol: &Tolerances) -> Result<Verdict> {
    if p.is_zero() {
        return Err(Error::Degenerate("the zero polynomial is the trivial zero divisor".into()));
    }
    let zs = circle_zeros(p, tol)?;
    let mut warnings = Vec::new();
    let is_tdz = !zs.zeros.is_empty();
    if !zs.consistent(tol) {
        warnings.push(format!(
            "root locations ({} boundary zeros) disagree with grid minimum {:.3e}",
            zs.zeros.len(),
            zs.residual_min
        ));
    }
    let mut verdict = Verdict {
        left_zero_divisor: Tri::No,
        right_zero_divisor: Tri::No,
        is_tdz,
        is_regular: false,
        certificates: vec![],
        warnings,
    };
    if is_tdz {
        let z0 = zs.zeros[0];
        verdict.certificates.push(Certificate::WitnessSequence {
            generator: WitnessGenerator::DiskPeak { z0 },
            side: Side::Left,
        });
    } else if zs.all_roots.iter().all(|r| r.norm() > 1.0) {
        // zero-free on the closed disk: min modulus is attained on the circle
        verdict.is_regular = true;
        verdict.certificates.push(Certificate::RegularityBound {
            lambda0: zs.residual_min,
            inverse: None,
        });
    }
    Ok(verdict)
}

/// `((1 + conj(z0) z) / 2)^n`, norm one with the peak at `z0`.
pub fn peak_witness(z0: Complex64, n: usize, tol: &Tolerances) -> Result<CirclePolynomial> {
    if (z0.norm() - 1.0).abs() > tol.eps_circle {
        return Err(Error::input(format!("peak point {z0} is not on the unit circle")));
    }
    if n == 0 {
        return Err(Error::input("peak witness index must be at least 1"));
    }
    let w = (z0 / z0.norm()).conj();
    // binomial row of ((1 + t)/2)^n built by repeated averaging
    let mut row = vec![1.0_f64];
    for _ in 0..n {
        let mut next = vec![0.0; row.len() + 1];
        for (k, &c) in row.iter().enumerate() {
            next[k] += 0.5 * c;
            next[k + 1] += 0.5 * c;
        }
        row = next;
    }
    let mut power = Complex64::new(1.0, 0.0);
    let coeffs = row
        .into_iter()
        .map(|c| {
            let out = power * c;
            power *= w;
            out
        })
        .collect();
    CirclePolynomial::new(coeffs)
}

/// Synthetic division by `z - z0`; fails when the discarded remainder is too large.
pub fn factor_out_root(
    p: &CirclePolynomial,
    z0: Complex64,
    tol: &Tolerances,
) -> Result<CirclePolynomial> {
    let norm = sup_norm_on_circle(p, tol)?;
    let value = p.eval(z0).norm();
    if value > tol.eps_norm * norm {
        return Err(Error::NotARoot { remainder: value, bound: tol.eps_norm * norm });
    }
    let a = p.coeffs();
    let d = p.degree();
    if d == 0 {
        return Err(Error::NotARoot { remainder: value, bound: 0.0 });
    }
    let mut q = vec![Complex64::new(0.0, 0.0); d];
    q[d - 1] = a[d];
    for k in (1..d).rev() {
        q[k - 1] = a[k] + z0 * q[k];
    }
    let remainder = (a[0] + z0 * q[0]).norm();
    // p - (z - z0) q is the constant remainder, so its sup norm is |remainder|
    let bound = 10.0 * tol.eps_norm * norm;
    if remainder > bound {
        return Err(Error::NotARoot { remainder, bound });
    }
    CirclePolynomial::new(q)
}

/// `A(D)` restricted to polynomials, with the boundary sup norm.
#[derive(Debug, Clone, Copy)]
pub struct DiskAlgebra {
    pub tol: Tolerances,
}

impl NormedAlgebra for DiskAlgebra {
    type Element = CirclePolynomial;

    fn norm(&self, x: &CirclePolynomial) -> Result<f64> {
        sup_norm_on_circle(x, &self.tol)
    }

    fn mul(&self, a: &CirclePolynomial, b: &CirclePolynomial) -> Result<CirclePolynomial> {
        Ok(a.mul(b))
    }
}

/// Runs the harness on whatever certificate `verdict` carries for `p`.
pub fn certify_disk(
    p: &CirclePolynomial,
    verdict: &Verdict,
    tol: &Tolerances,
) -> Result<CertificationReport> {
    if let Some((WitnessGenerator::DiskPeak { z0 }, side)) = verdict.witness() {
        let z0 = *z0;
        let gen = move |n: usize| peak_witness(z0, n, tol);
        return verify_tdz_certificate(&DiskAlgebra { tol: *tol }, p, &gen, side, tol);
    }
    if let Some(lambda0) = verdict.regularity_bound() {
        let (estimate, _) = min_on_circle(p, tol)?;
        let zero_free = roots(p)?.iter().all(|r| r.norm() > 1.0);
        return Ok(CertificationReport::regularity(
            zero_free && estimate >= lambda0 - tol.eps_norm,
            "no roots in the closed disk and min modulus on the circle >= lambda0 - eps_norm",
        ));
    }
    Ok(CertificationReport::no_certificate(
        "singular but not a TDZ: a root lies inside the disk, none on the circle",
    ))
}

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex polynomial `a_0 + a_1 z + ... + a_d z^d` viewed as an element of the disk algebra.
///
/// Coefficients are stored constant term first. Trailing zeros are trimmed, so the
/// stored vector is never empty and its last entry is nonzero unless the polynomial is 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct CirclePolynomial {
    coeffs: Vec<Complex64>,
}

impl CirclePolynomial {
    /// Trims exactly-zero trailing coefficients.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::with_trim(coeffs, 0.0)
    }

    /// Trims trailing coefficients with modulus at most `eps`.
    pub fn with_trim(mut coeffs: Vec<Complex64>, eps: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::input("polynomial needs at least one coefficient"));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::input("polynomial coefficients must be finite"));
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= eps) {
            coeffs.pop();
        }
        Ok(CirclePolynomial { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// `prod_k (z - roots[k])`, scaled by `lead`.
    pub fn from_roots(lead: Complex64, roots: &[Complex64]) -> Self {
        let mut coeffs = vec![lead];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= r * c;
            }
            coeffs = next;
        }
        CirclePolynomial { coeffs }
    }

    pub fn constant(c: Complex64) -> Self {
        CirclePolynomial { coeffs: vec![c] }
    }

    /// `z - z0`
    pub fn linear_factor(z0: Complex64) -> Self {
        CirclePolynomial { coeffs: vec![-z0, Complex64::new(1.0, 0.0)] }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex64::new(0.0, 0.0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and derivative at `z`.
    pub(crate) fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        self.coeffs.iter().rev().fold((zero, zero), |(p, dp), &c| (p * z + c, dp * z + p))
    }

    /// `|p(e^{i theta})|`
    pub fn modulus_at_angle(&self, theta: f64) -> f64 {
        self.eval(Complex64::from_polar(1.0, theta)).norm()
    }

    pub fn mul(&self, rhs: &CirclePolynomial) -> CirclePolynomial {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CirclePolynomial::new(out).expect("product of finite polynomials is finite")
    }

    pub fn sub(&self, rhs: &CirclePolynomial) -> CirclePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        let out = (0..n)
            .map(|k| {
                self.coeffs.get(k).copied().unwrap_or(zero) - rhs.coeffs.get(k).copied().unwrap_or(zero)
            })
            .collect();
        CirclePolynomial::new(out).expect("difference of finite polynomials is finite")
    }

    pub fn scale(&self, s: Complex64) -> CirclePolynomial {
        CirclePolynomial::new(self.coeffs.iter().map(|&c| c * s).collect())
            .expect("scaled polynomial is finite")
    }

    /// Sum of coefficient moduli; an upper bound for the sup norm on the circle.
    pub fn coefficient_l1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Coefficient 2-norm, i.e. the `H^2` norm.
    pub fn coefficient_l2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl TryFrom<Vec<Complex64>> for CirclePolynomial {
    type Error = Error;

    fn try_from(v: Vec<Complex64>) -> Result<Self> {
        CirclePolynomial::new(v)
    }
}

impl From<CirclePolynomial> for Vec<Complex64> {
    fn from(p: CirclePolynomial) -> Self {
        p.coeffs
    }
}

impl fmt::Display for CirclePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == Complex64::new(0.0, 0.0) && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trims_trailing_zeros() {
        let p = CirclePolynomial::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(p.degree(), 1);
        let p = CirclePolynomial::with_trim(vec![c(1.0, 0.0), c(1e-12, 0.0)], 1e-9).unwrap();
        assert_eq!(p.degree(), 0);
        let z = CirclePolynomial::new(vec![c(0.0, 0.0); 3]).unwrap();
        assert!(z.is_zero());
        assert!(CirclePolynomial::new(vec![]).is_err());
    }

    #[test]
    fn from_roots_expands() {
        let p = CirclePolynomial::from_roots(c(1.0, 0.0), &[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(p.coeffs(), &[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn eval_and_derivative() {
        let p = CirclePolynomial::from_real(&[1.0, 2.0, 3.0]).unwrap();
        let (v, d) = p.eval_with_derivative(c(2.0, 0.0));
        assert_eq!(v, c(17.0, 0.0));
        assert_eq!(d, c(14.0, 0.0));
    }

    #[test]
    fn serde_as_pairs() {
        let p = CirclePolynomial::from_real(&[-0.5, 0.5]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[-0.5,0.0],[0.5,0.0]]");
        assert!(serde_json::from_str::<CirclePolynomial>("[]").is_err());
    }
}

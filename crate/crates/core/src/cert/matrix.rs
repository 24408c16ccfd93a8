//! Dense complex matrices standing in for finite sections of bounded operators.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Tolerances;
use crate::error::{Error, Result};

/// Above this size `operator_norm` switches from a direct SVD to power iteration.
const DIRECT_SVD_LIMIT: usize = 128;
const POWER_ITERATION_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    inner: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        OperatorMatrix { inner: DMatrix::zeros(rows, cols) }
    }

    pub fn identity(n: usize) -> Self {
        OperatorMatrix { inner: DMatrix::identity(n, n) }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        OperatorMatrix { inner: DMatrix::from_fn(rows, cols, f) }
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { Complex64::new(0.0, 0.0) })
    }

    /// Row-major real entries; every row must have the same length.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::input("ragged matrix rows"));
        }
        Self::new(r, c, rows.iter().flatten().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Row-major complex entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::input(format!(
                "entry count {} does not match {rows}x{cols}",
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::input("matrix entries must be finite"));
        }
        Ok(OperatorMatrix { inner: DMatrix::from_row_slice(rows, cols, &entries) })
    }

    pub fn from_dmatrix(inner: DMatrix<Complex64>) -> Self {
        OperatorMatrix { inner }
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.inner[(i, j)] = v;
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix { inner: self.inner.adjoint() }
    }

    pub fn mul(&self, rhs: &OperatorMatrix) -> Result<Self> {
        if self.cols() != rhs.rows() {
            return Err(Error::input(format!(
                "shape mismatch: {}x{} times {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        Ok(OperatorMatrix { inner: &self.inner * &rhs.inner })
    }

    pub fn sub(&self, rhs: &OperatorMatrix) -> Result<Self> {
        if self.inner.shape() != rhs.inner.shape() {
            return Err(Error::input("shape mismatch in subtraction"));
        }
        Ok(OperatorMatrix { inner: &self.inner - &rhs.inner })
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols() {
            return Err(Error::input("vector length does not match matrix columns"));
        }
        Ok((0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.inner[(i, j)] * v[j]).sum())
            .collect())
    }

    /// Leading `r x c` block.
    pub fn leading_block(&self, r: usize, c: usize) -> Self {
        OperatorMatrix { inner: self.inner.view((0, 0), (r, c)).into_owned() }
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// True when every entry is exactly zero.
    pub fn is_exact_zero(&self) -> bool {
        self.inner.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn singular_values(&self) -> Result<Vec<f64>> {
        if self.rows() == 0 || self.cols() == 0 {
            return Ok(vec![]);
        }
        let svd = self
            .inner
            .clone()
            .try_svd(false, false, f64::EPSILON, 10_000)
            .ok_or_else(|| Error::numeric("SVD did not converge"))?;
        let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        Ok(s)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl Serialize for OperatorMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut entries = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                entries.push(self.inner[(i, j)]);
            }
        }
        MatrixWire { rows: self.rows(), cols: self.cols(), entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OperatorMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = MatrixWire::deserialize(d)?;
        OperatorMatrix::new(w.rows, w.cols, w.entries).map_err(serde::de::Error::custom)
    }
}

/// Largest singular value of `m`.
///
/// Small matrices go through a direct SVD; larger ones use power iteration on
/// `M^* M` seeded with the normalized all-ones vector.
pub fn operator_norm(m: &OperatorMatrix, tol: &Tolerances) -> Result<f64> {
    if m.rows().max(m.cols()) <= DIRECT_SVD_LIMIT {
        return Ok(m.singular_values()?.first().copied().unwrap_or(0.0));
    }
    power_iteration_norm(m, tol, POWER_ITERATION_CAP)
}

/// Power iteration on `M^* M` from the normalized all-ones vector.
///
/// The start vector can be orthogonal to the top singular subspace (for instance a
/// single row `e_a - e_b`); callers needing a guaranteed answer use [`operator_norm`].
pub fn power_iteration_norm(m: &OperatorMatrix, tol: &Tolerances, cap: usize) -> Result<f64> {
    let n = m.cols();
    if n == 0 || m.rows() == 0 {
        return Ok(0.0);
    }
    let a = m.as_dmatrix();
    let ah = a.adjoint();
    let mut v = nalgebra::DVector::from_element(n, Complex64::new(1.0 / (n as f64).sqrt(), 0.0));
    let mut lambda = 0.0_f64;
    for _ in 0..cap {
        let w = &ah * (a * &v);
        let next = w.norm();
        if next == 0.0 {
            return Ok(0.0);
        }
        if !next.is_finite() {
            return Err(Error::Numeric {
                message: "power iteration diverged".into(),
                last_iterate: Some(lambda.sqrt()),
            });
        }
        v = w / Complex64::new(next, 0.0);
        let converged = (next - lambda).abs() <= 0.1 * tol.eps_norm * next;
        lambda = next;
        if converged {
            return Ok(lambda.sqrt());
        }
    }
    Err(Error::Numeric {
        message: format!("power iteration did not converge in {cap} steps"),
        last_iterate: Some(lambda.sqrt()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn norm_examples() {
        let tol = Tolerances::default();
        assert!((operator_norm(&OperatorMatrix::identity(3), &tol).unwrap() - 1.0).abs() < 1e-12);
        let d = OperatorMatrix::from_diagonal(&[c(0.0), c(1.0), c(1.0), c(1.0), c(1.0)]);
        assert!((operator_norm(&d, &tol).unwrap() - 1.0).abs() < 1e-12);
        let m = OperatorMatrix::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]).unwrap();
        assert!((operator_norm(&m, &tol).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn power_iteration_agrees_on_positive_matrix() {
        let tol = Tolerances::default();
        let m = OperatorMatrix::from_fn(6, 6, |i, j| c(1.0 / (1.0 + i as f64 + j as f64)));
        let direct = operator_norm(&m, &tol).unwrap();
        let power = power_iteration_norm(&m, &tol, 10_000).unwrap();
        assert!((direct - power).abs() <= tol.eps_norm * direct);
    }

    #[test]
    fn power_iteration_blind_spot_is_covered_by_svd() {
        let tol = Tolerances::default();
        let m = OperatorMatrix::from_real_rows(&[vec![1.0, -1.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(power_iteration_norm(&m, &tol, 100).unwrap(), 0.0);
        assert!((operator_norm(&m, &tol).unwrap() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn non_convergence_carries_last_iterate() {
        let tol = Tolerances { eps_norm: 1e-300, ..Default::default() };
        let m = OperatorMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 0.999999]]).unwrap();
        match power_iteration_norm(&m, &tol, 3) {
            Err(Error::Numeric { last_iterate: Some(x), .. }) => assert!(x > 0.9),
            other => panic!("expected numeric error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(OperatorMatrix::new(2, 2, vec![c(1.0); 3]).is_err());
        assert!(OperatorMatrix::new(1, 1, vec![c(f64::NAN)]).is_err());
        let a = OperatorMatrix::identity(2);
        let b = OperatorMatrix::identity(3);
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let m = OperatorMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.starts_with("{\"rows\":2,\"cols\":2,\"entries\":[[1.0,0.0],[2.0,0.0]"), "{s}");
        let back: OperatorMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}

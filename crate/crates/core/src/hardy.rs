//! Composition operators on the Hardy space, truncated by degree.
//!
//! A function is its Taylor coefficient vector, cut at order `N`. For a
//! polynomial symbol `phi` the composite `f o phi` has coefficients that depend
//! only on the first `N` coefficients of `f`, so truncation commutes with
//! composition and the `N x N` sections are exact.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cert::{
    operator_norm, verify_probe, Annihilator, Certificate, CertificationReport, InverseWitness,
    OperatorMatrix, Side, Tolerances, Tri, Verdict, WitnessGenerator, WitnessProbe,
};
use crate::disk::{sup_norm_on_circle, CirclePolynomial};
use crate::error::{Error, Result};
use crate::linf::ConstantWitness;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Coefficients `a_0, ..., a_{N-1}` of a power series cut at order `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TryFrom<Vec<Complex64>> for TruncatedSeries {
    type Error = Error;

    fn try_from(coeffs: Vec<Complex64>) -> Result<Self> {
        TruncatedSeries::new(coeffs)
    }
}

impl From<TruncatedSeries> for Vec<Complex64> {
    fn from(s: TruncatedSeries) -> Self {
        s.coeffs
    }
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::input("series order must be at least 1"));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::input("series coefficients must be finite"));
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Pads with zeros or cuts to order `n`.
    pub fn resized(&self, n: usize) -> Result<Self> {
        let mut c = self.coeffs.clone();
        c.resize(n, zero());
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `H^2` norm of the truncation.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// `a * b mod z^n`
fn mul_truncated(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Polynomial self-map of the disk with its sup norm on the circle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolySymbol {
    poly: CirclePolynomial,
    sup_on_circle: f64,
}

impl PolySymbol {
    /// Rejects symbols leaving the closed disk, and constants on the circle.
    pub fn new(poly: CirclePolynomial, tol: &Tolerances) -> Result<Self> {
        let sup = sup_norm_on_circle(&poly, tol)?;
        if sup > 1.0 + tol.eps_norm {
            return Err(Error::InvalidSymbol(format!(
                "symbol reaches modulus {sup} on the circle, above 1"
            )));
        }
        if poly.degree() == 0 && sup >= 1.0 {
            return Err(Error::InvalidSymbol(format!(
                "constant symbol {} must lie in the open disk",
                poly.eval(zero())
            )));
        }
        Ok(PolySymbol { poly, sup_on_circle: sup })
    }

    pub fn poly(&self) -> &CirclePolynomial {
        &self.poly
    }

    pub fn sup_on_circle(&self) -> f64 {
        self.sup_on_circle
    }

    pub fn is_constant(&self) -> bool {
        self.poly.degree() == 0
    }

    /// `(c, k)` when the symbol is `c z^k` with `c != 0`, `k >= 1`.
    pub fn as_monomial(&self) -> Option<(Complex64, usize)> {
        let c = self.poly.coeffs();
        let k = self.poly.degree();
        (k >= 1 && c[..k].iter().all(|x| *x == zero())).then(|| (c[k], k))
    }

    /// Sections are well conditioned only when the symbol stays inside the disk.
    pub fn is_interior(&self, tol: &Tolerances) -> bool {
        self.sup_on_circle < 1.0 - tol.eps_norm
    }
}

/// First `n` Taylor coefficients of `f o phi`, by Horner's rule modulo `z^n`.
pub fn compose_series(f: &TruncatedSeries, phi: &PolySymbol, n: usize) -> Result<TruncatedSeries> {
    if n == 0 {
        return Err(Error::input("series order must be at least 1"));
    }
    let p = phi.poly.coeffs();
    let mut acc = vec![zero(); n];
    for a in f.coeffs.iter().rev() {
        acc = mul_truncated(&acc, p, n);
        acc[0] += a;
    }
    TruncatedSeries::new(acc)
}

/// Exact polynomial `f o phi`, no truncation.
pub fn compose_polynomials(f: &CirclePolynomial, phi: &CirclePolynomial) -> CirclePolynomial {
    let mut acc = CirclePolynomial::constant(zero());
    for a in f.coeffs().iter().rev() {
        acc = acc.mul(phi).sub(&CirclePolynomial::constant(-a));
    }
    acc
}

/// `n x n` matrix whose column `j` holds the coefficients of `phi^j` below order `n`.
pub fn composition_matrix(phi: &PolySymbol, n: usize) -> Result<OperatorMatrix> {
    if n == 0 {
        return Err(Error::input("section order must be at least 1"));
    }
    let mut m = OperatorMatrix::zeros(n, n);
    let mut power = vec![zero(); n];
    power[0] = one();
    for j in 0..n {
        for (i, c) in power.iter().enumerate() {
            m.set(i, j, *c);
        }
        power = mul_truncated(&power, phi.poly.coeffs(), n);
    }
    Ok(m)
}

/// Annihilators for a constant symbol `phi = z0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantSymbolCertificates {
    /// Multiplication by `z - z0`; `C_phi T_L = 0`.
    pub left: Annihilator,
    /// Backward shift; `T_R C_phi = 0`.
    pub right: Annihilator,
    pub left_product_zero: bool,
    pub right_product_zero: bool,
}

pub fn constant_symbol_certificates(
    z0: Complex64,
    n: usize,
    tol: &Tolerances,
) -> Result<ConstantSymbolCertificates> {
    if n < 2 {
        return Err(Error::input("order must be at least 2"));
    }
    let phi = PolySymbol::new(CirclePolynomial::constant(z0), tol)?;
    let c = composition_matrix(&phi, n)?;
    let left = Annihilator::HardyMultiplyByRoot { z0 };
    let right = Annihilator::HardyBackwardShift;
    let left_product_zero = c.mul(&annihilator_matrix(&left, n)?)?.is_exact_zero();
    let right_product_zero = annihilator_matrix(&right, n)?.mul(&c)?.is_exact_zero();
    Ok(ConstantSymbolCertificates { left, right, left_product_zero, right_product_zero })
}

/// Keeps coefficients with index `1 mod k`; kills the range of `C_{z^k}`.
pub fn monomial_right_annihilator(k: usize, n: usize) -> Result<Annihilator> {
    if k < 2 {
        return Err(Error::input("monomial annihilators need k >= 2"));
    }
    if n <= k {
        return Err(Error::input(format!("order {n} must exceed k = {k}")));
    }
    Ok(Annihilator::HardyResidueSelect { k })
}

/// `n x n` matrix of a Hardy-space annihilator.
///
/// Multiplication by `z - z0` acts on inputs of degree below `n - 1`, so its last column is zero.
pub fn annihilator_matrix(ann: &Annihilator, n: usize) -> Result<OperatorMatrix> {
    let mut t = OperatorMatrix::zeros(n, n);
    match *ann {
        Annihilator::HardyMultiplyByRoot { z0 } => {
            if n < 2 {
                return Err(Error::SectionTooSmall { given: n, minimal: 2 });
            }
            for j in 0..n - 1 {
                t.set(j, j, -z0);
                t.set(j + 1, j, one());
            }
        }
        Annihilator::HardyBackwardShift => {
            if n < 2 {
                return Err(Error::SectionTooSmall { given: n, minimal: 2 });
            }
            for i in 0..n - 1 {
                t.set(i, i + 1, one());
            }
        }
        Annihilator::HardyResidueSelect { k } => {
            if k < 2 {
                return Err(Error::input("residue selection needs k >= 2"));
            }
            if n <= k {
                return Err(Error::SectionTooSmall { given: n, minimal: k + 1 });
            }
            for i in (1..n).step_by(k) {
                t.set(i, i, one());
            }
        }
        _ => return Err(Error::input("not a Hardy-space annihilator")),
    }
    Ok(t)
}

/// Rank-one `S = e_1 f^*` with `f` orthogonal to the range of `t`, when `t` is rank deficient.
///
/// This is the finite-dimensional shadow of "the range is not dense": at a fixed
/// dimension, full rank means no such `S` exists.
pub fn right_zero_divisor_finite(t: &OperatorMatrix, tol: &Tolerances) -> Result<Option<OperatorMatrix>> {
    if !t.is_square() {
        return Err(Error::input(format!("expected a square matrix, got {}x{}", t.rows(), t.cols())));
    }
    let n = t.rows();
    if n == 0 {
        return Err(Error::input("empty matrix"));
    }
    let svd = t
        .as_dmatrix()
        .clone()
        .try_svd(true, false, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::numeric("SVD did not converge"))?;
    let s = &svd.singular_values;
    let (imin, smin) = s
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");
    let smax = s.iter().copied().fold(0.0, f64::max);
    if smin > tol.eps_norm * smax {
        return Ok(None);
    }
    let u = svd.u.expect("requested");
    let f = u.column(imin);
    Ok(Some(OperatorMatrix::from_fn(n, n, |i, j| if i == 0 { f[j].conj() } else { zero() })))
}

/// `||phi^n||_{H^2}` against the unit witness `z^n (x) e_0^*`.
struct MonomialProbe<'a> {
    symbol: &'a CirclePolynomial,
}

impl WitnessProbe for MonomialProbe<'_> {
    fn probe(&self, n: usize) -> Result<(f64, f64)> {
        let mut p = CirclePolynomial::constant(one());
        for _ in 0..n {
            p = p.mul(self.symbol);
        }
        Ok((1.0, p.coefficient_l2()))
    }
}

/// Classification of `C_phi` on `H^2`.
///
/// Left zero divisors are exactly the constant symbols. Right zero divisors are
/// certified for constants and for `c z^k`, `k >= 2`; `c z` has dense range and
/// is not one. Symbols inside the disk give compact operators, hence TDZ, and
/// rotations are the only invertible polynomial symbols. Anything else is left
/// undetermined with a warning.
pub fn analyze_hardy(phi: &PolySymbol, order: usize, tol: &Tolerances) -> Result<Verdict> {
    if order < 2 {
        return Err(Error::input("order must be at least 2"));
    }
    let mut v = Verdict {
        left_zero_divisor: Tri::from_bool(phi.is_constant()),
        right_zero_divisor: Tri::NotApplicable,
        is_tdz: false,
        is_regular: false,
        certificates: vec![],
        warnings: vec![],
    };
    if phi.is_constant() {
        let z0 = phi.poly.eval(zero());
        let c = constant_symbol_certificates(z0, order, tol)?;
        v.right_zero_divisor = Tri::Yes;
        v.certificates.push(Certificate::Annihilator { annihilator: c.left, side: Side::Left });
        v.certificates.push(Certificate::Annihilator { annihilator: c.right, side: Side::Right });
    } else if let Some((c, k)) = phi.as_monomial() {
        if k >= 2 {
            v.right_zero_divisor = Tri::Yes;
            v.certificates.push(Certificate::Annihilator {
                annihilator: monomial_right_annihilator(k, order.max(k + 1))?,
                side: Side::Right,
            });
        } else {
            v.right_zero_divisor = Tri::No;
            if (c.norm() - 1.0).abs() <= tol.eps_norm {
                v.is_regular = true;
                v.certificates.push(Certificate::RegularityBound {
                    lambda0: 1.0,
                    inverse: Some(InverseWitness::Symbol {
                        symbol: CirclePolynomial::new(vec![zero(), c.conj() / c.norm_sqr()])?,
                    }),
                });
            }
        }
    }
    if v.right_zero_divisor == Tri::NotApplicable {
        let rank_deficient = right_zero_divisor_finite(&composition_matrix(phi, order)?, tol)?.is_some();
        v.warnings.push(format!(
            "right zero-divisor status undetermined; the order-{order} section is {}",
            if rank_deficient { "rank deficient" } else { "full rank" }
        ));
    }
    if v.is_zero_divisor() {
        v.is_tdz = true;
    }
    if !v.is_regular && phi.is_interior(tol) {
        v.is_tdz = true;
        v.certificates.push(Certificate::WitnessSequence {
            generator: WitnessGenerator::HardyMonomialProbe { symbol: phi.poly.clone() },
            side: Side::Left,
        });
    }
    if !v.is_tdz && !v.is_regular {
        v.warnings.push(
            "symbol touches the circle without being a rotation; TDZ status undetermined".into(),
        );
    }
    if !phi.is_interior(tol) && !v.is_regular {
        v.warnings.push("symbol touches the circle; finite sections may be ill conditioned".into());
    }
    Ok(v)
}

/// Checks annihilators as exact matrix identities at `order`, witnesses by the decay rule,
/// and inverse symbols by composing back to `z`.
pub fn certify_hardy(
    phi: &PolySymbol,
    order: usize,
    verdict: &Verdict,
    tol: &Tolerances,
) -> Result<CertificationReport> {
    let mut first = None;
    for (ann, side) in verdict.annihilators() {
        let n = match ann {
            Annihilator::HardyResidueSelect { k } => order.max(k + 1),
            _ => order.max(2),
        };
        let t = annihilator_matrix(ann, n)?;
        let c = composition_matrix(phi, n)?;
        let prod = match side {
            Side::Left => c.mul(&t)?,
            Side::Right => t.mul(&c)?,
        };
        let t_norm = operator_norm(&t, tol)?;
        if t_norm < 1.0 - tol.eps_norm {
            return Err(Error::CertificateMalformed("annihilator has norm below 1".into()));
        }
        let probe = ConstantWitness {
            witness_norm: 1.0,
            product_norm: if prod.is_exact_zero() { 0.0 } else { operator_norm(&prod, tol)? / t_norm },
        };
        let report = verify_probe(&probe, side, tol)?;
        if !report.passes {
            return Ok(report);
        }
        first.get_or_insert(report);
    }
    if let Some(r) = first {
        return Ok(r);
    }
    if let Some((WitnessGenerator::HardyMonomialProbe { symbol }, side)) = verdict.witness() {
        return verify_probe(&MonomialProbe { symbol }, side, tol);
    }
    for c in &verdict.certificates {
        if let Certificate::RegularityBound { inverse: Some(InverseWitness::Symbol { symbol }), .. } = c {
            let id = CirclePolynomial::new(vec![zero(), one()])?;
            let ok = [compose_polynomials(&phi.poly, symbol), compose_polynomials(symbol, &phi.poly)]
                .iter()
                .all(|q| q.sub(&id).coefficient_l1() <= tol.eps_norm);
            return Ok(CertificationReport::regularity(ok, "phi o psi = psi o phi = z"));
        }
    }
    Err(Error::CertificateMalformed("verdict carries no Hardy-space certificate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn symbol(coeffs: &[f64]) -> PolySymbol {
        PolySymbol::new(CirclePolynomial::from_real(coeffs).unwrap(), &tol()).unwrap()
    }

    fn series(coeffs: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real(coeffs).unwrap()
    }

    #[test]
    fn symbol_validation() {
        let t = tol();
        assert!(matches!(
            PolySymbol::new(CirclePolynomial::from_real(&[0.0, 1.5]).unwrap(), &t),
            Err(Error::InvalidSymbol(_))
        ));
        assert!(PolySymbol::new(CirclePolynomial::from_real(&[1.0]).unwrap(), &t).is_err());
        assert!(PolySymbol::new(CirclePolynomial::from_real(&[0.0, 1.0]).unwrap(), &t).is_ok());
        assert_eq!(symbol(&[0.0, 0.0, 0.7]).as_monomial(), Some((c(0.7), 2)));
        assert_eq!(symbol(&[0.1, 0.0, 0.7]).as_monomial(), None);
    }

    #[test]
    fn compose_examples() {
        let r = compose_series(&series(&[1.0, 1.0, 1.0]), &symbol(&[0.0, 0.5]), 4).unwrap();
        assert_eq!(r, series(&[1.0, 0.5, 0.25, 0.0]));

        let r = compose_series(&series(&[3.0, -1.0, 7.0]), &symbol(&[0.0]), 3).unwrap();
        assert_eq!(r, series(&[3.0, 0.0, 0.0]));

        let r = compose_series(&series(&[1.0, 2.0, 3.0]), &symbol(&[0.0, 0.0, 1.0]), 6).unwrap();
        assert_eq!(r, series(&[1.0, 0.0, 2.0, 0.0, 3.0, 0.0]));

        let f = series(&[0.3, -1.2, 2.0, 0.5]);
        let id = compose_series(&f, &symbol(&[0.0, 1.0]), 4).unwrap();
        assert_eq!(id.l2_norm(), f.l2_norm());
    }

    #[test]
    fn matrix_examples() {
        let m = composition_matrix(&symbol(&[0.0, 0.5]), 3).unwrap();
        assert_eq!(m, OperatorMatrix::from_diagonal(&[c(1.0), c(0.5), c(0.25)]));

        let m = composition_matrix(&symbol(&[0.0]), 3).unwrap();
        let mut e00 = OperatorMatrix::zeros(3, 3);
        e00.set(0, 0, c(1.0));
        assert_eq!(m, e00);

        let m = composition_matrix(&symbol(&[0.0, 0.25, 0.25]), 4).unwrap();
        let expect = OperatorMatrix::from_real_rows(&[
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.25, 0.0, 0.0],
            vec![0.0, 0.25, 1.0 / 16.0, 0.0],
            vec![0.0, 0.0, 2.0 / 16.0, 1.0 / 64.0],
        ])
        .unwrap();
        assert_eq!(m, expect);

        let phi = symbol(&[0.1, 0.3, -0.2]);
        let f = series(&[1.0, -2.0, 0.5, 0.25, 3.0]);
        let direct = compose_series(&f, &phi, 5).unwrap();
        let via = composition_matrix(&phi, 5).unwrap().apply(f.coeffs()).unwrap();
        for (a, b) in direct.coeffs().iter().zip(&via) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn constant_symbol_examples() {
        let t = tol();
        let n = 4;
        let zero_sym = symbol(&[0.0]);
        let cf = composition_matrix(&zero_sym, n).unwrap().apply(series(&[1.0, 2.0, 3.0, 0.0]).coeffs()).unwrap();
        assert_eq!(cf, vec![c(1.0), c(0.0), c(0.0), c(0.0)]);
        let tr = annihilator_matrix(&Annihilator::HardyBackwardShift, n).unwrap();
        assert_eq!(tr.apply(&cf).unwrap(), vec![c(0.0); 4]);
        assert_eq!(tr.apply(&[c(0.0), c(1.0), c(0.0), c(0.0)]).unwrap(), vec![c(1.0), c(0.0), c(0.0), c(0.0)]);

        let tl = annihilator_matrix(&Annihilator::HardyMultiplyByRoot { z0: c(0.5) }, n).unwrap();
        let g = tl.apply(&[c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap();
        assert_eq!(g, vec![c(-0.5), c(1.0), c(0.0), c(0.0)]);
        assert_eq!(CirclePolynomial::new(g).unwrap().eval(c(0.5)), c(0.0));

        for z0 in [c(0.0), c(0.5), Complex64::new(0.3, -0.6)] {
            let r = constant_symbol_certificates(z0, 16, &t).unwrap();
            assert!(r.left_product_zero && r.right_product_zero, "{z0}");
        }
        assert!(matches!(constant_symbol_certificates(c(1.0), 4, &t), Err(Error::InvalidSymbol(_))));
    }

    #[test]
    fn monomial_examples() {
        let ann = monomial_right_annihilator(2, 6).unwrap();
        let t = annihilator_matrix(&ann, 6).unwrap();
        let cf = composition_matrix(&symbol(&[0.0, 0.0, 1.0]), 6).unwrap();
        let img = cf.apply(series(&[1.0, 2.0, 3.0, 0.0, 0.0, 0.0]).coeffs()).unwrap();
        assert_eq!(img, series(&[1.0, 0.0, 2.0, 0.0, 3.0, 0.0]).coeffs());
        assert_eq!(t.apply(&img).unwrap(), vec![c(0.0); 6]);
        let z = [c(0.0), c(1.0), c(0.0), c(0.0), c(0.0), c(0.0)];
        assert_eq!(t.apply(&z).unwrap(), z);

        let t3 = annihilator_matrix(&monomial_right_annihilator(3, 7).unwrap(), 7).unwrap();
        let c3 = composition_matrix(&symbol(&[0.0, 0.0, 0.0, 1.0]), 7).unwrap();
        assert!(t3.mul(&c3).unwrap().is_exact_zero());

        assert!(monomial_right_annihilator(1, 6).is_err());
        assert!(monomial_right_annihilator(3, 3).is_err());
    }

    #[test]
    fn finite_proposition_examples() {
        let t = tol();
        let d = OperatorMatrix::from_diagonal(&[c(1.0), c(0.0)]);
        let s = right_zero_divisor_finite(&d, &t).unwrap().unwrap();
        assert!(s.mul(&d).unwrap().max_abs() == 0.0);
        assert!((s.get(0, 1).norm() - 1.0).abs() < 1e-15);
        assert_eq!(s.get(0, 0), c(0.0));

        assert!(right_zero_divisor_finite(&OperatorMatrix::identity(3), &t).unwrap().is_none());

        let m = composition_matrix(&symbol(&[0.0]), 3).unwrap();
        let s = right_zero_divisor_finite(&m, &t).unwrap().unwrap();
        assert!(s.mul(&m).unwrap().max_abs() <= 1e-15);
        assert!((operator_norm(&s, &t).unwrap() - 1.0).abs() < 1e-12);

        assert!(right_zero_divisor_finite(&OperatorMatrix::zeros(2, 3), &t).is_err());
    }

    #[test]
    fn verdicts() {
        let t = tol();
        let v = analyze_hardy(&symbol(&[0.25]), 8, &t).unwrap();
        assert_eq!((v.left_zero_divisor, v.right_zero_divisor), (Tri::Yes, Tri::Yes));
        assert!(v.is_tdz);
        assert!(certify_hardy(&symbol(&[0.25]), 8, &v, &t).unwrap().passes);

        let sq = symbol(&[0.0, 0.0, 1.0]);
        let v = analyze_hardy(&sq, 8, &t).unwrap();
        assert_eq!((v.left_zero_divisor, v.right_zero_divisor), (Tri::No, Tri::Yes));
        assert!(v.is_tdz);
        assert!(certify_hardy(&sq, 8, &v, &t).unwrap().passes);

        let rot = PolySymbol::new(CirclePolynomial::new(vec![c(0.0), Complex64::new(0.6, 0.8)]).unwrap(), &t).unwrap();
        let v = analyze_hardy(&rot, 8, &t).unwrap();
        assert!(v.is_regular && !v.is_tdz);
        assert!(certify_hardy(&rot, 8, &v, &t).unwrap().passes);

        let inner = symbol(&[0.1, 0.5, 0.1]);
        let v = analyze_hardy(&inner, 8, &t).unwrap();
        assert!(v.is_tdz && !v.is_zero_divisor());
        assert_eq!(v.right_zero_divisor, Tri::NotApplicable);
        assert!(certify_hardy(&inner, 8, &v, &t).unwrap().passes);

        let touching = symbol(&[0.0, 0.5, 0.5]);
        let v = analyze_hardy(&touching, 8, &t).unwrap();
        assert!(!v.is_tdz && !v.is_regular && !v.warnings.is_empty());
        v.check_consistency().unwrap();
    }
}

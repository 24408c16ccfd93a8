//! `L^inf` over atomic measure spaces.
//!
//! Every atom carries positive mass, so "almost everywhere" statements reduce to
//! statements about the represented values. Zero divisors are the functions that
//! vanish on some atom; TDZ are the functions whose modulus is not bounded below,
//! which on these representations means 0 is attained or is the limit of a `c/n` tail.

mod function;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use function::{pointwise_product, AtomicSpace, FnValues, MeasurableFn};

use crate::cert::{
    verify_probe, verify_tdz_certificate, Annihilator, Certificate, CertificationReport,
    InverseWitness, NormedAlgebra, Side, Tolerances, Tri, Verdict, WitnessGenerator, WitnessProbe,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EssentialStats {
    pub ess_sup: f64,
    pub attains_zero: bool,
    pub zero_in_ess_range: bool,
    /// Infimum of `|f|` over the space.
    pub min_modulus: f64,
    /// False when `min_modulus` is only a limit (the `c/n` tail).
    pub min_modulus_attained: bool,
}

pub fn essential_stats(f: &MeasurableFn, tol: &Tolerances) -> EssentialStats {
    let moduli: Vec<f64> = f.represented_values().iter().map(|v| v.norm()).collect();
    let max_rep = moduli.iter().copied().fold(0.0, f64::max);
    let min_rep = moduli.iter().copied().fold(f64::INFINITY, f64::min);
    let attains_zero = moduli.iter().any(|&m| m <= tol.eps_zero);
    match f.values() {
        FnValues::DecayingTail { prefix, c } => {
            let first_tail = c.norm() / (prefix.len() + 1) as f64;
            EssentialStats {
                ess_sup: max_rep.max(first_tail),
                attains_zero,
                zero_in_ess_range: true,
                min_modulus: 0.0,
                min_modulus_attained: attains_zero,
            }
        }
        _ => EssentialStats {
            ess_sup: max_rep,
            attains_zero,
            zero_in_ess_range: attains_zero,
            min_modulus: min_rep,
            min_modulus_attained: true,
        },
    }
}

/// `chi_{E^c}` with `E^c = {x : |f(x)| <= eps_zero}`.
pub fn zero_set_indicator(f: &MeasurableFn, tol: &Tolerances) -> Result<MeasurableFn> {
    let eps = tol.eps_zero;
    match f.values() {
        FnValues::DecayingTail { prefix, .. } => {
            let ind = prefix
                .iter()
                .map(|v| Complex64::new(if v.norm() <= eps { 1.0 } else { 0.0 }, 0.0))
                .collect();
            MeasurableFn::periodic(ind, vec![Complex64::new(0.0, 0.0)])
        }
        _ => f.indicator_where(|v| v.norm() <= eps),
    }
}

/// `chi_{E_n}` with `E_n = {x : |f(x)| < 1/n}` (values within `eps_zero` of 0 always included).
pub fn sublevel_indicator(f: &MeasurableFn, n: usize, tol: &Tolerances) -> Result<MeasurableFn> {
    if n == 0 {
        return Err(Error::input("sublevel index must be at least 1"));
    }
    let level = 1.0 / n as f64;
    let eps = tol.eps_zero;
    let inside = move |v: Complex64| v.norm() < level || v.norm() <= eps;
    let g = match f.values() {
        FnValues::DecayingTail { prefix, c } => {
            // |c|/m < 1/n  <=>  m > |c| n; past floor(|c| n) every index qualifies
            let last = prefix.len().max((c.norm() * n as f64).floor() as usize);
            let ind = (1..=last)
                .map(|m| {
                    let v = f.value_at(m).expect("counting space is unbounded");
                    Complex64::new(if inside(v) { 1.0 } else { 0.0 }, 0.0)
                })
                .collect();
            MeasurableFn::periodic(ind, vec![Complex64::new(1.0, 0.0)])?
        }
        _ => f.indicator_where(inside)?,
    };
    if g.is_identically_zero(0.5) {
        return Err(Error::CertificateMalformed(format!("sublevel set E_{n} is empty")));
    }
    Ok(g)
}

/// `1/f` for an element bounded away from zero.
pub fn reciprocal(f: &MeasurableFn, tol: &Tolerances) -> Result<MeasurableFn> {
    let stats = essential_stats(f, tol);
    if stats.zero_in_ess_range || stats.min_modulus <= tol.eps_zero {
        return Err(Error::input("function is not bounded away from zero"));
    }
    f.map_values(|v| Complex64::new(1.0, 0.0) / v)
}

fn base_verdict(f: &MeasurableFn, tol: &Tolerances) -> Result<(Verdict, EssentialStats)> {
    if f.is_identically_zero(tol.eps_zero) {
        return Err(Error::Degenerate("identically zero function".into()));
    }
    let stats = essential_stats(f, tol);
    let zd = Tri::from_bool(stats.attains_zero);
    Ok((
        Verdict {
            left_zero_divisor: zd,
            right_zero_divisor: zd,
            is_tdz: stats.zero_in_ess_range,
            is_regular: !stats.zero_in_ess_range,
            certificates: vec![],
            warnings: vec![],
        },
        stats,
    ))
}

/// Zero-divisor decision, certified by the annihilator `chi_{E^c}`.
pub fn decide_zero_divisor_linf(f: &MeasurableFn, tol: &Tolerances) -> Result<Verdict> {
    let (mut v, stats) = base_verdict(f, tol)?;
    if stats.attains_zero {
        let g = zero_set_indicator(f, tol)?;
        for side in [Side::Left, Side::Right] {
            v.certificates.push(Certificate::Annihilator {
                annihilator: Annihilator::Function { g: g.clone() },
                side,
            });
        }
    }
    Ok(v)
}

/// TDZ decision, certified by sublevel indicators or by a regularity bound with `1/f`.
pub fn decide_tdz_linf(f: &MeasurableFn, tol: &Tolerances) -> Result<Verdict> {
    let (mut v, stats) = base_verdict(f, tol)?;
    if stats.zero_in_ess_range {
        v.certificates.push(Certificate::WitnessSequence {
            generator: WitnessGenerator::SublevelIndicator { of: f.clone() },
            side: Side::Left,
        });
    } else {
        v.certificates.push(Certificate::RegularityBound {
            lambda0: stats.min_modulus,
            inverse: Some(InverseWitness::Function { g: reciprocal(f, tol)? }),
        });
    }
    Ok(v)
}

/// TDZ verdict together with the zero-divisor annihilators, when there are any.
pub fn analyze_linf(f: &MeasurableFn, tol: &Tolerances) -> Result<Verdict> {
    let mut v = decide_tdz_linf(f, tol)?;
    v.certificates.extend(decide_zero_divisor_linf(f, tol)?.certificates);
    Ok(v)
}

/// `{c/n : n >= from}`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecaySequence {
    pub c: Complex64,
    pub from: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueSet {
    /// Distinct explicit values.
    pub values: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decay: Option<DecaySequence>,
}

impl ValueSet {
    pub fn contains(&self, z: Complex64, eps: f64) -> bool {
        if self.values.iter().any(|v| (v - z).norm() <= eps) {
            return true;
        }
        match self.decay {
            // z = c/n exactly for an integer n >= from
            Some(DecaySequence { c, from }) if z.norm() > 0.0 => {
                let n = (c / z).re.round();
                n >= from as f64 && (c / n - z).norm() <= eps
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroClass {
    NotInSpectrum,
    PointSpectrum,
    ContinuousSpectrum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Spectrum of `M_h` = essential range of `h`.
    pub sigma: ValueSet,
    /// 0 belongs to `sigma` as a limit of values.
    pub zero_is_limit: bool,
    pub sigma_p: ValueSet,
    pub zero_class: ZeroClass,
}

fn distinct(values: Vec<Complex64>, eps: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for v in values {
        if !out.iter().any(|w| (w - v).norm() <= eps) {
            out.push(v);
        }
    }
    out
}

/// Spectrum and point spectrum of `M_h`, and where 0 sits.
///
/// Every atom has positive mass, so each attained value is an eigenvalue.
pub fn spectrum_mult(h: &MeasurableFn, tol: &Tolerances) -> SpectrumReport {
    let stats = essential_stats(h, tol);
    let values = distinct(h.represented_values(), tol.eps_zero);
    let decay = match h.values() {
        FnValues::DecayingTail { prefix, c } => Some(DecaySequence { c: *c, from: prefix.len() + 1 }),
        _ => None,
    };
    let zero_class = if stats.attains_zero {
        ZeroClass::PointSpectrum
    } else if stats.zero_in_ess_range {
        ZeroClass::ContinuousSpectrum
    } else {
        ZeroClass::NotInSpectrum
    };
    let set = ValueSet { values, decay };
    SpectrumReport {
        sigma: set.clone(),
        zero_is_limit: decay.is_some(),
        sigma_p: set,
        zero_class,
    }
}

/// `L^inf` of an atomic space with the essential sup norm.
#[derive(Debug, Clone, Copy)]
pub struct LinfAlgebra {
    pub tol: Tolerances,
}

impl NormedAlgebra for LinfAlgebra {
    type Element = MeasurableFn;

    fn norm(&self, x: &MeasurableFn) -> Result<f64> {
        Ok(essential_stats(x, &self.tol).ess_sup)
    }

    fn mul(&self, a: &MeasurableFn, b: &MeasurableFn) -> Result<MeasurableFn> {
        pointwise_product(a, b)
    }
}

/// Constant witness `y/||y||` built from an annihilator `y`.
pub(crate) struct ConstantWitness {
    pub witness_norm: f64,
    pub product_norm: f64,
}

impl WitnessProbe for ConstantWitness {
    fn probe(&self, _n: usize) -> Result<(f64, f64)> {
        Ok((self.witness_norm, self.product_norm))
    }
}

pub(crate) fn annihilator_probe(
    f: &MeasurableFn,
    g: &MeasurableFn,
    tol: &Tolerances,
) -> Result<ConstantWitness> {
    let g_norm = essential_stats(g, tol).ess_sup;
    if g_norm <= tol.eps_zero {
        return Err(Error::CertificateMalformed("annihilator is zero".into()));
    }
    let prod = essential_stats(&pointwise_product(f, g)?, tol).ess_sup;
    Ok(ConstantWitness { witness_norm: 1.0, product_norm: prod / g_norm })
}

pub(crate) fn check_inverse(f: &MeasurableFn, g: &MeasurableFn, tol: &Tolerances) -> Result<bool> {
    let prod = pointwise_product(f, g)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(!matches!(prod.values(), FnValues::DecayingTail { .. })
        && prod.represented_values().iter().all(|v| (v - one).norm() <= tol.eps_norm))
}

/// Runs the harness on the certificates a `L^inf` verdict carries.
pub fn certify_linf(
    f: &MeasurableFn,
    verdict: &Verdict,
    tol: &Tolerances,
) -> Result<CertificationReport> {
    if let Some((WitnessGenerator::SublevelIndicator { of }, side)) = verdict.witness() {
        let gen = |n: usize| sublevel_indicator(of, n, tol);
        return verify_tdz_certificate(&LinfAlgebra { tol: *tol }, f, &gen, side, tol);
    }
    if let Some((Annihilator::Function { g }, side)) = verdict.annihilators().next() {
        return verify_probe(&annihilator_probe(f, g, tol)?, side, tol);
    }
    for c in &verdict.certificates {
        if let Certificate::RegularityBound { lambda0, inverse } = c {
            let stats = essential_stats(f, tol);
            let inverse_ok = match inverse {
                Some(InverseWitness::Function { g }) => check_inverse(f, g, tol)?,
                _ => true,
            };
            return Ok(CertificationReport::regularity(
                inverse_ok && !stats.zero_in_ess_range && stats.min_modulus >= lambda0 - tol.eps_norm,
                "|f| >= lambda0 on every atom and f * (1/f) = 1",
            ));
        }
    }
    Err(Error::CertificateMalformed("verdict carries no L^inf certificate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn harmonic() -> MeasurableFn {
        MeasurableFn::decaying(vec![], r(1.0)).unwrap()
    }

    #[test]
    fn stats_examples() {
        let s = essential_stats(&MeasurableFn::finite_real(&[0.0, 2.0, 3.0]).unwrap(), &tol());
        assert_eq!(s.ess_sup, 3.0);
        assert!(s.attains_zero);

        let s = essential_stats(&harmonic(), &tol());
        assert_eq!(s.ess_sup, 1.0);
        assert!(!s.attains_zero && s.zero_in_ess_range);
        assert!(!s.min_modulus_attained);

        let s = essential_stats(&MeasurableFn::periodic_real(&[5.0], &[2.0, 3.0]).unwrap(), &tol());
        assert_eq!(s.ess_sup, 5.0);
        assert!(!s.zero_in_ess_range);
        assert_eq!(s.min_modulus, 2.0);
    }

    #[test]
    fn zero_divisor_examples() {
        let f = MeasurableFn::finite_real(&[0.0, 2.0, 3.0]).unwrap();
        let v = decide_zero_divisor_linf(&f, &tol()).unwrap();
        assert!(v.is_zero_divisor() && v.is_tdz);
        let (Annihilator::Function { g }, _) = v.annihilators().next().unwrap() else { panic!() };
        assert_eq!(g, &MeasurableFn::finite_real(&[1.0, 0.0, 0.0]).unwrap());
        assert!(pointwise_product(&f, g).unwrap().is_identically_zero(0.0));

        let v = decide_zero_divisor_linf(&harmonic(), &tol()).unwrap();
        assert!(!v.is_zero_divisor());

        let f = MeasurableFn::periodic_real(&[1.0, 0.0], &[4.0]).unwrap();
        let v = decide_zero_divisor_linf(&f, &tol()).unwrap();
        let (Annihilator::Function { g }, _) = v.annihilators().next().unwrap() else { panic!() };
        assert_eq!(g.value_at(2), Some(r(1.0)));
        assert_eq!((1..=10).filter(|&n| g.value_at(n) != Some(r(0.0))).count(), 1);
        for n in 1..=10 {
            assert_eq!(f.value_at(n).unwrap() * g.value_at(n).unwrap(), r(0.0));
        }
    }

    #[test]
    fn identically_zero_rejected() {
        let z = MeasurableFn::periodic_real(&[0.0], &[0.0, 0.0]).unwrap();
        assert!(matches!(decide_tdz_linf(&z, &tol()), Err(Error::Degenerate(_))));
        assert!(matches!(decide_zero_divisor_linf(&z, &tol()), Err(Error::Degenerate(_))));
    }

    #[test]
    fn tdz_examples() {
        let v = decide_tdz_linf(&harmonic(), &tol()).unwrap();
        assert!(v.is_tdz && !v.is_zero_divisor());
        for n in 1..=20 {
            let e = sublevel_indicator(&harmonic(), n, &tol()).unwrap();
            for m in 1..=3 * n {
                assert_eq!(e.value_at(m).unwrap().re, if m > n { 1.0 } else { 0.0 });
            }
            let prod = pointwise_product(&harmonic(), &e).unwrap();
            assert!((essential_stats(&prod, &tol()).ess_sup - 1.0 / (n as f64 + 1.0)).abs() < 1e-15);
        }

        let f = MeasurableFn::finite_real(&[1.0, 2.0, 3.0]).unwrap();
        let v = decide_tdz_linf(&f, &tol()).unwrap();
        assert!(v.is_regular && !v.is_tdz);
        assert_eq!(v.regularity_bound(), Some(1.0));

        let f = MeasurableFn::finite_real(&[0.0, 2.0, 3.0]).unwrap();
        assert!(decide_tdz_linf(&f, &tol()).unwrap().is_tdz);
        for n in [1, 5, 50] {
            assert_eq!(
                sublevel_indicator(&f, n, &tol()).unwrap(),
                MeasurableFn::finite_real(&[1.0, 0.0, 0.0]).unwrap()
            );
        }
    }

    #[test]
    fn sublevel_of_scaled_tail() {
        let f = MeasurableFn::decaying(vec![r(0.1), r(9.0)], r(2.5)).unwrap();
        for n in 1..=12 {
            let e = sublevel_indicator(&f, n, &tol()).unwrap();
            for m in 1..=60 {
                let expect = f.value_at(m).unwrap().norm() < 1.0 / n as f64;
                assert_eq!(e.value_at(m).unwrap().re == 1.0, expect, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum_mult(&MeasurableFn::finite_real(&[0.0, 2.0, 3.0]).unwrap(), &tol());
        assert_eq!(s.sigma.values, vec![r(0.0), r(2.0), r(3.0)]);
        assert_eq!(s.sigma, s.sigma_p);
        assert_eq!(s.zero_class, ZeroClass::PointSpectrum);

        let s = spectrum_mult(&harmonic(), &tol());
        assert!(s.zero_is_limit);
        assert_eq!(s.zero_class, ZeroClass::ContinuousSpectrum);
        assert!(s.sigma_p.contains(r(0.25), 1e-12));
        assert!(!s.sigma_p.contains(r(0.3), 1e-12));
        assert!(!s.sigma_p.contains(r(0.0), 1e-12));

        let s = spectrum_mult(&MeasurableFn::periodic_real(&[], &[1.0]).unwrap(), &tol());
        assert_eq!(s.sigma.values, vec![r(1.0)]);
        assert_eq!(s.zero_class, ZeroClass::NotInSpectrum);
    }

    #[test]
    fn certify_all_shapes() {
        let t = tol();
        for f in [
            harmonic(),
            MeasurableFn::finite_real(&[0.0, 2.0, 3.0]).unwrap(),
            MeasurableFn::periodic_real(&[5.0], &[2.0, 3.0]).unwrap(),
        ] {
            let v = decide_tdz_linf(&f, &t).unwrap();
            assert!(certify_linf(&f, &v, &t).unwrap().passes);
            let v = decide_zero_divisor_linf(&f, &t).unwrap();
            if v.is_zero_divisor() {
                assert!(certify_linf(&f, &v, &t).unwrap().passes);
            }
        }
    }

    #[test]
    fn harmonic_report_values() {
        let t = tol();
        let v = decide_tdz_linf(&harmonic(), &t).unwrap();
        let r = certify_linf(&harmonic(), &v, &t).unwrap();
        for s in &r.samples {
            assert_eq!(s.witness_norm, 1.0);
            assert!((s.product_norm - 1.0 / (s.n as f64 + 1.0)).abs() < 1e-15);
        }
    }
}

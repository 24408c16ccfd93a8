//! Multiplication operators `M_h f = h f` on `L^p` of an atomic space.
//!
//! Verdicts are inherited from `h` in `L^inf`: `M_h` is a TDZ exactly when `h` is,
//! and a zero divisor exactly when 0 is an eigenvalue. The exponent is carried for
//! completeness; only finite sections need `p = 2`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cert::{
    verify_probe, verify_tdz_certificate, Annihilator, Certificate, CertificationReport,
    InverseWitness, OperatorMatrix, Tolerances, Verdict, WitnessGenerator,
};
use crate::error::{Error, Result};
use crate::linf::{
    self, annihilator_probe, check_inverse, essential_stats, spectrum_mult, sublevel_indicator,
    AtomicSpace, FnValues, LinfAlgebra, MeasurableFn, ZeroClass,
};

/// Exponent of `L^p`; serialized as a number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn validate(self) -> Result<()> {
        match self {
            Exponent::Finite(p) if !(p.is_finite() && p >= 1.0) => {
                Err(Error::input(format!("exponent must be in [1, inf], got {p}")))
            }
            _ => Ok(()),
        }
    }

    pub fn is_hilbert(self) -> bool {
        self == Exponent::Finite(2.0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        let p = match Raw::deserialize(d)? {
            Raw::Num(p) => Exponent::Finite(p),
            Raw::Str(s) if matches!(s.as_str(), "inf" | "infinity" | "∞") => Exponent::Infinity,
            Raw::Str(s) => return Err(serde::de::Error::custom(format!("unknown exponent {s:?}"))),
        };
        p.validate().map_err(serde::de::Error::custom)?;
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultOperatorSpec {
    pub h: MeasurableFn,
    pub p: Exponent,
}

impl MultOperatorSpec {
    pub fn new(h: MeasurableFn, p: Exponent) -> Result<Self> {
        p.validate()?;
        Ok(MultOperatorSpec { h, p })
    }
}

/// TDZ decision lifted from `h`; witnesses are `M_{chi_{E_n}}`, the inverse is `M_{1/h}`.
pub fn decide_tdz_mult(op: &MultOperatorSpec, tol: &Tolerances) -> Result<Verdict> {
    op.p.validate()?;
    let mut v = linf::decide_tdz_linf(&op.h, tol)?;
    for c in &mut v.certificates {
        if let Certificate::WitnessSequence { generator, .. } = c {
            *generator = WitnessGenerator::MultSublevelIndicator { of: op.h.clone(), p: op.p };
        }
    }
    Ok(v)
}

/// Zero divisor iff 0 is an eigenvalue; the annihilator is `M_{chi_{E^c}}`.
pub fn decide_zero_divisor_mult(op: &MultOperatorSpec, tol: &Tolerances) -> Result<Verdict> {
    op.p.validate()?;
    let mut v = linf::decide_zero_divisor_linf(&op.h, tol)?;
    debug_assert_eq!(
        v.is_zero_divisor(),
        spectrum_mult(&op.h, tol).zero_class == ZeroClass::PointSpectrum
    );
    for c in &mut v.certificates {
        if let Certificate::Annihilator { annihilator: Annihilator::Function { g }, side } = c {
            *c = Certificate::Annihilator {
                annihilator: Annihilator::MultOperator { g: g.clone() },
                side: *side,
            };
        }
    }
    Ok(v)
}

/// Full classification: zero-divisor flags and annihilators together with the TDZ certificate.
pub fn analyze_mult(op: &MultOperatorSpec, tol: &Tolerances) -> Result<Verdict> {
    let mut v = decide_tdz_mult(op, tol)?;
    let zd = decide_zero_divisor_mult(op, tol)?;
    v.certificates.extend(zd.certificates);
    Ok(v)
}

/// `diag(h(1), ..., h(N))` on `l^2`.
pub fn finite_section_mult(op: &MultOperatorSpec, n: usize) -> Result<OperatorMatrix> {
    if !op.p.is_hilbert() {
        return Err(Error::input(format!("finite sections need p = 2, got p = {}", op.p)));
    }
    if n == 0 {
        return Err(Error::input("section size must be at least 1"));
    }
    let diag: Vec<Complex64> = match (op.h.space(), op.h.values()) {
        (AtomicSpace::FiniteAtoms { weights }, FnValues::FiniteVector(v)) => {
            if n != weights.len() {
                return Err(Error::input(format!(
                    "section size {n} must equal the atom count {}",
                    weights.len()
                )));
            }
            v.clone()
        }
        _ => (1..=n).map(|m| op.h.value_at(m).expect("counting space")).collect(),
    };
    Ok(OperatorMatrix::from_diagonal(&diag))
}

/// Checks the certificates of a multiplication-operator verdict.
///
/// `||M_g|| = ||g||_inf` on every `L^p`, so witness and product norms are essential sups.
pub fn certify_mult(
    op: &MultOperatorSpec,
    verdict: &Verdict,
    tol: &Tolerances,
) -> Result<CertificationReport> {
    if let Some((WitnessGenerator::MultSublevelIndicator { of, .. }, side)) = verdict.witness() {
        let gen = |n: usize| sublevel_indicator(of, n, tol);
        return verify_tdz_certificate(&LinfAlgebra { tol: *tol }, &op.h, &gen, side, tol);
    }
    if let Some((Annihilator::MultOperator { g }, side)) = verdict.annihilators().next() {
        return verify_probe(&annihilator_probe(&op.h, g, tol)?, side, tol);
    }
    for c in &verdict.certificates {
        if let Certificate::RegularityBound { lambda0, inverse } = c {
            let stats = essential_stats(&op.h, tol);
            let inverse_ok = match inverse {
                Some(InverseWitness::Function { g }) => check_inverse(&op.h, g, tol)?,
                _ => true,
            };
            return Ok(CertificationReport::regularity(
                inverse_ok && !stats.zero_in_ess_range && stats.min_modulus >= lambda0 - tol.eps_norm,
                "M_h M_{1/h} = I and ||M_h f|| >= lambda0 ||f||",
            ));
        }
    }
    Err(Error::CertificateMalformed(
        "verdict carries no multiplication-operator certificate".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::operator_norm;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn spec(h: MeasurableFn, p: Exponent) -> MultOperatorSpec {
        MultOperatorSpec::new(h, p).unwrap()
    }

    #[test]
    fn exponent_serde() {
        assert_eq!(serde_json::to_string(&Exponent::Infinity).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<Exponent>("2").unwrap(), Exponent::Finite(2.0));
        assert_eq!(serde_json::from_str::<Exponent>("\"inf\"").unwrap(), Exponent::Infinity);
        assert!(serde_json::from_str::<Exponent>("0.5").is_err());
        assert!(serde_json::from_str::<Exponent>("\"two\"").is_err());
    }

    #[test]
    fn verdict_examples() {
        let t = tol();
        let harmonic = MeasurableFn::decaying(vec![], r(1.0)).unwrap();
        let v = decide_tdz_mult(&spec(harmonic.clone(), Exponent::Finite(2.0)), &t).unwrap();
        assert!(v.is_tdz);
        assert!(matches!(v.witness(), Some((WitnessGenerator::MultSublevelIndicator { .. }, _))));
        assert!(!decide_zero_divisor_mult(&spec(harmonic, Exponent::Finite(2.0)), &t)
            .unwrap()
            .is_zero_divisor());

        let op = spec(MeasurableFn::finite_real(&[1.0, 2.0, 3.0]).unwrap(), Exponent::Finite(1.0));
        let v = decide_tdz_mult(&op, &t).unwrap();
        assert!(v.is_regular);
        let Some(Certificate::RegularityBound { inverse: Some(InverseWitness::Function { g }), .. }) =
            v.certificates.first()
        else {
            panic!()
        };
        let expect = [1.0, 0.5, 1.0 / 3.0];
        for (i, e) in expect.iter().enumerate() {
            assert!((g.value_at(i + 1).unwrap() - r(*e)).norm() < 1e-15);
        }

        let op = spec(MeasurableFn::finite_real(&[0.0, 2.0, 3.0]).unwrap(), Exponent::Infinity);
        let v = analyze_mult(&op, &t).unwrap();
        assert!(v.is_tdz && v.is_zero_divisor());
        let (Annihilator::MultOperator { g }, _) = v.annihilators().next().unwrap() else {
            panic!()
        };
        assert_eq!(g, &MeasurableFn::finite_real(&[1.0, 0.0, 0.0]).unwrap());
        assert!(certify_mult(&op, &v, &t).unwrap().passes);

        let one = spec(MeasurableFn::periodic_real(&[], &[1.0]).unwrap(), Exponent::Finite(2.0));
        let v = analyze_mult(&one, &t).unwrap();
        assert!(v.is_regular && !v.is_tdz && !v.is_zero_divisor());
        assert!(certify_mult(&one, &v, &t).unwrap().passes);
    }

    #[test]
    fn section_examples() {
        let t = tol();
        let op = spec(MeasurableFn::decaying(vec![], r(1.0)).unwrap(), Exponent::Finite(2.0));
        let m = finite_section_mult(&op, 4).unwrap();
        assert_eq!(m, OperatorMatrix::from_diagonal(&[r(1.0), r(0.5), r(1.0 / 3.0), r(0.25)]));
        assert!((operator_norm(&m, &t).unwrap() - 1.0).abs() < 1e-12);

        let op = spec(MeasurableFn::periodic_real(&[], &[2.0, 3.0]).unwrap(), Exponent::Finite(2.0));
        let m = finite_section_mult(&op, 4).unwrap();
        assert_eq!(m, OperatorMatrix::from_diagonal(&[r(2.0), r(3.0), r(2.0), r(3.0)]));
        assert!((operator_norm(&m, &t).unwrap() - 3.0).abs() < 1e-12);

        let op = spec(MeasurableFn::periodic_real(&[0.0], &[1.0]).unwrap(), Exponent::Finite(2.0));
        let m = finite_section_mult(&op, 5).unwrap();
        assert_eq!(m, OperatorMatrix::from_diagonal(&[r(0.0), r(1.0), r(1.0), r(1.0), r(1.0)]));

        let atoms = spec(MeasurableFn::finite_real(&[1.0, 2.0]).unwrap(), Exponent::Finite(2.0));
        assert!(finite_section_mult(&atoms, 3).is_err());
        assert!(finite_section_mult(&atoms, 2).is_ok());
        let p1 = spec(MeasurableFn::finite_real(&[1.0, 2.0]).unwrap(), Exponent::Finite(1.0));
        assert!(finite_section_mult(&p1, 2).is_err());
    }

    #[test]
    fn bad_exponent_rejected() {
        let h = MeasurableFn::finite_real(&[1.0]).unwrap();
        assert!(MultOperatorSpec::new(h, Exponent::Finite(0.5)).is_err());
    }
}

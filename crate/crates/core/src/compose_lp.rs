//! Composition operators `C_phi f = f o phi` on `l^p(N)`.
//!
//! Self-maps are an explicit prefix `phi(1..=N)` followed by a shift or a
//! ceiling-division tail. That class keeps preimage counts, injectivity and
//! surjectivity decidable by finite checks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cert::{
    operator_norm, verify_probe, Annihilator, Certificate, CertificationReport, InverseWitness,
    OperatorMatrix, Side, Tolerances, Tri, Verdict,
};
use crate::error::{Error, Result};
use crate::linf::{self, ConstantWitness, MeasurableFn};
use crate::mult::{finite_section_mult, Exponent, MultOperatorSpec};

/// Behaviour of a self-map past its explicit prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    /// `phi(n) = n + c`
    Shift(i64),
    /// `phi(n) = ceil(n / k)`
    Divide(u64),
}

impl Tail {
    fn is_identity(self) -> bool {
        matches!(self, Tail::Shift(0) | Tail::Divide(1))
    }

    /// How far the tail moves indices: `|c|` or `k`.
    pub fn spread(self) -> u64 {
        match self {
            Tail::Shift(c) => c.unsigned_abs(),
            Tail::Divide(k) => k,
        }
    }

    /// Smallest `M` with `phi(n) > bound` for every `n > M`.
    fn exceeds_after(self, bound: u64) -> u64 {
        match self {
            Tail::Shift(c) => (bound as i64 - c).max(0) as u64,
            Tail::Divide(k) => bound * k,
        }
    }
}

/// A map `N -> N` given by `phi(1..=N)` and a [`Tail`] for `n > N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SelfMapRepr")]
pub struct SelfMapN {
    prefix: Vec<u64>,
    tail: Tail,
}

#[derive(Deserialize)]
struct SelfMapRepr {
    #[serde(default)]
    prefix: Vec<u64>,
    tail: Tail,
}

impl TryFrom<SelfMapRepr> for SelfMapN {
    type Error = Error;

    fn try_from(r: SelfMapRepr) -> Result<Self> {
        SelfMapN::new(r.prefix, r.tail)
    }
}

impl SelfMapN {
    pub fn new(prefix: Vec<u64>, tail: Tail) -> Result<Self> {
        if prefix.contains(&0) {
            return Err(Error::input("prefix values must be at least 1"));
        }
        match tail {
            Tail::Shift(c) if (prefix.len() as i64) + 1 + c < 1 => {
                return Err(Error::input(format!(
                    "shift {c} after a prefix of length {} leaves N",
                    prefix.len()
                )))
            }
            Tail::Divide(0) => return Err(Error::input("divisor must be positive")),
            _ => {}
        }
        Ok(SelfMapN { prefix, tail })
    }

    pub fn identity() -> Self {
        SelfMapN { prefix: vec![], tail: Tail::Shift(0) }
    }

    pub fn shift(c: i64) -> Result<Self> {
        Self::new(vec![], Tail::Shift(c))
    }

    pub fn divide(k: u64) -> Result<Self> {
        Self::new(vec![], Tail::Divide(k))
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// `phi(n)`, 1-based; `n = 0` is outside the domain.
    pub fn eval(&self, n: u64) -> u64 {
        assert!(n >= 1, "self-maps of N are 1-based");
        let len = self.prefix.len() as u64;
        if n <= len {
            return self.prefix[(n - 1) as usize];
        }
        match self.tail {
            Tail::Shift(c) => (n as i64 + c) as u64,
            Tail::Divide(k) => n.div_ceil(k),
        }
    }

    /// `phi^{-1}(m)` in increasing order.
    pub fn preimages(&self, m: u64) -> Vec<u64> {
        let len = self.prefix.len() as u64;
        let mut out: Vec<u64> =
            (1..=len).filter(|&i| self.prefix[(i - 1) as usize] == m).collect();
        match self.tail {
            Tail::Shift(c) => {
                let n = m as i64 - c;
                if n > len as i64 {
                    out.push(n as u64);
                }
            }
            Tail::Divide(k) => {
                if m >= 1 {
                    out.extend(((m - 1) * k + 1).max(len + 1)..=m * k);
                }
            }
        }
        out
    }

    pub fn preimage_count(&self, m: u64) -> u64 {
        let len = self.prefix.len() as u64;
        let from_prefix = self.prefix.iter().filter(|&&v| v == m).count() as u64;
        let from_tail = match self.tail {
            Tail::Shift(c) => u64::from(m as i64 - c > len as i64),
            Tail::Divide(k) if m >= 1 => (m * k).saturating_sub(((m - 1) * k).max(len)),
            Tail::Divide(_) => 0,
        };
        from_prefix + from_tail
    }

    /// Past this index the preimage count equals its eventual value.
    pub fn stabilization_index(&self) -> u64 {
        let len = self.prefix.len() as u64;
        let max_prefix = self.prefix.iter().copied().max().unwrap_or(0);
        let tail = match self.tail {
            Tail::Shift(c) => (len as i64 + c).max(0) as u64,
            Tail::Divide(k) => len.div_ceil(k),
        };
        max_prefix.max(tail)
    }

    /// Eventual preimage count: 1 for shifts, `k` for division.
    pub fn eventual_count(&self) -> u64 {
        match self.tail {
            Tail::Shift(_) => 1,
            Tail::Divide(k) => k,
        }
    }
}

/// `m -> |phi^{-1}(m)|`, the Radon-Nikodym derivative of the pushforward of counting measure.
pub fn rn_derivative(phi: &SelfMapN) -> MeasurableFn {
    let l = phi.stabilization_index();
    let prefix = (1..=l).map(|m| Complex64::new(phi.preimage_count(m) as f64, 0.0)).collect();
    let cycle = vec![Complex64::new(phi.eventual_count() as f64, 0.0)];
    MeasurableFn::periodic(prefix, cycle).expect("counts are finite")
}

/// `sup_m |phi^{-1}(m)|`
pub fn max_preimage_count(phi: &SelfMapN) -> u64 {
    (1..=phi.stabilization_index())
        .map(|m| phi.preimage_count(m))
        .max()
        .unwrap_or(0)
        .max(phi.eventual_count())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositionOperatorSpec {
    pub phi: SelfMapN,
    pub p: Exponent,
}

impl CompositionOperatorSpec {
    pub fn new(phi: SelfMapN, p: Exponent) -> Result<Self> {
        p.validate()?;
        Ok(CompositionOperatorSpec { phi, p })
    }

    pub fn hilbert(phi: SelfMapN) -> Self {
        CompositionOperatorSpec { phi, p: Exponent::Finite(2.0) }
    }
}

/// `||C_phi|| = (sup_m |phi^{-1}(m)|)^{1/p}`
pub fn composition_norm(spec: &CompositionOperatorSpec) -> f64 {
    let sup = max_preimage_count(&spec.phi) as f64;
    match spec.p {
        Exponent::Finite(p) => sup.powf(1.0 / p),
        Exponent::Infinity => 1.0,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapProperties {
    pub injective: bool,
    pub surjective: bool,
    pub invertible: bool,
    /// `a < b` with `phi(a) = phi(b)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collision: Option<(u64, u64)>,
    /// A value outside the range of `phi`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub missed: Option<u64>,
}

pub fn map_properties(phi: &SelfMapN) -> MapProperties {
    let l = phi.stabilization_index();
    // every count past l equals the eventual one, so checking 1..=l+1 is exhaustive
    let counts: Vec<(u64, u64)> = (1..=l + 1).map(|m| (m, phi.preimage_count(m))).collect();
    let collision = counts.iter().find(|(_, c)| *c >= 2).map(|&(m, _)| {
        let pre = phi.preimages(m);
        (pre[0], pre[1])
    });
    let missed = counts.iter().find(|(_, c)| *c == 0).map(|&(m, _)| m);
    MapProperties {
        injective: collision.is_none(),
        surjective: missed.is_none(),
        invertible: collision.is_none() && missed.is_none(),
        collision,
        missed,
    }
}

/// Inverse of a bijective map, again in prefix-plus-shift form.
pub fn inverse_map(phi: &SelfMapN) -> Result<SelfMapN> {
    if !map_properties(phi).invertible {
        return Err(Error::input("map is not a bijection"));
    }
    let c = match phi.tail {
        Tail::Shift(c) => c,
        Tail::Divide(_) => 0,
    };
    let l = phi.stabilization_index();
    let prefix = (1..=l).map(|m| phi.preimages(m)[0]).collect();
    SelfMapN::new(prefix, Tail::Shift(-c))
}

/// `phi1 o phi2`, when the composite stays in the representable class.
pub fn compose_maps(phi1: &SelfMapN, phi2: &SelfMapN) -> Result<SelfMapN> {
    let (t1, t2) = (phi1.tail, phi2.tail);
    let tail = match (t1, t2) {
        _ if t1.is_identity() => t2,
        _ if t2.is_identity() => t1,
        (Tail::Shift(a), Tail::Shift(b)) => Tail::Shift(a + b),
        (Tail::Divide(a), Tail::Divide(b)) => Tail::Divide(a * b),
        _ => {
            return Err(Error::CompositionUnrepresentable(format!(
                "{t1:?} after {t2:?} has no shift or division tail"
            )))
        }
    };
    let n1 = phi1.prefix.len() as u64;
    let m = (phi2.prefix.len() as u64).max(t2.exceeds_after(n1));
    let prefix = (1..=m).map(|n| phi1.eval(phi2.eval(n))).collect();
    SelfMapN::new(prefix, tail)
}

fn require_hilbert(spec: &CompositionOperatorSpec) -> Result<()> {
    if !spec.p.is_hilbert() {
        return Err(Error::input(format!("finite sections need p = 2, got p = {}", spec.p)));
    }
    Ok(())
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Matrix of `C_phi` on coordinates `1..=n`: row `i` is `e_{phi(i)}` when `phi(i) <= n`.
pub fn finite_section_composition(spec: &CompositionOperatorSpec, n: usize) -> Result<OperatorMatrix> {
    require_hilbert(spec)?;
    if n == 0 {
        return Err(Error::input("section size must be at least 1"));
    }
    let mut m = OperatorMatrix::zeros(n, n);
    for i in 1..=n {
        let j = spec.phi.eval(i as u64) as usize;
        if j <= n {
            m.set(i - 1, j - 1, one());
        }
    }
    Ok(m)
}

/// Leading block on which `C*C` of an `n`-section carries every preimage.
pub fn stable_block(phi: &SelfMapN, n: usize) -> usize {
    match phi.tail {
        Tail::Shift(c) if c < 0 => n.saturating_sub(c.unsigned_abs() as usize),
        Tail::Shift(_) => n,
        Tail::Divide(k) => n / k as usize,
    }
}

/// Smallest section accepted by [`adjoint_rn_check`].
pub fn minimal_section(phi: &SelfMapN) -> usize {
    phi.prefix.len() + phi.tail.spread() as usize + 1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdjointRnReport {
    pub n: usize,
    /// Size of the leading block compared.
    pub block: usize,
    /// Max entry of `C*C - M_rn` on the block.
    pub residual: f64,
    pub identity_holds: bool,
    pub norm_formula: f64,
    pub section_norm: f64,
    pub norm_agrees: bool,
    /// TDZ verdict for the multiplication operator by the Radon-Nikodym derivative.
    pub rn_route_tdz: bool,
    /// TDZ verdict from injectivity and surjectivity of `phi`.
    pub divisor_route_tdz: bool,
    pub collision_present: bool,
    /// `divisor_route_tdz == (rn_route_tdz || collision_present)`
    pub routes_agree: bool,
}

/// Compares `C*C` with `M_{|phi^{-1}|}` on an `n`-section and the two TDZ routes.
///
/// The Radon-Nikodym route sees only non-surjectivity: a surjective map with a
/// collision has a derivative bounded below while `C_phi` still fails to be
/// invertible, so the routes agree once collisions are accounted for.
pub fn adjoint_rn_check(
    spec: &CompositionOperatorSpec,
    n: usize,
    tol: &Tolerances,
) -> Result<AdjointRnReport> {
    require_hilbert(spec)?;
    let minimal = minimal_section(&spec.phi);
    if n < minimal {
        return Err(Error::SectionTooSmall { given: n, minimal });
    }
    let c = finite_section_composition(spec, n)?;
    let rn = rn_derivative(&spec.phi);
    let d = finite_section_mult(&MultOperatorSpec::new(rn.clone(), spec.p)?, n)?;
    let block = stable_block(&spec.phi, n);
    let gram = c.adjoint().mul(&c)?;
    let residual = gram.leading_block(block, block).sub(&d.leading_block(block, block))?.max_abs();

    let norm_formula = composition_norm(spec);
    let section_norm = operator_norm(&c, tol)?;

    let rn_route_tdz = linf::decide_tdz_linf(&rn, tol)?.is_tdz;
    let props = map_properties(&spec.phi);
    let divisor_route_tdz = divisor_status(spec)?.is_tdz;
    let collision_present = props.collision.is_some();
    Ok(AdjointRnReport {
        n,
        block,
        residual,
        identity_holds: residual <= tol.eps_zero,
        norm_formula,
        section_norm,
        norm_agrees: (norm_formula - section_norm).abs() <= tol.eps_norm,
        rn_route_tdz,
        divisor_route_tdz,
        collision_present,
        routes_agree: divisor_route_tdz == (rn_route_tdz || collision_present),
    })
}

/// Zero-divisor and TDZ verdict for `C_phi` with explicit annihilators.
///
/// A missed value `m` gives `T f = f(1) chi_m` with `C_phi T = 0`; a collision
/// `phi(a) = phi(b)` gives `T g = (g(a) - g(b)) chi_1` with `T C_phi = 0`.
pub fn divisor_status(spec: &CompositionOperatorSpec) -> Result<Verdict> {
    spec.p.validate()?;
    let props = map_properties(&spec.phi);
    let mut certificates = Vec::new();
    if let Some(m) = props.missed {
        certificates.push(Certificate::Annihilator {
            annihilator: Annihilator::PointEvaluation { missed: m },
            side: Side::Left,
        });
    }
    if let Some((a, b)) = props.collision {
        certificates.push(Certificate::Annihilator {
            annihilator: Annihilator::CollisionFunctional { a, b },
            side: Side::Right,
        });
    }
    if props.invertible {
        certificates.push(Certificate::RegularityBound {
            lambda0: 1.0,
            inverse: Some(InverseWitness::Map { inverse: inverse_map(&spec.phi)? }),
        });
    }
    Ok(Verdict {
        left_zero_divisor: Tri::from_bool(!props.surjective),
        right_zero_divisor: Tri::from_bool(!props.injective),
        is_tdz: !props.invertible,
        is_regular: props.invertible,
        certificates,
        warnings: vec![],
    })
}

/// Coordinates an annihilator touches; sections must contain them.
pub fn annihilator_support(ann: &Annihilator) -> Result<usize> {
    match *ann {
        Annihilator::CollisionFunctional { a, b } => Ok(a.max(b) as usize),
        Annihilator::PointEvaluation { missed } => Ok(missed.max(1) as usize),
        _ => Err(Error::input("not an l^p annihilator")),
    }
}

/// `n x n` matrix of an `l^p` annihilator.
pub fn annihilator_section(ann: &Annihilator, n: usize) -> Result<OperatorMatrix> {
    let needed = annihilator_support(ann)?;
    if n < needed {
        return Err(Error::SectionTooSmall { given: n, minimal: needed });
    }
    let mut t = OperatorMatrix::zeros(n, n);
    match *ann {
        Annihilator::CollisionFunctional { a, b } => {
            t.set(0, a as usize - 1, one());
            t.set(0, b as usize - 1, -one());
        }
        Annihilator::PointEvaluation { missed } => t.set(missed as usize - 1, 0, one()),
        _ => unreachable!(),
    }
    Ok(t)
}

/// `T C` for [`Side::Right`] certificates, `C T` for [`Side::Left`].
pub fn annihilator_product(
    spec: &CompositionOperatorSpec,
    ann: &Annihilator,
    side: Side,
    n: usize,
) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let c = finite_section_composition(spec, n)?;
    let t = annihilator_section(ann, n)?;
    let prod = match side {
        Side::Left => c.mul(&t)?,
        Side::Right => t.mul(&c)?,
    };
    Ok((t, prod))
}

/// Checks every annihilator on an exact section, or the inverse map on an initial segment.
pub fn certify_compose(
    spec: &CompositionOperatorSpec,
    verdict: &Verdict,
    tol: &Tolerances,
) -> Result<CertificationReport> {
    let mut first = None;
    for (ann, side) in verdict.annihilators() {
        let n = annihilator_support(ann)?.max(minimal_section(&spec.phi)).max(32);
        let hilbert = CompositionOperatorSpec::hilbert(spec.phi.clone());
        let (t, prod) = annihilator_product(&hilbert, ann, side, n)?;
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
    for c in &verdict.certificates {
        if let Certificate::RegularityBound { inverse: Some(InverseWitness::Map { inverse }), .. } = c
        {
            let horizon = spec.phi.stabilization_index()
                + inverse.stabilization_index()
                + spec.phi.tail.spread()
                + tol.n_witness as u64;
            let ok = (1..=horizon)
                .all(|n| inverse.eval(spec.phi.eval(n)) == n && spec.phi.eval(inverse.eval(n)) == n);
            return Ok(CertificationReport::regularity(
                ok,
                "phi^{-1}(phi(n)) = phi(phi^{-1}(n)) = n on an initial segment covering both prefixes",
            ));
        }
    }
    Err(Error::CertificateMalformed("verdict carries no composition-operator certificate".into()))
}

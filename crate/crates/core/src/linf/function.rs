use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtomicSpace {
    /// Atoms `1..=m` with the given positive masses.
    FiniteAtoms { weights: Vec<f64> },
    /// Counting measure on `N = {1, 2, ...}`.
    CountingN,
}

impl AtomicSpace {
    fn validate(&self) -> Result<()> {
        if let AtomicSpace::FiniteAtoms { weights } = self {
            if weights.is_empty() {
                return Err(Error::input("finite atomic space needs at least one atom"));
            }
            if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
                return Err(Error::input(format!("atom weight must be positive, got {w}")));
            }
        }
        Ok(())
    }
}

/// Exact representations of an essentially bounded function on an atomic space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FnValues {
    /// One value per atom of a finite space.
    FiniteVector(Vec<Complex64>),
    /// On `N`: `prefix` for `n <= N`, then `cycle[(n - N - 1) mod p]`.
    EventuallyPeriodic { prefix: Vec<Complex64>, cycle: Vec<Complex64> },
    /// On `N`: `prefix` for `n <= N`, then `c / n`.
    DecayingTail { prefix: Vec<Complex64>, c: Complex64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasurableFnRepr")]
pub struct MeasurableFn {
    space: AtomicSpace,
    values: FnValues,
}

#[derive(Deserialize)]
struct MeasurableFnRepr {
    space: AtomicSpace,
    values: FnValues,
}

impl TryFrom<MeasurableFnRepr> for MeasurableFn {
    type Error = Error;

    fn try_from(r: MeasurableFnRepr) -> Result<Self> {
        MeasurableFn::new(r.space, r.values)
    }
}

fn finite(values: &[Complex64]) -> bool {
    values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

impl MeasurableFn {
    pub fn new(space: AtomicSpace, values: FnValues) -> Result<Self> {
        space.validate()?;
        match (&space, &values) {
            (AtomicSpace::FiniteAtoms { weights }, FnValues::FiniteVector(v)) => {
                if v.len() != weights.len() {
                    return Err(Error::input(format!(
                        "vector has {} entries but the space has {} atoms",
                        v.len(),
                        weights.len()
                    )));
                }
                if !finite(v) {
                    return Err(Error::input("function values must be finite"));
                }
            }
            (AtomicSpace::CountingN, FnValues::EventuallyPeriodic { prefix, cycle }) => {
                if cycle.is_empty() {
                    return Err(Error::input("cycle must be nonempty"));
                }
                if !finite(prefix) || !finite(cycle) {
                    return Err(Error::input("function values must be finite"));
                }
            }
            (AtomicSpace::CountingN, FnValues::DecayingTail { prefix, c }) => {
                if *c == zero() {
                    return Err(Error::input("decay constant must be nonzero"));
                }
                if !finite(prefix) || !finite(std::slice::from_ref(c)) {
                    return Err(Error::input("function values must be finite"));
                }
            }
            _ => {
                return Err(Error::input(
                    "representation does not match the space (vectors live on finite atoms, sequences on N)",
                ))
            }
        }
        Ok(MeasurableFn { space, values })
    }

    pub fn finite_atoms(weights: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        Self::new(AtomicSpace::FiniteAtoms { weights }, FnValues::FiniteVector(values))
    }

    /// Unit weights.
    pub fn finite_real(values: &[f64]) -> Result<Self> {
        Self::finite_atoms(
            vec![1.0; values.len()],
            values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn periodic(prefix: Vec<Complex64>, cycle: Vec<Complex64>) -> Result<Self> {
        Self::new(AtomicSpace::CountingN, FnValues::EventuallyPeriodic { prefix, cycle })
    }

    pub fn periodic_real(prefix: &[f64], cycle: &[f64]) -> Result<Self> {
        let c = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::periodic(c(prefix), c(cycle))
    }

    pub fn decaying(prefix: Vec<Complex64>, c: Complex64) -> Result<Self> {
        Self::new(AtomicSpace::CountingN, FnValues::DecayingTail { prefix, c })
    }

    pub fn space(&self) -> &AtomicSpace {
        &self.space
    }

    pub fn values(&self) -> &FnValues {
        &self.values
    }

    /// Value at atom / index `n` (1-based); `None` past the last atom of a finite space.
    pub fn value_at(&self, n: usize) -> Option<Complex64> {
        if n == 0 {
            return None;
        }
        match &self.values {
            FnValues::FiniteVector(v) => v.get(n - 1).copied(),
            FnValues::EventuallyPeriodic { prefix, cycle } => Some(if n <= prefix.len() {
                prefix[n - 1]
            } else {
                cycle[(n - prefix.len() - 1) % cycle.len()]
            }),
            FnValues::DecayingTail { prefix, c } => Some(if n <= prefix.len() {
                prefix[n - 1]
            } else {
                c / n as f64
            }),
        }
    }

    /// Values stored explicitly: the vector, prefix plus cycle, or the prefix of a decaying tail.
    pub fn represented_values(&self) -> Vec<Complex64> {
        match &self.values {
            FnValues::FiniteVector(v) => v.clone(),
            FnValues::EventuallyPeriodic { prefix, cycle } => {
                prefix.iter().chain(cycle).copied().collect()
            }
            FnValues::DecayingTail { prefix, .. } => prefix.clone(),
        }
    }

    /// Length of the explicit prefix (the vector length for finite spaces).
    pub fn prefix_len(&self) -> usize {
        match &self.values {
            FnValues::FiniteVector(v) => v.len(),
            FnValues::EventuallyPeriodic { prefix, .. } | FnValues::DecayingTail { prefix, .. } => {
                prefix.len()
            }
        }
    }

    /// Value eventually taken on every index, when the function is eventually constant.
    pub fn eventual_constant(&self) -> Option<Complex64> {
        match &self.values {
            FnValues::EventuallyPeriodic { cycle, .. } if cycle.iter().all(|v| *v == cycle[0]) => {
                Some(cycle[0])
            }
            _ => None,
        }
    }

    pub fn is_identically_zero(&self, eps_zero: f64) -> bool {
        match &self.values {
            FnValues::DecayingTail { .. } => false,
            _ => self.represented_values().iter().all(|v| v.norm() <= eps_zero),
        }
    }

    /// Same shape with every value mapped by `f`; a decaying tail keeps its shape only
    /// when `f` is linear, so it is rejected.
    pub(crate) fn map_values(&self, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        let values = match &self.values {
            FnValues::FiniteVector(v) => FnValues::FiniteVector(v.iter().map(|&x| f(x)).collect()),
            FnValues::EventuallyPeriodic { prefix, cycle } => FnValues::EventuallyPeriodic {
                prefix: prefix.iter().map(|&x| f(x)).collect(),
                cycle: cycle.iter().map(|&x| f(x)).collect(),
            },
            FnValues::DecayingTail { .. } => {
                return Err(Error::UnsupportedProduct("pointwise map of a decaying tail".into()))
            }
        };
        MeasurableFn::new(self.space.clone(), values)
    }

    /// `chi_S` where `S` is the set of indices whose value satisfies `pred`; for a
    /// decaying tail the caller supplies the tail indicator rule.
    pub(crate) fn indicator_where(&self, pred: impl Fn(Complex64) -> bool) -> Result<Self> {
        let ind = |x: Complex64| if pred(x) { one() } else { zero() };
        match &self.values {
            FnValues::DecayingTail { .. } => Err(Error::input(
                "indicator over a decaying tail needs an explicit tail rule",
            )),
            _ => self.map_values(ind),
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exact pointwise product in a closed representation.
pub fn pointwise_product(f: &MeasurableFn, g: &MeasurableFn) -> Result<MeasurableFn> {
    if f.space != g.space {
        return Err(Error::UnsupportedProduct("functions live on different spaces".into()));
    }
    use FnValues::*;
    match (&f.values, &g.values) {
        (FiniteVector(a), FiniteVector(b)) => MeasurableFn::new(
            f.space.clone(),
            FiniteVector(a.iter().zip(b).map(|(x, y)| x * y).collect()),
        ),
        (EventuallyPeriodic { prefix: pa, cycle: ca }, EventuallyPeriodic { prefix: pb, cycle: cb }) => {
            let n = pa.len().max(pb.len());
            let p = ca.len() / gcd(ca.len(), cb.len()) * cb.len();
            let at = |k: usize| f.value_at(k).unwrap() * g.value_at(k).unwrap();
            MeasurableFn::periodic((1..=n).map(at).collect(), (n + 1..=n + p).map(at).collect())
        }
        (DecayingTail { .. }, EventuallyPeriodic { .. }) => decay_times_periodic(f, g),
        (EventuallyPeriodic { .. }, DecayingTail { .. }) => decay_times_periodic(g, f),
        (DecayingTail { .. }, DecayingTail { .. }) => Err(Error::UnsupportedProduct(
            "product of two decaying tails decays like 1/n^2".into(),
        )),
        _ => Err(Error::UnsupportedProduct("mismatched representations".into())),
    }
}

fn decay_times_periodic(d: &MeasurableFn, e: &MeasurableFn) -> Result<MeasurableFn> {
    let FnValues::DecayingTail { prefix: pd, c } = &d.values else { unreachable!() };
    let v = e.eventual_constant().ok_or_else(|| {
        Error::UnsupportedProduct("decaying tail times a non-constant periodic factor".into())
    })?;
    let n = pd.len().max(e.prefix_len());
    let prefix = (1..=n).map(|k| d.value_at(k).unwrap() * e.value_at(k).unwrap()).collect();
    let tail = c * v;
    if tail == zero() {
        MeasurableFn::periodic(prefix, vec![zero()])
    } else {
        MeasurableFn::decaying(prefix, tail)
    }
}

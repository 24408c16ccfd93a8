#![allow(dead_code)]

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tdz_core::compose_lp::{SelfMapN, Tail};
use tdz_core::disk::CirclePolynomial;
use tdz_core::linf::{FnValues, MeasurableFn};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_complex(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

pub fn unit(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))
}

/// Modulus bounded away from 1 on both sides.
fn off_circle_radius(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen_bool(0.5) {
        rng.gen_range(0.0..0.95)
    } else {
        rng.gen_range(1.05..2.0)
    }
}

/// Product of linear factors `z - rho e^{i theta}` and whether some `rho` is 1.
pub fn random_factored_poly(rng: &mut ChaCha8Rng) -> (CirclePolynomial, bool) {
    let degree = rng.gen_range(1..=8);
    let mut on_circle = false;
    let roots: Vec<Complex64> = (0..degree)
        .map(|_| {
            let rho = if rng.gen_bool(0.2) {
                on_circle = true;
                1.0
            } else {
                off_circle_radius(rng)
            };
            Complex64::from_polar(rho, rng.gen_range(0.0..TAU))
        })
        .collect();
    let lead = unit(rng) * rng.gen_range(0.5..2.0);
    (CirclePolynomial::from_roots(lead, &roots), on_circle)
}

/// Polynomial with at least one root on the circle.
pub fn random_circle_vanishing_poly(rng: &mut ChaCha8Rng) -> CirclePolynomial {
    let mut roots = vec![unit(rng)];
    for _ in 0..rng.gen_range(0..4) {
        roots.push(Complex64::from_polar(off_circle_radius(rng), rng.gen_range(0.0..TAU)));
    }
    CirclePolynomial::from_roots(unit(rng), &roots)
}

pub fn random_nonzero_poly(rng: &mut ChaCha8Rng) -> CirclePolynomial {
    let d = rng.gen_range(0..=4);
    let mut coeffs: Vec<Complex64> = (0..=d).map(|_| random_complex(rng, 1.0)).collect();
    coeffs[d] += unit(rng);
    CirclePolynomial::new(coeffs).unwrap()
}

/// Value that is exactly zero with probability `p_zero`.
fn sample_value(rng: &mut ChaCha8Rng, p_zero: f64) -> Complex64 {
    if rng.gen_bool(p_zero) {
        c(0.0, 0.0)
    } else {
        let v = random_complex(rng, 3.0);
        if v.norm() < 0.05 {
            c(1.0, 0.0)
        } else {
            v
        }
    }
}

fn values(rng: &mut ChaCha8Rng, len: usize, p_zero: f64) -> Vec<Complex64> {
    (0..len).map(|_| sample_value(rng, p_zero)).collect()
}

/// Any representable element that is not identically zero.
pub fn random_linf(rng: &mut ChaCha8Rng) -> MeasurableFn {
    loop {
        let f = match rng.gen_range(0..3) {
            0 => {
                let m = rng.gen_range(1..=6);
                let weights = (0..m).map(|_| rng.gen_range(0.1..3.0)).collect();
                MeasurableFn::finite_atoms(weights, values(rng, m, 0.2)).unwrap()
            }
            1 => {
                let n = rng.gen_range(0..=5);
                let p = rng.gen_range(1..=4);
                MeasurableFn::periodic(values(rng, n, 0.15), values(rng, p, 0.15)).unwrap()
            }
            _ => {
                let n = rng.gen_range(0..=5);
                let mut cst = random_complex(rng, 4.0);
                if cst.norm() < 0.1 {
                    cst = c(1.0, 0.0);
                }
                MeasurableFn::decaying(values(rng, n, 0.15), cst).unwrap()
            }
        };
        if !f.is_identically_zero(0.0) {
            return f;
        }
    }
}

/// An element whose modulus is not bounded below.
pub fn random_tdz_linf(rng: &mut ChaCha8Rng) -> MeasurableFn {
    loop {
        let f = random_linf(rng);
        let tdz = matches!(f.values(), FnValues::DecayingTail { .. })
            || f.represented_values().iter().any(|v| v.norm() == 0.0);
        if tdz {
            return f;
        }
    }
}

/// A multiplier whose product with `f` is representable.
pub fn random_multiplier(rng: &mut ChaCha8Rng, f: &MeasurableFn) -> MeasurableFn {
    match f.values() {
        FnValues::FiniteVector(v) => {
            let tdz_core::linf::AtomicSpace::FiniteAtoms { weights } = f.space() else {
                unreachable!()
            };
            MeasurableFn::finite_atoms(weights.clone(), values(rng, v.len(), 0.2)).unwrap()
        }
        FnValues::EventuallyPeriodic { .. } => {
            let n = rng.gen_range(0..=4);
            let p = rng.gen_range(1..=3);
            MeasurableFn::periodic(values(rng, n, 0.2), values(rng, p, 0.2)).unwrap()
        }
        FnValues::DecayingTail { .. } => {
            let n = rng.gen_range(0..=4);
            MeasurableFn::periodic(values(rng, n, 0.2), values(rng, 1, 0.2)).unwrap()
        }
    }
}

/// Small prefix-plus-tail map; every preimage of values up to `max_val + 1`
/// lies below 16 for the tails used here.
pub fn random_map(rng: &mut ChaCha8Rng, max_len: usize, max_val: u64) -> SelfMapN {
    let len = rng.gen_range(0..=max_len);
    let prefix: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=max_val)).collect();
    let tail = match rng.gen_range(0..3) {
        0 => Tail::Shift(rng.gen_range(-(len as i64)..=3)),
        1 => Tail::Shift(0),
        _ => Tail::Divide(rng.gen_range(1..=2)),
    };
    SelfMapN::new(prefix, tail).unwrap()
}

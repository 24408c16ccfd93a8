//! Boundary sampling, sup/min modulus on the unit circle and polynomial roots.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::CirclePolynomial;
use crate::cert::Tolerances;
use crate::error::{Error, Result};

const MIN_SAMPLES: usize = 64;
const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Grid size for boundary sampling.
///
/// `q(theta) = |p(e^{i theta})|^2` is a trigonometric polynomial of degree `d`, so by
/// Bernstein `|q''| <= d^2 max q`. At the maximizer `q' = 0`, hence the nearest of `M`
/// equispaced samples loses at most a relative `d^2 pi^2 / (2 M^2)`, which is below
/// `eps_norm` once `M >= pi d / sqrt(2 eps_norm)`.
pub(crate) fn grid_size(degree: usize, eps_norm: f64) -> usize {
    let m = (PI * degree as f64 / (2.0 * eps_norm).sqrt()).ceil() as usize;
    m.max(MIN_SAMPLES)
}

fn sample_moduli(p: &CirclePolynomial, m: usize) -> Vec<f64> {
    let step = TAU / m as f64;
    (0..m).map(|k| p.modulus_at_angle(k as f64 * step)).collect()
}

/// Golden-section search for an extremum of `f` on `[lo, hi]`.
fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, maximize: bool) -> (f64, f64) {
    let better = |a: f64, b: f64| if maximize { a > b } else { a < b };
    let mut x1 = hi - GOLDEN * (hi - lo);
    let mut x2 = lo + GOLDEN * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if (hi - lo).abs() <= 1e-15 * (1.0 + lo.abs()) {
            break;
        }
        if better(f1, f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN * (hi - lo);
            f2 = f(x2);
        }
    }
    if better(f1, f2) {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `max |p(e^{i theta})|` with relative error at most `eps_norm`.
pub fn sup_norm_on_circle(p: &CirclePolynomial, tol: &Tolerances) -> Result<f64> {
    Ok(sup_on_circle_with_angle(p, tol)?.0)
}

/// Sup norm together with an angle attaining it.
pub fn sup_on_circle_with_angle(p: &CirclePolynomial, tol: &Tolerances) -> Result<(f64, f64)> {
    if p.degree() == 0 {
        return Ok((p.coeffs()[0].norm(), 0.0));
    }
    let m = grid_size(p.degree(), tol.eps_norm);
    let samples = sample_moduli(p, m);
    let (k, best) = samples
        .iter()
        .copied()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("grid is nonempty");
    let step = TAU / m as f64;
    let theta = k as f64 * step;
    let (t, v) = golden_section(|t| p.modulus_at_angle(t), theta - step, theta + step, true);
    if !v.is_finite() || !best.is_finite() {
        return Err(Error::numeric("non-finite modulus on the circle"));
    }
    Ok(if v > best { (v, t.rem_euclid(TAU)) } else { (best, theta) })
}

/// Minimum modulus on the circle and an angle attaining it.
///
/// Every discrete local minimum of the sample grid is refined by golden-section search.
pub fn min_on_circle(p: &CirclePolynomial, tol: &Tolerances) -> Result<(f64, f64)> {
    if p.degree() == 0 {
        return Ok((p.coeffs()[0].norm(), 0.0));
    }
    let m = grid_size(p.degree(), tol.eps_norm);
    let s = sample_moduli(p, m);
    let step = TAU / m as f64;
    let mut candidates: Vec<usize> = (0..m)
        .filter(|&k| s[k] <= s[(k + m - 1) % m] && s[k] <= s[(k + 1) % m])
        .collect();
    // a degree-d trigonometric polynomial has at most 2d strict local minima
    candidates.sort_by(|&a, &b| s[a].total_cmp(&s[b]));
    candidates.truncate(4 * p.degree() + 4);
    let mut best = (f64::INFINITY, 0.0);
    for k in candidates {
        let theta = k as f64 * step;
        if s[k] < best.0 {
            best = (s[k], theta);
        }
        let (t, v) = golden_section(|t| p.modulus_at_angle(t), theta - step, theta + step, false);
        if v < best.0 {
            best = (v, t.rem_euclid(TAU));
        }
    }
    if !best.0.is_finite() {
        return Err(Error::numeric("non-finite modulus on the circle"));
    }
    Ok(best)
}

/// All complex roots (with multiplicity) by Aberth-Ehrlich simultaneous iteration,
/// followed by Newton polishing.
pub fn roots(p: &CirclePolynomial) -> Result<Vec<Complex64>> {
    if p.is_zero() {
        return Err(Error::Degenerate("the zero polynomial has no finite root set".into()));
    }
    let zero = Complex64::new(0.0, 0.0);
    let coeffs = p.coeffs();
    let zero_roots = coeffs.iter().take_while(|&&c| c == zero).count();
    let reduced = CirclePolynomial::new(coeffs[zero_roots..].to_vec())?;
    let mut out = vec![zero; zero_roots];
    out.extend(aberth(&reduced)?);
    Ok(out)
}

fn aberth(p: &CirclePolynomial) -> Result<Vec<Complex64>> {
    let d = p.degree();
    if d == 0 {
        return Ok(vec![]);
    }
    let a = p.coeffs();
    let lead = a[d];
    if d == 1 {
        return Ok(vec![-a[0] / lead]);
    }
    let abs: Vec<f64> = a.iter().map(|c| c.norm()).collect();
    // geometric-mean radius of the roots as the starting circle
    let radius = (abs[0] / abs[d]).powf(1.0 / d as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / d as f64 + 0.4))
        .collect();
    let backward_ok = |x: Complex64, v: Complex64| {
        let r = x.norm();
        let scale: f64 = abs.iter().rev().fold(0.0, |acc, &c| acc * r + c);
        v.norm() <= 8.0 * f64::EPSILON * scale * (d as f64)
    };
    let mut done = vec![false; d];
    for _ in 0..2000 {
        let mut all_done = true;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (v, dv) = p.eval_with_derivative(z[i]);
            if backward_ok(z[i], v) {
                done[i] = true;
                continue;
            }
            all_done = false;
            let ratio = v / dv;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !w.re.is_finite() || !w.im.is_finite() {
                // nudge off a critical point
                let bump = Complex64::new(1e-8 * (1.0 + z[i].norm()), 1e-8);
                z[i] += bump;
                continue;
            }
            z[i] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * (1.0 + z[i].norm()) {
                done[i] = true;
            }
        }
        if all_done || done.iter().all(|&x| x) {
            polish(p, &mut z);
            return Ok(z);
        }
    }
    Err(Error::Numeric {
        message: format!("root finder did not converge for degree {d}"),
        last_iterate: None,
    })
}

fn polish(p: &CirclePolynomial, z: &mut [Complex64]) {
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = p.eval_with_derivative(*r);
            if dv.norm() == 0.0 {
                break;
            }
            let next = *r - v / dv;
            if p.eval(next).norm() < v.norm() {
                *r = next;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Plain dense grid, independent of the Bernstein sizing and refinement.
    fn dense_grid_max(p: &CirclePolynomial, m: usize) -> f64 {
        (0..m).map(|k| p.modulus_at_angle(TAU * k as f64 / m as f64)).fold(0.0, f64::max)
    }

    #[test]
    fn sup_norm_examples() {
        let tol = Tolerances::default();
        let z5 = CirclePolynomial::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((sup_norm_on_circle(&z5, &tol).unwrap() - 1.0).abs() < 1e-12);
        let p = CirclePolynomial::from_real(&[1.0, 1.0]).unwrap();
        assert!((sup_norm_on_circle(&p, &tol).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sup_norm_matches_dense_grid_oracle() {
        let tol = Tolerances::default();
        let p = CirclePolynomial::from_roots(c(1.0, 0.0), &[c(1.0, 0.0), c(0.0, 1.0)]);
        let oracle = dense_grid_max(&p, 2_000_000);
        // frozen from the same 2e6-point grid; closed form 4 sin^2(3 pi / 8) = 2 + sqrt(2)
        assert!((oracle - 3.4142135623730954).abs() < 1e-9, "{oracle}");
        assert!((oracle - (2.0 + 2f64.sqrt())).abs() < 1e-9);
        let v = sup_norm_on_circle(&p, &tol).unwrap();
        assert!((v - oracle).abs() <= tol.eps_norm * oracle);
        assert!(v >= oracle - 1e-12);
    }

    #[test]
    fn min_on_circle_examples() {
        let tol = Tolerances::default();
        let p = CirclePolynomial::from_real(&[-2.0, 1.0]).unwrap();
        let (m, t) = min_on_circle(&p, &tol).unwrap();
        assert!((m - 1.0).abs() < 1e-12);
        assert!(t.abs() < 1e-6 || (t - TAU).abs() < 1e-6);
        let q = CirclePolynomial::from_roots(c(1.0, 0.0), &[c(0.0, 1.0), c(3.0, 0.0)]);
        assert!(min_on_circle(&q, &tol).unwrap().0 < 1e-10);
    }

    #[test]
    fn roots_of_factored_polynomials() {
        let truth = [c(1.0, 0.0), c(0.0, 1.0), c(0.5, 0.0), c(-0.3, 1.7), c(0.0, 0.0)];
        let p = CirclePolynomial::from_roots(c(2.0, -1.0), &truth);
        let mut found = roots(&p).unwrap();
        assert_eq!(found.len(), truth.len());
        for t in truth {
            let (k, dist) = found
                .iter()
                .enumerate()
                .map(|(k, r)| (k, (r - t).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            assert!(dist < 1e-10, "root {t} off by {dist}");
            found.remove(k);
        }
    }

    #[test]
    fn double_root_is_located() {
        let p = CirclePolynomial::from_roots(c(1.0, 0.0), &[c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0)]);
        let r = roots(&p).unwrap();
        assert_eq!(r.iter().filter(|z| (*z - c(1.0, 0.0)).norm() < 1e-6).count(), 2);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let z = CirclePolynomial::from_real(&[0.0]).unwrap();
        assert!(matches!(roots(&z), Err(Error::Degenerate(_))));
    }
}

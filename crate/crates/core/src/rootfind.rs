//! Simultaneous root finding (Aberth-Ehrlich iteration) and separability
//! certification.
//!
//! The solver works on the monic coefficient form in binary64. Multiple
//! roots cannot be resolved below the evaluation noise floor, so instead of
//! pretending otherwise the solver stops each root either when its update is
//! below `convergence_tol` or when |p(z)| has reached the noise floor of
//! Horner evaluation, and reports per-root residual bounds. Certification
//! then refuses to call a cluster "distinct roots" when the pair distance is
//! not clearly above those bounds.

use num_complex::Complex64;

use crate::dd;
use crate::error::{Error, Result};
use crate::poly::{horner, Polynomial, RootSet};

/// Tuning knobs for [`find_roots`].
#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Maximum number of full Aberth sweeps before giving up.
    pub max_iterations: usize,
    /// Relative update size below which a root counts as converged.
    pub convergence_tol: f64,
    /// Guarded Newton polish steps applied after the sweeps converge.
    pub polish_steps: usize,
    /// Working precision in significant decimal digits. Values above 16
    /// switch polish and residual evaluation to a compensated
    /// (double-double) path; root storage stays binary64.
    pub precision_digits: u32,
}

impl Default for SolverConfig {
    fn default() -> SolverConfig {
        SolverConfig {
            max_iterations: 200,
            convergence_tol: 1e-13,
            polish_steps: 3,
            precision_digits: 16,
        }
    }
}

/// Result of [`certify_separable`].
#[derive(Clone, Copy, Debug)]
pub struct Separability {
    /// True iff every root pair is reliably distinct.
    pub separable: bool,
    /// Raw minimum pairwise distance (infinity for fewer than two roots).
    pub min_pairwise_distance: f64,
}

/// Upper bound on |p(z)| evaluation noise at radius r: 4 eps times the
/// magnitude-sum Horner bound sum_k |c_k| r^k.
fn noise_floor(coeffs: &[Complex64], r: f64) -> f64 {
    4.0 * f64::EPSILON * magnitude_sum(coeffs, r)
}

/// sum_k |c_k| r^k, evaluated by Horner in magnitudes.
fn magnitude_sum(coeffs: &[Complex64], r: f64) -> f64 {
    let mut acc = 0.0f64;
    for c in coeffs.iter().rev() {
        acc = acc * r + c.norm();
    }
    acc
}

/// Principal argument mapped to [0, 2pi).
fn arg_two_pi(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

/// Finds all `degree` roots of the polynomial (with multiplicity, to the
/// extent binary64 can represent them) and returns them in canonical order
/// with per-root residual bounds.
///
/// The residual bound for a simple well-conditioned root is close to
/// |p(z)| / |p'(z)|, a first-order distance-to-root estimate; near multiple
/// roots it grows to the cluster scale, signalling that the individual
/// values are not trustworthy beyond that radius.
pub fn find_roots(p: &Polynomial, cfg: &SolverConfig) -> Result<RootSet> {
    let coeffs = p.coefficients();
    let n = p.degree();
    let deriv = p.derivative();
    let dcoeffs = deriv.coefficients();

    // Starting circle: radius 1 + height encloses all roots of a monic
    // polynomial (Cauchy bound); the fixed offset breaks the symmetry that
    // would otherwise trap even/odd polynomials on their own root axes.
    let rho = 1.0 + p.height();
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(rho, theta)
        })
        .collect();

    let mut converged = false;
    let mut iterations = 0usize;
    while iterations < cfg.max_iterations {
        iterations += 1;
        let mut all_settled = true;
        for i in 0..n {
            let zi = z[i];
            let pv = horner(coeffs, zi);
            if pv.norm() <= noise_floor(coeffs, zi.norm()) {
                // At the evaluation noise floor; further updates would just
                // follow rounding noise.
                continue;
            }
            let dv = horner(dcoeffs, zi);
            let w = if dv.norm() > 0.0 {
                pv / dv
            } else {
                // Stationary point of p; nudge off it deterministically.
                all_settled = false;
                z[i] = zi + Complex64::new(1e-6 * zi.norm().max(1.0), 1e-6);
                continue;
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j == i {
                    continue;
                }
                let d = zi - zj;
                if d.norm() > 0.0 {
                    repulsion += d.inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * repulsion;
            let corr = if denom.norm() > f64::MIN_POSITIVE {
                w / denom
            } else {
                w
            };
            let updated = zi - corr;
            if updated.re.is_finite() && updated.im.is_finite() {
                z[i] = updated;
            } else {
                // Blow-up from a near-coincident pair; fall back to the
                // plain Newton step for this sweep.
                z[i] = zi - w;
                all_settled = false;
                continue;
            }
            if corr.norm() > cfg.convergence_tol * zi.norm().max(1.0) {
                all_settled = false;
            }
        }
        if all_settled {
            converged = true;
            break;
        }
    }

    let use_dd = cfg.precision_digits > 16;
    let eval = |c: &[Complex64], at: Complex64| -> Complex64 {
        if use_dd {
            dd::horner_dd(c, at)
        } else {
            horner(c, at)
        }
    };

    if !converged {
        let residuals = residual_bounds(coeffs, dcoeffs, &z, &eval);
        let worst = residuals.iter().cloned().fold(0.0, f64::max);
        return Err(Error::NonConvergence {
            iterations,
            best: z,
            residuals,
            worst_residual: worst,
        });
    }

    // Guarded Newton polish: accept a step only if it decreases |p(z)|, so
    // noise near multiple roots cannot push an iterate away.
    for zi in z.iter_mut() {
        for _ in 0..cfg.polish_steps {
            let pv = eval(coeffs, *zi);
            if pv.norm() == 0.0 {
                break;
            }
            let dv = eval(dcoeffs, *zi);
            if dv.norm() == 0.0 {
                break;
            }
            let cand = *zi - pv / dv;
            if !cand.re.is_finite() || !cand.im.is_finite() {
                break;
            }
            if eval(coeffs, cand).norm() < pv.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }

    let residuals = residual_bounds(coeffs, dcoeffs, &z, &eval);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        (z[a].norm(), arg_two_pi(z[a]))
            .partial_cmp(&(z[b].norm(), arg_two_pi(z[b])))
            .expect("finite roots sort totally")
    });
    let roots: Vec<Complex64> = order.iter().map(|&i| z[i]).collect();
    let res: Vec<f64> = order.iter().map(|&i| residuals[i]).collect();
    Ok(RootSet::computed(roots, res))
}

fn residual_bounds(
    coeffs: &[Complex64],
    dcoeffs: &[Complex64],
    z: &[Complex64],
    eval: &dyn Fn(&[Complex64], Complex64) -> Complex64,
) -> Vec<f64> {
    let mut out = Vec::with_capacity(z.len());
    for (i, &zi) in z.iter().enumerate() {
        let r = zi.norm();
        let num = eval(coeffs, zi).norm().max(noise_floor(coeffs, r));
        let dv = eval(dcoeffs, zi).norm();
        let dscale = magnitude_sum(dcoeffs, r).max(f64::MIN_POSITIVE);
        if dv > 1e-12 * dscale {
            out.push(num / dv);
        } else {
            // Derivative numerically zero: a multiple-root cluster. The
            // individual positions are only meaningful to the cluster
            // diameter, so report that as the bound.
            let near = 1e-5 * r.max(1.0);
            let diameter = z
                .iter()
                .enumerate()
                .filter(|&(j, &zj)| j != i && (zj - zi).norm() <= near)
                .map(|(_, &zj)| (zj - zi).norm())
                .fold(0.0, f64::max);
            if diameter > 0.0 {
                out.push(diameter);
            } else {
                out.push(num / (1e-12 * dscale));
            }
        }
    }
    out
}

/// Certifies whether the root set consists of pairwise reliably distinct
/// roots (per [`RootSet::reliably_distinct`]): distances must clear the
/// absolute threshold 1e-8 * max(1, max |root|) and, for computed sets,
/// eight times the summed residual bounds of each pair. Fewer than two
/// roots are vacuously separable with infinite minimum distance.
pub fn certify_separable(rs: &RootSet) -> Separability {
    let n = rs.len();
    if n < 2 {
        return Separability {
            separable: true,
            min_pairwise_distance: f64::INFINITY,
        };
    }
    let roots = rs.roots();
    let mut min_d = f64::INFINITY;
    let mut separable = true;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (roots[i] - roots[j]).norm();
            min_d = min_d.min(d);
            if !rs.reliably_distinct(i, j) {
                separable = false;
            }
        }
    }
    Separability {
        separable,
        min_pairwise_distance: min_d,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn solve(coeffs: &[f64]) -> RootSet {
        let p = Polynomial::from_coefficients(coeffs).unwrap();
        find_roots(&p, &SolverConfig::default()).unwrap()
    }

    #[test]
    fn linear_root() {
        let rs = solve(&[-3.0, 1.0]);
        assert_eq!(rs.len(), 1);
        assert!((rs.roots()[0] - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn quadratic_sqrt_two() {
        let rs = solve(&[-2.0, 0.0, 1.0]);
        let r = std::f64::consts::SQRT_2;
        assert!((rs.roots()[0] - c(-r, 0.0)).norm() < 1e-14);
        assert!((rs.roots()[1] - c(r, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn cubic_roots_of_unity_canonical_order() {
        // Roots of x^3 - 1 sorted by (modulus, argument in [0, 2pi)):
        // 1, then e^{2pi i/3}, then e^{4pi i/3}.
        let rs = solve(&[-1.0, 0.0, 0.0, 1.0]);
        let h = 3f64.sqrt() / 2.0;
        let expected = [c(1.0, 0.0), c(-0.5, h), c(-0.5, -h)];
        for (got, want) in rs.roots().iter().zip(expected.iter()) {
            assert!((got - want).norm() < 1e-12, "got {got}, want {want}");
        }
        let cert = certify_separable(&rs);
        assert!(cert.separable);
        assert!((cert.min_pairwise_distance - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn double_root_is_not_certified_separable() {
        // (x + 1)^2: the solver converges to a cluster at -1 whose two
        // members cannot be told apart in binary64.
        let rs = solve(&[1.0, 2.0, 1.0]);
        assert_eq!(rs.len(), 2);
        for r in rs.roots() {
            assert!((r - c(-1.0, 0.0)).norm() < 1e-6);
        }
        let cert = certify_separable(&rs);
        assert!(!cert.separable);
        assert!(cert.min_pairwise_distance < 1e-6);
        // The residual bounds must flag the unresolved cluster.
        assert!(rs.residual_bounds().iter().all(|&r| r > 0.0));
        assert!(!rs.reliably_distinct(0, 1));
    }

    #[test]
    fn quartic_with_complex_roots() {
        // x^4 + 4 has roots 1+i, 1-i, -1+i, -1-i.
        let rs = solve(&[4.0, 0.0, 0.0, 0.0, 1.0]);
        let expected = [c(1.0, 1.0), c(-1.0, 1.0), c(-1.0, -1.0), c(1.0, -1.0)];
        for want in expected {
            assert!(
                rs.roots().iter().any(|got| (got - want).norm() < 1e-12),
                "missing root {want}"
            );
        }
    }

    #[test]
    fn largest_root_of_lehmer_polynomial() {
        // x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1. Its largest
        // root is the smallest known Salem number, 1.176280818259917...
        let rs = solve(&[
            1.0, 1.0, 0.0, -1.0, -1.0, -1.0, -1.0, -1.0, 0.0, 1.0, 1.0,
        ]);
        let max_mod = rs.max_modulus();
        assert!((max_mod - 1.1762808182599175).abs() < 1e-9);
        assert!(certify_separable(&rs).separable);
    }

    #[test]
    fn residuals_bound_forward_error_on_simple_roots() {
        // Roots 1..=10: ill-conditioned but still resolvable; every computed
        // root must land within 1e-9 of the true integer.
        let roots: Vec<Complex64> = (1..=10).map(|k| c(k as f64, 0.0)).collect();
        let p = Polynomial::from_roots(&roots).unwrap();
        let rs = find_roots(&p, &SolverConfig::default()).unwrap();
        for (got, want) in rs.roots().iter().zip(roots.iter()) {
            assert!(
                (got - want).norm() <= 1e-9 * want.norm(),
                "root {want}: got {got}"
            );
        }
        // Residual invariant: |p(root)| <= 1e-9 * (1 + height)^degree.
        let allowance = 1e-9 * (1.0 + p.height()).powi(p.degree() as i32);
        for r in rs.roots() {
            assert!(p.evaluate(*r).norm() <= allowance);
        }
    }

    #[test]
    fn extended_precision_path_matches_plain() {
        let p = Polynomial::from_coefficients(&[-2.0, 0.0, 1.0]).unwrap();
        let cfg = SolverConfig {
            precision_digits: 32,
            ..SolverConfig::default()
        };
        let rs = find_roots(&p, &cfg).unwrap();
        // Equal moduli, so argument orders +sqrt 2 (arg 0) first.
        let r = std::f64::consts::SQRT_2;
        assert!((rs.roots()[0] - c(r, 0.0)).norm() < 1e-15);
        assert!((rs.roots()[1] - c(-r, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn certify_exact_sets() {
        let far = RootSet::exact(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(certify_separable(&far).separable);

        let near = RootSet::exact(vec![c(0.0, 0.0), c(5e-9, 0.0)]);
        let cert = certify_separable(&near);
        assert!(!cert.separable);
        assert!((cert.min_pairwise_distance - 5e-9).abs() < 1e-24);

        let single = RootSet::exact(vec![c(2.0, 3.0)]);
        let cert1 = certify_separable(&single);
        assert!(cert1.separable);
        assert!(cert1.min_pairwise_distance.is_infinite());
    }

    #[test]
    fn scaled_coefficients_solve_identically() {
        // 2x^2 - 4 normalizes to x^2 - 2; same roots.
        let rs = solve(&[-4.0, 0.0, 2.0]);
        let r = std::f64::consts::SQRT_2;
        assert!((rs.roots()[0] - c(-r, 0.0)).norm() < 1e-14);
        assert!((rs.roots()[1] - c(r, 0.0)).norm() < 1e-14);
    }
}

//! Root-geometry measures: separation, absolute separation, Mahler measure
//! (with an independent quadrature cross-check), and discriminants both from
//! roots and exactly over the integers.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{conjugate_pairing, horner, Polynomial, RootSet};

/// Degree above which products over roots are accumulated in log space
/// instead of directly in f64.
const LOG_SPACE_DEGREE: usize = 50;

/// Relative tolerance for treating two root moduli as equal.
const MODULUS_TOL: f64 = 1e-9;

/// Real signature of a conjugation-closed root multiset: t real roots and
/// s conjugate pairs, t + 2s = n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub t: usize,
    pub s: usize,
}

/// Classifies the root multiset into real roots and conjugate pairs.
/// Fails when the multiset is not closed under conjugation (within the
/// pairing tolerance of the poly module).
pub fn signature_of(rs: &RootSet) -> Result<Signature> {
    match conjugate_pairing(rs.roots()) {
        Some((t, s)) => Ok(Signature { t, s }),
        None => Err(Error::ConjugationPairingFailed),
    }
}

/// Minimum distance between reliably distinct roots. `None` when no pair of
/// roots is reliably distinct (all roots coincide, or fewer than two roots).
pub fn separation(rs: &RootSet) -> Option<f64> {
    let roots = rs.roots();
    let mut best: Option<f64> = None;
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            if !rs.reliably_distinct(i, j) {
                continue;
            }
            let d = (roots[i] - roots[j]).norm();
            best = Some(best.map_or(d, |b: f64| b.min(d)));
        }
    }
    best
}

/// Minimum gap between distinct root moduli. Moduli count as distinct when
/// they differ by more than 1e-9 times max(1, larger modulus). `None` when
/// all moduli coincide.
pub fn abs_separation(rs: &RootSet) -> Option<f64> {
    let moduli: Vec<f64> = rs.roots().iter().map(|r| r.norm()).collect();
    let mut best: Option<f64> = None;
    for i in 0..moduli.len() {
        for j in (i + 1)..moduli.len() {
            let gap = (moduli[i] - moduli[j]).abs();
            let tol = MODULUS_TOL * moduli[i].max(moduli[j]).max(1.0);
            if gap <= tol {
                continue;
            }
            best = Some(best.map_or(gap, |b: f64| b.min(gap)));
        }
    }
    best
}

/// log of the Mahler measure: sum of log|root| over roots outside the unit
/// circle. Always finite for finite roots; 0 when all roots lie in the
/// closed unit disk.
pub fn log_mahler_measure(rs: &RootSet) -> f64 {
    rs.roots()
        .iter()
        .map(|r| {
            let m = r.norm();
            if m > 1.0 {
                m.ln()
            } else {
                0.0
            }
        })
        .sum()
}

/// Mahler measure of the monic polynomial with these roots: product of
/// max(1, |root|). Computed directly up to degree 50, in log space above
/// (and thus may round to infinity only when the true value exceeds f64
/// range).
pub fn mahler_measure(rs: &RootSet) -> f64 {
    if rs.len() <= LOG_SPACE_DEGREE {
        rs.roots()
            .iter()
            .map(|r| r.norm().max(1.0))
            .product()
    } else {
        log_mahler_measure(rs).exp()
    }
}

/// Independent Mahler measure estimate by numerical integration of
/// log|p(e^{i theta})| over the unit circle (composite trapezoid rule on
/// 4096 nodes including both endpoints).
///
/// Nodes that land within evaluation noise of a unit-circle root are shifted
/// by half a step before the logarithm is taken, and the evaluated magnitude
/// is floored at 1e-12 times the derivative scale so an unlucky shift cannot
/// inject a huge negative logarithm. Relative accuracy is ~1e-3 for degree
/// up to ~20 with well-scaled coefficients; this is a cross-check, not a
/// replacement for [`mahler_measure`].
pub fn mahler_cross_check(p: &Polynomial) -> f64 {
    const NODES: usize = 4096;
    let coeffs = p.coefficients();
    let panels = (NODES - 1) as f64;
    let h = 2.0 * std::f64::consts::PI / panels;

    // Scale of |d/dtheta p(e^{i theta})| <= sum_j j |c_j|; used to convert
    // "magnitude this small" into "argument this close to a root".
    let deriv_scale = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| j as f64 * c.norm())
        .sum::<f64>()
        .max(1.0);
    let trigger = 1e-6 * deriv_scale;
    let floor = 1e-12 * deriv_scale;

    let mut acc = 0.0f64;
    for k in 0..NODES {
        let theta = h * k as f64;
        let mut v = horner(coeffs, Complex64::from_polar(1.0, theta)).norm();
        if v <= trigger {
            v = horner(coeffs, Complex64::from_polar(1.0, theta + 0.5 * h)).norm();
        }
        let v = v.max(floor);
        let weight = if k == 0 || k == NODES - 1 { 0.5 } else { 1.0 };
        acc += weight * v.ln();
    }
    (acc / panels).exp()
}

/// Discriminant of the monic polynomial with these roots: product over
/// i < j of (root_i - root_j)^2. Computed directly up to degree 50; above
/// that the magnitude is accumulated in log space and the argument summed,
/// so the returned complex value may overflow/underflow in magnitude while
/// [`log_abs_discriminant`] stays exact.
pub fn discriminant_from_roots(rs: &RootSet) -> Complex64 {
    let roots = rs.roots();
    let n = roots.len();
    if n < 2 {
        return Complex64::new(1.0, 0.0);
    }
    if n <= LOG_SPACE_DEGREE {
        let mut prod = Complex64::new(1.0, 0.0);
        for i in 0..n {
            for j in (i + 1)..n {
                let d = roots[i] - roots[j];
                prod *= d * d;
            }
        }
        prod
    } else {
        let mut log_mag = 0.0f64;
        let mut angle = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                let d = roots[i] - roots[j];
                log_mag += 2.0 * d.norm().ln();
                angle += 2.0 * d.arg();
            }
        }
        Complex64::from_polar(log_mag.exp(), angle.rem_euclid(2.0 * std::f64::consts::PI))
    }
}

/// log |discriminant| from the roots; -infinity when a root repeats.
pub fn log_abs_discriminant(rs: &RootSet) -> f64 {
    let roots = rs.roots();
    let mut acc = 0.0f64;
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            acc += 2.0 * (roots[i] - roots[j]).norm().ln();
        }
    }
    acc
}

/// Exact integer discriminant via a subresultant pseudo-remainder sequence:
/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') for monic f. Requires exact integer
/// backing. No intermediate rationals; all divisions are exact.
pub fn discriminant_exact(p: &Polynomial) -> Result<BigInt> {
    let coeffs = p.exact_coefficients().ok_or(Error::ExactBackingRequired)?;
    let n = p.degree();
    let deriv: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();
    let res = resultant_int(coeffs, &deriv);
    if (n * (n - 1) / 2) % 2 == 0 {
        Ok(res)
    } else {
        Ok(-res)
    }
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    debug_assert!(!den.is_zero());
    debug_assert!((&num % den).is_zero(), "inexact division in resultant");
    num / den
}

/// Pseudo-remainder prem(a, b) = (lc(b)^{deg a - deg b + 1} * a) mod b,
/// computed without fractions. Requires deg a >= deg b >= 0, b nonzero.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    let mut budget = (a.len() - b.len() + 1) as u32;
    loop {
        r = trim(r);
        if r.len() <= db || r.is_empty() {
            break;
        }
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        for coeff in r.iter_mut() {
            *coeff *= lb;
        }
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &lr * bc;
        }
        budget -= 1;
    }
    if budget > 0 {
        let scale = lb.pow(budget);
        for coeff in r.iter_mut() {
            *coeff *= &scale;
        }
    }
    r
}

/// Resultant of two integer polynomials (ascending coefficients) by the
/// subresultant PRS, with the classical sign and content bookkeeping.
fn resultant_int(fa: &[BigInt], fb: &[BigInt]) -> BigInt {
    let mut a = trim(fa.to_vec());
    let mut b = trim(fb.to_vec());
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut sign = BigInt::one();
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.len() == 1 {
        return sign * b[0].pow((a.len() - 1) as u32);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        let divisor = &g * h.pow(delta as u32);
        b = r.into_iter().map(|c| exact_div(c, &divisor)).collect();
        b = trim(b);
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            exact_div(g.pow(delta as u32), &h.pow((delta - 1) as u32))
        };
        if b.is_empty() {
            return BigInt::zero();
        }
        if b.len() == 1 {
            let da2 = a.len() - 1;
            let num = b[0].pow(da2 as u32);
            let den = h.pow((da2 - 1) as u32);
            return sign * exact_div(num, &den);
        }
    }
}

/// Bundle of all root-geometry measures for one root set.
#[derive(Clone, Debug)]
pub struct MeasureReport {
    pub n: usize,
    /// Minimum distance between reliably distinct roots; `None` when no
    /// reliably distinct pair exists.
    pub sep: Option<f64>,
    /// Minimum gap between distinct root moduli; `None` when all coincide.
    pub abs_sep: Option<f64>,
    pub mahler: f64,
    pub log_mahler: f64,
    pub disc: Complex64,
    /// log |disc|, exact in log space even when `disc` over/underflows.
    pub log_abs_disc: f64,
    /// Largest monic coefficient magnitude; `None` when only roots are known
    /// and the degree is too large to expand the coefficients in f64.
    pub height: Option<f64>,
    /// Real signature, when the root multiset is conjugation-closed.
    pub signature: Option<Signature>,
}

/// Computes every measure for the root set. Pass the polynomial when it is
/// available so the height comes from the actual coefficients; otherwise the
/// height is recovered by expanding the roots (up to degree 50).
pub fn measure_report(rs: &RootSet, p: Option<&Polynomial>) -> MeasureReport {
    let height = match p {
        Some(poly) => Some(poly.height()),
        None if rs.len() <= LOG_SPACE_DEGREE && !rs.is_empty() => {
            Polynomial::from_roots(rs.roots()).ok().map(|q| q.height())
        }
        None => None,
    };
    // No ordering between sep and abs_sep is asserted here: when the two
    // nearest roots share a modulus (conjugate pairs do), that pair is
    // excluded from abs_sep's minimum, which can then exceed sep. Roots
    // {1, -1, 5} give sep = 2 but abs_sep = 4.
    let sep = separation(rs);
    let abs_sep = abs_separation(rs);
    MeasureReport {
        n: rs.len(),
        sep,
        abs_sep,
        mahler: mahler_measure(rs),
        log_mahler: log_mahler_measure(rs),
        disc: discriminant_from_roots(rs),
        log_abs_disc: log_abs_discriminant(rs),
        height,
        signature: signature_of(rs).ok(),
    }
}

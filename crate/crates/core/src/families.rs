//! Extremal root configurations built in closed form: Gaussian-integer
//! selections, their conjugation-closed variant, arithmetic progressions,
//! and the two small equality cases (the quartic t(+-1+-i) family and
//! x^3 - 1). Each family carries the ratio that measures how close it sits
//! to the corresponding separation bound.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measures::{log_mahler_measure, separation};
use crate::poly::{Polynomial, RootSet};

/// The available families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Gaussian,
    ConjugateClosed,
    ArithmeticProgression,
    Quartic,
    CubicExtremal,
}

impl FamilyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyKind::Gaussian => "gaussian",
            FamilyKind::ConjugateClosed => "conjugate_closed",
            FamilyKind::ArithmeticProgression => "arithmetic_progression",
            FamilyKind::Quartic => "quartic",
            FamilyKind::CubicExtremal => "cubic_extremal",
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<FamilyKind> {
        match s {
            "gaussian" => Ok(FamilyKind::Gaussian),
            "conjugate_closed" => Ok(FamilyKind::ConjugateClosed),
            "arithmetic_progression" => Ok(FamilyKind::ArithmeticProgression),
            "quartic" => Ok(FamilyKind::Quartic),
            "cubic_extremal" => Ok(FamilyKind::CubicExtremal),
            other => Err(Error::Parse(format!("unknown family kind {other:?}"))),
        }
    }
}

/// Parameters describing one family instance. `t_or_r` is the scale factor:
/// the root scaling t for the lattice and quartic families, the progression
/// step r for arithmetic progressions, ignored (fixed 1) for the cubic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub t_or_r: f64,
}

impl FamilySpec {
    /// Validates the (kind, n, scale) combination.
    pub fn new(kind: FamilyKind, n: usize, t_or_r: f64) -> Result<FamilySpec> {
        if !t_or_r.is_finite() {
            return Err(Error::ParameterOutOfRange("scale must be finite".into()));
        }
        match kind {
            FamilyKind::Gaussian | FamilyKind::ConjugateClosed => {
                if n < 2 {
                    return Err(Error::DegreeTooSmall { got: n, min: 2 });
                }
                if t_or_r < 1.0 {
                    return Err(Error::ParameterOutOfRange(format!(
                        "lattice families need t >= 1, got {t_or_r}"
                    )));
                }
            }
            FamilyKind::ArithmeticProgression => {
                if n < 4 {
                    return Err(Error::DegreeTooSmall { got: n, min: 4 });
                }
                if t_or_r < 1.0 {
                    return Err(Error::ParameterOutOfRange(format!(
                        "progression step must satisfy r >= 1, got {t_or_r}"
                    )));
                }
            }
            FamilyKind::Quartic => {
                if n != 4 {
                    return Err(Error::ParameterOutOfRange(format!(
                        "quartic family has n = 4, got {n}"
                    )));
                }
                if t_or_r < std::f64::consts::FRAC_1_SQRT_2 {
                    return Err(Error::ParameterOutOfRange(format!(
                        "quartic family needs t >= 1/sqrt(2), got {t_or_r}"
                    )));
                }
            }
            FamilyKind::CubicExtremal => {
                if n != 3 {
                    return Err(Error::ParameterOutOfRange(format!(
                        "cubic family has n = 3, got {n}"
                    )));
                }
            }
        }
        Ok(FamilySpec { kind, n, t_or_r })
    }
}

/// A constructed family: the exact root list plus its spec. The coefficient
/// form is derived on demand so that large instances (whose coefficients
/// overflow binary64) can still be measured through their roots.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    spec: FamilySpec,
    roots: RootSet,
}

impl FamilyInstance {
    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn root_set(&self) -> &RootSet {
        &self.roots
    }

    /// Expands the coefficient form. The cubic is returned with its known
    /// exact integer coefficients; other families expand from the roots.
    /// Errors when the expansion overflows binary64.
    pub fn polynomial(&self) -> Result<Polynomial> {
        if self.spec.kind == FamilyKind::CubicExtremal {
            let ints = [(-1i64).into(), 0.into(), 0.into(), 1.into()];
            return Polynomial::from_integer_coefficients(&ints);
        }
        let p = Polynomial::from_roots(self.roots.roots())?;
        if p.coefficients()
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::ParameterOutOfRange(
                "coefficient expansion overflows binary64 at this family size".into(),
            ));
        }
        Ok(p)
    }
}

/// Sharpness measurement of one family instance. The ratio compares sep to
/// the family's bound; see [`sharpness_ratio`] for the per-family formula.
#[derive(Clone, Debug)]
pub struct SharpnessRecord {
    pub family: FamilySpec,
    pub n: usize,
    pub sep: f64,
    /// May round to infinity for large instances; `log_mahler` never does.
    pub mahler: f64,
    pub log_mahler: f64,
    pub ratio: f64,
}

/// Lattice points (a, b) with a^2 + b^2 <= R^2, compared against R^2 with
/// the exact integer modulus-squared on the left, sorted by (modulus,
/// argument in [0, 2pi)).
fn lattice_points(radius: f64) -> Vec<(i64, i64)> {
    if radius < 0.0 || !radius.is_finite() {
        return Vec::new();
    }
    let r2 = radius * radius;
    let lim = radius.floor() as i64;
    let mut pts: Vec<(i64, f64, i64, i64)> = Vec::new();
    for a in -lim..=lim {
        for b in -lim..=lim {
            let m = a * a + b * b;
            if (m as f64) <= r2 {
                let arg = (b as f64).atan2(a as f64);
                let arg = if arg < 0.0 {
                    arg + 2.0 * std::f64::consts::PI
                } else {
                    arg
                };
                pts.push((m, arg, a, b));
            }
        }
    }
    pts.sort_by(|x, y| {
        (x.0, x.1)
            .partial_cmp(&(y.0, y.1))
            .expect("lattice sort keys are finite")
    });
    pts.into_iter().map(|(_, _, a, b)| (a, b)).collect()
}

/// All Gaussian integers of modulus at most R, in canonical order
/// (modulus, then argument in [0, 2pi); the origin first when present).
pub fn gaussian_points(radius: f64) -> Vec<Complex64> {
    lattice_points(radius)
        .into_iter()
        .map(|(a, b)| Complex64::new(a as f64, b as f64))
        .collect()
}

/// First n Gaussian integers in canonical order within radius
/// R = sqrt(n/pi) + sqrt(2), scaled by t. The origin is always the first
/// root. The lattice-point count theorem guarantees at least n candidates.
pub fn gaussian_family(n: usize, t: f64) -> Result<FamilyInstance> {
    let spec = FamilySpec::new(FamilyKind::Gaussian, n, t)?;
    let radius = (n as f64 / std::f64::consts::PI).sqrt() + std::f64::consts::SQRT_2;
    let pts = lattice_points(radius);
    if pts.len() < n {
        return Err(Error::FamilyConstruction(format!(
            "only {} lattice points within radius {radius} for n = {n}",
            pts.len()
        )));
    }
    let roots: Vec<Complex64> = pts[..n]
        .iter()
        .map(|&(a, b)| Complex64::new(t * a as f64, t * b as f64))
        .collect();
    Ok(FamilyInstance {
        spec,
        roots: RootSet::exact(roots),
    })
}

/// Conjugation-closed selection of n nonzero Gaussian integers within
/// radius R = sqrt((n+1)/pi) + sqrt(2), scaled by t. Seeded with {i, -i}
/// so a minimal-modulus root is always nonreal; the remaining points are
/// taken in canonical order, real points singly and nonreal points jointly
/// with their conjugates; when a single slot remains, nonreal points are
/// skipped until the next real point.
pub fn conjugate_closed_family(n: usize, t: f64) -> Result<FamilyInstance> {
    let spec = FamilySpec::new(FamilyKind::ConjugateClosed, n, t)?;
    let radius = ((n + 1) as f64 / std::f64::consts::PI).sqrt() + std::f64::consts::SQRT_2;
    let pts = lattice_points(radius);
    let mut used = vec![false; pts.len()];
    let mut selected: Vec<(i64, i64)> = Vec::with_capacity(n);

    let take = |coords: (i64, i64), used: &mut Vec<bool>, selected: &mut Vec<(i64, i64)>| {
        let idx = pts
            .iter()
            .position(|&p| p == coords)
            .expect("seed/conjugate point lies within the family radius");
        debug_assert!(!used[idx]);
        used[idx] = true;
        selected.push(coords);
    };

    take((0, 1), &mut used, &mut selected);
    take((0, -1), &mut used, &mut selected);

    for idx in 0..pts.len() {
        if selected.len() == n {
            break;
        }
        if used[idx] {
            continue;
        }
        let (a, b) = pts[idx];
        if (a, b) == (0, 0) {
            continue;
        }
        let capacity = n - selected.len();
        if b == 0 {
            used[idx] = true;
            selected.push((a, b));
        } else if capacity >= 2 {
            used[idx] = true;
            selected.push((a, b));
            take((a, -b), &mut used, &mut selected);
        }
        // Nonreal point with one slot left: skip, keep scanning for a real
        // point further along the canonical order.
    }
    if selected.len() < n {
        return Err(Error::FamilyConstruction(format!(
            "filled only {} of {n} slots within radius {radius}",
            selected.len()
        )));
    }
    let roots: Vec<Complex64> = selected
        .into_iter()
        .map(|(a, b)| Complex64::new(t * a as f64, t * b as f64))
        .collect();
    Ok(FamilyInstance {
        spec,
        roots: RootSet::exact(roots),
    })
}

/// Arithmetic progression {j r} with j = -m..=m for n = 2m+1 and
/// j = -m..=m+1 for n = 2m+2; separation exactly r. Requires n >= 4, r >= 1.
pub fn arithmetic_progression_family(n: usize, r: f64) -> Result<FamilyInstance> {
    let spec = FamilySpec::new(FamilyKind::ArithmeticProgression, n, r)?;
    let roots: Vec<Complex64> = if n % 2 == 1 {
        let m = (n as i64 - 1) / 2;
        (-m..=m).map(|j| Complex64::new(j as f64 * r, 0.0)).collect()
    } else {
        let m = (n as i64 - 2) / 2;
        (-m..=m + 1)
            .map(|j| Complex64::new(j as f64 * r, 0.0))
            .collect()
    };
    debug_assert_eq!(roots.len(), n);
    Ok(FamilyInstance {
        spec,
        roots: RootSet::exact(roots),
    })
}

/// The four roots t(+-1 +- i), t >= 1/sqrt(2): separation 2t and Mahler
/// measure 4t^4, sitting exactly on the (0,2) signature bound.
pub fn quartic_family(t: f64) -> Result<FamilyInstance> {
    let spec = FamilySpec::new(FamilyKind::Quartic, 4, t)?;
    let roots = vec![
        Complex64::new(t, t),
        Complex64::new(t, -t),
        Complex64::new(-t, t),
        Complex64::new(-t, -t),
    ];
    Ok(FamilyInstance {
        spec,
        roots: RootSet::exact(roots),
    })
}

/// x^3 - 1 with exact roots {1, e^{2pi i/3}, e^{-2pi i/3}}: separation
/// sqrt(3) at Mahler measure 1, the (1,1) signature equality case.
pub fn cubic_extremal() -> FamilyInstance {
    let h = 3f64.sqrt() / 2.0;
    let roots = vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(-0.5, h),
        Complex64::new(-0.5, -h),
    ];
    FamilyInstance {
        spec: FamilySpec {
            kind: FamilyKind::CubicExtremal,
            n: 3,
            t_or_r: 1.0,
        },
        roots: RootSet::exact(roots),
    }
}

/// Builds the instance described by the spec.
pub fn construct(spec: &FamilySpec) -> Result<FamilyInstance> {
    match spec.kind {
        FamilyKind::Gaussian => gaussian_family(spec.n, spec.t_or_r),
        FamilyKind::ConjugateClosed => conjugate_closed_family(spec.n, spec.t_or_r),
        FamilyKind::ArithmeticProgression => arithmetic_progression_family(spec.n, spec.t_or_r),
        FamilyKind::Quartic => quartic_family(spec.t_or_r),
        FamilyKind::CubicExtremal => FamilySpec::new(FamilyKind::CubicExtremal, spec.n, 1.0)
            .map(|_| cubic_extremal()),
    }
}

/// Constructs the family and measures how tightly it sits against its
/// bound. Ratio definitions (all evaluated in log space):
/// gaussian: sep * 1.6 sqrt(n) / M^{1/(n-1)}         (theorem: >= 1)
/// conjugate_closed: sep * 1.7 sqrt(n) / M^{1/n}     (theorem: >= 1)
/// arithmetic_progression: n sep / M^{1/(n-1)}       (tends to 2e from below)
/// quartic: sep / (sqrt(2) M^{1/4})                  (identically 1)
/// cubic_extremal: sep / (sqrt(3) M^{1/2})           (identically 1)
pub fn sharpness_ratio(spec: &FamilySpec) -> Result<SharpnessRecord> {
    let inst = construct(spec)?;
    let rs = inst.root_set();
    let n = rs.len();
    let sep = separation(rs).ok_or_else(|| {
        Error::FamilyConstruction("family root set has no distinct pair".into())
    })?;
    let log_m = log_mahler_measure(rs);
    let nf = n as f64;
    let ln_ratio = match spec.kind {
        FamilyKind::Gaussian => (sep * 1.6 * nf.sqrt()).ln() - log_m / (nf - 1.0),
        FamilyKind::ConjugateClosed => (sep * 1.7 * nf.sqrt()).ln() - log_m / nf,
        FamilyKind::ArithmeticProgression => (nf * sep).ln() - log_m / (nf - 1.0),
        FamilyKind::Quartic => sep.ln() - 0.5 * 2f64.ln() - 0.25 * log_m,
        FamilyKind::CubicExtremal => sep.ln() - 0.5 * 3f64.ln() - 0.5 * log_m,
    };
    Ok(SharpnessRecord {
        family: *spec,
        n,
        sep,
        mahler: log_m.exp(),
        log_mahler: log_m,
        ratio: ln_ratio.exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{mahler_measure, signature_of, Signature};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gaussian_points_small_radii() {
        // R = 1: the origin and the four units.
        let p1 = gaussian_points(1.0);
        assert_eq!(
            p1,
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]
        );
        // R = sqrt 2 adds the four diagonal points.
        let p2 = gaussian_points(std::f64::consts::SQRT_2);
        assert_eq!(p2.len(), 9);
    }

    #[test]
    fn gaussian_points_count_sandwich() {
        for radius in [2.0, 5.0, 10.0, 20.0] {
            let count = gaussian_points(radius).len() as f64;
            let lo = std::f64::consts::PI * (radius - std::f64::consts::SQRT_2).powi(2);
            let hi = std::f64::consts::PI * (radius + std::f64::consts::SQRT_2).powi(2);
            assert!(lo <= count && count <= hi, "R = {radius}: {lo} {count} {hi}");
        }
    }

    #[test]
    fn gaussian_family_small_instances() {
        let f2 = gaussian_family(2, 1.0).unwrap();
        assert_eq!(f2.root_set().roots(), &[c(0.0, 0.0), c(1.0, 0.0)]);

        let f5 = gaussian_family(5, 1.0).unwrap();
        assert_eq!(
            f5.root_set().roots(),
            &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]
        );
        assert_eq!(separation(f5.root_set()), Some(1.0));
        assert_eq!(mahler_measure(f5.root_set()), 1.0);

        let f5t3 = gaussian_family(5, 3.0).unwrap();
        assert_eq!(separation(f5t3.root_set()), Some(3.0));
        assert_eq!(mahler_measure(f5t3.root_set()), 81.0);
    }

    #[test]
    fn conjugate_closed_small_instances() {
        let f2 = conjugate_closed_family(2, 1.0).unwrap();
        assert_eq!(f2.root_set().roots(), &[c(0.0, 1.0), c(0.0, -1.0)]);
        assert_eq!(separation(f2.root_set()), Some(2.0));
        // x^2 + 1 with exactly real coefficients.
        let p = f2.polynomial().unwrap();
        assert_eq!(p.coefficients()[0], c(1.0, 0.0));
        assert_eq!(p.coefficients()[1], c(0.0, 0.0));

        let f4 = conjugate_closed_family(4, 1.0).unwrap();
        assert_eq!(
            f4.root_set().roots(),
            &[c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0), c(-1.0, 0.0)]
        );
        assert!((separation(f4.root_set()).unwrap() - std::f64::consts::SQRT_2).abs() < 1e-15);

        let f4t2 = conjugate_closed_family(4, 2.0).unwrap();
        assert_eq!(mahler_measure(f4t2.root_set()), 16.0);
        assert!(
            (separation(f4t2.root_set()).unwrap() - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-15
        );
    }

    #[test]
    fn conjugate_closed_structure_across_sizes() {
        for n in 2..=40 {
            for t in [1.0, 2.0] {
                let inst = conjugate_closed_family(n, t).unwrap();
                let rs = inst.root_set();
                assert_eq!(rs.len(), n, "n = {n}");
                // Closed under conjugation, no origin, min-modulus root is
                // the nonreal seed at |i| t.
                assert!(signature_of(rs).is_ok(), "n = {n} not closed");
                assert!(rs.roots().iter().all(|r| r.norm() > 0.0));
                let min_mod = rs.roots().iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min);
                assert!((min_mod - t).abs() < 1e-12, "n = {n}");
                // All points within the construction radius.
                let radius = ((n + 1) as f64 / std::f64::consts::PI).sqrt()
                    + std::f64::consts::SQRT_2;
                assert!(rs.roots().iter().all(|r| r.norm() <= t * radius + 1e-9));
                // Coefficients exactly real.
                if n <= 30 {
                    let p = inst.polynomial().unwrap();
                    assert!(p.coefficients().iter().all(|co| co.im == 0.0));
                }
            }
        }
    }

    #[test]
    fn arithmetic_progression_instances() {
        let f5 = arithmetic_progression_family(5, 1.0).unwrap();
        let expected: Vec<Complex64> = (-2..=2).map(|j| c(j as f64, 0.0)).collect();
        assert_eq!(f5.root_set().roots(), expected.as_slice());
        assert_eq!(separation(f5.root_set()), Some(1.0));
        assert_eq!(mahler_measure(f5.root_set()), 4.0);

        let f4 = arithmetic_progression_family(4, 1.0).unwrap();
        let expected4: Vec<Complex64> = (-1..=2).map(|j| c(j as f64, 0.0)).collect();
        assert_eq!(f4.root_set().roots(), expected4.as_slice());
        assert_eq!(mahler_measure(f4.root_set()), 2.0);

        let f5r2 = arithmetic_progression_family(5, 2.0).unwrap();
        assert_eq!(separation(f5r2.root_set()), Some(2.0));
        assert_eq!(mahler_measure(f5r2.root_set()), 64.0);

        assert!(arithmetic_progression_family(3, 1.0).is_err());
        assert!(arithmetic_progression_family(5, 0.5).is_err());
    }

    #[test]
    fn quartic_instances() {
        let f1 = quartic_family(1.0).unwrap();
        assert_eq!(separation(f1.root_set()), Some(2.0));
        // Direct product of |1 + i|^4 rounds a few ulps off 4.
        assert!((mahler_measure(f1.root_set()) - 4.0).abs() < 1e-12);
        assert_eq!(
            signature_of(f1.root_set()).unwrap(),
            Signature { t: 0, s: 2 }
        );

        // Boundary scale: sep = sqrt 2, M = 1.
        let fb = quartic_family(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        assert!((separation(fb.root_set()).unwrap() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(mahler_measure(fb.root_set()), 1.0);

        let f5 = quartic_family(5.0).unwrap();
        assert_eq!(separation(f5.root_set()), Some(10.0));
        assert!((mahler_measure(f5.root_set()) - 2500.0).abs() < 1e-9);

        assert!(quartic_family(0.7).is_err());
    }

    #[test]
    fn cubic_instance() {
        let f = cubic_extremal();
        assert!((separation(f.root_set()).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(mahler_measure(f.root_set()), 1.0);
        assert_eq!(signature_of(f.root_set()).unwrap(), Signature { t: 1, s: 1 });
        // Coefficient form is the exact integer cubic.
        let p = f.polynomial().unwrap();
        assert!(p.exact_coefficients().is_some());
        assert_eq!(p.coefficients()[0], c(-1.0, 0.0));
    }

    #[test]
    fn sharpness_ratios() {
        // Quartic and cubic sit exactly on their bounds.
        for t in [1.0, 3.0, 10.0] {
            let spec = FamilySpec::new(FamilyKind::Quartic, 4, t).unwrap();
            let rec = sharpness_ratio(&spec).unwrap();
            assert!((rec.ratio - 1.0).abs() <= 1e-12, "t = {t}: {}", rec.ratio);
        }
        let cubic = FamilySpec::new(FamilyKind::CubicExtremal, 3, 1.0).unwrap();
        assert!((sharpness_ratio(&cubic).unwrap().ratio - 1.0).abs() <= 1e-12);

        // Progression ratio 201/(100!)^{1/100}, computed here independently
        // from an explicit log-factorial sum.
        let ap = FamilySpec::new(FamilyKind::ArithmeticProgression, 201, 1.0).unwrap();
        let rec = sharpness_ratio(&ap).unwrap();
        let ln_fact_100: f64 = (2..=100).map(|k| (k as f64).ln()).sum();
        let expected = 201.0 * (-ln_fact_100 / 100.0).exp();
        assert!((rec.ratio - expected).abs() <= 1e-9 * expected);
        assert!((expected - 5.2905).abs() < 1e-3);

        // Lattice families clear their theorems' ratio >= 1.
        let g = FamilySpec::new(FamilyKind::Gaussian, 100, 1.0).unwrap();
        assert!(sharpness_ratio(&g).unwrap().ratio >= 1.0);
        let cc = FamilySpec::new(FamilyKind::ConjugateClosed, 100, 1.0).unwrap();
        assert!(sharpness_ratio(&cc).unwrap().ratio >= 1.0);
    }

    #[test]
    fn progression_ratio_step_invariance_and_growth() {
        let ratio_at = |n: usize, r: f64| {
            let spec = FamilySpec::new(FamilyKind::ArithmeticProgression, n, r).unwrap();
            sharpness_ratio(&spec).unwrap().ratio
        };
        // Step-independent for r >= 1...
        let base = ratio_at(21, 1.0);
        for r in [1.5, 2.0, 7.0] {
            assert!((ratio_at(21, r) - base).abs() <= 1e-9 * base, "r = {r}");
        }
        // ...and increasing toward 2e along a fixed n ladder.
        let two_e = 2.0 * std::f64::consts::E;
        let mut prev = 0.0;
        for n in [5usize, 21, 51, 101, 201, 401] {
            let ratio = ratio_at(n, 1.0);
            assert!(ratio > prev, "n = {n}: {ratio} <= {prev}");
            assert!(ratio < two_e, "n = {n}: {ratio} >= 2e");
            prev = ratio;
        }
    }

    #[test]
    fn spec_validation() {
        assert!(FamilySpec::new(FamilyKind::Gaussian, 1, 1.0).is_err());
        assert!(FamilySpec::new(FamilyKind::Gaussian, 5, 0.5).is_err());
        assert!(FamilySpec::new(FamilyKind::Quartic, 5, 1.0).is_err());
        assert!(FamilySpec::new(FamilyKind::CubicExtremal, 4, 1.0).is_err());
        assert!(FamilySpec::new(FamilyKind::ArithmeticProgression, 3, 1.0).is_err());
        assert!("gaussian".parse::<FamilyKind>().is_ok());
        assert!("nope".parse::<FamilyKind>().is_err());
    }

    #[test]
    fn construct_dispatch() {
        for kind in [
            FamilyKind::Gaussian,
            FamilyKind::ConjugateClosed,
            FamilyKind::ArithmeticProgression,
            FamilyKind::Quartic,
            FamilyKind::CubicExtremal,
        ] {
            let n = match kind {
                FamilyKind::Quartic => 4,
                FamilyKind::CubicExtremal => 3,
                FamilyKind::ArithmeticProgression => 6,
                _ => 7,
            };
            let spec = FamilySpec::new(kind, n, 1.0).unwrap();
            let inst = construct(&spec).unwrap();
            assert_eq!(inst.root_set().len(), n, "kind {kind:?}");
        }
    }

    #[test]
    fn progression_sharpness_example_small() {
        // Closed form at n = 5: M = 4, so ratio = 5 / 4^{1/4} = 5/sqrt(2).
        let spec = FamilySpec::new(FamilyKind::ArithmeticProgression, 5, 1.0).unwrap();
        let rec = sharpness_ratio(&spec).unwrap();
        assert!((rec.ratio - 5.0 / 4f64.powf(0.25)).abs() < 1e-12);
    }
}

//! Compensated (double-double) arithmetic for the extended-precision
//! evaluation path of the root finder.
//!
//! A value is stored as an unevaluated sum `hi + lo` with |lo| <= ulp(hi)/2,
//! giving roughly 32 significant decimal digits. Only the handful of
//! operations needed for complex Horner evaluation are implemented.

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Error-free sum: returns (fl(a+b), exact rounding error).
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// two_sum when |a| >= |b| is known.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Error-free product via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, f64::mul_add(a, b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Complex number with double-double components.
#[derive(Clone, Copy, Debug)]
pub(crate) struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    #[inline]
    pub fn from_c64(z: Complex64) -> DdComplex {
        DdComplex {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    #[inline]
    pub fn add(self, other: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.add(other.re),
            im: self.im.add(other.im),
        }
    }

    #[inline]
    pub fn mul(self, other: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.mul(other.re).sub(self.im.mul(other.im)),
            im: self.re.mul(other.im).add(self.im.mul(other.re)),
        }
    }

    #[inline]
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// Horner evaluation of `sum coeffs[k] z^k` carried out in double-double.
///
/// The coefficients and the point are exact binary64 inputs; only the
/// intermediate accumulation gains precision. The result is rounded back
/// to binary64.
pub(crate) fn horner_dd(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let zz = DdComplex::from_c64(z);
    let mut acc = DdComplex {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    for &c in coeffs.iter().rev() {
        acc = acc.mul(zz).add(DdComplex::from_c64(c));
    }
    acc.to_c64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_recovers_cancelled_tail() {
        // In plain f64, (1e16 + 3.25) - 1e16 == 4.0 after rounding.
        let big = Dd::from_f64(1e16);
        let small = Dd::from_f64(3.25);
        let diff = big.add(small).sub(big);
        assert_eq!(diff.to_f64(), 3.25);
    }

    #[test]
    fn mul_tracks_rounding_error() {
        // 0.1 * 0.1 in f64 is not 0.01; the dd product carries the defect.
        let p = Dd::from_f64(0.1).mul(Dd::from_f64(0.1));
        let defect = p.hi - 0.01;
        assert!(p.lo != 0.0 || defect != 0.0);
        // hi + lo is closer to the exact product of the two binary64
        // inputs than fl(0.1)*fl(0.1) alone.
        let exact = 0.1f64;
        let exact_prod = exact.mul_add(exact, 0.0);
        assert!((p.to_f64() - exact_prod).abs() <= f64::EPSILON * exact_prod);
    }

    #[test]
    fn horner_dd_beats_f64_near_cancellation() {
        // p(x) = x^2 - 2 at the f64 approximation of sqrt(2). The exact value
        // of r*r - 2 for r = fl(sqrt 2) is about 4.44e-16; plain f64 Horner
        // returns it with rounding noise, dd must get it essentially exactly.
        let r = std::f64::consts::SQRT_2;
        let coeffs = [
            Complex64::new(-2.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        let got = horner_dd(&coeffs, Complex64::new(r, 0.0));
        // Exact: fma(r, r, -2) has at most one rounding.
        let exact = f64::mul_add(r, r, -2.0);
        assert!((got.re - exact).abs() <= f64::EPSILON);
        assert_eq!(got.im, 0.0);
    }

    #[test]
    fn horner_dd_matches_f64_on_benign_input() {
        let coeffs = [
            Complex64::new(1.0, -2.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(-3.0, 1.0),
        ];
        let z = Complex64::new(0.25, -0.75);
        let dd = horner_dd(&coeffs, z);
        let mut plain = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            plain = plain * z + c;
        }
        assert!((dd - plain).norm() <= 1e-15 * plain.norm().max(1.0));
    }
}

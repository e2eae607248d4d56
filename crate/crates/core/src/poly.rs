//! Monic complex polynomials with optional exact integer backing, and root
//! set containers shared by the solver and the measure computations.
//!
//! Every `Polynomial` is stored monic (leading coefficient 1); the original
//! leading coefficient is kept as `scale` metadata. When the input
//! coefficients are all integers with leading coefficient +-1, an exact
//! big-integer copy is retained so that discriminants and evaluations at
//! rational points can be computed without rounding.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Relative tolerance for conjugate-pair matching: a root `a` pairs with `b`
/// when |a - conj(b)| <= CONJUGATION_TOL * max(1, |a|). A root counts as real
/// when it pairs with itself, i.e. |Im a| <= CONJUGATION_TOL * max(1, |a|) / 2
/// up to the factor two absorbed in the distance |a - conj(a)| = 2|Im a|.
pub const CONJUGATION_TOL: f64 = 1e-9;

/// Scale of the distinctness threshold: two roots are considered distinct
/// only when their distance exceeds DISTINCTNESS_SCALE * max(1, max |root|).
pub const DISTINCTNESS_SCALE: f64 = 1e-8;

/// Computed (non-exact) root sets additionally require a pair's distance to
/// exceed this multiple of the two roots' summed residual bounds before the
/// pair counts as distinct; unresolved solver clusters stay merged.
pub const RESIDUAL_SEPARATION_FACTOR: f64 = 8.0;

/// Largest magnitude at which every integer is exactly representable in f64.
const INT_EXACT_LIMIT: f64 = 9007199254740992.0; // 2^53

/// How the coefficients are stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backing {
    /// Exact big-integer coefficients are retained alongside the floats.
    ExactInt,
    /// Only binary64 coefficients are available.
    Float,
}

/// A monic polynomial over the complex numbers.
#[derive(Clone, Debug)]
pub struct Polynomial {
    /// Monic coefficients, ascending: coeffs[k] multiplies x^k; last is 1.
    coeffs: Vec<Complex64>,
    /// Exact monic integer coefficients, present iff the input was integral
    /// with leading coefficient +-1.
    exact: Option<Vec<BigInt>>,
    /// Leading coefficient of the original input before normalization.
    scale: f64,
}

impl Polynomial {
    /// Builds a polynomial from real coefficients in ascending order
    /// (`coeffs[k]` multiplies x^k). Requires length >= 2 and a nonzero,
    /// finite leading coefficient. The result is normalized to monic; exact
    /// integer backing is retained iff every coefficient is an integer and
    /// the leading coefficient is +-1.
    pub fn from_coefficients(coeffs: &[f64]) -> Result<Polynomial> {
        if coeffs.len() < 2 {
            return Err(Error::DegreeTooSmall {
                got: coeffs.len().saturating_sub(1),
                min: 1,
            });
        }
        for (index, &c) in coeffs.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFiniteInput { index });
            }
        }
        let lead = *coeffs.last().unwrap();
        if lead == 0.0 {
            return Err(Error::BadLeadingCoefficient);
        }

        let all_integral = coeffs
            .iter()
            .all(|c| c.fract() == 0.0 && c.abs() <= INT_EXACT_LIMIT);
        let exact = if all_integral && lead.abs() == 1.0 {
            // Dividing by +-1 is exact, so the monic form stays integral.
            Some(
                coeffs
                    .iter()
                    .map(|&c| BigInt::from((c / lead) as i64))
                    .collect(),
            )
        } else {
            None
        };

        let monic: Vec<Complex64> = coeffs
            .iter()
            .map(|&c| Complex64::new(c / lead, 0.0))
            .collect();
        Ok(Polynomial {
            coeffs: monic,
            exact,
            scale: lead,
        })
    }

    /// Builds a polynomial from exact integer coefficients in ascending
    /// order. Exact backing is retained iff the leading coefficient is +-1;
    /// otherwise the monic normalization rounds to binary64 and only float
    /// backing remains (`scale` records the original leading coefficient).
    pub fn from_integer_coefficients(coeffs: &[BigInt]) -> Result<Polynomial> {
        if coeffs.len() < 2 {
            return Err(Error::DegreeTooSmall {
                got: coeffs.len().saturating_sub(1),
                min: 1,
            });
        }
        let lead = coeffs.last().unwrap();
        if lead.is_zero() {
            return Err(Error::BadLeadingCoefficient);
        }
        let lead_f = lead.to_f64().unwrap_or(f64::INFINITY);
        if !lead_f.is_finite() {
            return Err(Error::NonFiniteInput {
                index: coeffs.len() - 1,
            });
        }

        let unit_lead = lead.abs() == BigInt::from(1);
        let exact = if unit_lead {
            Some(coeffs.iter().map(|c| c * lead.signum()).collect())
        } else {
            None
        };
        let mut monic = Vec::with_capacity(coeffs.len());
        for (index, c) in coeffs.iter().enumerate() {
            let cf = c.to_f64().unwrap_or(f64::INFINITY);
            if !cf.is_finite() {
                return Err(Error::NonFiniteInput { index });
            }
            monic.push(Complex64::new(cf / lead_f, 0.0));
        }
        Ok(Polynomial {
            coeffs: monic,
            exact,
            scale: lead_f,
        })
    }

    /// Builds the monic polynomial with the given roots (with multiplicity).
    /// Requires at least one root. When the root multiset is closed under
    /// conjugation (per [`conjugate_pairing`]), the imaginary parts of all
    /// coefficients are forced to exactly zero.
    pub fn from_roots(roots: &[Complex64]) -> Result<Polynomial> {
        if roots.is_empty() {
            return Err(Error::DegreeTooSmall { got: 0, min: 1 });
        }
        for (index, r) in roots.iter().enumerate() {
            if !r.re.is_finite() || !r.im.is_finite() {
                return Err(Error::NonFiniteInput { index });
            }
        }
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            coeffs.push(Complex64::new(0.0, 0.0));
            for k in (1..coeffs.len()).rev() {
                coeffs[k] = coeffs[k - 1] - r * coeffs[k];
            }
            coeffs[0] = -r * coeffs[0];
        }
        if conjugate_pairing(roots).is_some() {
            for c in &mut coeffs {
                c.im = 0.0;
            }
        }
        Ok(Polynomial {
            coeffs,
            exact: None,
            scale: 1.0,
        })
    }

    /// Parses `{"coeffs": [...]}` where entries are JSON numbers or strings.
    /// String entries admit arbitrary-precision integers; if every entry is
    /// an integer the polynomial gets exact backing (leading coefficient
    /// permitting), otherwise everything is read as binary64.
    pub fn from_json_str(input: &str) -> Result<Polynomial> {
        let value: serde_json::Value =
            serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
        let arr = value
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Parse("expected an object with a \"coeffs\" array".into()))?;

        enum Entry {
            Int(BigInt),
            Float(f64),
        }
        let mut entries = Vec::with_capacity(arr.len());
        for (index, item) in arr.iter().enumerate() {
            let entry = match item {
                serde_json::Value::Number(n) => {
                    if let Some(i) = n.as_i64() {
                        Entry::Int(BigInt::from(i))
                    } else if let Some(u) = n.as_u64() {
                        Entry::Int(BigInt::from(u))
                    } else {
                        Entry::Float(n.as_f64().ok_or_else(|| {
                            Error::Parse(format!("unrepresentable number at index {index}"))
                        })?)
                    }
                }
                serde_json::Value::String(s) => {
                    let t = s.trim();
                    if let Ok(i) = t.parse::<BigInt>() {
                        Entry::Int(i)
                    } else if let Ok(f) = t.parse::<f64>() {
                        Entry::Float(f)
                    } else {
                        return Err(Error::Parse(format!(
                            "coefficient string {t:?} at index {index} is neither an integer nor a float"
                        )));
                    }
                }
                other => {
                    return Err(Error::Parse(format!(
                        "coefficient at index {index} must be a number or string, got {other}"
                    )));
                }
            };
            entries.push(entry);
        }

        let all_int = entries.iter().all(|e| matches!(e, Entry::Int(_)));
        if all_int {
            let ints: Vec<BigInt> = entries
                .into_iter()
                .map(|e| match e {
                    Entry::Int(i) => i,
                    Entry::Float(_) => unreachable!(),
                })
                .collect();
            Polynomial::from_integer_coefficients(&ints)
        } else {
            let floats: Vec<f64> = entries
                .iter()
                .map(|e| match e {
                    Entry::Int(i) => i.to_f64().unwrap_or(f64::INFINITY),
                    Entry::Float(f) => *f,
                })
                .collect();
            Polynomial::from_coefficients(&floats)
        }
    }

    /// Degree (at least 1 by construction).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Monic coefficients in ascending order; the last entry is 1.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Exact monic integer coefficients, when the input admitted them.
    pub fn exact_coefficients(&self) -> Option<&[BigInt]> {
        self.exact.as_deref()
    }

    pub fn backing(&self) -> Backing {
        if self.exact.is_some() {
            Backing::ExactInt
        } else {
            Backing::Float
        }
    }

    /// Leading coefficient of the original (pre-normalization) input.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Height: the largest coefficient magnitude of the monic form.
    pub fn height(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Evaluates the monic polynomial at `z` by Horner's rule. When the
    /// polynomial has exact backing and `z` is a real integer of magnitude
    /// at most 2^53, the value is computed exactly over the integers and
    /// rounded once at the end.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        if let Some(exact) = &self.exact {
            if z.im == 0.0 && z.re.fract() == 0.0 && z.re.abs() <= INT_EXACT_LIMIT {
                let x = BigInt::from(z.re as i64);
                let mut acc = BigInt::zero();
                for c in exact.iter().rev() {
                    acc = acc * &x + c;
                }
                return Complex64::new(acc.to_f64().unwrap_or(f64::INFINITY), 0.0);
            }
        }
        horner(&self.coeffs, z)
    }

    /// Exact evaluation at a rational point. Requires exact backing.
    pub fn evaluate_exact(&self, x: &BigRational) -> Result<BigRational> {
        let exact = self.exact.as_ref().ok_or(Error::ExactBackingRequired)?;
        let mut acc = BigRational::zero();
        for c in exact.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        Ok(acc)
    }

    /// Formal derivative. The result is not monic (its leading coefficient
    /// is the degree), so it is returned as a plain coefficient polynomial.
    pub fn derivative(&self) -> RawPolynomial {
        RawPolynomial::derivative_of(&self.coeffs)
    }
}

/// A polynomial held as plain coefficients without the monic normalization
/// invariant; produced by differentiation and used for evaluation only.
#[derive(Clone, Debug)]
pub struct RawPolynomial {
    coeffs: Vec<Complex64>,
}

impl RawPolynomial {
    fn derivative_of(coeffs: &[Complex64]) -> RawPolynomial {
        let d: Vec<Complex64> = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        RawPolynomial { coeffs: d }
    }

    /// Coefficients in ascending order. Never empty; a differentiated
    /// degree-1 polynomial leaves the constant [1].
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }

    pub fn derivative(&self) -> RawPolynomial {
        RawPolynomial::derivative_of(&self.coeffs)
    }
}

/// Plain Horner evaluation of ascending coefficients.
pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Where a root set came from; determines how much trust the certification
/// logic places in the stored values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootSource {
    /// Output of the numerical solver; residual bounds are meaningful.
    Computed,
    /// Constructed from known exact values; residual bounds are zero.
    ExactConstruction,
}

/// A list of roots together with per-root residual error bounds.
#[derive(Clone, Debug)]
pub struct RootSet {
    roots: Vec<Complex64>,
    residual_bounds: Vec<f64>,
    source: RootSource,
}

impl RootSet {
    /// Wraps exactly known roots (residual bounds all zero).
    pub fn exact(roots: Vec<Complex64>) -> RootSet {
        let n = roots.len();
        RootSet {
            roots,
            residual_bounds: vec![0.0; n],
            source: RootSource::ExactConstruction,
        }
    }

    /// Wraps solver output together with its per-root residual bounds.
    /// Panics if the two lists disagree in length.
    pub fn computed(roots: Vec<Complex64>, residual_bounds: Vec<f64>) -> RootSet {
        assert_eq!(roots.len(), residual_bounds.len());
        RootSet {
            roots,
            residual_bounds,
            source: RootSource::Computed,
        }
    }

    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn residual_bounds(&self) -> &[f64] {
        &self.residual_bounds
    }

    pub fn source(&self) -> RootSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Largest root modulus (0 for an empty set).
    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|r| r.norm()).fold(0.0, f64::max)
    }

    /// Distance below which two roots of this set are never considered
    /// distinct: DISTINCTNESS_SCALE * max(1, max |root|).
    pub fn distinctness_threshold(&self) -> f64 {
        DISTINCTNESS_SCALE * self.max_modulus().max(1.0)
    }

    /// Whether roots i and j are reliably distinct: their distance must
    /// exceed both the set-wide distinctness threshold and (for computed
    /// sets) [`RESIDUAL_SEPARATION_FACTOR`] times their summed residual
    /// bounds. For exact constructions the residual term vanishes and this
    /// is exactly the threshold test.
    pub fn reliably_distinct(&self, i: usize, j: usize) -> bool {
        let d = (self.roots[i] - self.roots[j]).norm();
        let residual_floor =
            RESIDUAL_SEPARATION_FACTOR * (self.residual_bounds[i] + self.residual_bounds[j]);
        d > self.distinctness_threshold().max(residual_floor)
    }
}

/// Tries to match the root multiset with its own conjugates. On success
/// returns (real_count, conjugate_pair_count); returns None when no matching
/// exists within tolerance. A root is real when |Im| <= CONJUGATION_TOL *
/// max(1, |root|); nonreal roots are greedily matched to the nearest unused
/// candidate for their conjugate.
pub fn conjugate_pairing(roots: &[Complex64]) -> Option<(usize, usize)> {
    let tol = |z: Complex64| CONJUGATION_TOL * z.norm().max(1.0);
    let mut used = vec![false; roots.len()];
    let mut real_count = 0usize;
    let mut pair_count = 0usize;
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let a = roots[i];
        if a.im.abs() <= tol(a) {
            real_count += 1;
            continue;
        }
        let target = a.conj();
        let mut best: Option<(usize, f64)> = None;
        for (j, &b) in roots.iter().enumerate().skip(i + 1) {
            if used[j] {
                continue;
            }
            let d = (b - target).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        match best {
            Some((j, d)) if d <= tol(a) => {
                used[j] = true;
                pair_count += 1;
            }
            _ => return None,
        }
    }
    Some((real_count, pair_count))
}

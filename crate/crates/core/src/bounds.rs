//! Separation bounds: lower bounds from the discriminant and Mahler
//! measure, several upper bounds (trivial, discriminant-based, sqrt-n
//! constant, signature-specific), disk packing counts, the Lehmer window,
//! and the supporting analytic inequalities (central binomial, Wendel,
//! Robbins) as checkable functions.
//!
//! All bound formulas are evaluated in log space internally so that degrees
//! in the hundreds neither overflow nor lose the comparison; the public
//! functions accept and return ordinary f64 values (a reported value of 0 or
//! infinity means the true bound left binary64 range, in the direction that
//! keeps the comparison meaningful).

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::measures::{measure_report, separation, MeasureReport, Signature};
use crate::poly::{Backing, Polynomial, RootSet, CONJUGATION_TOL};
use crate::rootfind::certify_separable;

/// Relative slack for bound satisfaction: a margin counts as satisfied when
/// it is at least -BOUND_SLACK * max(1, sep), absorbing f64 rounding at
/// exact-equality cases.
pub const BOUND_SLACK: f64 = 1e-9;

/// Which side of the separation a bound sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

/// One evaluated bound.
#[derive(Clone, Debug)]
pub struct BoundEntry {
    pub bound_id: &'static str,
    pub side: Side,
    /// Bound value; NaN when the entry is not applicable.
    pub value: f64,
    pub applicable: bool,
    /// True when the bound holds within slack. Inapplicable entries are
    /// never failed and report true.
    pub satisfied: bool,
    /// value - sep for upper bounds, sep - value for lower bounds. For
    /// packing entries: bound - root count (the comparison the theorem
    /// makes). NaN when not applicable.
    pub margin: f64,
}

/// Every bound evaluated against one measured root set.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub n: usize,
    pub measured: MeasureReport,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    /// True iff every applicable entry is satisfied.
    pub fn all_satisfied(&self) -> bool {
        self.entries
            .iter()
            .filter(|e| e.applicable)
            .all(|e| e.satisfied)
    }

    /// JSON rendering with fixed keys. Non-finite numbers become null.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|e| {
                serde_json::json!({
                    "bound_id": e.bound_id,
                    "side": match e.side { Side::Lower => "lower", Side::Upper => "upper" },
                    "value": e.value,
                    "applicable": e.applicable,
                    "satisfied": e.satisfied,
                    "margin": e.margin,
                })
            })
            .collect();
        let m = &self.measured;
        serde_json::json!({
            "n": self.n,
            "sep": m.sep,
            "abs_sep": m.abs_sep,
            "mahler": m.mahler,
            "log_mahler": m.log_mahler,
            "disc_abs": m.log_abs_disc.exp(),
            "log_disc_abs": m.log_abs_disc,
            "height": m.height,
            "signature": m.signature.map(|s| serde_json::json!({"t": s.t, "s": s.s})),
            "all_satisfied": self.all_satisfied(),
            "entries": entries,
        })
    }
}

/// The window in which a minimal counterexample to Lehmer's conjecture
/// would have to place its separation.
#[derive(Clone, Copy, Debug)]
pub struct LehmerWindow {
    pub n: usize,
    pub mu: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Result of a disk packing count.
#[derive(Clone, Copy, Debug)]
pub struct PackingCheck {
    /// Number of roots with |root| < R.
    pub count: usize,
    /// (R/r + 1)^2 with r = sep/2.
    pub bound: f64,
    /// Strict inequality count < bound; for R > 0 the count with |root| <= R
    /// must also be strictly below the bound.
    pub ok: bool,
}

/// One evaluated analytic inequality.
#[derive(Clone, Copy, Debug)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// Which exponent the sqrt-n upper bound uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentCase {
    /// Exponent 1/(n-1); always valid.
    General,
    /// Exponent 1/n; valid when some minimal-modulus root is nonreal
    /// (real-coefficient polynomials).
    NonrealMin,
}

/// Exact accumulation of log n! = sum of log k.
fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

fn ln_mahler_lower(n: usize, ln_mahler: f64, ln_disc_abs: f64) -> f64 {
    let nf = n as f64;
    0.5 * (3f64.ln() + ln_disc_abs) - 0.5 * (nf + 2.0) * nf.ln() - (nf - 1.0) * ln_mahler
}

fn ln_discriminant_upper(n: usize, ln_mahler: f64) -> f64 {
    let nf = n as f64;
    nf.ln() / (nf - 1.0) + 2.0 * ln_mahler / nf
}

/// min(2, 34/sqrt(n)).
fn sqrt_n_constant(n: usize) -> f64 {
    (34.0 / (n as f64).sqrt()).min(2.0)
}

fn ln_main_upper(n: usize, ln_mahler: f64, case: ExponentCase) -> f64 {
    let denom = match case {
        ExponentCase::General => (n - 1) as f64,
        ExponentCase::NonrealMin => n as f64,
    };
    sqrt_n_constant(n).ln() + ln_mahler / denom
}

/// Lower bound on separation: sqrt(3 |D|) / (n^{(n+2)/2} M^{n-1}).
/// With `integer_case` the discriminant is replaced by its worst case
/// |D| >= 1 for separable integer polynomials. Returns `None` when
/// `disc_abs` is zero or negative without the integer case (the bound only
/// applies to separable polynomials).
pub fn mahler_lower_bound(
    n: usize,
    mahler: f64,
    disc_abs: f64,
    integer_case: bool,
) -> Option<f64> {
    debug_assert!(n >= 2);
    debug_assert!(mahler >= 1.0);
    let ln_d = if integer_case {
        0.0
    } else {
        if disc_abs <= 0.0 {
            return None;
        }
        disc_abs.ln()
    };
    Some(ln_mahler_lower(n, mahler.ln(), ln_d).exp())
}

/// Trivial upper bound 2M: all roots lie within the Mahler-measure disk.
pub fn trivial_upper(mahler: f64) -> f64 {
    2.0 * mahler
}

/// Discriminant-based upper bound n^{1/(n-1)} M^{2/n}.
pub fn discriminant_upper(n: usize, mahler: f64) -> f64 {
    debug_assert!(n >= 2);
    ln_discriminant_upper(n, mahler.ln()).exp()
}

/// Upper bound min(2, 34/sqrt(n)) * M^e, with e = 1/(n-1) in the general
/// case and e = 1/n when a minimal-modulus root is nonreal.
pub fn main_upper(n: usize, mahler: f64, case: ExponentCase) -> f64 {
    debug_assert!(n >= 2);
    ln_main_upper(n, mahler.ln(), case).exp()
}

/// Decides which exponent case applies to a (real-coefficient) root set:
/// NonrealMin iff some root of minimal modulus, up to the equal-modulus
/// tolerance, has a nonzero imaginary part (beyond the realness tolerance).
pub fn applicable_exponent_case(rs: &RootSet) -> ExponentCase {
    let min_mod = rs.roots().iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min);
    for r in rs.roots() {
        let m = r.norm();
        let tie = (m - min_mod).abs() <= 1e-9 * m.max(min_mod).max(1.0);
        if tie && r.im.abs() > CONJUGATION_TOL * m.max(1.0) {
            return ExponentCase::NonrealMin;
        }
    }
    ExponentCase::General
}

/// Signature-specific upper bound:
/// (1,1) -> sqrt(3) M^{1/2}; (0,2) -> sqrt(2) M^{1/4};
/// (t,0), n >= 4 -> 6.33/n * M^{1/(n-1)};
/// (t,0), n in {2,3} -> the general sqrt-n bound;
/// anything else -> None (no bound of this family applies).
/// Errors when the signature does not satisfy t + 2s = n.
pub fn improved_upper(sig: Signature, n: usize, mahler: f64) -> Result<Option<f64>> {
    Ok(ln_improved_upper(sig, n, mahler.ln())?.map(f64::exp))
}

fn ln_improved_upper(sig: Signature, n: usize, ln_mahler: f64) -> Result<Option<f64>> {
    if sig.t + 2 * sig.s != n {
        return Err(Error::SignatureMismatch {
            t: sig.t,
            s: sig.s,
            n,
        });
    }
    let v = match (sig.t, sig.s) {
        (1, 1) => Some(0.5 * 3f64.ln() + 0.5 * ln_mahler),
        (0, 2) => Some(0.5 * 2f64.ln() + 0.25 * ln_mahler),
        (_, 0) if n >= 4 => Some((6.33 / n as f64).ln() + ln_mahler / (n - 1) as f64),
        (_, 0) => Some(ln_main_upper(n, ln_mahler, ExponentCase::General)),
        _ => None,
    };
    Ok(v)
}

/// Separation window for a degree-n polynomial of Mahler measure mu:
/// lo from the integer-case lower bound, hi from the general sqrt-n upper
/// bound. Nonempty (lo < hi) for all n >= 2, mu in (1, 2].
pub fn lehmer_window(n: usize, mu: f64) -> LehmerWindow {
    debug_assert!(n >= 2);
    debug_assert!(mu > 1.0);
    let ln_mu = mu.ln();
    LehmerWindow {
        n,
        mu,
        lo: ln_mahler_lower(n, ln_mu, 0.0).exp(),
        hi: ln_main_upper(n, ln_mu, ExponentCase::General).exp(),
    }
}

/// Counts roots in the open disk |z| < R and compares with the packing
/// bound (R/r + 1)^2, r = sep/2. `ok` additionally requires the closed-disk
/// count to clear the same strict inequality when R > 0 (at R = 0 the
/// volume argument needs a disk of positive radius, so only the open count
/// is constrained). Errors when the root set is not certified separable.
pub fn packing_check(rs: &RootSet, radius: f64) -> Result<PackingCheck> {
    let cert = certify_separable(rs);
    if !cert.separable {
        return Err(Error::NotSeparable {
            min_distance: cert.min_pairwise_distance,
        });
    }
    let sep = separation(rs).ok_or(Error::DegreeTooSmall {
        got: rs.len(),
        min: 2,
    })?;
    let r = sep / 2.0;
    let count_open = rs.roots().iter().filter(|z| z.norm() < radius).count();
    let count_closed = rs.roots().iter().filter(|z| z.norm() <= radius).count();
    let bound = (radius / r + 1.0).powi(2);
    let ok = (count_open as f64) < bound
        && (radius <= 0.0 || (count_closed as f64) < bound);
    Ok(PackingCheck {
        count: count_open,
        bound,
        ok,
    })
}

fn entry(id: &'static str, side: Side, value: f64, applicable: bool, sep: f64) -> BoundEntry {
    if !applicable {
        return BoundEntry {
            bound_id: id,
            side,
            value: f64::NAN,
            applicable: false,
            satisfied: true,
            margin: f64::NAN,
        };
    }
    let margin = match side {
        Side::Upper => value - sep,
        Side::Lower => sep - value,
    };
    BoundEntry {
        bound_id: id,
        side,
        value,
        applicable: true,
        satisfied: margin >= -BOUND_SLACK * sep.max(1.0),
        margin,
    }
}

/// Evaluates every bound against the measured root set and aggregates the
/// verdicts. Pass the originating polynomial when available: exact integer
/// backing additionally enables the integer-case lower bound, and the
/// height in the report comes from the actual coefficients.
///
/// Entry order is fixed: mahler_lower, mahler_lower_integer, trivial_upper,
/// discriminant_upper, main_upper_{general|nonreal_min}, improved_upper,
/// then packing at R in {r, 2r, 4r, 8r, max |root|}.
///
/// Errors when fewer than two roots are present or the set is not
/// certified separable.
pub fn check_all(rs: &RootSet, p: Option<&Polynomial>) -> Result<BoundReport> {
    let n = rs.len();
    if n < 2 {
        return Err(Error::DegreeTooSmall { got: n, min: 2 });
    }
    let cert = certify_separable(rs);
    if !cert.separable {
        return Err(Error::NotSeparable {
            min_distance: cert.min_pairwise_distance,
        });
    }

    let measured = measure_report(rs, p);
    let sep = measured
        .sep
        .expect("certified separable set has a distinct pair");
    let ln_m = measured.log_mahler;
    let ln_d = measured.log_abs_disc;

    let mut entries = Vec::with_capacity(11);
    entries.push(entry(
        "mahler_lower",
        Side::Lower,
        ln_mahler_lower(n, ln_m, ln_d).exp(),
        true,
        sep,
    ));
    let integer_backed = p.is_some_and(|q| q.backing() == Backing::ExactInt);
    entries.push(entry(
        "mahler_lower_integer",
        Side::Lower,
        if integer_backed {
            ln_mahler_lower(n, ln_m, 0.0).exp()
        } else {
            f64::NAN
        },
        integer_backed,
        sep,
    ));
    entries.push(entry(
        "trivial_upper",
        Side::Upper,
        2.0 * ln_m.exp(),
        true,
        sep,
    ));
    entries.push(entry(
        "discriminant_upper",
        Side::Upper,
        ln_discriminant_upper(n, ln_m).exp(),
        true,
        sep,
    ));

    let case = if measured.signature.is_some() {
        applicable_exponent_case(rs)
    } else {
        ExponentCase::General
    };
    let main_id = match case {
        ExponentCase::General => "main_upper_general",
        ExponentCase::NonrealMin => "main_upper_nonreal_min",
    };
    entries.push(entry(
        main_id,
        Side::Upper,
        ln_main_upper(n, ln_m, case).exp(),
        true,
        sep,
    ));

    let improved = match measured.signature {
        Some(sig) => ln_improved_upper(sig, n, ln_m)?.map(f64::exp),
        None => None,
    };
    entries.push(entry(
        "improved_upper",
        Side::Upper,
        improved.unwrap_or(f64::NAN),
        improved.is_some(),
        sep,
    ));

    let r = sep / 2.0;
    let grid = [
        ("packing_r", r),
        ("packing_2r", 2.0 * r),
        ("packing_4r", 4.0 * r),
        ("packing_8r", 8.0 * r),
        ("packing_rmax", rs.max_modulus()),
    ];
    for (id, radius) in grid {
        let pc = packing_check(rs, radius)?;
        let count_closed = rs.roots().iter().filter(|z| z.norm() <= radius).count();
        let constrained = if radius > 0.0 {
            count_closed
        } else {
            pc.count
        };
        entries.push(BoundEntry {
            bound_id: id,
            side: Side::Upper,
            value: pc.bound,
            applicable: true,
            satisfied: pc.ok,
            margin: pc.bound - constrained as f64,
        });
    }

    Ok(BoundReport {
        n,
        measured,
        entries,
    })
}

/// Central binomial coefficient bound: C(n, floor(n/2)) <= 2^{n+1} /
/// sqrt(pi (2n+1)) for n >= 3. The left side is computed exactly as a big
/// integer and converted; valid as stated for n up to ~1000 (beyond which
/// the conversion overflows f64).
pub fn central_binomial_check(n: usize) -> InequalityCheck {
    debug_assert!(n >= 3);
    let lhs = binomial_exact(n, n / 2).to_f64().unwrap_or(f64::INFINITY);
    let nf = n as f64;
    let rhs = ((nf + 1.0) * 2f64.ln() - 0.5 * (std::f64::consts::PI * (2.0 * nf + 1.0)).ln()).exp();
    InequalityCheck {
        lhs,
        rhs,
        ok: lhs <= rhs,
    }
}

/// Exact binomial coefficient by the multiplicative recurrence.
fn binomial_exact(n: usize, k: usize) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Wendel's inequality at half-integers: Gamma(m + 1/2) > m!/sqrt(m + 1/2).
/// The left side is (2m)! sqrt(pi) / (4^m m!), evaluated in log space with
/// exact log-factorial accumulation; the comparison is done on logs so it
/// stays meaningful after the displayed values saturate f64 (m > ~170).
pub fn wendel_check(m: usize) -> InequalityCheck {
    debug_assert!(m >= 1);
    let mf = m as f64;
    let ln_lhs =
        ln_factorial(2 * m) - 2.0 * mf * 2f64.ln() - ln_factorial(m) + 0.5 * std::f64::consts::PI.ln();
    let ln_rhs = ln_factorial(m) - 0.5 * (mf + 0.5).ln();
    InequalityCheck {
        lhs: ln_lhs.exp(),
        rhs: ln_rhs.exp(),
        ok: ln_lhs > ln_rhs,
    }
}

/// Robbins' refinement of Stirling: n! > sqrt(2 pi n) (n/e)^n e^{1/(12n+1)}.
/// Compared in log space with exact log-factorial accumulation on the left.
pub fn robbins_check(n: usize) -> InequalityCheck {
    debug_assert!(n >= 1);
    let nf = n as f64;
    let ln_lhs = ln_factorial(n);
    let ln_rhs = 0.5 * (2.0 * std::f64::consts::PI * nf).ln() + nf * (nf.ln() - 1.0)
        + 1.0 / (12.0 * nf + 1.0);
    InequalityCheck {
        lhs: ln_lhs.exp(),
        rhs: ln_rhs.exp(),
        ok: ln_lhs > ln_rhs,
    }
}

/// Convenience wrapper: separation window endpoints for a batch of degrees,
/// used by the property tests; kept here so the window invariant (lo < hi)
/// has a single owner.
pub fn lehmer_window_nonempty(n: usize, mu: f64) -> bool {
    let w = lehmer_window(n, mu);
    w.lo < w.hi
}

//! Command implementations. Each returns the process exit code plus the
//! text for stdout, so behavior is testable without spawning the binary.
//!
//! Exit codes: 0 all bounds pass, 1 a bound was violated (an implementation
//! bug: surfaced loudly), 2 invalid or non-separable input, 3 solver failure.

use std::path::Path;

use mahler_sep::bounds::{
    central_binomial_check, check_all, lehmer_window, robbins_check, wendel_check,
};
use mahler_sep::families::{construct, sharpness_ratio, FamilyKind, FamilySpec};
use mahler_sep::poly::{Polynomial, RootSet};
use mahler_sep::rootfind::{find_roots, SolverConfig};
use mahler_sep::Error;
use num_complex::Complex64;

use crate::ensemble::EnsembleSpec;
use crate::sweep::run_sweep;

pub struct CommandOutput {
    pub exit: i32,
    pub stdout: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> CommandOutput {
        CommandOutput { exit: 0, stdout }
    }

    fn fail(exit: i32, message: String) -> CommandOutput {
        let diagnostic = serde_json::json!({ "error": message });
        CommandOutput {
            exit,
            stdout: to_pretty(&diagnostic),
        }
    }
}

fn to_pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("report JSON serializes")
}

/// Parses a JSON root list: entries are either [re, im] pairs or bare real
/// numbers.
fn parse_roots(v: &serde_json::Value) -> Result<Vec<Complex64>, String> {
    let arr = v.as_array().ok_or("roots must be a JSON array")?;
    if arr.len() < 2 {
        return Err("need at least two roots".into());
    }
    arr.iter()
        .map(|item| match item {
            serde_json::Value::Number(n) => {
                let re = n.as_f64().ok_or("root out of f64 range")?;
                Ok(Complex64::new(re, 0.0))
            }
            serde_json::Value::Array(pair) if pair.len() == 2 => {
                let re = pair[0].as_f64().ok_or("root component out of f64 range")?;
                let im = pair[1].as_f64().ok_or("root component out of f64 range")?;
                Ok(Complex64::new(re, im))
            }
            other => Err(format!("expected number or [re, im] pair, got {other}")),
        })
        .collect()
}

enum AnalyzeInput {
    Poly(Polynomial),
    Roots(Vec<Complex64>),
}

fn parse_analyze_input(
    input: Option<&Path>,
    coeffs: Option<&str>,
    roots: Option<&str>,
) -> Result<AnalyzeInput, String> {
    let given = [input.is_some(), coeffs.is_some(), roots.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if given != 1 {
        return Err("give exactly one of --input, --coeffs, --roots".into());
    }
    if let Some(text) = coeffs {
        let arr: serde_json::Value =
            serde_json::from_str(text).map_err(|e| format!("bad --coeffs JSON: {e}"))?;
        let wrapped = serde_json::json!({ "coeffs": arr }).to_string();
        return Polynomial::from_json_str(&wrapped)
            .map(AnalyzeInput::Poly)
            .map_err(|e| e.to_string());
    }
    if let Some(text) = roots {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| format!("bad --roots JSON: {e}"))?;
        return parse_roots(&v).map(AnalyzeInput::Roots);
    }
    let path = input.unwrap();
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let v: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("bad JSON in input file: {e}"))?;
    if v.get("coeffs").is_some() {
        Polynomial::from_json_str(&text)
            .map(AnalyzeInput::Poly)
            .map_err(|e| e.to_string())
    } else if let Some(r) = v.get("roots") {
        parse_roots(r).map(AnalyzeInput::Roots)
    } else if v.is_array() {
        let wrapped = serde_json::json!({ "coeffs": v }).to_string();
        Polynomial::from_json_str(&wrapped)
            .map(AnalyzeInput::Poly)
            .map_err(|e| e.to_string())
    } else {
        Err("input file needs a \"coeffs\" or \"roots\" field".into())
    }
}

/// Measures the polynomial (or root list) and reports every bound.
pub fn cmd_analyze(
    input: Option<&Path>,
    coeffs: Option<&str>,
    roots: Option<&str>,
    precision: u32,
) -> CommandOutput {
    let parsed = match parse_analyze_input(input, coeffs, roots) {
        Ok(p) => p,
        Err(message) => return CommandOutput::fail(2, message),
    };
    let (rs, poly) = match parsed {
        AnalyzeInput::Poly(p) => {
            let cfg = SolverConfig {
                precision_digits: precision,
                ..SolverConfig::default()
            };
            match find_roots(&p, &cfg) {
                Ok(rs) => (rs, Some(p)),
                Err(e @ Error::NonConvergence { .. }) => {
                    return CommandOutput::fail(3, e.to_string())
                }
                Err(e) => return CommandOutput::fail(2, e.to_string()),
            }
        }
        AnalyzeInput::Roots(roots) => (RootSet::exact(roots), None),
    };
    match check_all(&rs, poly.as_ref()) {
        Ok(report) => {
            let exit = if report.all_satisfied() { 0 } else { 1 };
            CommandOutput {
                exit,
                stdout: to_pretty(&report.to_json()),
            }
        }
        Err(e @ Error::NotSeparable { .. }) => CommandOutput::fail(2, e.to_string()),
        Err(e) => CommandOutput::fail(2, e.to_string()),
    }
}

/// Builds a family instance and reports its roots, sharpness ratio, and
/// bound results.
pub fn cmd_family(kind: &str, n: usize, t: f64) -> CommandOutput {
    let kind: FamilyKind = match kind.parse() {
        Ok(k) => k,
        Err(e) => return CommandOutput::fail(2, e.to_string()),
    };
    let spec = match FamilySpec::new(kind, n, t) {
        Ok(s) => s,
        Err(e) => return CommandOutput::fail(2, e.to_string()),
    };
    let instance = match construct(&spec) {
        Ok(i) => i,
        Err(e) => return CommandOutput::fail(2, e.to_string()),
    };
    let record = match sharpness_ratio(&spec) {
        Ok(r) => r,
        Err(e) => return CommandOutput::fail(2, e.to_string()),
    };
    let poly = instance.polynomial().ok();
    let report = match check_all(instance.root_set(), poly.as_ref()) {
        Ok(r) => r,
        Err(e) => return CommandOutput::fail(2, e.to_string()),
    };
    let roots_json: Vec<serde_json::Value> = instance
        .root_set()
        .roots()
        .iter()
        .map(|r| serde_json::json!([r.re, r.im]))
        .collect();
    let out = serde_json::json!({
        "kind": kind.as_str(),
        "n": record.n,
        "t": spec.t_or_r,
        "roots": roots_json,
        "sep": record.sep,
        "mahler": if record.mahler.is_finite() { serde_json::json!(record.mahler) } else { serde_json::Value::Null },
        "log_mahler": record.log_mahler,
        "ratio": record.ratio,
        "bounds_all_satisfied": report.all_satisfied(),
    });
    CommandOutput {
        exit: if report.all_satisfied() { 0 } else { 1 },
        stdout: to_pretty(&out),
    }
}

/// Runs the ensemble sweep, writes rows to `out`, and prints the summary.
pub fn cmd_sweep(spec: &EnsembleSpec, out: &Path, format: &str) -> CommandOutput {
    if let Err(e) = spec.validate() {
        return CommandOutput::fail(2, e.to_string());
    }
    let result = match run_sweep(spec) {
        Ok(r) => r,
        Err(e) => return CommandOutput::fail(2, e.to_string()),
    };
    let payload = match format {
        "csv" => result.to_csv(),
        "json" => to_pretty(&result.rows_json()),
        other => {
            return CommandOutput::fail(2, format!("unknown format {other:?} (csv or json)"))
        }
    };
    if let Err(e) = std::fs::write(out, payload) {
        return CommandOutput::fail(2, format!("cannot write {}: {e}", out.display()));
    }
    let exit = if result.violations > 0 { 1 } else { 0 };
    CommandOutput {
        exit,
        stdout: to_pretty(&result.summary_json(spec)),
    }
}

/// Prints the analytic inequality table: central binomial for
/// n in [3, n_max], Wendel for m in [1, min(n_max, 170)], Robbins for
/// n in [1, n_max]. Nonzero exit if any row fails.
pub fn cmd_lemmas(n_max: usize) -> CommandOutput {
    if n_max < 3 {
        return CommandOutput::fail(2, format!("n_max must be at least 3, got {n_max}"));
    }
    let mut lines = Vec::new();
    let mut failures = 0usize;
    let mut total = 0usize;
    let push = |name: &str, k: usize, check: mahler_sep::bounds::InequalityCheck,
                    lines: &mut Vec<String>| {
        lines.push(format!(
            "{name:<18} {k:>5}  lhs {:>24}  rhs {:>24}  {}",
            format!("{:.16e}", check.lhs),
            format!("{:.16e}", check.rhs),
            if check.ok { "ok" } else { "FAIL" }
        ));
        check.ok
    };
    for n in 3..=n_max {
        total += 1;
        if !push("central_binomial", n, central_binomial_check(n), &mut lines) {
            failures += 1;
        }
    }
    for m in 1..=n_max.min(170) {
        total += 1;
        if !push("wendel", m, wendel_check(m), &mut lines) {
            failures += 1;
        }
    }
    for n in 1..=n_max {
        total += 1;
        if !push("robbins", n, robbins_check(n), &mut lines) {
            failures += 1;
        }
    }
    lines.push(if failures == 0 {
        format!("all {total} checks passed")
    } else {
        format!("{failures} of {total} checks FAILED")
    });
    CommandOutput {
        exit: if failures == 0 { 0 } else { 1 },
        stdout: lines.join("\n"),
    }
}

/// Prints the separation window a Lehmer-conjecture counterexample with
/// Mahler measure mu would be confined to at degree n.
pub fn cmd_window(n: usize, mu: f64) -> CommandOutput {
    if n < 2 {
        return CommandOutput::fail(2, format!("n must be at least 2, got {n}"));
    }
    if !(mu.is_finite() && mu > 0.0) {
        return CommandOutput::fail(2, format!("mu must be finite and positive, got {mu}"));
    }
    let w = lehmer_window(n, mu);
    CommandOutput::ok(to_pretty(&serde_json::json!({
        "n": w.n,
        "mu": w.mu,
        "lo": w.lo,
        "hi": w.hi,
        "nonempty": w.lo < w.hi,
    })))
}

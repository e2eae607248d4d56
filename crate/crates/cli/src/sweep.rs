//! Randomized ensemble sweeps: draw samples, measure, run every bound, and
//! serialize one row per separable sample. Row order is fixed by
//! (degree, index) regardless of how many workers process the cells.

use anyhow::Result;
use mahler_sep::bounds::{check_all, BoundEntry, BoundReport};
use mahler_sep::measures::discriminant_exact;
use mahler_sep::poly::{Polynomial, RootSet};
use mahler_sep::rootfind::{find_roots, SolverConfig};
use mahler_sep::Error;
use rayon::prelude::*;

use crate::ensemble::{draw_sample, EnsembleKind, EnsembleSpec, Sample};

pub const CSV_VERSION_COMMENT: &str = "# mahler-sep sweep v1";

pub const CSV_COLUMNS: [&str; 28] = [
    "kind",
    "degree",
    "index",
    "n",
    "sig_t",
    "sig_s",
    "sep",
    "abs_sep",
    "mahler",
    "log_mahler",
    "disc_abs",
    "log_disc_abs",
    "mahler_lower_value",
    "mahler_lower_margin",
    "mahler_lower_integer_value",
    "mahler_lower_integer_margin",
    "trivial_upper_value",
    "trivial_upper_margin",
    "discriminant_upper_value",
    "discriminant_upper_margin",
    "main_upper_case",
    "main_upper_value",
    "main_upper_margin",
    "improved_upper_value",
    "improved_upper_margin",
    "packing_ok",
    "all_pass",
    "norm_ratio",
];

/// One separable sample's measurements and bound results, flattened to the
/// fixed column set.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub kind: &'static str,
    pub degree: usize,
    pub index: usize,
    pub n: usize,
    pub sig: Option<(usize, usize)>,
    pub sep: f64,
    pub abs_sep: Option<f64>,
    pub mahler: f64,
    pub log_mahler: f64,
    pub disc_abs: f64,
    pub log_disc_abs: f64,
    /// (value, margin) pairs; NaN when the bound is not applicable.
    pub mahler_lower: (f64, f64),
    pub mahler_lower_integer: (f64, f64),
    pub trivial_upper: (f64, f64),
    pub discriminant_upper: (f64, f64),
    pub main_upper_case: &'static str,
    pub main_upper: (f64, f64),
    pub improved_upper: (f64, f64),
    pub packing_ok: bool,
    pub all_pass: bool,
    /// sep * sqrt(n) / M^{1/(n-1)}, the empirical stand-in for the sqrt(n)
    /// bound's constant.
    pub norm_ratio: f64,
}

enum RowOutcome {
    Row(Box<SweepRow>),
    NonSeparable,
    SolverFailure,
}

pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub rejected_non_separable: usize,
    pub solver_failures: usize,
    pub violations: usize,
}

fn value_margin(e: Option<&BoundEntry>) -> (f64, f64) {
    match e {
        Some(e) if e.applicable => (e.value, e.margin),
        _ => (f64::NAN, f64::NAN),
    }
}

fn build_row(
    kind: &'static str,
    degree: usize,
    index: usize,
    report: &BoundReport,
) -> SweepRow {
    let find = |id: &str| report.entries.iter().find(|e| e.bound_id == id);
    let main = report
        .entries
        .iter()
        .find(|e| e.bound_id.starts_with("main_upper"));
    let packing_ok = report
        .entries
        .iter()
        .filter(|e| e.bound_id.starts_with("packing"))
        .all(|e| e.satisfied);
    let m = &report.measured;
    let sep = m.sep.expect("checked root sets have a separation");
    let nf = report.n as f64;
    let norm_ratio = sep * nf.sqrt() * (-m.log_mahler / (nf - 1.0)).exp();
    SweepRow {
        kind,
        degree,
        index,
        n: report.n,
        sig: m.signature.map(|s| (s.t, s.s)),
        sep,
        abs_sep: m.abs_sep,
        mahler: m.mahler,
        log_mahler: m.log_mahler,
        disc_abs: m.log_abs_disc.exp(),
        log_disc_abs: m.log_abs_disc,
        mahler_lower: value_margin(find("mahler_lower")),
        mahler_lower_integer: value_margin(find("mahler_lower_integer")),
        trivial_upper: value_margin(find("trivial_upper")),
        discriminant_upper: value_margin(find("discriminant_upper")),
        main_upper_case: main
            .map(|e| {
                if e.bound_id == "main_upper_nonreal_min" {
                    "nonreal_min"
                } else {
                    "general"
                }
            })
            .unwrap_or(""),
        main_upper: value_margin(main),
        improved_upper: value_margin(find("improved_upper")),
        packing_ok,
        all_pass: report.all_satisfied(),
        norm_ratio,
    }
}

fn process_cell(spec: &EnsembleSpec, degree: usize, index: usize) -> RowOutcome {
    let kind = spec.kind.as_str();
    let report = match draw_sample(spec, degree, index) {
        Sample::IntCoeff(coeffs) => {
            let p = match Polynomial::from_coefficients(&coeffs) {
                Ok(p) => p,
                Err(_) => return RowOutcome::SolverFailure,
            };
            // Exact zero discriminant identifies repeated roots before any
            // floating point is involved; bits() is 0 exactly for zero.
            match discriminant_exact(&p) {
                Ok(d) if d.bits() == 0 => return RowOutcome::NonSeparable,
                Ok(_) => {}
                Err(_) => return RowOutcome::SolverFailure,
            }
            let rs = match find_roots(&p, &SolverConfig::default()) {
                Ok(rs) => rs,
                Err(Error::NonConvergence { .. }) => return RowOutcome::SolverFailure,
                Err(_) => return RowOutcome::SolverFailure,
            };
            match check_all(&rs, Some(&p)) {
                Ok(report) => report,
                Err(Error::NotSeparable { .. }) => return RowOutcome::NonSeparable,
                Err(_) => return RowOutcome::SolverFailure,
            }
        }
        Sample::Roots(roots) => {
            let rs = RootSet::exact(roots);
            match check_all(&rs, None) {
                Ok(report) => report,
                Err(Error::NotSeparable { .. }) => return RowOutcome::NonSeparable,
                Err(_) => return RowOutcome::SolverFailure,
            }
        }
    };
    RowOutcome::Row(Box::new(build_row(kind, degree, index, &report)))
}

/// Runs the whole sweep. Cells are processed in parallel; results are
/// collected back in (degree, index) order, so output is identical for any
/// worker count.
pub fn run_sweep(spec: &EnsembleSpec) -> Result<SweepResult> {
    spec.validate()?;
    let cells: Vec<(usize, usize)> = (spec.degree_lo..=spec.degree_hi)
        .flat_map(|d| (0..spec.count).map(move |i| (d, i)))
        .collect();
    let outcomes: Vec<RowOutcome> = cells
        .par_iter()
        .map(|&(degree, index)| process_cell(spec, degree, index))
        .collect();

    let mut rows = Vec::new();
    let (mut rejected, mut failures) = (0usize, 0usize);
    for outcome in outcomes {
        match outcome {
            RowOutcome::Row(row) => rows.push(*row),
            RowOutcome::NonSeparable => rejected += 1,
            RowOutcome::SolverFailure => failures += 1,
        }
    }
    let violations = rows.iter().filter(|r| !r.all_pass).count();
    Ok(SweepResult {
        rows,
        rejected_non_separable: rejected,
        solver_failures: failures,
        violations,
    })
}

/// 17 significant digits; empty for undefined (NaN / None) fields.
fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

fn fmt_opt_usize(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl SweepRow {
    pub fn to_csv_line(&self) -> String {
        let fields = [
            self.kind.to_string(),
            self.degree.to_string(),
            self.index.to_string(),
            self.n.to_string(),
            fmt_opt_usize(self.sig.map(|s| s.0)),
            fmt_opt_usize(self.sig.map(|s| s.1)),
            fmt_float(self.sep),
            fmt_opt(self.abs_sep),
            fmt_float(self.mahler),
            fmt_float(self.log_mahler),
            fmt_float(self.disc_abs),
            fmt_float(self.log_disc_abs),
            fmt_float(self.mahler_lower.0),
            fmt_float(self.mahler_lower.1),
            fmt_float(self.mahler_lower_integer.0),
            fmt_float(self.mahler_lower_integer.1),
            fmt_float(self.trivial_upper.0),
            fmt_float(self.trivial_upper.1),
            fmt_float(self.discriminant_upper.0),
            fmt_float(self.discriminant_upper.1),
            self.main_upper_case.to_string(),
            fmt_float(self.main_upper.0),
            fmt_float(self.main_upper.1),
            fmt_float(self.improved_upper.0),
            fmt_float(self.improved_upper.1),
            self.packing_ok.to_string(),
            self.all_pass.to_string(),
            fmt_float(self.norm_ratio),
        ];
        fields.join(",")
    }

    pub fn to_json(&self) -> serde_json::Value {
        fn num(x: f64) -> serde_json::Value {
            if x.is_finite() {
                serde_json::json!(x)
            } else {
                serde_json::Value::Null
            }
        }
        serde_json::json!({
            "kind": self.kind,
            "degree": self.degree,
            "index": self.index,
            "n": self.n,
            "sig_t": self.sig.map(|s| s.0),
            "sig_s": self.sig.map(|s| s.1),
            "sep": num(self.sep),
            "abs_sep": self.abs_sep.map_or(serde_json::Value::Null, num),
            "mahler": num(self.mahler),
            "log_mahler": num(self.log_mahler),
            "disc_abs": num(self.disc_abs),
            "log_disc_abs": num(self.log_disc_abs),
            "mahler_lower_value": num(self.mahler_lower.0),
            "mahler_lower_margin": num(self.mahler_lower.1),
            "mahler_lower_integer_value": num(self.mahler_lower_integer.0),
            "mahler_lower_integer_margin": num(self.mahler_lower_integer.1),
            "trivial_upper_value": num(self.trivial_upper.0),
            "trivial_upper_margin": num(self.trivial_upper.1),
            "discriminant_upper_value": num(self.discriminant_upper.0),
            "discriminant_upper_margin": num(self.discriminant_upper.1),
            "main_upper_case": self.main_upper_case,
            "main_upper_value": num(self.main_upper.0),
            "main_upper_margin": num(self.main_upper.1),
            "improved_upper_value": num(self.improved_upper.0),
            "improved_upper_margin": num(self.improved_upper.1),
            "packing_ok": self.packing_ok,
            "all_pass": self.all_pass,
            "norm_ratio": num(self.norm_ratio),
        })
    }
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(CSV_VERSION_COMMENT);
        out.push('\n');
        out.push_str(&CSV_COLUMNS.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.to_csv_line());
            out.push('\n');
        }
        out
    }

    pub fn rows_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.rows.iter().map(|r| r.to_json()).collect())
    }

    pub fn summary_json(&self, spec: &EnsembleSpec) -> serde_json::Value {
        let per_degree: Vec<serde_json::Value> = (spec.degree_lo..=spec.degree_hi)
            .map(|d| {
                let degree_rows = self.rows.iter().filter(|r| r.degree == d);
                let count = degree_rows.clone().count();
                let max_ratio = degree_rows
                    .map(|r| r.norm_ratio)
                    .fold(f64::NEG_INFINITY, f64::max);
                serde_json::json!({
                    "degree": d,
                    "rows": count,
                    "max_norm_ratio": if count > 0 { serde_json::json!(max_ratio) } else { serde_json::Value::Null },
                })
            })
            .collect();
        serde_json::json!({
            "kind": spec.kind.as_str(),
            "degree_lo": spec.degree_lo,
            "degree_hi": spec.degree_hi,
            "count_per_degree": spec.count,
            "seed": spec.seed,
            "height": if spec.kind == EnsembleKind::IntCoeff { serde_json::json!(spec.height) } else { serde_json::Value::Null },
            "radius": if spec.kind != EnsembleKind::IntCoeff { serde_json::json!(spec.radius) } else { serde_json::Value::Null },
            "rows": self.rows.len(),
            "rejected_non_separable": self.rejected_non_separable,
            "solver_failures": self.solver_failures,
            "violations": self.violations,
            "per_degree": per_degree,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec(kind: EnsembleKind) -> EnsembleSpec {
        EnsembleSpec {
            kind,
            degree_lo: 2,
            degree_hi: 5,
            height: 10,
            radius: 3.0,
            count: 25,
            seed: 7,
        }
    }

    #[test]
    fn int_sweep_has_no_violations_or_failures() {
        let spec = small_spec(EnsembleKind::IntCoeff);
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.violations, 0);
        assert_eq!(result.solver_failures, 0);
        assert_eq!(
            result.rows.len() + result.rejected_non_separable,
            4 * spec.count
        );
        // Integer samples carry the integer-case lower bound.
        assert!(result.rows.iter().all(|r| r.mahler_lower_integer.0.is_finite()));
    }

    #[test]
    fn root_ensembles_pass_and_pack() {
        for kind in [EnsembleKind::DiskRoots, EnsembleKind::RealRoots] {
            let result = run_sweep(&small_spec(kind)).unwrap();
            assert_eq!(result.violations, 0, "{kind:?}");
            assert!(result.rows.iter().all(|r| r.packing_ok));
        }
    }

    #[test]
    fn real_roots_rows_use_totally_real_bound() {
        let mut spec = small_spec(EnsembleKind::RealRoots);
        spec.degree_lo = 4;
        let result = run_sweep(&spec).unwrap();
        for row in &result.rows {
            assert_eq!(row.sig.map(|s| s.1), Some(0));
            assert!(row.improved_upper.0.is_finite());
            assert!(row.improved_upper.1 >= -1e-9);
        }
    }

    #[test]
    fn csv_shape_is_stable() {
        let result = run_sweep(&small_spec(EnsembleKind::IntCoeff)).unwrap();
        let csv = result.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_VERSION_COMMENT));
        let header = lines.next().unwrap();
        assert_eq!(header.split(',').count(), CSV_COLUMNS.len());
        for line in lines {
            assert_eq!(line.split(',').count(), CSV_COLUMNS.len(), "{line}");
        }
    }

    #[test]
    fn csv_is_identical_across_worker_counts() {
        let spec = small_spec(EnsembleKind::IntCoeff);
        let csv_for = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| run_sweep(&spec).unwrap().to_csv())
        };
        assert_eq!(csv_for(1), csv_for(4));
    }

    #[test]
    fn summary_reports_per_degree_ratios() {
        let spec = small_spec(EnsembleKind::IntCoeff);
        let result = run_sweep(&spec).unwrap();
        let summary = result.summary_json(&spec);
        assert_eq!(summary["violations"], 0);
        let per_degree = summary["per_degree"].as_array().unwrap();
        assert_eq!(per_degree.len(), 4);
        for cell in per_degree {
            let n = cell["degree"].as_u64().unwrap() as f64;
            if let Some(ratio) = cell["max_norm_ratio"].as_f64() {
                // No row exceeds the sqrt(n) bound constant.
                assert!(ratio <= 2.0f64.min(34.0 / n.sqrt()) * n.sqrt() + 1e-9);
            }
        }
    }
}

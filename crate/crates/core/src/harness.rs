//! Catalog experiments: equal-spacing baseline vs. optimized knots, and
//! plot-data export.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{Catalog, CatalogEntry, SmoothCurve};
use crate::error::{KnotError, Result};
use crate::objective::ObjectiveKind;
use crate::pl::{build_pl, error_interior_squared, KnotVector};
use crate::spg::{measure, solve, SpgConfig};

/// Number of uniform sample rows in plot data.
pub const PLOT_SAMPLES: usize = 500;

/// Which objective a catalog row is run under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MeasureChoice {
    /// Area gap for rows flagged concave, squared gaps otherwise.
    Auto,
    Concave,
    General,
}

impl MeasureChoice {
    pub fn resolve(self, concave: bool) -> ObjectiveKind {
        match self {
            MeasureChoice::Concave => ObjectiveKind::ConcaveArea,
            MeasureChoice::General => ObjectiveKind::GeneralSquared,
            MeasureChoice::Auto if concave => ObjectiveKind::ConcaveArea,
            MeasureChoice::Auto => ObjectiveKind::GeneralSquared,
        }
    }
}

impl FromStr for MeasureChoice {
    type Err = KnotError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(MeasureChoice::Auto),
            "concave" => Ok(MeasureChoice::Concave),
            "general" => Ok(MeasureChoice::General),
            _ => Err(KnotError::InvalidConfig(format!(
                "unknown measure `{s}` (auto|concave|general)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Concavity {
    Concave,
    NonConcave,
}

impl FromStr for Concavity {
    type Err = KnotError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "concave" => Ok(Concavity::Concave),
            "nonconcave" | "non-concave" => Ok(Concavity::NonConcave),
            _ => Err(KnotError::InvalidConfig(format!(
                "unknown filter `{s}` (concave|nonconcave)"
            ))),
        }
    }
}

/// Selects catalog rows. Empty `names` means all rows.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Filter {
    pub names: Vec<String>,
    pub only: Option<Concavity>,
}

impl Filter {
    pub fn select<'c>(&self, catalog: &'c Catalog) -> Result<Vec<&'c CatalogEntry>> {
        for name in &self.names {
            if catalog.get(name).is_none() {
                return Err(KnotError::Catalog(format!(
                    "no curve named `{name}` in catalog"
                )));
            }
        }
        Ok(catalog
            .entries()
            .iter()
            .filter(|e| self.names.is_empty() || self.names.iter().any(|n| n == &e.name))
            .filter(|e| match self.only {
                Some(Concavity::Concave) => e.concave,
                Some(Concavity::NonConcave) => !e.concave,
                None => true,
            })
            .collect())
    }
}

/// One curve, its knot budgets and how to run them.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub curve_name: String,
    pub knot_counts: Vec<usize>,
    pub measure: MeasureChoice,
    pub solver_config: SpgConfig,
}

impl ExperimentSpec {
    pub fn new(curve_name: impl Into<String>) -> Self {
        Self {
            curve_name: curve_name.into(),
            knot_counts: vec![4, 8],
            measure: MeasureChoice::Auto,
            solver_config: SpgConfig::default(),
        }
    }
}

/// Builds one spec per selected row, in catalog order.
pub fn plan(
    catalog: &Catalog,
    filter: &Filter,
    knot_counts: &[usize],
    measure: MeasureChoice,
    config: &SpgConfig,
) -> Result<Vec<ExperimentSpec>> {
    if knot_counts.is_empty() || knot_counts.contains(&0) {
        return Err(KnotError::InvalidConfig(
            "knot counts must be positive".into(),
        ));
    }
    config.validate()?;
    Ok(filter
        .select(catalog)?
        .into_iter()
        .map(|e| ExperimentSpec {
            curve_name: e.name.clone(),
            knot_counts: knot_counts.to_vec(),
            measure,
            solver_config: config.clone(),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub curve_name: String,
    pub measure: ObjectiveKind,
    pub a: f64,
    pub b: f64,
    pub n_knots: usize,
    /// Error at equally spaced knots, in `measure`.
    pub orig_error: Option<f64>,
    pub spg_error: Option<f64>,
    pub reduction_pct: Option<f64>,
    /// Squared gaps over interior-to-interior segments at equal spacing.
    /// Diagnostic only; see the README.
    pub orig_interior_sq: Option<f64>,
    pub spg_interior_sq: Option<f64>,
    pub iterations: Option<usize>,
    pub termination: Option<String>,
    pub final_knots: Vec<f64>,
    /// `ok`, or the error that stopped this row.
    pub status: String,
}

impl ResultRow {
    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

/// Runs every spec against `catalog`. Rows are computed in parallel and
/// returned in spec order; a failing row is recorded, not propagated.
pub fn run_catalog(catalog: &Catalog, specs: &[ExperimentSpec]) -> Result<Vec<ResultRow>> {
    let mut jobs = Vec::new();
    for spec in specs {
        let entry = catalog.get(&spec.curve_name).ok_or_else(|| {
            KnotError::Catalog(format!("no curve named `{}` in catalog", spec.curve_name))
        })?;
        spec.solver_config.validate()?;
        for &n in &spec.knot_counts {
            jobs.push((entry, spec, n));
        }
    }
    Ok(jobs
        .par_iter()
        .map(|&(entry, spec, n)| {
            run_row(
                entry,
                spec.measure.resolve(entry.concave),
                n,
                &spec.solver_config,
            )
        })
        .collect())
}

/// Runs one catalog row.
pub fn run_row(
    entry: &CatalogEntry,
    kind: ObjectiveKind,
    n: usize,
    config: &SpgConfig,
) -> ResultRow {
    let mut row = ResultRow {
        curve_name: entry.name.clone(),
        measure: kind,
        a: entry.a,
        b: entry.b,
        n_knots: n,
        orig_error: None,
        spg_error: None,
        reduction_pct: None,
        orig_interior_sq: None,
        spg_interior_sq: None,
        iterations: None,
        termination: None,
        final_knots: Vec::new(),
        status: "ok".into(),
    };
    if let Err(e) = fill_row(&mut row, entry, kind, n, config) {
        row.status = format!("error: {e}");
    }
    row
}

fn fill_row(
    row: &mut ResultRow,
    entry: &CatalogEntry,
    kind: ObjectiveKind,
    n: usize,
    config: &SpgConfig,
) -> Result<()> {
    let curve = &entry.curve;
    let even = KnotVector::equally_spaced(entry.a, entry.b, n)?;
    let orig = measure(curve, &even, kind)?;
    row.orig_error = Some(orig);
    row.orig_interior_sq = Some(error_interior_squared(curve, &even)?);
    let report = solve(curve, kind, entry.a, entry.b, n, config)?;
    row.spg_error = Some(report.final_error);
    row.reduction_pct = Some(if orig != 0.0 {
        (orig - report.final_error) / orig * 100.0
    } else {
        0.0
    });
    row.spg_interior_sq = Some(error_interior_squared(curve, &report.final_knots)?);
    row.iterations = Some(report.iterations);
    row.termination = Some(report.termination.label().to_string());
    row.final_knots = report.final_knots.interior().to_vec();
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = KnotError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(KnotError::InvalidConfig(format!(
                "unknown format `{s}` (csv|json)"
            ))),
        }
    }
}

/// Scientific notation with seven significant digits and a signed
/// two-digit exponent, e.g. `6.166057E-07`.
pub fn format_sci(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let s = format!("{v:.6E}");
    let (mantissa, exp) = s.split_once('E').expect("E in exponent format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}E{sign}{:02}", exp.abs())
}

fn opt_sci(v: Option<f64>) -> String {
    v.map(format_sci).unwrap_or_default()
}

pub const CSV_HEADER: [&str; 14] = [
    "curve",
    "measure",
    "a",
    "b",
    "n_knots",
    "orig_error",
    "spg_error",
    "reduction_pct",
    "orig_interior_sq",
    "spg_interior_sq",
    "iterations",
    "termination",
    "final_knots",
    "status",
];

pub fn rows_to_csv(rows: &[ResultRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let knots: Vec<String> = r.final_knots.iter().map(|x| format!("{x:.10}")).collect();
        w.write_record([
            r.curve_name.clone(),
            r.measure.label().to_string(),
            r.a.to_string(),
            r.b.to_string(),
            r.n_knots.to_string(),
            opt_sci(r.orig_error),
            opt_sci(r.spg_error),
            r.reduction_pct
                .map(|p| format!("{p:.2}"))
                .unwrap_or_default(),
            opt_sci(r.orig_interior_sq),
            opt_sci(r.spg_interior_sq),
            r.iterations.map(|i| i.to_string()).unwrap_or_default(),
            r.termination.clone().unwrap_or_default(),
            knots.join(";"),
            r.status.clone(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| KnotError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn rows_to_json(rows: &[ResultRow]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(rows)?;
    s.push('\n');
    Ok(s)
}

pub fn render(rows: &[ResultRow], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Csv => rows_to_csv(rows),
        OutputFormat::Json => rows_to_json(rows),
    }
}

/// One line of plot data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlotRow {
    /// `sample` or `knot`.
    pub kind: &'static str,
    pub x: f64,
    pub f: f64,
    pub fhat: f64,
}

/// `PLOT_SAMPLES` uniform samples of `(x, f(x), f̂(x))` followed by one row
/// per knot, endpoints included.
pub fn plot_rows<C: SmoothCurve>(curve: &C, knots: &KnotVector) -> Result<Vec<PlotRow>> {
    let pl = build_pl(curve, knots)?;
    let (a, b) = (knots.a(), knots.b());
    let at = |kind, x: f64| -> Result<PlotRow> {
        let fhat = pl.eval(x).ok_or_else(|| KnotError::Domain {
            what: "plot abscissa outside [a, b]".into(),
            x,
        })?;
        Ok(PlotRow {
            kind,
            x,
            f: curve.eval(x)?,
            fhat,
        })
    };
    let step = (b - a) / (PLOT_SAMPLES - 1) as f64;
    let mut rows = (0..PLOT_SAMPLES)
        .map(|j| {
            at(
                "sample",
                if j + 1 == PLOT_SAMPLES {
                    b
                } else {
                    a + j as f64 * step
                },
            )
        })
        .collect::<Result<Vec<_>>>()?;
    for x in knots.points() {
        rows.push(at("knot", x)?);
    }
    Ok(rows)
}

pub fn plot_csv<C: SmoothCurve>(curve: &C, knots: &KnotVector) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["kind", "x", "f", "fhat"])?;
    for r in plot_rows(curve, knots)? {
        w.write_record([
            r.kind.to_string(),
            format!("{:.12e}", r.x),
            format!("{:.12e}", r.f),
            format!("{:.12e}", r.fhat),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| KnotError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Writes plot data for `curve` at `knots` to `path`. Nothing is written if
/// evaluation fails.
pub fn emit_plot_data<C: SmoothCurve>(
    curve: &C,
    knots: &KnotVector,
    path: impl AsRef<Path>,
) -> Result<()> {
    let text = plot_csv(curve, knots)?;
    fs::write(path, text)?;
    Ok(())
}

/// Human-readable results table.
pub struct Table<'r>(pub &'r [ResultRow]);

impl fmt::Display for Table<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<12} {:>8} {:>6} {:>14} {:>14} {:>8} {:>6}  status",
            "curve", "measure", "knots", "orig error", "SPG error", "red %", "iters"
        )?;
        for r in self.0 {
            writeln!(
                f,
                "{:<12} {:>8} {:>6} {:>14} {:>14} {:>8} {:>6}  {}",
                r.curve_name,
                r.measure.label(),
                r.n_knots,
                opt_sci(r.orig_error),
                opt_sci(r.spg_error),
                r.reduction_pct
                    .map(|p| format!("{p:.2}"))
                    .unwrap_or_default(),
                r.iterations.map(|i| i.to_string()).unwrap_or_default(),
                r.termination.as_deref().unwrap_or(&r.status),
            )?;
        }
        Ok(())
    }
}

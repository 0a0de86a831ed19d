//! Acceptance criteria, one verdict line each.
//!
//! Runs as a plain binary so every criterion is evaluated and reported even
//! when an earlier one fails. Exit status is nonzero if any criterion fails.
//!
//!     cargo test --test acceptance
//!     cargo test --test acceptance -- AC4      # substring filter

mod common;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::time::{Duration, Instant};

use common::*;
use knotopt::harness::{
    plan, rows_to_csv, run_catalog, Concavity, Filter, MeasureChoice, ResultRow,
};
use knotopt::objective::{gradient, objective};
use knotopt::{
    error_concave, error_general, error_interior_squared, project, spg, Catalog, KnotVector,
    ObjectiveKind, Quadratic, SpgConfig, Termination,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE_RTOL: f64 = 1e-3;
const TABLE_RUNTIME: Duration = Duration::from_secs(5);
const REDUCTION_BAR_PCT: f64 = 80.0;
const REDUCTION_EXEMPT: &str = "weibull2a";
const IMPROVEMENT_SLACK: f64 = 1e-12;
const QUAD_KNOT_TOL: f64 = 1e-6;
const QUAD_MAX_ITER: usize = 200;
const QUAD_RUNTIME: Duration = Duration::from_millis(100);
const GRAD_POINTS: usize = 50;
const GRAD_RTOL: f64 = 1e-6;
const GRAD_ATOL: f64 = 1e-9;
const GRAD_STEP_FRAC: f64 = 1e-4;
const PROJ_SAMPLES: usize = 1000;
const PROJ_MAX_N: usize = 6;
const PROJ_TOL: f64 = 1e-9;
const INTERIOR_RTOL: f64 = 1e-5;
const SEED: u64 = 42;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn even(name: &str, n: usize) -> (knotopt::CatalogEntry, KnotVector) {
    let e = Catalog::builtin().get(name).unwrap().clone();
    let k = KnotVector::equally_spaced(e.a, e.b, n).unwrap();
    (e, k)
}

fn ac1_table2_orig() -> Verdict {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    let mut misses = 0;
    for (name, n, want) in TABLE2_ORIG {
        let (e, k) = even(name, n);
        let got = error_concave(&e.curve, &k).unwrap();
        let r = rel_err(got, want);
        worst = worst.max(r);
        if r > TABLE_RTOL {
            misses += 1;
        }
        println!("    {name:<12} {n}  area gap {got:.6e}  published {want:.6e}  rel {r:.2e}");
    }
    let elapsed = t0.elapsed();
    verdict(
        misses == 0 && elapsed < TABLE_RUNTIME,
        format!(
            "{misses}/14 rows outside rel {TABLE_RTOL:e}, worst rel {worst:.2e}, {elapsed:.2?}"
        ),
    )
}

fn ac2_table3_orig() -> Verdict {
    let mut worst = 0.0f64;
    let mut misses = 0;
    for (name, n, want) in TABLE3_ORIG {
        let (e, k) = even(name, n);
        let got = error_general(&e.curve, &k).unwrap();
        let r = rel_err(got, want);
        worst = worst.max(r);
        if r > TABLE_RTOL {
            misses += 1;
        }
        println!("    {name:<12} {n}  sum gap^2 {got:.6e}  published {want:.6e}  rel {r:.2e}");
    }
    verdict(
        misses == 0,
        format!("{misses}/26 rows outside rel {TABLE_RTOL:e}, worst rel {worst:.2e}"),
    )
}

fn table2_runs() -> Vec<ResultRow> {
    let catalog = Catalog::builtin();
    let filter = Filter {
        names: vec![],
        only: Some(Concavity::Concave),
    };
    let specs = plan(
        &catalog,
        &filter,
        &[4, 8],
        MeasureChoice::Concave,
        &SpgConfig::default(),
    )
    .unwrap();
    run_catalog(&catalog, &specs).unwrap()
}

fn ac3_improvement(rows: &[ResultRow]) -> Verdict {
    let mut worse = 0;
    let mut below_bar = Vec::new();
    for r in rows {
        let (orig, spg) = (r.orig_error.unwrap(), r.spg_error.unwrap());
        let red = r.reduction_pct.unwrap();
        if spg > orig + IMPROVEMENT_SLACK {
            worse += 1;
        }
        let gated = r.n_knots == 4 && r.curve_name != REDUCTION_EXEMPT;
        if gated && red < REDUCTION_BAR_PCT {
            below_bar.push(format!("{}/4 {red:.1}%", r.curve_name));
        }
        println!(
            "    {:<12} {}  {orig:.6e} -> {spg:.6e}  reduction {red:6.2}%{}",
            r.curve_name,
            r.n_knots,
            if gated { "  (gated)" } else { "" }
        );
    }
    verdict(
        worse == 0 && below_bar.is_empty(),
        format!(
            "{} rows, {worse} worse than equal spacing; 4-knot rows below {REDUCTION_BAR_PCT}%: [{}]",
            rows.len(),
            below_bar.join(", ")
        ),
    )
}

fn ac4_parabola() -> Verdict {
    let q = Quadratic::new(-1.0, 0.0, 4.0);
    let t0 = Instant::now();
    let r = spg::solve(
        &q,
        ObjectiveKind::ConcaveArea,
        0.0,
        2.0,
        3,
        &SpgConfig::default(),
    )
    .unwrap();
    let elapsed = t0.elapsed();
    let dev = r
        .final_knots
        .interior()
        .iter()
        .zip([0.5, 1.0, 1.5])
        .fold(0.0f64, |m, (x, e)| m.max((x - e).abs()));
    verdict(
        dev <= QUAD_KNOT_TOL
            && r.termination == Termination::Stationary
            && r.iterations < QUAD_MAX_ITER
            && elapsed < QUAD_RUNTIME,
        format!(
            "knots {:?}, max dev {dev:.1e}, {} after {} iterations, {elapsed:.2?}",
            r.final_knots.interior(),
            r.termination.label(),
            r.iterations
        ),
    )
}

fn ac5_gradients() -> Verdict {
    let catalog = Catalog::builtin();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut checked, mut failures, mut worst, mut max_abs) = (0usize, 0usize, 0.0f64, 0.0f64);
    let mut first_failure = None;
    for e in catalog.entries() {
        let h = GRAD_STEP_FRAC * (e.b - e.a);
        for kind in [ObjectiveKind::ConcaveArea, ObjectiveKind::GeneralSquared] {
            for _ in 0..GRAD_POINTS {
                let n = rng.gen_range(1..=8);
                let k = random_knots(&mut rng, e.a, e.b, n, 5.0 * h);
                let analytic = gradient(&e.curve, &k, kind).unwrap();
                let f = |x: &[f64]| {
                    objective(
                        &e.curve,
                        &KnotVector::new(e.a, e.b, x.to_vec()).unwrap(),
                        kind,
                    )
                    .unwrap()
                };
                let numeric = fd_gradient(f, k.interior(), h);
                for (i, (g, d)) in analytic.iter().zip(&numeric).enumerate() {
                    checked += 1;
                    let scale = g.abs().max(d.abs());
                    max_abs = max_abs.max((g - d).abs());
                    if scale >= 1e-3 {
                        worst = worst.max((g - d).abs() / scale);
                    }
                    if !close(*g, *d, GRAD_RTOL, GRAD_ATOL) {
                        failures += 1;
                        first_failure.get_or_insert_with(|| {
                            format!(
                                "{} {} x={:?} i={i}: {g:e} vs {d:e}",
                                e.name,
                                kind.label(),
                                k.interior()
                            )
                        });
                    }
                }
            }
        }
    }
    if let Some(f) = &first_failure {
        println!("    first failure: {f}");
    }
    verdict(
        failures == 0,
        format!("{checked} components over 20 curves x 2 kinds x {GRAD_POINTS} points, {failures} failures, max abs diff {max_abs:.1e}, worst rel where |g| >= 1e-3 {worst:.1e}"),
    )
}

fn ac6_projection() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut mismatches, mut not_idempotent, mut infeasible) = (0, 0, 0);
    let mut worst = 0.0f64;
    for n in 1..=PROJ_MAX_N {
        for _ in 0..PROJ_SAMPLES {
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let p = project(&v).unwrap();
            let oracle = brute_force_project(&v);
            let dev = p
                .iter()
                .zip(&oracle)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            worst = worst.max(dev);
            if dev > PROJ_TOL {
                mismatches += 1;
            }
            if project(&p).unwrap() != p {
                not_idempotent += 1;
            }
            if p[0] < 0.0 || p.windows(2).any(|w| w[0] > w[1]) {
                infeasible += 1;
            }
        }
    }
    verdict(
        mismatches + not_idempotent + infeasible == 0,
        format!(
            "{} vectors: {mismatches} oracle mismatches (worst {worst:.1e}), {not_idempotent} not idempotent, {infeasible} infeasible",
            PROJ_SAMPLES * PROJ_MAX_N
        ),
    )
}

fn full_catalog_csv() -> (String, Vec<ResultRow>) {
    let catalog = Catalog::builtin();
    let config = SpgConfig {
        seed: SEED,
        ..SpgConfig::default()
    };
    let specs = plan(
        &catalog,
        &Filter::default(),
        &[4, 8],
        MeasureChoice::Auto,
        &config,
    )
    .unwrap();
    let rows = run_catalog(&catalog, &specs).unwrap();
    (rows_to_csv(&rows).unwrap(), rows)
}

fn digest(s: &str) -> u64 {
    let mut h = DefaultHasher::new();
    s.hash(&mut h);
    h.finish()
}

fn ac7_determinism(first: &str) -> Verdict {
    let (second, _) = full_catalog_csv();
    let (d1, d2) = (digest(first), digest(&second));
    verdict(
        first == second,
        format!("{} bytes, digests {d1:016x} / {d2:016x}", first.len()),
    )
}

fn ac8_published_spg(table2: &[ResultRow], auto: &[ResultRow]) -> Verdict {
    println!(
        "    {:<12} {:>2} {:>8} {:>13} {:>13} {:>13}",
        "curve", "n", "measure", "ours", "ours interior", "published"
    );
    for (r, want) in table2.iter().zip(TABLE2_SPG) {
        println!(
            "    {:<12} {:>2} {:>8} {:>13.6e} {:>13.6e} {want:>13.6e}",
            r.curve_name,
            r.n_knots,
            r.measure.label(),
            r.spg_error.unwrap(),
            r.spg_interior_sq.unwrap()
        );
    }
    let general: Vec<_> = auto
        .iter()
        .filter(|r| r.measure == ObjectiveKind::GeneralSquared)
        .collect();
    for (r, want) in general.iter().zip(TABLE3_SPG) {
        println!(
            "    {:<12} {:>2} {:>8} {:>13.6e} {:>13.6e} {want:>13.6e}",
            r.curve_name,
            r.n_knots,
            r.measure.label(),
            r.spg_error.unwrap(),
            r.spg_interior_sq.unwrap()
        );
    }
    verdict(
        true,
        "informational; published SPG columns are tracked, not matched",
    )
}

fn interior_measure_reproduction() -> Verdict {
    let catalog = Catalog::builtin();
    let mut worst = 0.0f64;
    let mut misses = 0;
    for (name, n, want) in TABLE2_ORIG.iter().chain(&TABLE3_ORIG) {
        let e = catalog.get(name).unwrap();
        let k = KnotVector::equally_spaced(e.a, e.b, *n).unwrap();
        let got = if name.starts_with("algebraic") {
            let (v1, v2, s, d1, d2) = e.curve.params();
            let alt = MultipliedAlgebraic {
                v1,
                v2,
                s: s.unwrap(),
                d1,
                d2,
            };
            error_interior_squared(&alt, &k).unwrap()
        } else {
            error_interior_squared(&e.curve, &k).unwrap()
        };
        let r = rel_err(got, *want);
        worst = worst.max(r);
        if r > INTERIOR_RTOL {
            misses += 1;
            println!("    {name} {n}: {got:.6e} vs {want:.6e}");
        }
    }
    verdict(misses == 0, format!("40 published orig errors, {misses} outside rel {INTERIOR_RTOL:e}, worst rel {worst:.1e}"))
}

fn main() {
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let wanted = |id: &str| filter.is_empty() || filter.iter().any(|f| id.contains(f.as_str()));

    let mut failed = Vec::new();
    let mut report = |id: &str, title: &str, run: &mut dyn FnMut() -> Verdict| {
        if !wanted(id) {
            return;
        }
        println!("{id} {title}");
        let v = run();
        let tag = if id.starts_with("AC") {
            "[PRIMARY]"
        } else {
            "[supplementary]"
        };
        println!(
            "{id} {tag} {title}: {} ({})",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        if !v.pass {
            failed.push(id.to_string());
        }
    };

    report(
        "AC1",
        "equal-spacing area gap matches published orig error",
        &mut ac1_table2_orig,
    );
    report(
        "AC2",
        "equal-spacing squared gaps match published orig error",
        &mut ac2_table3_orig,
    );
    let mut table2 = Vec::new();
    report(
        "AC3",
        "optimized knots improve on equal spacing",
        &mut || {
            table2 = table2_runs();
            ac3_improvement(&table2)
        },
    );
    report(
        "AC4",
        "parabola converges to evenly spaced knots",
        &mut ac4_parabola,
    );
    report(
        "AC5",
        "analytic gradients match finite differences",
        &mut ac5_gradients,
    );
    report(
        "AC6",
        "cone projection matches active-set oracle",
        &mut ac6_projection,
    );
    let mut auto = Vec::new();
    report(
        "AC7",
        "catalog run is byte-identical for a fixed seed",
        &mut || {
            let (csv, rows) = full_catalog_csv();
            auto = rows;
            ac7_determinism(&csv)
        },
    );
    report("AC8", "published SPG columns tracked", &mut || {
        if table2.is_empty() {
            table2 = table2_runs();
        }
        if auto.is_empty() {
            auto = full_catalog_csv().1;
        }
        ac8_published_spg(&table2, &auto)
    });
    report(
        "SUPP",
        "interior-segment squared gaps reproduce every published orig error",
        &mut interior_measure_reproduction,
    );

    if failed.is_empty() {
        println!("\nall criteria passed");
    } else {
        println!("\nfailed: {}", failed.join(", "));
        std::process::exit(1);
    }
}

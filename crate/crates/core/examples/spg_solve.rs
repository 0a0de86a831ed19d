//! Optimizes knots for one catalog curve and prints the iteration trace.
//!
//!     cargo run --example spg_solve -- weibull2a 4

use knotopt::{spg, Catalog, ObjectiveKind, Quadratic, SpgConfig};

fn main() -> knotopt::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "logistic1a".into());
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);

    // a parabola's optimal knots are evenly spaced
    let q = Quadratic::new(-1.0, 0.0, 4.0);
    let r = spg::solve(
        &q,
        ObjectiveKind::ConcaveArea,
        0.0,
        2.0,
        3,
        &SpgConfig::default(),
    )?;
    println!(
        "-x^2+4 on [0,2]: {:?} ({})",
        r.final_knots.interior(),
        r.termination.label()
    );

    let catalog = Catalog::builtin();
    let e = catalog.get(&name).expect("curve in catalog");
    let kind = if e.concave {
        ObjectiveKind::ConcaveArea
    } else {
        ObjectiveKind::GeneralSquared
    };
    let r = spg::solve(&e.curve, kind, e.a, e.b, n, &SpgConfig::default())?;
    for (k, (f, d)) in r
        .objective_trace
        .iter()
        .zip(&r.d_norm_trace)
        .enumerate()
        .step_by(10)
    {
        println!("{k:>5}  objective {f:+.12e}  |d| {d:.3e}");
    }
    println!("{name}, {} knots, {} measure", n, kind.label());
    println!("  error {:.6e} -> {:.6e}", r.initial_error, r.final_error);
    println!("  knots {:?}", r.final_knots.interior());
    println!("  {} iterations, {}", r.iterations, r.termination.label());
    Ok(())
}

//! Writes curve and interpolant samples for equal and optimized knots.

use knotopt::harness::emit_plot_data;
use knotopt::{spg, Catalog, KnotVector, ObjectiveKind, SpgConfig};

fn main() -> knotopt::Result<()> {
    let catalog = Catalog::builtin();
    let e = catalog.get("weibull2a").expect("builtin row");
    let dir = std::env::temp_dir();

    let even = KnotVector::equally_spaced(e.a, e.b, 4)?;
    let r = spg::solve(
        &e.curve,
        ObjectiveKind::ConcaveArea,
        e.a,
        e.b,
        4,
        &SpgConfig::default(),
    )?;
    for (label, knots) in [("even", &even), ("optimized", &r.final_knots)] {
        let path = dir.join(format!("weibull2a_{label}.csv"));
        emit_plot_data(&e.curve, knots, &path)?;
        println!("{label:>9}: {:?} -> {}", knots.interior(), path.display());
    }
    Ok(())
}

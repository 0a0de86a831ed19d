//! Builds the secant interpolant through equally spaced knots and reports
//! both error measures as the knot count grows.

use knotopt::{
    build_pl, error_concave, error_general, error_interior_squared, Catalog, KnotVector,
};

fn main() -> knotopt::Result<()> {
    let catalog = Catalog::builtin();
    let name = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "logistic1a".into());
    let Some(e) = catalog.get(&name) else {
        eprintln!("unknown curve {name}");
        std::process::exit(1);
    };

    let knots = KnotVector::equally_spaced(e.a, e.b, 4)?;
    for seg in build_pl(&e.curve, &knots)?.segments {
        if let Some(l) = seg.line {
            println!(
                "[{:.3}, {:.3}]  slope {:+.6}  intercept {:+.6}",
                seg.lo, seg.hi, l.slope, l.intercept
            );
        }
    }
    println!();
    println!(
        "{:>3} {:>14} {:>14} {:>14}",
        "n", "area gap", "sum gap^2", "interior gap^2"
    );
    for n in [1, 2, 4, 8, 16, 32] {
        let k = KnotVector::equally_spaced(e.a, e.b, n)?;
        println!(
            "{n:>3} {:>14.6e} {:>14.6e} {:>14.6e}",
            error_concave(&e.curve, &k)?,
            error_general(&e.curve, &k)?,
            error_interior_squared(&e.curve, &k)?
        );
    }
    Ok(())
}

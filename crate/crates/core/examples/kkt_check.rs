//! First- and second-order checks before and after optimization.

use knotopt::{kkt_check, prop1_test, spg, Catalog, KnotVector, ObjectiveKind, SpgConfig};

fn main() -> knotopt::Result<()> {
    let catalog = Catalog::builtin();
    let e = catalog.get("logistic1a").expect("builtin row");
    let even = KnotVector::equally_spaced(e.a, e.b, 4)?;
    let before = kkt_check(&e.curve, &even, ObjectiveKind::ConcaveArea)?;
    println!(
        "equal spacing: residual {:.3e}",
        before.stationarity_residual
    );

    let r = spg::solve(
        &e.curve,
        ObjectiveKind::ConcaveArea,
        e.a,
        e.b,
        4,
        &SpgConfig::default(),
    )?;
    let after = kkt_check(&e.curve, &r.final_knots, ObjectiveKind::ConcaveArea)?;
    println!(
        "optimized:     residual {:.3e}, lambda {:?}",
        after.stationarity_residual, after.lambda
    );
    let h = after
        .hessian
        .as_ref()
        .expect("area objective has a hessian");
    println!("hessian diag {:?}", h.diag);
    println!("hessian off  {:?}", h.off);
    match prop1_test(&e.curve, &r.final_knots, 1e-6) {
        Ok((holds, margins)) => println!("local-min test holds: {holds}, margins {margins:?}"),
        Err(err) => println!("local-min test not applicable: {err}"),
    }

    // tied knots at the left end: multipliers carry the gradient
    let tied = KnotVector::new(e.a, e.b, vec![e.a, e.a, 1.0, 1.5])?;
    let t = kkt_check(&e.curve, &tied, ObjectiveKind::ConcaveArea)?;
    println!(
        "tied at a:     residual {:.3e}, lambda {:?}",
        t.stationarity_residual, t.lambda
    );
    Ok(())
}

//! Lists the built-in catalog and evaluates each curve at the ends and middle
//! of its interval.
//!
//!     cargo run --example curve_catalog [path/to/catalog.csv]

use knotopt::{Catalog, SmoothCurve};

fn main() -> knotopt::Result<()> {
    let catalog = match std::env::args().nth(1) {
        Some(path) => Catalog::from_path(path)?,
        None => Catalog::builtin(),
    };
    println!(
        "{:<12} {:<10} {:>7} {:>12} {:>12} {:>12} {:>12}",
        "name", "family", "concave", "[a, b]", "f(a)", "f(mid)", "f(b)"
    );
    for e in catalog.entries() {
        let mid = 0.5 * (e.a + e.b);
        println!(
            "{:<12} {:<10} {:>7} {:>12} {:>12.6} {:>12.6} {:>12.6}",
            e.name,
            e.curve.family().to_string(),
            if e.concave { "Y" } else { "N" },
            format!("[{}, {}]", e.a, e.b),
            e.curve.eval(e.a)?,
            e.curve.eval(mid)?,
            e.curve.eval(e.b)?,
        );
    }
    Ok(())
}

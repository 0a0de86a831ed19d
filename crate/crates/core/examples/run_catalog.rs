//! Equal spacing vs. optimized knots over the whole catalog, written as CSV
//! and JSON next to a printed table.
//!
//!     cargo run --release --example run_catalog -- out_dir

use std::path::PathBuf;

use knotopt::harness::{plan, render, run_catalog, Filter, MeasureChoice, OutputFormat, Table};
use knotopt::{Catalog, SpgConfig};

fn main() -> knotopt::Result<()> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "target/knotopt".into()),
    );
    std::fs::create_dir_all(&dir)?;
    let catalog = Catalog::builtin();
    let specs = plan(
        &catalog,
        &Filter::default(),
        &[4, 8],
        MeasureChoice::Auto,
        &SpgConfig::default(),
    )?;
    let rows = run_catalog(&catalog, &specs)?;
    print!("{}", Table(&rows));
    std::fs::write(dir.join("results.csv"), render(&rows, OutputFormat::Csv)?)?;
    std::fs::write(dir.join("results.json"), render(&rows, OutputFormat::Json)?)?;
    println!("wrote {}", dir.display());
    Ok(())
}

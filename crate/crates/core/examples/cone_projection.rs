//! Euclidean projection onto { 0 <= y_1 <= ... <= y_n } by pooling adjacent
//! violators.

use knotopt::projection::project_with_blocks;

fn main() -> knotopt::Result<()> {
    for v in [
        vec![2.0, 1.0, 3.0],
        vec![-1.0, 2.0],
        vec![3.0, 2.0, 1.0, -4.0],
        vec![0.5, 0.5, 0.2, 1.0],
    ] {
        let p = project_with_blocks(&v)?;
        println!("{v:?} -> {:?}", p.output);
        for b in &p.blocks {
            println!("    block {}..{} = {}", b.start, b.end, b.value);
        }
    }
    Ok(())
}

//! Compares the two step-length rules and the two backtracking modes on the
//! concave catalog rows.

use knotopt::{spg, Backtrack, BbRule, Catalog, ObjectiveKind, SpgConfig};

fn main() -> knotopt::Result<()> {
    let catalog = Catalog::builtin();
    let variants = [
        ("bb1/random", BbRule::Bb1, Backtrack::SeededRandom),
        ("bb1/halving", BbRule::Bb1, Backtrack::Halving),
        (
            "paper/random",
            BbRule::PaperLiteral,
            Backtrack::SeededRandom,
        ),
        ("paper/halving", BbRule::PaperLiteral, Backtrack::Halving),
    ];
    print!("{:<12}", "curve");
    for (label, ..) in &variants {
        print!(" {label:>22}");
    }
    println!();
    for e in catalog.entries().iter().filter(|e| e.concave) {
        print!("{:<12}", e.name);
        for &(_, bb_rule, backtrack) in &variants {
            let cfg = SpgConfig {
                bb_rule,
                backtrack,
                ..SpgConfig::default()
            };
            let r = spg::solve(&e.curve, ObjectiveKind::ConcaveArea, e.a, e.b, 4, &cfg)?;
            print!(" {:>14.6e} ({:>5})", r.final_error, r.iterations);
        }
        println!();
    }
    Ok(())
}

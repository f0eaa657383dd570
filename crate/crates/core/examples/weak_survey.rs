//! Weak/strong survey of the parameter chart on a few grids, with the CSV
//! of the coarsest one.
//!
//! `cargo run --example weak_survey -- 24`

use lamlab::alliance::{summarize, survey_rows, weak_survey};

fn main() -> lamlab::Result<()> {
    let q: u32 = std::env::args().nth(1).map_or(12, |a| a.parse().expect("grid size"));
    for grid in [q, 2 * q, 4 * q] {
        let s = summarize(grid, &survey_rows(grid)?);
        println!("# grid {grid}: {} valid, {} weak, {} strong, weak fraction {}", s.valid, s.weak, s.strong, s.weak_fraction);
    }
    weak_survey(q, &mut std::io::stdout().lock())?;
    Ok(())
}

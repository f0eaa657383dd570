//! SVG pictures: a pullback lamination in straight and hyperbolic style with
//! the portrait highlighted, and a raster of the survey chart.
//!
//! `cargo run --example render_svg -- out_dir`

use std::path::PathBuf;

use lamlab::alliance::survey_rows;
use lamlab::render::{survey_raster, to_svg, RenderOptions};
use lamlab::{build_pullback, portrait_new, Angle};

fn main() -> lamlab::Result<()> {
    let dir = std::env::args().nth(1).map_or_else(std::env::temp_dir, PathBuf::from);
    let k = portrait_new(&Angle::new(1, 12), &Angle::new(7, 12))?;
    let lam = build_pullback(&k, 5)?;
    let highlight = Some(vec![k.first().clone(), k.second().clone()]);
    for (name, mut opts) in [("straight", RenderOptions::default()), ("hyperbolic", RenderOptions::hyperbolic())] {
        opts.highlight = highlight.clone();
        let path = dir.join(format!("pullback_{name}.svg"));
        std::fs::write(&path, to_svg(&lam, &opts))?;
        println!("{} leaves -> {}", lam.len(), path.display());
    }
    let path = dir.join("survey_48.svg");
    std::fs::write(&path, survey_raster(&survey_rows(48)?, 48)?)?;
    println!("survey raster -> {}", path.display());
    Ok(())
}

//! Depth-bounded pullback lamination of a critical portrait, written in the
//! `.lam` format.
//!
//! `cargo run --example pullback -- 1/12 7/12 3`

use lamlab::io::write_lam;
use lamlab::lamination::sibling_check;
use lamlab::pullback::{pullback_layers, RegionPartition};
use lamlab::{build_pullback, portrait_new, Angle, DEGREE};

fn main() -> lamlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (t, s, depth) = match args.as_slice() {
        [t, s, d] => (t.parse::<Angle>()?, s.parse::<Angle>()?, d.parse().expect("depth")),
        _ => (Angle::new(1, 12), Angle::new(7, 12), 2),
    };
    let k = portrait_new(&t, &s)?;
    let partition = RegionPartition::new(&k)?;
    for (i, r) in partition.regions.iter().enumerate() {
        let arcs: Vec<String> = r.arcs.iter().map(|a| a.to_string()).collect();
        println!("# region {i}: {}", arcs.join(" "));
    }
    for (n, layer) in pullback_layers(&k, depth)?.iter().enumerate() {
        println!("# generation {n}: {} leaves", layer.len());
    }
    let lam = build_pullback(&k, depth)?;
    let report = sibling_check(&lam, DEGREE);
    println!("# sibling check: {} violations, skipped {:?}", report.violations.len(), report.skipped);
    write_lam(&lam, &mut std::io::stdout().lock())?;
    Ok(())
}

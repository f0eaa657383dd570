//! Orbits of rational angles under tripling.
//!
//! `cargo run --example orbits -- 1/4 5/36`

use lamlab::{orbit, Angle, DEGREE};

fn main() -> lamlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let angles = if args.is_empty() { vec!["1/4".into(), "1/13".into(), "5/36".into(), "1/2".into()] } else { args };
    for text in angles {
        let a: Angle = text.parse()?;
        let o = orbit(&a, DEGREE);
        let show = |xs: &[Angle]| xs.iter().map(Angle::to_string).collect::<Vec<_>>().join(" -> ");
        println!("{a}: preperiod {}, period {}", o.preperiod, o.period);
        if !o.tail().is_empty() {
            println!("  tail  {}", show(o.tail()));
        }
        println!("  cycle {}", show(o.cycle()));
    }
    Ok(())
}

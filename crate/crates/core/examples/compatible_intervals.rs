//! Which critical chords cross no leaf of a lamination: pointwise tests
//! against the exact set of compatible parameters.

use lamlab::lamination::{compat, first_crossing};
use lamlab::{build_pullback, compatible_intervals, portrait_new, Angle, FiniteLamination};

fn main() -> lamlab::Result<()> {
    let diameter = FiniteLamination::new(["0-1/2".parse()?])?;
    println!("{{0,1/2}}: compatible parameters {}", compatible_intervals(&diameter));

    let k = portrait_new(&Angle::new(1, 12), &Angle::new(7, 12))?;
    let lam = build_pullback(&k, 3)?;
    let set = compatible_intervals(&lam);
    println!("pullback of {k} to depth 3 ({} leaves): {set}", lam.len());
    println!("measure {}", set.measure());

    for (t, s) in [("1/12", "7/12"), ("0", "1/2"), ("7/12", "7/12")] {
        let other = portrait_new(&t.parse()?, &s.parse()?)?;
        match first_crossing(&other, &lam) {
            None => println!("{other}: compatible ({})", compat(&other, &lam)),
            Some((c, l)) => println!("{other}: {c} crosses leaf {l}"),
        }
    }
    Ok(())
}

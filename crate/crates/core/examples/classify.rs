//! Weak/strong classification of critical portraits.
//!
//! A portrait is strong when each critical value eventually enters the
//! open arc under the other critical chord; the entry times are printed.

use lamlab::portrait::{classify, portrait_new};
use lamlab::Angle;

fn main() -> lamlab::Result<()> {
    let pairs = [("0", "1/2"), ("1/12", "7/12"), ("0", "1/3"), ("0", "5/12"), ("1/9", "4/9")];
    for (t, s) in pairs {
        let k = portrait_new(&t.parse::<Angle>()?, &s.parse::<Angle>()?)?;
        let v = classify(&k);
        match v.witnesses() {
            Some((m, n)) => println!("{k}: strong, entry times ({m}, {n})"),
            None => println!("{k}: weak, side {:?}", v.weak_side().expect("weak")),
        }
    }
    // crossing critical chords do not form a portrait
    if let Err(e) = portrait_new(&Angle::zero(), &Angle::new(1, 6)) {
        println!("(0, 1/6): {e}");
    }
    Ok(())
}

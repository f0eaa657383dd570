//! Pullback obstructions between portraits, and prime certificates.

use lamlab::alliance::{friends_probe, prime_probe};
use lamlab::portrait::CriticalPortrait;
use lamlab::{portrait_new, Angle};

fn main() -> lamlab::Result<()> {
    let k1 = portrait_new(&Angle::new(1, 12), &Angle::new(7, 12))?;
    let k3: CriticalPortrait = "1/12-3/4,1/12-5/12".parse()?;
    let rotated = k1.map_chords(|c| c.rotate(&Angle::new(1, 3)))?;
    for (a, b) in [(&k1, &k1), (&k1, &k3), (&k1, &rotated)] {
        for depth in 1..=3 {
            println!("{a} vs {b}, depth {depth}: {}", friends_probe(a, b, depth)?);
        }
    }
    for (t, s) in [("0", "1/2"), ("1/12", "7/12"), ("1/9", "4/9")] {
        let k = portrait_new(&t.parse()?, &s.parse()?)?;
        println!("{k}: {}", prime_probe(&k, 4)?);
    }
    Ok(())
}

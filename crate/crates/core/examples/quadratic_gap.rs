//! Finite approximations of the invariant quadratic gap of a critical chord,
//! with their majors and rotational data. Majors need a vertex set mapped
//! onto itself, so preperiodic points are left out here.

use lamlab::quad_gap::{gap_from_pi, invariant_gap_majors, is_rotational, pi_points, rotation_number};
use lamlab::Chord;

fn main() -> lamlab::Result<()> {
    for (chord, period, preperiod) in [("0-1/3", 2, 0), ("0-1/3", 3, 0), ("1/12-3/4", 4, 0), ("1/4-7/12", 3, 0)] {
        let c: Chord = chord.parse()?;
        let pi = pi_points(&c, period, preperiod)?;
        let gap = gap_from_pi(&pi)?;
        println!("Π({c}) with period <= {period}, preperiod <= {preperiod}: {} points", pi.points.len());
        println!("  vertices {gap}");
        for m in invariant_gap_majors(&gap)? {
            println!("  major {} behind critical chord {}", m.edge, m.witness);
        }
        if let Ok(true) = is_rotational(&gap) {
            println!("  rotational, rotation number {:?}", rotation_number(&gap)?.map(|r| r.to_string()));
        }
    }
    Ok(())
}

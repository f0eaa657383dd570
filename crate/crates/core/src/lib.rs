//! Exact combinatorics of the tripling map on the circle: orbits of rational
//! angles, cubic critical portraits and their weak/strong classification,
//! invariant quadratic gaps, finite laminations, depth-bounded pullback
//! laminations, and finite probes of friendship and primeness.
//!
//! All angles are exact rationals in `[0, 1)`.

pub mod alliance;
pub mod angle;
pub mod chord;
pub mod cli;
pub mod error;
pub mod io;
pub mod lamination;
pub mod portrait;
pub mod pullback;
pub mod quad_gap;
pub mod render;

pub use angle::{orbit, parse_angle, sigma, Angle, OrbitSummary, DEGREE};
pub use chord::{chord_length, chords_cross, in_arc, is_critical, Arc, Chord, CircleSet};
pub use error::{Error, Result};
pub use lamination::{compatible_intervals, lamination_new, FiniteLamination};
pub use portrait::{classify, critical_chord, portrait_new, CriticalPortrait, WeakStrongVerdict};
pub use pullback::build_pullback;

//! Chords of the closed unit disk and oriented arcs of the circle.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::angle::{parse_angle, Angle};
use crate::error::{Error, Result};

/// Unordered pair of circle points, stored with `a <= b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    a: Angle,
    b: Angle,
}

impl Chord {
    pub fn new(x: Angle, y: Angle) -> Self {
        if x <= y {
            Chord { a: x, b: y }
        } else {
            Chord { a: y, b: x }
        }
    }

    /// Shorthand for `{p1/q1, p2/q2}`.
    pub fn from_fracs((p1, q1): (i64, i64), (p2, q2): (i64, i64)) -> Self {
        Chord::new(Angle::new(p1, q1), Angle::new(p2, q2))
    }

    pub fn a(&self) -> &Angle {
        &self.a
    }

    pub fn b(&self) -> &Angle {
        &self.b
    }

    pub fn endpoints(&self) -> [&Angle; 2] {
        [&self.a, &self.b]
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn has_endpoint(&self, x: &Angle) -> bool {
        &self.a == x || &self.b == x
    }

    pub fn shares_endpoint(&self, other: &Chord) -> bool {
        other.has_endpoint(&self.a) || other.has_endpoint(&self.b)
    }

    /// Disjoint as closed segments: no crossing and no common endpoint.
    pub fn is_disjoint_from(&self, other: &Chord) -> bool {
        !self.shares_endpoint(other) && !chords_cross(self, other)
    }

    pub fn length(&self) -> BigRational {
        chord_length(self)
    }

    pub fn image(&self, d: u32) -> Chord {
        Chord::new(self.a.sigma(d), self.b.sigma(d))
    }

    pub fn rotate(&self, by: &Angle) -> Chord {
        Chord::new(self.a.rotate(by), self.b.rotate(by))
    }

    pub fn reflect(&self) -> Chord {
        Chord::new(self.a.reflect(), self.b.reflect())
    }

    pub fn crosses(&self, other: &Chord) -> bool {
        chords_cross(self, other)
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

impl fmt::Debug for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

impl Serialize for Chord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Chord {
    type Err = Error;

    /// `p/q-r/s`; the separator is the first `-` that is not a leading sign.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '-')
            .map(|(i, _)| i)
            .ok_or_else(|| Error::MalformedChord(s.to_string()))?;
        let (x, y) = (&s[..split], &s[split + 1..]);
        let lift = |e: Error| match e {
            Error::ZeroDenominator(_) => e,
            _ => Error::MalformedChord(s.to_string()),
        };
        let x = parse_angle(x).map_err(lift)?;
        let y = parse_angle(y).map_err(lift)?;
        Ok(Chord::new(x, y))
    }
}

/// Length of the shorter circle arc between the endpoints, in `[0, 1/2]`.
pub fn chord_length(l: &Chord) -> BigRational {
    l.a.circle_distance(&l.b)
}

/// Strict interior intersection: the four endpoints interleave on the circle.
/// Chords sharing an endpoint, and degenerate chords, never cross.
pub fn chords_cross(l1: &Chord, l2: &Chord) -> bool {
    let (a1, b1) = (&l1.a, &l1.b);
    let (a2, b2) = (&l2.a, &l2.b);
    (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1)
}

pub fn is_critical(l: &Chord, d: u32) -> Result<bool> {
    if l.is_degenerate() {
        return Err(Error::DegenerateChord(l.clone()));
    }
    Ok(l.a.sigma(d) == l.b.sigma(d))
}

/// Positively oriented arc from `start` to `end` with explicit endpoint flags.
///
/// `start == end` is the empty arc when either endpoint is excluded and the
/// single point `{start}` when both are included. The full circle is not an
/// `Arc`; see [`CircleSet`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Arc {
    pub start: Angle,
    pub end: Angle,
    pub includes_start: bool,
    pub includes_end: bool,
}

impl Arc {
    pub fn open(start: Angle, end: Angle) -> Self {
        Arc { start, end, includes_start: false, includes_end: false }
    }

    pub fn closed(start: Angle, end: Angle) -> Self {
        Arc { start, end, includes_start: true, includes_end: true }
    }

    /// `(start, end]`.
    pub fn half_open(start: Angle, end: Angle) -> Self {
        Arc { start, end, includes_start: false, includes_end: true }
    }

    pub fn length(&self) -> BigRational {
        self.start.ccw_to(&self.end)
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end && !(self.includes_start && self.includes_end)
    }

    pub fn contains(&self, x: &Angle) -> bool {
        in_arc(x, self)
    }

    /// An interior point of a nonempty arc (the point itself for a point arc).
    pub fn midpoint(&self) -> Angle {
        let half = self.length() / BigRational::from_integer(2.into());
        Angle::from_ratio(self.start.as_ratio() + half)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.includes_start { '[' } else { '(' };
        let r = if self.includes_end { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.start, self.end)
    }
}

pub fn in_arc(x: &Angle, arc: &Arc) -> bool {
    let len = arc.length();
    let d = arc.start.ccw_to(x);
    if d.is_zero() {
        return arc.includes_start || (len.is_zero() && arc.includes_end);
    }
    if d == len {
        return arc.includes_end;
    }
    d < len
}

/// A closed subset of the circle given as the full circle or a finite union
/// of closed arcs (possibly single points) in increasing order of start.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum CircleSet {
    Full,
    Arcs(Vec<Arc>),
}

impl CircleSet {
    pub fn contains(&self, x: &Angle) -> bool {
        match self {
            CircleSet::Full => true,
            CircleSet::Arcs(arcs) => arcs.iter().any(|a| a.contains(x)),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, CircleSet::Arcs(a) if a.is_empty())
    }

    pub fn measure(&self) -> BigRational {
        match self {
            CircleSet::Full => BigRational::one(),
            CircleSet::Arcs(arcs) => arcs.iter().map(Arc::length).sum(),
        }
    }
}

impl fmt::Display for CircleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircleSet::Full => write!(f, "full"),
            CircleSet::Arcs(arcs) if arcs.is_empty() => write!(f, "empty"),
            CircleSet::Arcs(arcs) => {
                for (i, a) in arcs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " u ")?;
                    }
                    write!(f, "{a}")?;
                }
                Ok(())
            }
        }
    }
}

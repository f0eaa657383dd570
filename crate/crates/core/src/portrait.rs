//! Cubic critical portraits, the `(t, s)` chart, and the weak/strong classifier.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::angle::{orbit, Angle, DEGREE};
use crate::chord::{chords_cross, in_arc, is_critical, Arc, Chord};
use crate::error::{Error, Result};

fn third() -> Angle {
    Angle::new(1, 3)
}

/// The critical chord `{t, t + 1/3}`.
///
/// `t ↦ critical_chord(t)` is a bijection of the circle onto the set of
/// σ₃-critical chords.
pub fn critical_chord(t: &Angle) -> Chord {
    Chord::new(t.clone(), t.rotate(&third()))
}

/// The parameter `t` with `critical_chord(t) == l`: the endpoint followed,
/// counterclockwise at distance 1/3, by the other one.
pub fn parameter_of(l: &Chord) -> Result<Angle> {
    if !is_critical(l, DEGREE)? {
        return Err(Error::NotCritical(l.clone()));
    }
    let third = BigRational::new(1.into(), 3.into());
    if l.a().ccw_to(l.b()) == third {
        Ok(l.a().clone())
    } else {
        Ok(l.b().clone())
    }
}

/// The closed arc `L` of length 2/3 and the open arc `I` of length 1/3
/// cut off by a critical chord.
pub fn critical_arcs(l: &Chord) -> Result<(Arc, Arc)> {
    let t = parameter_of(l)?;
    let u = t.rotate(&third());
    Ok((Arc::closed(u.clone(), t.clone()), Arc::open(t, u)))
}

/// Unordered pair of non-crossing σ₃-critical chords, stored in canonical order.
/// The two chords may coincide.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CriticalPortrait {
    first: Chord,
    second: Chord,
}

impl CriticalPortrait {
    pub fn from_chords(c: Chord, y: Chord) -> Result<Self> {
        for l in [&c, &y] {
            if !is_critical(l, DEGREE)? {
                return Err(Error::NotCritical(l.clone()));
            }
        }
        if chords_cross(&c, &y) {
            return Err(Error::CrossingChords(c, y));
        }
        let (first, second) = if c <= y { (c, y) } else { (y, c) };
        Ok(CriticalPortrait { first, second })
    }

    pub fn first(&self) -> &Chord {
        &self.first
    }

    pub fn second(&self) -> &Chord {
        &self.second
    }

    pub fn chords(&self) -> [&Chord; 2] {
        [&self.first, &self.second]
    }

    pub fn is_coincident(&self) -> bool {
        self.first == self.second
    }

    pub fn parameters(&self) -> (Angle, Angle) {
        (
            parameter_of(&self.first).expect("critical by construction"),
            parameter_of(&self.second).expect("critical by construction"),
        )
    }

    /// Applies a circle symmetry to both chords. Only meaningful for maps
    /// sending critical chords to critical chords.
    pub fn map_chords(&self, f: impl Fn(&Chord) -> Chord) -> Result<Self> {
        CriticalPortrait::from_chords(f(&self.first), f(&self.second))
    }
}

impl fmt::Display for CriticalPortrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.first, self.second)
    }
}

impl fmt::Debug for CriticalPortrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{:?}, {:?}}}", self.first, self.second)
    }
}

impl FromStr for CriticalPortrait {
    type Err = Error;

    /// Two comma-separated items, each a chord `p/q-r/s` or a parameter `p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::MalformedPortrait(s.to_string()));
        }
        let item = |p: &str| -> Result<Chord> {
            if p.char_indices().skip(1).any(|(_, c)| c == '-') {
                p.parse()
            } else {
                Ok(critical_chord(&p.parse()?))
            }
        };
        CriticalPortrait::from_chords(item(parts[0])?, item(parts[1])?)
    }
}

pub fn portrait_new(t: &Angle, s: &Angle) -> Result<CriticalPortrait> {
    CriticalPortrait::from_chords(critical_chord(t), critical_chord(s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    Weak,
    Strong,
}

/// Which critical value has an orbit avoiding the other chord's `I`-arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeakSide {
    First,
    Second,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakStrongVerdict {
    /// Least `n >= 0` with `σⁿ(σ(first)) ∈ I(second)`, if any.
    pub first_entry: Option<usize>,
    /// Least `n >= 0` with `σⁿ(σ(second)) ∈ I(first)`, if any.
    pub second_entry: Option<usize>,
}

impl WeakStrongVerdict {
    pub fn kind(&self) -> VerdictKind {
        if self.first_entry.is_some() && self.second_entry.is_some() {
            VerdictKind::Strong
        } else {
            VerdictKind::Weak
        }
    }

    pub fn is_weak(&self) -> bool {
        self.kind() == VerdictKind::Weak
    }

    pub fn weak_side(&self) -> Option<WeakSide> {
        match (self.first_entry, self.second_entry) {
            (None, None) => Some(WeakSide::Both),
            (None, Some(_)) => Some(WeakSide::First),
            (Some(_), None) => Some(WeakSide::Second),
            (Some(_), Some(_)) => None,
        }
    }

    pub fn witnesses(&self) -> Option<(usize, usize)> {
        self.first_entry.zip(self.second_entry)
    }

    /// Chords `c` of the portrait for which the other chord's critical orbit
    /// stays in the closed arc `L(c)`.
    pub fn gap_chords<'a>(&self, k: &'a CriticalPortrait) -> Vec<&'a Chord> {
        let mut out = Vec::new();
        if self.first_entry.is_none() {
            out.push(k.second());
        }
        if self.second_entry.is_none() {
            out.push(k.first());
        }
        out
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Weak => "weak",
            VerdictKind::Strong => "strong",
        })
    }
}

impl fmt::Display for WeakSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeakSide::First => "first",
            WeakSide::Second => "second",
            WeakSide::Both => "both",
        })
    }
}

/// The common image of the endpoints of a critical chord.
pub fn critical_value(l: &Chord) -> Angle {
    l.a().sigma(DEGREE)
}

/// Index of the first point of the forward orbit of `σ(from)` lying in `I(into)`.
pub fn entry_time(from: &Chord, into: &Chord) -> Option<usize> {
    let (_, gap) = critical_arcs(into).expect("critical by construction");
    orbit(&critical_value(from), DEGREE)
        .points
        .iter()
        .position(|x| in_arc(x, &gap))
}

/// Decides weakness exactly; the orbits of rational critical values are finite.
pub fn classify(k: &CriticalPortrait) -> WeakStrongVerdict {
    WeakStrongVerdict {
        first_entry: entry_time(k.first(), k.second()),
        second_entry: entry_time(k.second(), k.first()),
    }
}

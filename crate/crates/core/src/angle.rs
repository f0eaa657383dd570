//! Exact points of the circle ℝ/ℤ and the multiplication maps `x ↦ d·x mod 1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Degree of the circle map used throughout.
pub const DEGREE: u32 = 3;

/// A rational point of the circle, stored as a reduced fraction in `[0, 1)`.
///
/// The derived order is the order of representatives in `[0, 1)`, which is
/// the canonical circle order (cut at zero) used by every other module.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(BigRational);

impl Angle {
    pub fn zero() -> Self {
        Angle(BigRational::zero())
    }

    /// `p/q` reduced mod 1. Panics when `q == 0`.
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_ratio(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        let floor = r.floor();
        Angle(r - floor)
    }

    /// `n/d` for `0 <= n < d`, reduced in machine words.
    pub(crate) fn from_word(n: u64, d: u64) -> Self {
        debug_assert!(n < d);
        let g = n.gcd(&d);
        Angle(BigRational::new_raw((n / g).into(), (d / g).into()))
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `d·self mod 1`.
    pub fn sigma(&self, d: u32) -> Angle {
        let q = self.0.denom();
        let p = (self.0.numer() * BigInt::from(d)).mod_floor(q);
        Angle(BigRational::new(p, q.clone()))
    }

    /// Rigid rotation `self + by mod 1`.
    pub fn rotate(&self, by: &Angle) -> Angle {
        Angle::from_ratio(&self.0 + &by.0)
    }

    /// Reflection `x ↦ −x mod 1`.
    pub fn reflect(&self) -> Angle {
        Angle::from_ratio(-self.0.clone())
    }

    /// Positive circle distance travelled from `self` to `to`, in `[0, 1)`.
    pub fn ccw_to(&self, to: &Angle) -> BigRational {
        let diff = &to.0 - &self.0;
        if diff.is_negative() {
            diff + BigRational::one()
        } else {
            diff
        }
    }

    /// Length of the shorter arc between the two points, in `[0, 1/2]`.
    pub fn circle_distance(&self, other: &Angle) -> BigRational {
        let d = self.ccw_to(other);
        let back = BigRational::one() - &d;
        if d.is_zero() {
            d
        } else if back < d {
            back
        } else {
            d
        }
    }

    /// The `d` preimages of `self` under `σ_d`, in increasing order.
    pub fn preimages(&self, d: u32) -> Vec<Angle> {
        let d_big = BigInt::from(d);
        (0..d)
            .map(|k| {
                let r = (&self.0 + BigRational::from_integer(BigInt::from(k)))
                    / BigRational::from_integer(d_big.clone());
                Angle(r)
            })
            .collect()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(0.0)
    }

    pub fn orbit(&self, d: u32) -> OrbitSummary {
        orbit(self, d)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_angle(s)
    }
}

/// Parses `p/q` or a bare integer and reduces it into `[0, 1)`.
pub fn parse_angle(text: &str) -> Result<Angle> {
    let text = text.trim();
    let malformed = || Error::MalformedAngle(text.to_string());
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| malformed())?;
    let q: BigInt = q.parse().map_err(|_| malformed())?;
    if q.is_zero() {
        return Err(Error::ZeroDenominator(text.to_string()));
    }
    Ok(Angle::from_ratio(BigRational::new(p, q)))
}

pub fn sigma(a: &Angle, d: u32) -> Angle {
    a.sigma(d)
}

/// Eventually periodic orbit of a rational angle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitSummary {
    pub preperiod: usize,
    pub period: usize,
    /// Preperiodic tail followed by one full cycle; all distinct.
    pub points: Vec<Angle>,
}

impl OrbitSummary {
    pub fn cycle(&self) -> &[Angle] {
        &self.points[self.preperiod..]
    }

    pub fn tail(&self) -> &[Angle] {
        &self.points[..self.preperiod]
    }
}

pub fn orbit(a: &Angle, d: u32) -> OrbitSummary {
    let mut seen: HashMap<Angle, usize> = HashMap::new();
    let mut points = Vec::new();
    let mut x = a.clone();
    loop {
        if let Some(&first) = seen.get(&x) {
            return OrbitSummary {
                preperiod: first,
                period: points.len() - first,
                points,
            };
        }
        seen.insert(x.clone(), points.len());
        let next = x.sigma(d);
        points.push(x);
        x = next;
    }
}

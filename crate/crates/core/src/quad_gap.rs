//! Invariant quadratic gaps `G(c)` approximated from below by points of
//! bounded preperiod and period, plus majors and rotation detection for
//! finite invariant vertex sets.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::angle::{Angle, DEGREE};
use crate::chord::{in_arc, Arc, Chord};
use crate::error::{Error, Result};
use crate::portrait::{critical_arcs, parameter_of};

/// Points of `Π(c)` among angles `k / (3^a (3^b − 1))` with
/// `a <= preperiod_bound` and `b <= period_bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiApproximation {
    pub chord: Chord,
    pub period_bound: u32,
    pub preperiod_bound: u32,
    pub points: Vec<Angle>,
}

/// All angles `k / (3^a (3^b − 1))` within the bounds whose entire forward
/// orbit stays in the closed arc `L(c)`; found by brute force.
pub fn pi_points(c: &Chord, period_bound: u32, preperiod_bound: u32) -> Result<PiApproximation> {
    if period_bound == 0 {
        return Err(Error::ZeroPeriodBound);
    }
    let (closed_l, _) = critical_arcs(c)?;
    // x ∈ L iff (x − start) mod 1 <= 2/3
    let start = closed_l.start.as_ratio().clone();
    let (sp, sq) = (start.numer().clone(), start.denom().clone());
    let three = BigInt::from(DEGREE);

    let mut found = BTreeSet::new();
    let pre_scale: BigInt = three.clone().pow(preperiod_bound);
    for b in 1..=period_bound {
        let den: BigInt = &pre_scale * (three.clone().pow(b) - BigInt::one());
        let modulus = &den * &sq;
        let offset = &sp * &den;
        let limit = BigInt::from(2) * &modulus;
        let steps = preperiod_bound + b;
        let mut k = BigInt::zero();
        while k < den {
            let mut x = k.clone();
            let mut inside = true;
            for _ in 0..steps {
                let rel = (&x * &sq - &offset).mod_floor(&modulus);
                if &rel * &three > limit {
                    inside = false;
                    break;
                }
                x = (&x * &three).mod_floor(&den);
            }
            if inside {
                found.insert(Angle::from_ratio(BigRational::new(k.clone(), den.clone())));
            }
            k += 1;
        }
    }
    Ok(PiApproximation {
        chord: c.clone(),
        period_bound,
        preperiod_bound,
        points: found.into_iter().collect(),
    })
}

/// Convex hull of a finite circle set, as its cyclically ordered vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gap {
    vertices: Vec<Angle>,
    pub period: Option<u32>,
    pub degree: Option<u32>,
}

impl Gap {
    pub fn new<I: IntoIterator<Item = Angle>>(vertices: I) -> Result<Self> {
        let set: BTreeSet<Angle> = vertices.into_iter().collect();
        if set.len() < 2 {
            return Err(Error::DegenerateGap);
        }
        Ok(Gap { vertices: set.into_iter().collect(), period: None, degree: None })
    }

    pub fn vertices(&self) -> &[Angle] {
        &self.vertices
    }

    /// Chords between cyclically adjacent vertices (one edge for a leaf-gap).
    pub fn edges(&self) -> Vec<Chord> {
        let n = self.vertices.len();
        if n == 2 {
            return vec![Chord::new(self.vertices[0].clone(), self.vertices[1].clone())];
        }
        (0..n)
            .map(|i| Chord::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()))
            .collect()
    }

    /// Open arcs between cyclically adjacent vertices.
    pub fn holes(&self) -> Vec<Arc> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| Arc::open(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()))
            .collect()
    }

    /// True iff `l` crosses no edge of the gap.
    pub fn is_compatible_with(&self, l: &Chord) -> bool {
        self.edges().iter().all(|e| !e.crosses(l))
    }

    fn image_indices(&self) -> Result<Vec<usize>> {
        let index: HashMap<&Angle, usize> =
            self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let images = self
            .vertices
            .iter()
            .map(|v| {
                let img = v.sigma(DEGREE);
                index
                    .get(&img)
                    .copied()
                    .ok_or_else(|| Error::NotInvariant(format!("{v} maps to {img}, not a vertex")))
            })
            .collect::<Result<Vec<_>>>()?;
        let distinct: BTreeSet<usize> = images.iter().copied().collect();
        if distinct.len() != images.len() {
            return Err(Error::NotInvariant("the map is not onto the vertex set".to_string()));
        }
        Ok(images)
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// The gap spanned by an approximation of `Π(c)`. Degree is annotated as 2,
/// the degree of the quadratic gap being approximated.
pub fn gap_from_pi(pi: &PiApproximation) -> Result<Gap> {
    if pi.points.is_empty() {
        return Err(Error::EmptyApproximation);
    }
    let mut gap = Gap::new(pi.points.iter().cloned())?;
    gap.period = Some(1);
    gap.degree = Some(2);
    Ok(gap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Major {
    pub edge: Chord,
    /// A critical chord from an endpoint of `edge` into the hole behind it.
    pub witness: Chord,
}

/// Edges `ab` admitting a critical chord `ax` or `by` that lies in the hole
/// cut off by `ab`, hence avoids the interior of the gap.
///
/// The verdict is relative to the given vertex list; a finer approximation
/// can subdivide an edge.
pub fn invariant_gap_majors(g: &Gap) -> Result<Vec<Major>> {
    g.image_indices()?;
    let third = Angle::new(1, 3);
    let minus_third = Angle::new(2, 3);
    let mut majors: Vec<Major> = Vec::new();
    for hole in g.holes() {
        let edge = Chord::new(hole.start.clone(), hole.end.clone());
        if majors.iter().any(|m| m.edge == edge) {
            continue;
        }
        let closed = Arc::closed(hole.start.clone(), hole.end.clone());
        let witness = [&hole.start, &hole.end].into_iter().find_map(|v| {
            [v.rotate(&third), v.rotate(&minus_third)]
                .into_iter()
                .find(|x| in_arc(x, &closed))
                .map(|x| Chord::new(v.clone(), x))
        });
        if let Some(witness) = witness {
            majors.push(Major { edge, witness });
        }
    }
    majors.sort_by(|x, y| x.edge.cmp(&y.edge));
    Ok(majors)
}

/// True iff σ₃ shifts the cyclically ordered vertices by a constant offset.
pub fn is_rotational(g: &Gap) -> Result<bool> {
    let images = g.image_indices()?;
    let n = images.len();
    let shift = |i: usize| (images[i] + n - i) % n;
    Ok((1..n).all(|i| shift(i) == shift(0)))
}

/// Rotation number `shift / n` of a rotational gap, if rotational.
pub fn rotation_number(g: &Gap) -> Result<Option<BigRational>> {
    if !is_rotational(g)? {
        return Ok(None);
    }
    let images = g.image_indices()?;
    let n = images.len();
    Ok(Some(BigRational::new(BigInt::from(images[0] % n), BigInt::from(n))))
}

/// The parameter `t` of the critical chord generating an approximation.
pub fn generating_parameter(pi: &PiApproximation) -> Angle {
    parameter_of(&pi.chord).expect("critical by construction")
}

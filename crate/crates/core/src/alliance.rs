//! Finite probes of friendship and primeness, and the weak/strong survey of
//! the `(t, s)` chart. Verdicts never claim more than the computation shows:
//! every one of them carries the depth it was obtained at.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::angle::Angle;
use crate::chord::{chords_cross, CircleSet, Chord};
use crate::error::{Error, Result};
use crate::lamination::{compatible_intervals, FiniteLamination};
use crate::portrait::{
    classify, critical_chord, entry_time, portrait_new, CriticalPortrait, WeakStrongVerdict,
};
use crate::pullback::build_pullback;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    /// Portrait whose pullback lamination contains `leaf`.
    pub lamination_of: CriticalPortrait,
    pub leaf: Chord,
    /// Chord of the other portrait crossing `leaf`.
    pub chord: Chord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FriendVerdict {
    PullbackObstruction { depth: u32, witness: Obstruction },
    NoObstructionToDepth { depth: u32 },
}

impl FriendVerdict {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, FriendVerdict::PullbackObstruction { .. })
    }
}

impl fmt::Display for FriendVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FriendVerdict::PullbackObstruction { depth, witness } => write!(
                f,
                "obstruction at depth {depth}: {} crosses leaf {} of the pullback of {}",
                witness.chord, witness.leaf, witness.lamination_of
            ),
            FriendVerdict::NoObstructionToDepth { depth } => {
                write!(f, "no obstruction to depth {depth}")
            }
        }
    }
}

fn obstruction(owner: &CriticalPortrait, lam: &FiniteLamination, other: &CriticalPortrait) -> Option<Obstruction> {
    other.chords().into_iter().find_map(|c| {
        lam.leaves().iter().find(|l| chords_cross(c, l)).map(|l| Obstruction {
            lamination_of: owner.clone(),
            leaf: l.clone(),
            chord: c.clone(),
        })
    })
}

/// One-sided test: an obstruction is evidence against friendship through
/// these two pullback laminations; its absence proves nothing.
pub fn friends_probe(k1: &CriticalPortrait, k2: &CriticalPortrait, depth: u32) -> Result<FriendVerdict> {
    let (p, q) = if k1 <= k2 { (k1, k2) } else { (k2, k1) };
    for (owner, other) in [(p, q), (q, p)] {
        let lam = build_pullback(owner, depth)?;
        if let Some(witness) = obstruction(owner, &lam, other) {
            return Ok(FriendVerdict::PullbackObstruction { depth, witness });
        }
    }
    Ok(FriendVerdict::NoObstructionToDepth { depth })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCertificate {
    /// A weak portrait; its weakness was re-checked when the certificate was issued.
    pub weak_portrait: CriticalPortrait,
    pub verdict: WeakStrongVerdict,
    /// Depth of the pullback the weak portrait was found compatible with;
    /// `None` when the probed portrait is weak itself.
    pub via_depth: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrimeVerdict {
    PrimeCertified { certificate: PrimeCertificate },
    CandidateRegular { depth: u32, candidates_tried: usize },
}

impl PrimeVerdict {
    pub fn certificate(&self) -> Option<&PrimeCertificate> {
        match self {
            PrimeVerdict::PrimeCertified { certificate } => Some(certificate),
            PrimeVerdict::CandidateRegular { .. } => None,
        }
    }
}

impl fmt::Display for PrimeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeVerdict::PrimeCertified { certificate } => match certificate.via_depth {
                None => write!(f, "prime (weak itself)"),
                Some(d) => write!(
                    f,
                    "prime at depth {d}: weak portrait {} is compatible with the pullback",
                    certificate.weak_portrait
                ),
            },
            PrimeVerdict::CandidateRegular { depth, candidates_tried } => write!(
                f,
                "candidate regular at depth {depth} ({candidates_tried} candidate portraits tried)"
            ),
        }
    }
}

/// Sample parameters of a compatible set: arc endpoints and midpoints.
pub fn frontier_parameters(set: &CircleSet) -> Vec<Angle> {
    let mut out = BTreeSet::new();
    match set {
        CircleSet::Full => {
            for k in 0..6 {
                out.insert(Angle::new(k, 6));
            }
        }
        CircleSet::Arcs(arcs) => {
            for a in arcs {
                out.insert(a.start.clone());
                out.insert(a.end.clone());
                out.insert(a.midpoint());
            }
        }
    }
    out.into_iter().collect()
}

fn certify(k: CriticalPortrait, via_depth: Option<u32>) -> Option<PrimeCertificate> {
    let verdict = classify(&k);
    verdict.is_weak().then_some(PrimeCertificate { weak_portrait: k, verdict, via_depth })
}

/// A weak portrait is prime through itself. Otherwise look for a weak
/// portrait compatible with the depth-`depth` pullback of `k`, sampling the
/// frontier of the compatible parameter set.
pub fn prime_probe(k: &CriticalPortrait, depth: u32) -> Result<PrimeVerdict> {
    if let Some(certificate) = certify(k.clone(), None) {
        return Ok(PrimeVerdict::PrimeCertified { certificate });
    }
    let lam = build_pullback(k, depth)?;
    let params = frontier_parameters(&compatible_intervals(&lam));
    let mut tried = 0;
    for (i, t) in params.iter().enumerate() {
        for s in &params[i..] {
            let Ok(candidate) = portrait_new(t, s) else { continue };
            tried += 1;
            if let Some(certificate) = certify(candidate, Some(depth)) {
                return Ok(PrimeVerdict::PrimeCertified { certificate });
            }
        }
    }
    Ok(PrimeVerdict::CandidateRegular { depth, candidates_tried: tried })
}

/// Side of a `(t, s)` survey cell whose critical orbit avoids the other `I`-arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamSide {
    T,
    S,
    Both,
}

impl fmt::Display for ParamSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParamSide::T => "t",
            ParamSide::S => "s",
            ParamSide::Both => "both",
        })
    }
}

/// One classified grid cell. `witness_m` is the entry time of the orbit of
/// the critical value of `critical_chord(t)` into `I(critical_chord(s))`,
/// `witness_n` the reverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub t: Angle,
    pub s: Angle,
    pub weak: bool,
    pub weak_side: Option<ParamSide>,
    pub witness_m: Option<usize>,
    pub witness_n: Option<usize>,
}

pub const SURVEY_HEADER: &str = "t,s,verdict,weak_side,witness_m,witness_n";

impl SurveyRow {
    pub fn classify(t: Angle, s: Angle) -> Self {
        let (ct, cs) = (critical_chord(&t), critical_chord(&s));
        let m = entry_time(&ct, &cs);
        let n = entry_time(&cs, &ct);
        let weak_side = match (m, n) {
            (None, None) => Some(ParamSide::Both),
            (None, Some(_)) => Some(ParamSide::T),
            (Some(_), None) => Some(ParamSide::S),
            (Some(_), Some(_)) => None,
        };
        let weak = weak_side.is_some();
        SurveyRow {
            t,
            s,
            weak,
            weak_side,
            witness_m: if weak { None } else { m },
            witness_n: if weak { None } else { n },
        }
    }

    pub fn to_csv(&self) -> String {
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{}",
            self.t,
            self.s,
            if self.weak { "weak" } else { "strong" },
            self.weak_side.map(|w| w.to_string()).unwrap_or_default(),
            opt(self.witness_m),
            opt(self.witness_n),
        )
    }

    /// Parses one data row; `lineno` is only used in error messages.
    pub fn parse_csv(line: &str, lineno: usize) -> Result<Self> {
        let bad = |msg: &str| Error::CsvParse { line: lineno, msg: msg.to_string() };
        let f: Vec<&str> = line.trim_end().split(',').collect();
        if f.len() != 6 {
            return Err(bad("expected 6 fields"));
        }
        let weak = match f[2] {
            "weak" => true,
            "strong" => false,
            _ => return Err(bad("verdict must be weak or strong")),
        };
        let weak_side = match f[3] {
            "" => None,
            "t" => Some(ParamSide::T),
            "s" => Some(ParamSide::S),
            "both" => Some(ParamSide::Both),
            _ => return Err(bad("unknown weak_side")),
        };
        let num = |x: &str| -> Result<Option<usize>> {
            if x.is_empty() {
                Ok(None)
            } else {
                x.parse().map(Some).map_err(|_| bad("witness must be an integer"))
            }
        };
        Ok(SurveyRow {
            t: f[0].parse().map_err(|_| bad("bad t"))?,
            s: f[1].parse().map_err(|_| bad("bad s"))?,
            weak,
            weak_side,
            witness_m: num(f[4])?,
            witness_n: num(f[5])?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveySummary {
    pub grid_q: u32,
    pub valid: usize,
    pub weak: usize,
    pub strong: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub weak_fraction: BigRational,
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format!("{}/{}", r.numer(), r.denom()))
}

/// True iff the grid cell `(i/q, j/q)` is a valid (non-crossing) portrait.
pub fn grid_cell_valid(i: u32, j: u32, q: u32) -> bool {
    let t = Angle::new(i as i64, q as i64);
    let s = Angle::new(j as i64, q as i64);
    !chords_cross(&critical_chord(&t), &critical_chord(&s))
}

/// Classifies every valid portrait `(i/q, j/q)`, `0 <= i, j < q`, in
/// row-major order of `(i, j)`.
pub fn survey_rows(grid_q: u32) -> Result<Vec<SurveyRow>> {
    if grid_q < 2 {
        return Err(Error::GridTooCoarse(grid_q));
    }
    let q = grid_q as i64;
    let cells: Vec<(i64, i64)> = (0..q).flat_map(|i| (0..q).map(move |j| (i, j))).collect();
    Ok(cells
        .par_iter()
        .filter_map(|&(i, j)| {
            let (t, s) = (Angle::new(i, q), Angle::new(j, q));
            if chords_cross(&critical_chord(&t), &critical_chord(&s)) {
                None
            } else {
                Some(SurveyRow::classify(t, s))
            }
        })
        .collect())
}

pub fn summarize(grid_q: u32, rows: &[SurveyRow]) -> SurveySummary {
    let valid = rows.len();
    let weak = rows.iter().filter(|r| r.weak).count();
    let weak_fraction = if valid == 0 {
        BigRational::from_integer(0.into())
    } else {
        BigRational::new(BigInt::from(weak), BigInt::from(valid))
    };
    SurveySummary { grid_q, valid, weak, strong: valid - weak, weak_fraction }
}

/// Streams the survey as CSV and returns the aggregate counts.
pub fn weak_survey<W: Write>(grid_q: u32, out: &mut W) -> Result<SurveySummary> {
    let rows = survey_rows(grid_q)?;
    writeln!(out, "{SURVEY_HEADER}")?;
    for r in &rows {
        writeln!(out, "{}", r.to_csv())?;
    }
    out.flush()?;
    Ok(summarize(grid_q, &rows))
}

//! SVG pictures of laminations in the unit disk and rasters of the survey chart.
//!
//! Angles become points `(cos 2πθ, sin 2πθ)` printed with nine decimals, the
//! only place where exact values meet floating point. Output depends on the
//! inputs alone, so documents can be compared byte for byte.

use std::collections::{BTreeSet, HashMap};
use std::f64::consts::PI;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::alliance::{grid_cell_valid, SurveyRow};
use crate::angle::Angle;
use crate::chord::Chord;
use crate::error::{Error, Result};
use crate::lamination::FiniteLamination;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Geometry {
    #[default]
    Straight,
    /// Leaves drawn as arcs of circles orthogonal to the unit circle.
    Hyperbolic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    pub geometry: Geometry,
    pub stroke_width: BigRational,
    /// Chords drawn on top in a second style.
    pub highlight: Option<Vec<Chord>>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            geometry: Geometry::Straight,
            stroke_width: BigRational::new(1.into(), 200.into()),
            highlight: None,
        }
    }
}

impl RenderOptions {
    pub fn hyperbolic() -> Self {
        RenderOptions { geometry: Geometry::Hyperbolic, ..Self::default() }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.9}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        "0.000000000".to_string()
    } else {
        s
    }
}

fn turns(x: &BigRational) -> f64 {
    x.to_f64().expect("angles are finite")
}

fn point(theta: &Angle) -> (String, String) {
    let r = 2.0 * PI * theta.to_f64();
    (num(r.cos()), num(r.sin()))
}

/// SVG path data for one leaf.
pub fn chord_path(l: &Chord, geometry: Geometry) -> String {
    let (ax, ay) = point(l.a());
    let (bx, by) = point(l.b());
    let half = BigRational::new(1.into(), 2.into());
    let delta = l.a().ccw_to(l.b());
    if geometry == Geometry::Straight || delta == half {
        return format!("M {ax} {ay} L {bx} {by}");
    }
    // The orthogonal circle through two points at angular distance 2h has
    // radius tan h; traversed along the shorter ccw direction the geodesic
    // turns clockwise.
    let (from, to, short) = if delta < half {
        ((ax, ay), (bx, by), delta)
    } else {
        ((bx, by), (ax, ay), BigRational::one() - delta)
    };
    let h = PI * turns(&short);
    let r = num(h.tan());
    format!("M {} {} A {r} {r} 0 0 0 {} {}", from.0, from.1, to.0, to.1)
}

/// Renders `lam` as an SVG 1.1 document in the view box `[-1.1, 1.1]²`.
pub fn to_svg(lam: &FiniteLamination, opts: &RenderOptions) -> String {
    let w = num(turns(&opts.stroke_width));
    let hw = num(turns(&opts.stroke_width) * 2.0);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"-1.1 -1.1 2.2 2.2\" width=\"800\" height=\"800\">\n",
    );
    s.push_str("<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linecap=\"round\">\n");
    let _ = writeln!(s, "<circle cx=\"0\" cy=\"0\" r=\"1\" stroke=\"#000000\" stroke-width=\"{w}\"/>");
    let _ = writeln!(s, "<g stroke=\"#1f3a93\" stroke-width=\"{w}\">");
    for l in lam.leaves() {
        let _ = writeln!(s, "<path d=\"{}\"/>", chord_path(l, opts.geometry));
    }
    s.push_str("</g>\n");
    if let Some(hl) = &opts.highlight {
        let hl: BTreeSet<&Chord> = hl.iter().filter(|c| !c.is_degenerate()).collect();
        let _ = writeln!(s, "<g stroke=\"#c0392b\" stroke-width=\"{hw}\">");
        for l in hl {
            let _ = writeln!(s, "<path d=\"{}\"/>", chord_path(l, opts.geometry));
        }
        s.push_str("</g>\n");
    }
    s.push_str("</g>\n</svg>\n");
    s
}

pub const WEAK_FILL: &str = "#d62728";
pub const STRONG_FILL: &str = "#1f77b4";
pub const INVALID_FILL: &str = "#dddddd";

/// One cell per grid point `(i/q, j/q)`, `t` to the right and `s` upwards.
/// Every valid (non-crossing) cell needs a row.
pub fn survey_raster(rows: &[SurveyRow], grid_q: u32) -> Result<String> {
    if grid_q < 2 {
        return Err(Error::GridTooCoarse(grid_q));
    }
    if rows.is_empty() {
        return Err(Error::MissingRows("no rows".into()));
    }
    let q = grid_q as i64;
    let mut cells: HashMap<(i64, i64), bool> = HashMap::new();
    for r in rows {
        let idx = |a: &Angle| -> Option<i64> {
            let scaled = a.as_ratio() * BigRational::from_integer(q.into());
            scaled.is_integer().then(|| scaled.to_integer().to_i64()).flatten()
        };
        match (idx(&r.t), idx(&r.s)) {
            (Some(i), Some(j)) => {
                cells.insert((i, j), r.weak);
            }
            _ => return Err(Error::MissingRows(format!("row ({}, {}) is off the grid 1/{q}", r.t, r.s))),
        }
    }
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {q} {q}\" width=\"{}\" height=\"{}\" shape-rendering=\"crispEdges\">",
        (q * 8).max(256),
        (q * 8).max(256)
    );
    for j in 0..q {
        for i in 0..q {
            let fill = if !grid_cell_valid(i as u32, j as u32, grid_q) {
                INVALID_FILL
            } else {
                match cells.get(&(i, j)) {
                    Some(true) => WEAK_FILL,
                    Some(false) => STRONG_FILL,
                    None => {
                        return Err(Error::MissingRows(format!("no row for t={i}/{q}, s={j}/{q}")))
                    }
                }
            };
            let _ = writeln!(
                s,
                "<rect x=\"{i}\" y=\"{}\" width=\"1\" height=\"1\" fill=\"{fill}\"/>",
                q - 1 - j
            );
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

//! Argument handling for the `lamlab` binary.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on domain errors
//! (unparsable angles, crossing or non-critical chords, bad files).

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::alliance::{friends_probe, prime_probe, survey_rows, summarize, FriendVerdict, PrimeVerdict, SURVEY_HEADER};
use crate::angle::{orbit, Angle, OrbitSummary, DEGREE};
use crate::chord::{CircleSet, Chord};
use crate::error::{Error, Result};
use crate::io::{read_lam, write_lam};
use crate::lamination::{compatible_intervals, first_crossing, FiniteLamination};
use crate::portrait::{classify, portrait_new, CriticalPortrait, WeakStrongVerdict};
use crate::quad_gap::{gap_from_pi, invariant_gap_majors, pi_points, Major};
use crate::pullback::build_pullback;
use crate::render::{survey_raster, to_svg, RenderOptions};

#[derive(Parser, Debug)]
#[command(name = "lamlab", version, about = "Exact combinatorics of cubic critical portraits")]
struct Cli {
    /// Line-delimited JSON output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PortraitArgs {
    /// First critical parameter p/q
    #[arg(long, requires = "s", conflicts_with = "portrait")]
    t: Option<String>,
    /// Second critical parameter p/q
    #[arg(long, requires = "t")]
    s: Option<String>,
    /// Two chords (or parameters) separated by a comma
    #[arg(long)]
    portrait: Option<String>,
}

impl PortraitArgs {
    fn resolve(&self) -> Result<CriticalPortrait> {
        match (&self.t, &self.s, &self.portrait) {
            (Some(t), Some(s), None) => portrait_new(&t.parse()?, &s.parse()?),
            (None, None, Some(p)) => p.parse(),
            _ => Err(Error::MalformedPortrait("give --t and --s, or --portrait".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orbit of an angle under tripling
    Orbit {
        #[arg(long)]
        angle: String,
    },
    /// Weak/strong classification of a critical portrait
    Classify(PortraitArgs),
    /// Approximate invariant quadratic gap of a critical chord
    Gap {
        #[arg(long)]
        chord: String,
        #[arg(long)]
        period: u32,
        #[arg(long, default_value_t = 0)]
        preperiod: u32,
    },
    /// Depth-bounded pullback lamination, written as a .lam file
    Pullback {
        #[command(flatten)]
        portrait: PortraitArgs,
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// SVG picture of a .lam file
    Render {
        file: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long)]
        hyperbolic: bool,
    },
    /// Whether a portrait crosses no leaf of a .lam file
    Compat {
        file: PathBuf,
        #[command(flatten)]
        portrait: PortraitArgs,
    },
    /// Parameters whose critical chord crosses no leaf of a .lam file
    Intervals { file: PathBuf },
    /// Pullback obstruction probe between two portraits
    Friends {
        #[arg(long)]
        k1: String,
        #[arg(long)]
        k2: String,
        #[arg(long)]
        depth: u32,
    },
    /// Search for a weak portrait certifying primeness
    Prime {
        #[command(flatten)]
        portrait: PortraitArgs,
        #[arg(long)]
        depth: u32,
    },
    /// Weak/strong survey of the (t, s) grid with step 1/Q
    Survey {
        #[arg(long)]
        grid: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        raster: Option<PathBuf>,
    },
}

fn json_line<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let s = serde_json::to_string(v).expect("serializable");
    writeln!(out, "{s}")?;
    Ok(())
}

fn load(path: &Path) -> Result<FiniteLamination> {
    read_lam(BufReader::new(File::open(path)?))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(contents.as_bytes())?;
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct OrbitOut<'a> {
    angle: &'a Angle,
    #[serde(flatten)]
    orbit: &'a OrbitSummary,
}

#[derive(Serialize)]
struct ClassifyOut<'a> {
    portrait: String,
    verdict: String,
    #[serde(flatten)]
    detail: &'a WeakStrongVerdict,
}

#[derive(Serialize)]
struct GapOut<'a> {
    chord: &'a Chord,
    vertices: &'a [Angle],
    edges: Vec<Chord>,
    majors: Option<&'a [Major]>,
}

#[derive(Serialize)]
struct WrittenOut<'a> {
    path: &'a Path,
    leaves: usize,
    bytes: usize,
}

#[derive(Serialize)]
struct CompatOut {
    compatible: bool,
    crossing: Option<(Chord, Chord)>,
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let json = cli.json;
    match cli.command {
        Command::Orbit { angle } => {
            let a: Angle = angle.parse()?;
            let o = orbit(&a, DEGREE);
            if json {
                json_line(out, &OrbitOut { angle: &a, orbit: &o })?;
            } else {
                let tail: Vec<String> = o.tail().iter().map(Angle::to_string).collect();
                let cycle: Vec<String> = o.cycle().iter().map(Angle::to_string).collect();
                writeln!(out, "preperiod {} period {}", o.preperiod, o.period)?;
                writeln!(out, "tail [{}] cycle [{}]", tail.join(" "), cycle.join(" "))?;
            }
        }
        Command::Classify(p) => {
            let k = p.resolve()?;
            let v = classify(&k);
            if json {
                json_line(out, &ClassifyOut { portrait: k.to_string(), verdict: v.kind().to_string(), detail: &v })?;
            } else {
                writeln!(out, "{}", v.kind())?;
            }
        }
        Command::Gap { chord, period, preperiod } => {
            let c: Chord = chord.parse()?;
            let g = gap_from_pi(&pi_points(&c, period, preperiod)?)?;
            // majors are only defined when the vertices map onto themselves
            let majors = match invariant_gap_majors(&g) {
                Ok(m) => Some(m),
                Err(Error::NotInvariant(_)) => None,
                Err(e) => return Err(e),
            };
            if json {
                json_line(out, &GapOut { chord: &c, vertices: g.vertices(), edges: g.edges(), majors: majors.as_deref() })?;
            } else {
                writeln!(out, "vertices {g}")?;
                let edges: Vec<String> = g.edges().iter().map(Chord::to_string).collect();
                writeln!(out, "edges {}", edges.join(" "))?;
                match majors {
                    Some(majors) => {
                        let majors: Vec<String> = majors.iter().map(|m| format!("{} ({})", m.edge, m.witness)).collect();
                        writeln!(out, "majors {}", majors.join(" "))?;
                    }
                    None => writeln!(out, "majors undefined: vertex set not mapped onto itself")?,
                }
            }
        }
        Command::Pullback { portrait, depth, out: path } => {
            let lam = build_pullback(&portrait.resolve()?, depth)?;
            let mut w = BufWriter::new(File::create(&path)?);
            let bytes = write_lam(&lam, &mut w)?;
            if json {
                json_line(out, &WrittenOut { path: &path, leaves: lam.len(), bytes })?;
            } else {
                writeln!(out, "{} leaves written to {}", lam.len(), path.display())?;
            }
        }
        Command::Render { file, svg, hyperbolic } => {
            let lam = load(&file)?;
            let opts = if hyperbolic { RenderOptions::hyperbolic() } else { RenderOptions::default() };
            let doc = to_svg(&lam, &opts);
            write_file(&svg, &doc)?;
            if json {
                json_line(out, &WrittenOut { path: &svg, leaves: lam.len(), bytes: doc.len() })?;
            } else {
                writeln!(out, "{} leaves rendered to {}", lam.len(), svg.display())?;
            }
        }
        Command::Compat { file, portrait } => {
            let lam = load(&file)?;
            let crossing = first_crossing(&portrait.resolve()?, &lam);
            if json {
                json_line(out, &CompatOut { compatible: crossing.is_none(), crossing })?;
            } else {
                match crossing {
                    None => writeln!(out, "compatible")?,
                    Some((c, l)) => writeln!(out, "incompatible: {c} crosses {l}")?,
                }
            }
        }
        Command::Intervals { file } => {
            let set: CircleSet = compatible_intervals(&load(&file)?);
            if json {
                json_line(out, &set)?;
            } else {
                writeln!(out, "{set}")?;
            }
        }
        Command::Friends { k1, k2, depth } => {
            let v: FriendVerdict = friends_probe(&k1.parse()?, &k2.parse()?, depth)?;
            if json {
                json_line(out, &v)?;
            } else {
                writeln!(out, "{v}")?;
            }
        }
        Command::Prime { portrait, depth } => {
            let v: PrimeVerdict = prime_probe(&portrait.resolve()?, depth)?;
            if json {
                json_line(out, &v)?;
            } else {
                writeln!(out, "{v}")?;
            }
        }
        Command::Survey { grid, out: path, raster } => {
            let rows = survey_rows(grid)?;
            let mut w = BufWriter::new(File::create(&path)?);
            writeln!(w, "{SURVEY_HEADER}")?;
            for r in &rows {
                writeln!(w, "{}", r.to_csv())?;
            }
            w.flush()?;
            if let Some(svg) = &raster {
                write_file(svg, &survey_raster(&rows, grid)?)?;
            }
            let summary = summarize(grid, &rows);
            if json {
                json_line(out, &summary)?;
            } else {
                writeln!(
                    out,
                    "grid {} valid {} weak {} strong {} weak_fraction {}",
                    summary.grid_q, summary.valid, summary.weak, summary.strong, summary.weak_fraction
                )?;
            }
        }
    }
    Ok(())
}

/// Runs one invocation against the given streams and returns the exit code.
pub fn dispatch_to<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn dispatch<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    dispatch_to(argv, &mut out, &mut std::io::stderr())
}

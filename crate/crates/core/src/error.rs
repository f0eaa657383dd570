use thiserror::Error;

use crate::chord::Chord;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed angle `{0}`: expected `p/q` or an integer")]
    MalformedAngle(String),

    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),

    #[error("malformed chord `{0}`: expected `p/q-r/s`")]
    MalformedChord(String),

    #[error("malformed portrait `{0}`: expected two chords or parameters separated by `,`")]
    MalformedPortrait(String),

    #[error("degenerate chord {0} where a nondegenerate chord is required")]
    DegenerateChord(Chord),

    #[error("chord {0} is not critical for the tripling map")]
    NotCritical(Chord),

    #[error("critical chords {0} and {1} cross")]
    CrossingChords(Chord, Chord),

    #[error("leaves {0} and {1} cross")]
    CrossingPair(Chord, Chord),

    #[error("portrait has coincident critical chords {0}; its pullback partition is undefined")]
    CoincidentChords(Chord),

    #[error("gap needs at least two distinct vertices")]
    DegenerateGap,

    #[error("empty point set")]
    EmptyApproximation,

    #[error("vertex set is not invariant: {0}")]
    NotInvariant(String),

    #[error("chord {0} is not a leaf of the lamination")]
    NotALeaf(Chord),

    #[error("resolution must be positive")]
    NonPositiveResolution,

    #[error("grid too coarse: need at least 2 cells per side, got {0}")]
    GridTooCoarse(u32),

    #[error("survey rows missing: {0}")]
    MissingRows(String),

    #[error("survey line {line}: {msg}")]
    CsvParse { line: usize, msg: String },

    #[error("line {line}: {msg}")]
    LamParse { line: usize, msg: String },

    #[error("lines {line1} and {line2}: leaves {first} and {second} cross")]
    LamCrossing {
        line1: usize,
        line2: usize,
        first: Chord,
        second: Chord,
    },

    #[error("period bound must be at least 1")]
    ZeroPeriodBound,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

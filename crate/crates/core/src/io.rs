//! The `.lam` lamination format and survey CSV reading.
//!
//! ```text
//! LAM d=3 depth=2 count=3 source=pullback(1/12-5/12,7/12-11/12)
//! 1/36-17/36
//! ...
//! ```
//!
//! `depth=none` marks a lamination without a declared depth. Lines starting
//! with `#` are ignored on input.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::alliance::{SurveyRow, SURVEY_HEADER};
use crate::angle::DEGREE;
use crate::chord::Chord;
use crate::error::{Error, Result};
use crate::lamination::{find_crossing, FiniteLamination};

pub fn lam_to_string(lam: &FiniteLamination) -> String {
    let depth = lam.depth().map_or_else(|| "none".to_string(), |d| d.to_string());
    let mut s = format!(
        "LAM d={DEGREE} depth={depth} count={} source={}\n",
        lam.len(),
        lam.source()
    );
    for l in lam.leaves() {
        s.push_str(&l.to_string());
        s.push('\n');
    }
    s
}

/// Writes `lam` in canonical form and returns the number of bytes written.
pub fn write_lam<W: Write>(lam: &FiniteLamination, out: &mut W) -> Result<usize> {
    let s = lam_to_string(lam);
    out.write_all(s.as_bytes())?;
    out.flush()?;
    Ok(s.len())
}

struct Header {
    depth: Option<u32>,
    count: usize,
    source: String,
}

fn parse_header(line: &str, lineno: usize) -> Result<Header> {
    let bad = |msg: String| Error::LamParse { line: lineno, msg };
    let rest = line
        .strip_prefix("LAM ")
        .ok_or_else(|| bad("expected header `LAM d=3 depth=N count=M source=<tag>`".into()))?;
    let (fields, source) = match rest.split_once(" source=") {
        Some((f, s)) => (f, s.to_string()),
        None => return Err(bad("header lacks `source=`".into())),
    };
    let mut kv = BTreeMap::new();
    for field in fields.split_whitespace() {
        let (k, v) = field.split_once('=').ok_or_else(|| bad(format!("bad header field `{field}`")))?;
        kv.insert(k, v);
    }
    let get = |k: &str| kv.get(k).copied().ok_or_else(|| bad(format!("header lacks `{k}=`")));
    if get("d")? != DEGREE.to_string() {
        return Err(bad(format!("only degree {DEGREE} is supported")));
    }
    let depth = match get("depth")? {
        "none" => None,
        d => Some(d.parse().map_err(|_| bad(format!("bad depth `{d}`")))?),
    };
    let count = get("count")?;
    let count = count.parse().map_err(|_| bad(format!("bad count `{count}`")))?;
    Ok(Header { depth, count, source })
}

/// Reads and validates a `.lam` document. Chords are canonicalized, so
/// `2/6-1/2` is read as `1/3-1/2`; crossing leaves are reported with the
/// line numbers they appeared on.
pub fn read_lam<R: BufRead>(input: R) -> Result<FiniteLamination> {
    let mut header = None;
    let mut chords: Vec<(Chord, usize)> = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        if header.is_none() {
            header = Some(parse_header(text, lineno)?);
            continue;
        }
        let c: Chord = text
            .parse()
            .map_err(|e: Error| Error::LamParse { line: lineno, msg: e.to_string() })?;
        if c.is_degenerate() {
            return Err(Error::LamParse { line: lineno, msg: format!("degenerate chord {c}") });
        }
        chords.push((c, lineno));
    }
    let header = header.ok_or(Error::LamParse { line: 1, msg: "missing header".into() })?;
    let plain: Vec<Chord> = chords.iter().map(|(c, _)| c.clone()).collect();
    if let Some((i, j)) = find_crossing(&plain) {
        return Err(Error::LamCrossing {
            line1: chords[i].1,
            line2: chords[j].1,
            first: plain[i].clone(),
            second: plain[j].clone(),
        });
    }
    let lam = FiniteLamination::new(plain)?;
    if lam.len() != header.count {
        return Err(Error::LamParse {
            line: 1,
            msg: format!("header declares {} leaves, found {}", header.count, lam.len()),
        });
    }
    Ok(lam.with_provenance(header.depth, header.source))
}

pub fn read_lam_str(s: &str) -> Result<FiniteLamination> {
    read_lam(s.as_bytes())
}

/// Reads survey CSV rows; the header line is required.
pub fn read_survey<R: BufRead>(input: R) -> Result<Vec<SurveyRow>> {
    let mut lines = input.lines().enumerate();
    match lines.next() {
        Some((_, Ok(h))) if h.trim_end() == SURVEY_HEADER => {}
        Some((_, Err(e))) => return Err(e.into()),
        _ => return Err(Error::CsvParse { line: 1, msg: format!("expected header `{SURVEY_HEADER}`") }),
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        rows.push(SurveyRow::parse_csv(&line, i + 1)?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::portrait::portrait_new;
    use crate::pullback::build_pullback;

    #[test]
    fn empty_lamination() {
        let mut buf = Vec::new();
        let n = write_lam(&FiniteLamination::empty(), &mut buf).unwrap();
        assert_eq!(buf, b"LAM d=3 depth=none count=0 source=\n");
        assert_eq!(n, buf.len());
        assert_eq!(read_lam(&buf[..]).unwrap(), FiniteLamination::empty());
    }

    #[test]
    fn portrait_lamination_has_three_lines() {
        let k = portrait_new(&"1/12".parse().unwrap(), &"7/12".parse().unwrap()).unwrap();
        let lam = build_pullback(&k, 0).unwrap();
        let s = lam_to_string(&lam);
        assert_eq!(
            s,
            "LAM d=3 depth=0 count=2 source=pullback(1/12-5/12,7/12-11/12)\n1/12-5/12\n7/12-11/12\n"
        );
        assert_eq!(read_lam_str(&s).unwrap(), lam);
        let deeper = build_pullback(&k, 4).unwrap();
        assert_eq!(lam_to_string(&read_lam_str(&lam_to_string(&deeper)).unwrap()), lam_to_string(&deeper));
    }

    #[test]
    fn crossing_pair_names_lines() {
        let doc = "LAM d=3 depth=none count=3 source=x\n# comment\n0/1-1/2\n1/3-2/3\n1/4-3/4\n";
        match read_lam_str(doc) {
            Err(Error::LamCrossing { line1, line2, .. }) => {
                let mut lines = [line1, line2];
                lines.sort();
                assert!(lines == [3, 4] || lines == [3, 5] || lines == [4, 5]);
            }
            other => panic!("expected crossing error, got {other:?}"),
        }
    }

    #[test]
    fn unreduced_fractions_are_canonicalized() {
        let lam = read_lam_str("LAM d=3 depth=none count=1 source=\n2/6-1/2\n").unwrap();
        assert_eq!(lam.leaves()[0].to_string(), "1/3-1/2");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(read_lam_str("nope\n"), Err(Error::LamParse { line: 1, .. })));
        assert!(matches!(
            read_lam_str("LAM d=3 depth=1 count=1 source=\n\n1/3-x\n"),
            Err(Error::LamParse { line: 3, .. })
        ));
        assert!(matches!(
            read_lam_str("LAM d=3 depth=1 count=2 source=\n0/1-1/2\n"),
            Err(Error::LamParse { line: 1, .. })
        ));
    }
}

//! The `.pms` text format for finite spaces, plus the sequence literal
//! used on the command line.
//!
//! ```text
//! pms 1
//! points 2
//! labels a b
//! matrix
//! 0 1
//! 1 1
//! ```
//!
//! Entries are exact rationals written `p/q` or as integers. Parsing and
//! emitting round-trip up to whitespace normalisation.

use thiserror::Error;

use crate::rational::{fmt_rat, parse_rat, Rat};
use crate::seq::{EventuallyPeriodicSeq, SeqError};
use crate::space::{FinitePMetricSpace, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PmsError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unsupported format version {0}, expected 1")]
    Version(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

fn syntax(line: usize, msg: impl Into<String>) -> PmsError {
    PmsError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Parses the `.pms` format. Blank lines and `#` comment lines are
/// skipped; everything else is positional.
pub fn parse_pms(text: &str) -> Result<FinitePMetricSpace, PmsError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, header) = lines.next().ok_or(syntax(0, "empty input"))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("pms") {
        return Err(syntax(ln, "expected header `pms 1`"));
    }
    match parts.next() {
        Some("1") => {}
        Some(v) => return Err(PmsError::Version(v.to_string())),
        None => return Err(syntax(ln, "missing version in header")),
    }

    let (ln, points_line) = lines.next().ok_or(syntax(ln, "missing `points` line"))?;
    let n: usize = points_line
        .strip_prefix("points")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or(syntax(ln, "expected `points <n>`"))?;

    let (ln, labels_line) = lines.next().ok_or(syntax(ln, "missing `labels` line"))?;
    let labels: Vec<String> = labels_line
        .strip_prefix("labels")
        .ok_or(syntax(ln, "expected `labels <l...>`"))?
        .split_whitespace()
        .map(String::from)
        .collect();

    let (ln, matrix_line) = lines.next().ok_or(syntax(ln, "missing `matrix` line"))?;
    if matrix_line != "matrix" {
        return Err(syntax(ln, "expected `matrix`"));
    }

    let mut matrix: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut last_ln = ln;
    for _ in 0..n {
        let (ln, row_line) = lines
            .next()
            .ok_or(syntax(last_ln, format!("expected {n} matrix rows")))?;
        last_ln = ln;
        let row: Result<Vec<Rat>, PmsError> = row_line
            .split_whitespace()
            .map(|tok| parse_rat(tok).map_err(|e| syntax(ln, e)))
            .collect();
        matrix.push(row?);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(syntax(ln, "trailing content after matrix"));
    }
    Ok(FinitePMetricSpace::new(labels, matrix)?)
}

/// Emits the canonical form: single spaces, one matrix row per line.
pub fn emit_pms(space: &FinitePMetricSpace) -> String {
    let mut out = String::new();
    out.push_str("pms 1\n");
    out.push_str(&format!("points {}\n", space.len()));
    out.push_str(&format!("labels {}\n", space.labels().join(" ")));
    out.push_str("matrix\n");
    for row in space.matrix() {
        let cells: Vec<String> = row.iter().map(fmt_rat).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the sequence literal `prefix;cycle` with comma-separated point
/// labels, e.g. `b;a` for b, a, a, a, ... An empty prefix part is
/// allowed: `;a,b`.
pub fn parse_seq_literal(
    text: &str,
    space: &FinitePMetricSpace,
) -> Result<EventuallyPeriodicSeq, PmsError> {
    let (prefix_part, cycle_part) = text
        .split_once(';')
        .ok_or(syntax(0, "sequence literal must be `prefix;cycle`"))?;
    let resolve = |part: &str| -> Result<Vec<usize>, PmsError> {
        if part.trim().is_empty() {
            return Ok(Vec::new());
        }
        part.split(',')
            .map(|l| {
                let l = l.trim();
                space
                    .index_of(l)
                    .ok_or(syntax(0, format!("unknown point label `{l}`")))
            })
            .collect()
    };
    let prefix = resolve(prefix_part)?;
    let cycle = resolve(cycle_part)?;
    Ok(EventuallyPeriodicSeq::new(prefix, cycle, space.len())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::space::two_point_y;

    #[test]
    fn round_trip_canonical() {
        let y = two_point_y();
        let text = emit_pms(&y);
        assert_eq!(text, "pms 1\npoints 2\nlabels a b\nmatrix\n0 1\n1 1\n");
        assert_eq!(parse_pms(&text).unwrap(), y);
    }

    #[test]
    fn whitespace_and_comments_are_tolerated() {
        let text = "# fixture\npms 1\n\npoints 2\n  labels a b\nmatrix\n 0  1 \n1 1\n\n";
        assert_eq!(parse_pms(text).unwrap(), two_point_y());
    }

    #[test]
    fn rational_entries() {
        let text = "pms 1\npoints 2\nlabels a b\nmatrix\n1/3 1/2\n1/2 1/2\n";
        let s = parse_pms(text).unwrap();
        assert_eq!(s.p(0, 0), &rat(1, 3));
        assert_eq!(parse_pms(&emit_pms(&s)).unwrap(), s);
    }

    #[test]
    fn errors_are_syntax_or_shape() {
        assert!(matches!(parse_pms(""), Err(PmsError::Syntax { .. })));
        assert!(matches!(
            parse_pms("pms 2\npoints 1\nlabels a\nmatrix\n0\n"),
            Err(PmsError::Version(_))
        ));
        // negative entries are rejected at the shape level
        assert!(matches!(
            parse_pms("pms 1\npoints 1\nlabels a\nmatrix\n-1\n"),
            Err(PmsError::Space(SpaceError::NegativeEntry { .. }))
        ));
        assert!(matches!(
            parse_pms("pms 1\npoints 2\nlabels a b\nmatrix\n0 1\n1\n"),
            Err(PmsError::Space(SpaceError::NotSquare { .. }))
        ));
        assert!(matches!(
            parse_pms("pms 1\npoints 1\nlabels a\nmatrix\n0\nextra\n"),
            Err(PmsError::Syntax { .. })
        ));
    }

    #[test]
    fn seq_literals() {
        let y = two_point_y();
        let s = parse_seq_literal("b;a", &y).unwrap();
        assert_eq!(s.prefix(), &[1]);
        assert_eq!(s.cycle(), &[0]);
        let s = parse_seq_literal(";a,b", &y).unwrap();
        assert_eq!(s.prefix(), &[] as &[usize]);
        assert_eq!(s.cycle(), &[0, 1]);
        assert!(parse_seq_literal("b;z", &y).is_err());
        assert!(parse_seq_literal("ab", &y).is_err());
    }
}

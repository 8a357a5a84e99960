//! The `scm-v1` text format: optional `#` comment lines, a header line `n d`,
//! then `n` lines of `n` whitespace-separated relation indices.

use std::fmt::Write as _;
use std::path::Path;

use super::RelationIndexMatrix;
use crate::error::{Error, Result};

pub fn parse_scm(text: &str) -> Result<RelationIndexMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#') && !l.is_empty());

    let parse_err = |line: usize, message: String| Error::Parse { line, message };

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing `n d` header".into()))?;
    let header: Vec<&str> = header.split_whitespace().collect();
    let [n, d] = header[..] else {
        return Err(parse_err(
            hline,
            format!("expected `n d`, found {} fields", header.len()),
        ));
    };
    let n: usize = n
        .parse()
        .map_err(|e| parse_err(hline, format!("bad n `{n}`: {e}")))?;
    let d: usize = d
        .parse()
        .map_err(|e| parse_err(hline, format!("bad d `{d}`: {e}")))?;
    if n == 0 || d == 0 {
        return Err(parse_err(hline, "n and d must be positive".into()));
    }

    let mut entries = Vec::with_capacity(n * n);
    let mut row_count = 0;
    for (lineno, line) in lines {
        if row_count == n {
            return Err(parse_err(lineno, format!("more than {n} matrix rows")));
        }
        let before = entries.len();
        for tok in line.split_whitespace() {
            let v: u64 = tok
                .parse()
                .map_err(|e| parse_err(lineno, format!("bad entry `{tok}`: {e}")))?;
            entries.push(v);
        }
        if entries.len() - before != n {
            return Err(parse_err(
                lineno,
                format!("expected {n} entries, found {}", entries.len() - before),
            ));
        }
        row_count += 1;
    }
    if row_count != n {
        return Err(parse_err(
            0,
            format!("expected {n} matrix rows, found {row_count}"),
        ));
    }
    Ok(RelationIndexMatrix::new(n, d, entries)?)
}

pub fn read_scm(path: impl AsRef<Path>) -> Result<RelationIndexMatrix> {
    parse_scm(&std::fs::read_to_string(path)?)
}

/// Canonical serialisation: header then rows joined by single spaces, no comments.
pub fn write_scm(rel: &RelationIndexMatrix) -> String {
    let mut out = String::with_capacity(rel.n() * rel.n() * 3 + 16);
    writeln!(out, "{} {}", rel.n(), rel.d()).unwrap();
    for x in 0..rel.n() {
        let row: Vec<String> = rel.row(x).iter().map(u32::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Violation;

    #[test]
    fn parses_with_comments() {
        let text = "# X^(1)\n2 1\n# rows follow\n0 1\n1 0\n";
        let rel = parse_scm(text).unwrap();
        assert_eq!((rel.n(), rel.d()), (2, 1));
        assert_eq!(write_scm(&rel), "2 1\n0 1\n1 0\n");
    }

    #[test]
    fn canonical_text_round_trips_bit_exactly() {
        let text = "4 3\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n";
        assert_eq!(write_scm(&parse_scm(text).unwrap()), text);
    }

    #[test]
    fn reports_line_numbers() {
        match parse_scm("2 1\n0 1\n1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_scm("2 1\n0 x\n1 0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_scm("# only comments\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_scm("2 1\n0 1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn structural_errors_surface_as_axiom_violations() {
        assert!(matches!(
            parse_scm("2 1\n0 1\n0 0\n"),
            Err(Error::Axiom(Violation::ZeroOffDiagonal { x: 1, y: 0 }))
                | Err(Error::Axiom(Violation::Asymmetric { .. }))
        ));
    }
}

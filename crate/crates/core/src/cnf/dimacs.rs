use std::fmt::Write as _;

use crate::cnf::{Clause, Cnf, Literal, Origin};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Reject files whose clause count disagrees with the header.
    pub strict: bool,
}

/// Parses a DIMACS CNF file.
///
/// Comment lines (`c ...`) may appear anywhere. Clauses may span lines and
/// must be terminated by `0`; in lenient mode a final unterminated clause is
/// accepted and a `%` line ends the input (as in SATLIB files).
pub fn parse_dimacs(input: &[u8], options: ParseOptions) -> Result<Cnf> {
    let text = String::from_utf8_lossy(input);
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut clause_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') && !options.strict {
            break;
        }
        let Some((num_vars, _)) = header else {
            header = Some(parse_header(line, line_no)?);
            continue;
        };
        if line.starts_with('p') {
            return Err(Error::InvalidToken {
                line: line_no,
                token: line.to_string(),
            });
        }
        for token in line.split_ascii_whitespace() {
            let value: i64 = token.parse().map_err(|_| Error::InvalidToken {
                line: line_no,
                token: token.to_string(),
            })?;
            if current.is_empty() {
                clause_line = line_no;
            }
            if value == 0 {
                if current.is_empty() {
                    return Err(Error::ZeroWidthClause { line: line_no });
                }
                clauses.push(Clause::new(current.drain(..)));
                continue;
            }
            if value.unsigned_abs() > num_vars as u64 || value.unsigned_abs() > i32::MAX as u64 {
                return Err(Error::LiteralOutOfRange {
                    line: line_no,
                    literal: value,
                    num_vars,
                });
            }
            current.push(Literal::new(value as i32).unwrap());
        }
    }

    let Some((num_vars, declared)) = header else {
        return Err(Error::MissingHeader { line: 0 });
    };
    if !current.is_empty() {
        if options.strict {
            return Err(Error::InvalidToken {
                line: clause_line,
                token: "unterminated clause".to_string(),
            });
        }
        clauses.push(Clause::new(current.drain(..)));
    }
    if options.strict && declared != clauses.len() {
        return Err(Error::HeaderMismatch {
            declared,
            actual: clauses.len(),
        });
    }
    Cnf::new(num_vars, clauses, Origin::Parsed)
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize)> {
    let mut parts = line.split_ascii_whitespace();
    let malformed = || Error::MissingHeader { line: line_no };
    if parts.next() != Some("p") || parts.next() != Some("cnf") {
        return Err(malformed());
    }
    let num_vars = parts.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
    let num_clauses = parts.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
    if parts.next().is_some() {
        return Err(malformed());
    }
    Ok((num_vars, num_clauses))
}

/// Writes a formula as DIMACS CNF, one clause per line.
pub fn render_dimacs(cnf: &Cnf) -> String {
    let mut out = String::with_capacity(16 + cnf.clauses.len() * 16);
    writeln!(out, "p cnf {} {}", cnf.num_vars, cnf.clauses.len()).unwrap();
    for clause in &cnf.clauses {
        for lit in clause.literals() {
            write!(out, "{lit} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(cnf: &Cnf) -> Vec<Vec<i32>> {
        cnf.clauses
            .iter()
            .map(|c| c.literals().iter().map(|l| l.value()).collect())
            .collect()
    }

    #[test]
    fn parses_basic_file() {
        let cnf = parse_dimacs(b"p cnf 3 2\n1 -2 0\n2 3 0\n", ParseOptions::default()).unwrap();
        assert_eq!(cnf.num_vars, 3);
        assert_eq!(ints(&cnf), vec![vec![1, -2], vec![2, 3]]);
        assert_eq!(cnf.origin, Origin::Parsed);
    }

    #[test]
    fn skips_comments() {
        let cnf = parse_dimacs(b"c hi\np cnf 1 1\n1 0\n", ParseOptions::default()).unwrap();
        assert_eq!(ints(&cnf), vec![vec![1]]);
    }

    #[test]
    fn literal_out_of_range() {
        let err = parse_dimacs(b"p cnf 2 1\n3 0\n", ParseOptions::default()).unwrap_err();
        assert!(matches!(err, Error::LiteralOutOfRange { literal: 3, .. }));
    }

    #[test]
    fn missing_header() {
        assert!(matches!(
            parse_dimacs(b"1 2 0\n", ParseOptions::default()),
            Err(Error::MissingHeader { .. })
        ));
        assert!(matches!(
            parse_dimacs(b"c only comments\n", ParseOptions::default()),
            Err(Error::MissingHeader { .. })
        ));
        assert!(matches!(
            parse_dimacs(b"p dnf 2 1\n1 0\n", ParseOptions::default()),
            Err(Error::MissingHeader { .. })
        ));
    }

    #[test]
    fn header_mismatch_only_in_strict_mode() {
        let text = b"p cnf 3 3\n1 2 0\n-3 0\n";
        assert_eq!(parse_dimacs(text, ParseOptions::default()).unwrap().num_clauses(), 2);
        assert_eq!(
            parse_dimacs(text, ParseOptions { strict: true }),
            Err(Error::HeaderMismatch { declared: 3, actual: 2 })
        );
    }

    #[test]
    fn zero_width_clause() {
        assert!(matches!(
            parse_dimacs(b"p cnf 2 2\n1 0\n0\n", ParseOptions::default()),
            Err(Error::ZeroWidthClause { line: 3 })
        ));
    }

    #[test]
    fn clauses_spanning_lines_and_duplicates() {
        let cnf = parse_dimacs(b"p cnf 4 2\n1 2\n2 3 0 4\n-4 1 -1 0\n", ParseOptions::default())
            .unwrap();
        assert_eq!(ints(&cnf), vec![vec![1, 2, 3], vec![4, -4, 1, -1]]);
        assert_eq!(cnf.tautologies, 1);
    }

    #[test]
    fn lenient_trailer_handling() {
        let cnf = parse_dimacs(b"p cnf 2 2\n1 0\n-2\n", ParseOptions::default()).unwrap();
        assert_eq!(ints(&cnf), vec![vec![1], vec![-2]]);
        assert!(parse_dimacs(b"p cnf 2 2\n1 0\n-2\n", ParseOptions { strict: true }).is_err());
        let satlib = parse_dimacs(b"p cnf 2 1\n1 2 0\n%\n0\n", ParseOptions::default()).unwrap();
        assert_eq!(satlib.num_clauses(), 1);
    }

    #[test]
    fn invalid_token() {
        assert!(matches!(
            parse_dimacs(b"p cnf 2 1\n1 x 0\n", ParseOptions::default()),
            Err(Error::InvalidToken { line: 2, .. })
        ));
    }

    #[test]
    fn render_format() {
        let cnf = Cnf::from_ints(3, &[&[1, -2], &[3]], Origin::Constructed).unwrap();
        assert_eq!(render_dimacs(&cnf), "p cnf 3 2\n1 -2 0\n3 0\n");
    }
}

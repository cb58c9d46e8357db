use std::io::Read;

use super::{Clause, Cnf, CnfError, Literal};

/// Reads DIMACS CNF from a byte stream.
pub fn read_dimacs(mut input: impl Read) -> Result<Cnf, CnfError> {
    let mut text = String::new();
    input.read_to_string(&mut text).map_err(|e| CnfError::Malformed {
        line: 0,
        message: e.to_string(),
    })?;
    parse_dimacs(&text)
}

/// Parses DIMACS CNF text.
///
/// Comment lines start with `c`; a line starting with `%` ends the input.
/// Clauses may span lines and are terminated by `0`. Tautological clauses
/// are rejected.
pub fn parse_dimacs(text: &str) -> Result<Cnf, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(CnfError::Malformed {
                    line: lineno,
                    message: "duplicate header".into(),
                });
            }
            header = Some(parse_header(line)?);
            continue;
        }
        let (num_vars, _) = header.ok_or(CnfError::MissingHeader)?;
        for token in line.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| CnfError::Malformed {
                line: lineno,
                message: format!("bad literal `{token}`"),
            })?;
            if value == 0 {
                clauses.push(Clause::new(std::mem::take(&mut current))?);
                continue;
            }
            let lit = Literal::from_dimacs(value)
                .filter(|l| l.var().slot() < num_vars)
                .ok_or(CnfError::VarOutOfRange { var: value, num_vars })?;
            current.push(lit);
        }
    }

    let (num_vars, num_clauses) = header.ok_or(CnfError::MissingHeader)?;
    if !current.is_empty() {
        // Tolerate a missing final terminator.
        clauses.push(Clause::new(current)?);
    }
    if clauses.len() != num_clauses {
        return Err(CnfError::ClauseCountMismatch {
            declared: num_clauses,
            found: clauses.len(),
        });
    }
    Cnf::new(num_vars, clauses)
}

fn parse_header(line: &str) -> Result<(usize, usize), CnfError> {
    let bad = || CnfError::MalformedHeader(line.to_string());
    let mut parts = line.split_whitespace();
    if parts.next() != Some("p") || parts.next() != Some("cnf") {
        return Err(bad());
    }
    let n = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let m = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((n, m))
}

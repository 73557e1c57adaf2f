//! The on-disk format for states and operators.
//!
//! ```text
//! # optional comments
//! dim 3 pure        # or mixed / matrix
//! 0.70710678 0.0
//! 0.0        0.0
//! 0.70710678 0.0
//! ```
//!
//! `pure` expects n `re im` pairs, `mixed` and `matrix` n² pairs in
//! row-major order. Token layout is free-form beyond the header line.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use unibounds::num_complex::Complex64;
use unibounds::{ComplexMatrix64, ComplexVector64, QuantumState64};

use crate::error::{CliError, CliResult};

/// What a file declared itself to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Pure,
    Mixed,
    Matrix,
}

impl FileKind {
    fn parse(s: &str) -> CliResult<Self> {
        match s {
            "pure" => Ok(FileKind::Pure),
            "mixed" => Ok(FileKind::Mixed),
            "matrix" => Ok(FileKind::Matrix),
            other => Err(CliError::Input(format!(
                "unknown kind '{other}' (expected pure, mixed, or matrix)"
            ))),
        }
    }

    fn label(self) -> &'static str {
        match self {
            FileKind::Pure => "pure",
            FileKind::Mixed => "mixed",
            FileKind::Matrix => "matrix",
        }
    }
}

/// A parsed file: declared dimension, kind, and the complex entries.
#[derive(Debug, Clone)]
pub struct ParsedFile {
    pub dim: usize,
    pub kind: FileKind,
    pub entries: Vec<Complex64>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

/// Parse the format from text. The path name is only used in messages.
pub fn parse_text(text: &str, name: &str) -> CliResult<ParsedFile> {
    let mut lines = text
        .lines()
        .map(strip_comment)
        .map(str::trim)
        .filter(|l| !l.is_empty());

    let header = lines
        .next()
        .ok_or_else(|| CliError::Input(format!("{name}: empty file")))?;
    let head_tokens: Vec<&str> = header.split_whitespace().collect();
    if head_tokens.len() != 3 || head_tokens[0] != "dim" {
        return Err(CliError::Input(format!(
            "{name}: header must be 'dim <n> <pure|mixed|matrix>', got '{header}'"
        )));
    }
    let dim: usize = head_tokens[1]
        .parse()
        .map_err(|_| CliError::Input(format!("{name}: bad dimension '{}'", head_tokens[1])))?;
    if dim == 0 {
        return Err(CliError::Input(format!(
            "{name}: dimension must be positive"
        )));
    }
    let kind =
        FileKind::parse(head_tokens[2]).map_err(|e| CliError::Input(format!("{name}: {e}")))?;

    let expected = match kind {
        FileKind::Pure => dim,
        FileKind::Mixed | FileKind::Matrix => dim * dim,
    };
    let mut numbers = Vec::with_capacity(2 * expected);
    for line in lines {
        for tok in line.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| CliError::Input(format!("{name}: bad number '{tok}'")))?;
            numbers.push(v);
        }
    }
    if numbers.len() != 2 * expected {
        return Err(CliError::Input(format!(
            "{name}: expected {} re/im values for dim {dim} {}, found {}",
            2 * expected,
            kind.label(),
            numbers.len()
        )));
    }
    let entries = numbers
        .chunks(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect();
    Ok(ParsedFile { dim, kind, entries })
}

pub fn parse_file(path: &Path) -> CliResult<ParsedFile> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_text(&text, &path.display().to_string())
}

impl ParsedFile {
    /// Interpret as a state (pure or mixed); `matrix` files are rejected.
    pub fn into_state(self, tol: f64) -> CliResult<QuantumState64> {
        match self.kind {
            FileKind::Pure => {
                let v = ComplexVector64::new(self.entries).map_err(CliError::input_from)?;
                QuantumState64::pure(v, tol).map_err(CliError::math_from)
            }
            FileKind::Mixed => {
                let m = ComplexMatrix64::new(self.dim, self.dim, self.entries)
                    .map_err(CliError::input_from)?;
                QuantumState64::mixed(m, tol).map_err(CliError::math_from)
            }
            FileKind::Matrix => Err(CliError::Input(
                "expected a state file (pure or mixed), found matrix".into(),
            )),
        }
    }

    /// Interpret as an operator; `matrix` is the only accepted kind.
    pub fn into_operator(self) -> CliResult<ComplexMatrix64> {
        match self.kind {
            FileKind::Matrix => {
                ComplexMatrix64::new(self.dim, self.dim, self.entries).map_err(CliError::input_from)
            }
            _ => Err(CliError::Input(format!(
                "expected a matrix file, found {}",
                self.kind.label()
            ))),
        }
    }
}

fn render_pairs(out: &mut String, entries: &[Complex64]) {
    for c in entries {
        let _ = writeln!(out, "{:.16e} {:.16e}", c.re, c.im);
    }
}

/// Serialize a state in the file format (used for replay artifacts).
pub fn render_state(state: &QuantumState64) -> String {
    let mut out = String::new();
    match state {
        QuantumState64::Pure(v) => {
            let _ = writeln!(out, "dim {} pure", v.dim());
            render_pairs(&mut out, v.entries());
        }
        QuantumState64::Mixed { density, .. } => {
            let _ = writeln!(out, "dim {} mixed", density.rows());
            render_pairs(&mut out, density.entries());
        }
    }
    out
}

/// Serialize an operator in the file format.
pub fn render_operator(m: &ComplexMatrix64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim {} matrix", m.rows());
    render_pairs(&mut out, m.entries());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pure_state_with_comments() {
        let text = "# a state\n dim 3 pure\n0.6 0.0\n0.8 0.0  # trailing\n0.0 0.0\n";
        let f = parse_text(text, "test").unwrap();
        assert_eq!(f.dim, 3);
        assert_eq!(f.kind, FileKind::Pure);
        assert_eq!(f.entries.len(), 3);
        let s = f.into_state(1e-10).unwrap();
        assert_eq!(s.kind(), "pure");
    }

    #[test]
    fn rejects_malformed_headers_and_counts() {
        assert!(parse_text("", "t").is_err());
        assert!(parse_text("dim 3", "t").is_err());
        assert!(parse_text("dim x pure\n0 0\n", "t").is_err());
        assert!(parse_text("dim 2 wave\n0 0\n0 0\n", "t").is_err());
        assert!(parse_text("dim 2 pure\n1 0\n", "t").is_err());
        assert!(parse_text("dim 2 pure\n1 0\n0 zero\n", "t").is_err());
    }

    #[test]
    fn state_and_operator_render_round_trips() {
        let v =
            ComplexVector64::new(vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]).unwrap();
        let s = QuantumState64::pure(v, 1e-10).unwrap();
        let text = render_state(&s);
        let back = parse_text(&text, "t").unwrap().into_state(1e-10).unwrap();
        match (s, back) {
            (QuantumState64::Pure(a), QuantumState64::Pure(b)) => {
                assert_eq!(a.entries(), b.entries())
            }
            _ => panic!("kind changed in round trip"),
        }

        let m = ComplexMatrix64::identity(3).unwrap();
        let back = parse_text(&render_operator(&m), "t")
            .unwrap()
            .into_operator()
            .unwrap();
        assert_eq!(back.entries(), m.entries());
    }

    #[test]
    fn kind_mismatches_are_input_errors() {
        let f = parse_text("dim 2 matrix\n1 0\n0 0\n0 0\n1 0\n", "t").unwrap();
        assert!(matches!(f.into_state(1e-10), Err(CliError::Input(_))));
        let f = parse_text("dim 2 pure\n1 0\n0 0\n", "t").unwrap();
        assert!(matches!(f.into_operator(), Err(CliError::Input(_))));
    }
}

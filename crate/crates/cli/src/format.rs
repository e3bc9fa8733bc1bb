//! Plain-text instance and assignment files.
//!
//! Instance: header `n m u`, then `m` lines of `u` space-separated 0-based
//! vertices. Assignment: one `vertex colour` line per vertex, any order.
//! In both, blank lines and lines starting with `#` are skipped.

use std::fmt::{self, Write as _};

use defcol_core::{Colouring, Error, Hypergraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    /// 1-based line number; 0 when the problem is the file as a whole.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for FormatError {}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, FormatError> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<usize>().or_else(|_| {
                fail(
                    line,
                    format!("expected a non-negative integer, found `{t}`"),
                )
            })
        })
        .collect()
}

pub fn parse_instance(text: &str) -> Result<Hypergraph, FormatError> {
    let mut lines = content_lines(text);
    let Some((header_line, header)) = lines.next() else {
        return fail(0, "empty instance: missing `n m u` header");
    };
    let &[n, m, u] = numbers(header_line, header)?.as_slice() else {
        return fail(header_line, "header must be `n m u`");
    };
    if u == 0 {
        return fail(header_line, "uniformity must be at least 1");
    }
    let mut edges = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    for (line, body) in lines {
        if edges.len() == m {
            return fail(
                line,
                format!("more than the {m} edges declared in the header"),
            );
        }
        let edge = numbers(line, body)?;
        if edge.len() != u {
            return fail(
                line,
                format!("edge has {} vertices, expected {u}", edge.len()),
            );
        }
        if let Some(&v) = edge.iter().find(|&&v| v >= n) {
            return fail(line, format!("vertex {v} out of range for n = {n}"));
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return fail(line, "edge repeats a vertex");
        }
        edges.push(edge);
        edge_lines.push(line);
    }
    if edges.len() < m {
        return fail(
            0,
            format!("header declares {m} edges but only {} present", edges.len()),
        );
    }
    Hypergraph::new(n, u, &edges).or_else(|e| match e {
        Error::DuplicateEdge { edge } => fail(edge_lines[edge], "duplicate edge"),
        other => fail(0, other.to_string()),
    })
}

pub fn write_instance(h: &Hypergraph) -> String {
    let mut s = format!("{} {} {}\n", h.n(), h.edge_count(), h.uniformity());
    for e in h.edges() {
        let row: Vec<String> = e.iter().map(usize::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Reads a total assignment for an `n`-vertex instance.
pub fn parse_assignment(text: &str, n: usize) -> Result<Colouring, FormatError> {
    let mut assignment = vec![None; n];
    for (line, body) in content_lines(text) {
        let &[v, c] = numbers(line, body)?.as_slice() else {
            return fail(line, "expected `vertex colour`");
        };
        if v >= n {
            return fail(line, format!("vertex {v} out of range for n = {n}"));
        }
        if assignment[v].replace(c).is_some() {
            return fail(line, format!("vertex {v} assigned twice"));
        }
    }
    if let Some(v) = assignment.iter().position(Option::is_none) {
        return fail(0, format!("vertex {v} has no colour"));
    }
    Ok(Colouring::from_assignment(assignment))
}

pub fn write_assignment(phi: &Colouring) -> String {
    let mut s = String::new();
    for (v, c) in phi.assignment().iter().enumerate() {
        if let Some(c) = c {
            let _ = writeln!(s, "{v} {c}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_round_trip() {
        let h = defcol_core::complete(5, 3).unwrap();
        let text = write_instance(&h);
        assert!(text.starts_with("5 10 3\n"));
        assert_eq!(parse_instance(&text).unwrap(), h);
    }

    #[test]
    fn comments_and_blank_lines() {
        let h = parse_instance("# triangle\n3 3 2\n0 1\n\n# middle\n1 2\n0 2\n").unwrap();
        assert_eq!(h.edge_count(), 3);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("3 1 2\n0 5\n", 2, "out of range"),
            ("3 2 2\n0 1\n1 0\n", 3, "duplicate"),
            ("3 1 2\n0 1 2\n", 2, "expected 2"),
            ("# c\n3 x 2\n", 2, "integer"),
            ("3 1 2\n0 1\n1 2\n", 3, "more than"),
            ("3 1 2\n1 1\n", 2, "repeats"),
        ];
        for (text, line, needle) in cases {
            let e = parse_instance(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
            assert!(e.message.contains(needle), "{e}");
        }
        assert_eq!(parse_instance("3 2 2\n0 1\n").unwrap_err().line, 0);
        assert!(parse_instance("").is_err());
    }

    #[test]
    fn assignment_round_trip() {
        let phi = Colouring::from_colours(vec![2, 0, 1, 0]);
        let text = write_assignment(&phi);
        assert_eq!(
            parse_assignment(&text, 4).unwrap().assignment(),
            phi.assignment()
        );
        assert_eq!(
            parse_assignment("# x\n1 0\n0 3\n", 2).unwrap().colour(0),
            Some(3)
        );
        assert_eq!(parse_assignment("0 1\n0 2\n", 2).unwrap_err().line, 2);
        assert!(parse_assignment("0 1\n", 2).is_err());
    }
}

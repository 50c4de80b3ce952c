use std::collections::BTreeSet;

use thiserror::Error;

use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("graph6: byte {byte:#04x} at offset {offset} is outside 63..=126")]
    Graph6Char { offset: usize, byte: u8 },
    #[error("graph6: expected {expected} data bytes, found {found}")]
    Graph6Length { expected: usize, found: usize },
    #[error("empty input")]
    EmptyInput,
}

fn malformed(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Malformed { line, reason: reason.into() }
}

fn two_numbers(line_no: usize, line: &str) -> Result<(usize, usize), ParseError> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, ParseError> {
        it.next()
            .ok_or_else(|| malformed(line_no, "expected two integers"))?
            .parse()
            .map_err(|_| malformed(line_no, "expected two integers"))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(malformed(line_no, "trailing tokens"));
    }
    Ok((a, b))
}

/// Parses the `n m` header format followed by one `u v` pair per line.
/// Blank lines are ignored; reported line numbers are 1-based.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(ParseError::EmptyInput)?;
    let (n, m) = two_numbers(hline, header)?;
    if n == 0 {
        return Err(malformed(hline, "graph order must be at least 1"));
    }
    let mut edges = Vec::with_capacity(m);
    let mut seen = BTreeSet::new();
    for (line, text) in lines {
        let (u, v) = two_numbers(line, text)?;
        for vertex in [u, v] {
            if vertex >= n {
                return Err(ParseError::OutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(ParseError::DuplicateEdge { line, u: key.0, v: key.1 });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount { expected: m, found: edges.len() });
    }
    Ok(Graph::new(n, edges).expect("edges validated above"))
}

/// Inverse of [`parse_edge_list`].
pub fn encode_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes a single graph6 string (optional `>>graph6<<` prefix tolerated).
pub fn parse_graph6(bytes: &[u8]) -> Result<Graph, ParseError> {
    let mut data = trim_ascii(bytes);
    if let Some(rest) = data.strip_prefix(GRAPH6_HEADER.as_bytes()) {
        data = rest;
    }
    if data.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    if let Some((offset, &byte)) = data.iter().enumerate().find(|(_, &b)| !(63..=126).contains(&b)) {
        return Err(ParseError::Graph6Char { offset, byte });
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, body) = if data[0] != 126 {
        (six(data[0]), &data[1..])
    } else if data.len() >= 4 && data[1] != 126 {
        (six(data[1]) << 12 | six(data[2]) << 6 | six(data[3]), &data[4..])
    } else if data.len() >= 8 {
        let n = data[2..8].iter().fold(0usize, |acc, &b| acc << 6 | six(b));
        (n, &data[8..])
    } else {
        return Err(ParseError::Graph6Length { expected: 4, found: data.len() });
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(ParseError::Graph6Length { expected, found: body.len() });
    }
    if n == 0 {
        return Err(malformed(1, "graph order must be at least 1"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = six(body[k / 6]);
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, edges).expect("graph6 edges are simple"))
}

/// Encodes `g` in graph6 (no header, no newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Parses a graph6 file: one graph per non-empty line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, ParseError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && l != GRAPH6_HEADER
        })
        .map(|(i, l)| {
            parse_graph6(l.as_bytes()).map_err(|e| match e {
                ParseError::Malformed { reason, .. } => malformed(i + 1, reason),
                other => other,
            })
        })
        .collect()
}

/// Detects edge-list versus graph6 input. Edge lists start with two decimal
/// integers; graph6 never contains digits.
pub fn parse_auto(text: &str) -> Result<Vec<Graph>, ParseError> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).ok_or(ParseError::EmptyInput)?;
    if first.starts_with(|c: char| c.is_ascii_digit()) {
        Ok(vec![parse_edge_list(text)?])
    } else {
        parse_graph6_lines(text)
    }
}

fn trim_ascii(b: &[u8]) -> &[u8] {
    let start = b.iter().position(|c| !c.is_ascii_whitespace()).unwrap_or(b.len());
    let end = b.iter().rposition(|c| !c.is_ascii_whitespace()).map_or(start, |e| e + 1);
    &b[start..end]
}

//! Text encodings: graph6 (short form), a plain edge list, and DOT export.

use std::fmt::Write;

use super::Graph;
use crate::error::{Error, Result};

/// Largest order representable by the one-byte graph6 header.
pub const GRAPH6_MAX_ORDER: usize = 62;

/// Encodes `g` as graph6: header byte `n + 63`, then the upper triangle in
/// column-major order (`x(0,1), x(0,2), x(1,2), x(0,3), ...`) packed into
/// 6-bit groups, zero padded, each offset by 63.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::TooLarge {
            what: "graph6 order",
            limit: GRAPH6_MAX_ORDER,
            actual: n,
        });
    }
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    let (&head, body) = bytes
        .split_first()
        .ok_or_else(|| Error::parse(1, "empty graph6 string"))?;
    if !(63..=63 + GRAPH6_MAX_ORDER as u8).contains(&head) {
        return Err(Error::parse(
            1,
            format!("unsupported graph6 header byte {head}"),
        ));
    }
    let n = (head - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    if body.len() != nbits.div_ceil(6) {
        return Err(Error::parse(
            1,
            format!(
                "graph6 body has {} bytes, expected {}",
                body.len(),
                nbits.div_ceil(6)
            ),
        ));
    }
    if let Some(&b) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::parse(1, format!("invalid graph6 byte {b}")));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if (nbits..body.len() * 6).any(bit) {
        return Err(Error::parse(1, "nonzero graph6 padding bits"));
    }
    Ok(g)
}

/// First line `n`, then one `u v` line per edge (0-indexed, `u < v`).
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.order());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses the edge-list format. Blank lines and `#` comments are ignored;
/// duplicate edges and self-loops are errors.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing vertex count"))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::parse(line, format!("bad vertex count {header:?}")))?;
    let mut g = Graph::empty(n);
    for (line, l) in lines {
        let mut it = l.split_whitespace();
        let mut next = || -> Result<usize> {
            let tok = it
                .next()
                .ok_or_else(|| Error::parse(line, "expected two vertices"))?;
            tok.parse()
                .map_err(|_| Error::parse(line, format!("bad vertex {tok:?}")))
        };
        let (u, v) = (next()?, next()?);
        if it.next().is_some() {
            return Err(Error::parse(line, "trailing tokens"));
        }
        g.add_edge(u, v)
            .map_err(|e| Error::parse(line, e.to_string()))?;
    }
    Ok(g)
}

pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.order() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

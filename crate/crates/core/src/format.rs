//! Graph files: a DIMACS-like edge list (`p <n> <m>` then `e <u> <v>`,
//! 0-indexed) and single-line graph6.

use crate::graph::{Graph, GraphBuilder};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Parse { line, message: message.into() })
}

/// Edge-list text with edges sorted lexicographically, `u < v`.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").expect("writing to a String");
    }
    out
}

/// Parses edge-list text. Blank lines and lines starting with `c` or `#`
/// are skipped; duplicate edges collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut builder: Option<(GraphBuilder, usize)> = None;
    let mut seen = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.first().copied() {
            None | Some("c") | Some("#") => continue,
            Some(t) if t.starts_with('#') => continue,
            Some("p") => {
                if builder.is_some() {
                    return parse_err(line, "second header line");
                }
                // `p edge n m` is accepted as well as `p n m`
                let nums: Vec<&str> = fields[1..].iter().copied().filter(|f| *f != "edge" && *f != "col").collect();
                if nums.len() != 2 {
                    return parse_err(line, "header must be `p <n> <edges>`");
                }
                let n = parse_num(nums[0], line)?;
                let m = parse_num(nums[1], line)?;
                builder = Some((GraphBuilder::new(n), m));
            }
            Some("e") => {
                let Some((b, _)) = builder.as_mut() else {
                    return parse_err(line, "edge before the `p` header");
                };
                if fields.len() != 3 {
                    return parse_err(line, "edge line must be `e <u> <v>`");
                }
                let u = parse_num(fields[1], line)?;
                let v = parse_num(fields[2], line)?;
                b.add_edge(u, v).map_err(|e| FormatError::Parse { line, message: e.to_string() })?;
                seen += 1;
            }
            Some(other) => return parse_err(line, format!("unknown line type `{other}`")),
        }
    }
    let Some((b, m)) = builder else {
        return parse_err(text.lines().count().max(1), "missing `p <n> <edges>` header");
    };
    let g = b.build();
    if seen != m && g.edge_count() != m {
        return parse_err(text.lines().count().max(1), format!("header declares {m} edges, found {seen}"));
    }
    Ok(g)
}

fn parse_num(field: &str, line: usize) -> Result<usize, FormatError> {
    field.parse().map_err(|_| FormatError::Parse { line, message: format!("`{field}` is not a non-negative integer") })
}

/// graph6 encoding (n < 258048).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes: Vec<u8> = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else if n <= 258_047 {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        panic!("graph6 supports at most 258047 vertices");
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                bytes.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(bytes).expect("printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let t = text.trim();
    let t = t.strip_prefix(">>graph6<<").unwrap_or(t);
    let bytes = t.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(FormatError::Graph6("byte outside 63..=126".into()));
    }
    let (n, body) = match bytes {
        [] => return Err(FormatError::Graph6("empty input".into())),
        [126, 126, ..] => return Err(FormatError::Graph6("8-byte size prefix is not supported".into())),
        [126, a, b, c, rest @ ..] => ((((a - 63) as usize) << 12) | (((b - 63) as usize) << 6) | (c - 63) as usize, rest),
        [126, ..] => return Err(FormatError::Graph6("truncated size prefix".into())),
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(FormatError::Graph6(format!("expected {} data bytes for n = {n}, found {}", bits.div_ceil(6), body.len())));
    }
    let mut b = GraphBuilder::new(n);
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[idx / 6] - 63;
            if byte >> (5 - idx % 6) & 1 == 1 {
                b.add_edge(u, v).expect("in range");
            }
            idx += 1;
        }
    }
    Ok(b.build())
}

/// Reads either format, chosen by extension (`.g6` is graph6).
pub fn load_graph(path: &Path) -> Result<Graph, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    if path.extension().is_some_and(|e| e == "g6") {
        parse_graph6(&text)
    } else {
        parse_edge_list(&text)
    }
}

pub fn save_graph(g: &Graph, path: &Path) -> Result<(), FormatError> {
    let text = if path.extension().is_some_and(|e| e == "g6") { to_graph6(g) + "\n" } else { to_edge_list(g) };
    std::fs::write(path, text).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

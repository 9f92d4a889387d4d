//! Text edge-list format.
//!
//! ```text
//! n m r
//! u v c      (m lines, u < v, lexicographic order, colors 1..=r)
//! ```
//!
//! An uncolored graph has `r = 0` in the header and no color column.

use std::io::Write;
use std::path::Path;

use super::{EdgeColoring, Graph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub coloring: Option<EdgeColoring>,
}

pub fn write_colored<W: Write>(out: &mut W, g: &Graph, coloring: &EdgeColoring) -> Result<()> {
    coloring.check_matches(g)?;
    let mut buf = String::with_capacity(16 * g.num_edges() + 32);
    buf.push_str(&format!("{} {} {}\n", g.n(), g.num_edges(), coloring.r()));
    for (&(u, v), &c) in g.edges().iter().zip(coloring.colors()) {
        buf.push_str(&format!("{u} {v} {c}\n"));
    }
    out.write_all(buf.as_bytes())?;
    Ok(())
}

pub fn write_uncolored<W: Write>(out: &mut W, g: &Graph) -> Result<()> {
    let mut buf = String::with_capacity(12 * g.num_edges() + 32);
    buf.push_str(&format!("{} {} 0\n", g.n(), g.num_edges()));
    for &(u, v) in g.edges() {
        buf.push_str(&format!("{u} {v}\n"));
    }
    out.write_all(buf.as_bytes())?;
    Ok(())
}

pub fn read_graph_file(path: &Path) -> Result<GraphFile> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph_file(&text)
}

fn parse_fields(line: &str, lineno: usize, expected: usize) -> Result<Vec<usize>> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != expected {
        return Err(Error::Parse {
            line: lineno,
            msg: format!("expected {expected} fields, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("not a nonnegative integer: {f:?}"),
            })
        })
        .collect()
}

/// Parses the edge-list format. Errors carry 1-based line numbers.
pub fn parse_graph_file(text: &str) -> Result<GraphFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header line `n m r`".into(),
    })?;
    let h = parse_fields(header, hline, 3)?;
    let (n, m, r) = (h[0], h[1], h[2]);
    if r > EdgeColoring::MAX_COLORS {
        return Err(Error::Parse {
            line: hline,
            msg: format!("color count {r} exceeds {}", EdgeColoring::MAX_COLORS),
        });
    }
    let width = if r == 0 { 2 } else { 3 };
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m);
    let mut colors = Vec::with_capacity(if r == 0 { 0 } else { m });
    let mut last_line = hline;
    for (lineno, line) in lines {
        last_line = lineno;
        if edges.len() == m {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("more than the {m} edges declared in the header"),
            });
        }
        let f = parse_fields(line, lineno, width)?;
        let (u, v) = (f[0], f[1]);
        let err = |msg: String| Error::Parse { line: lineno, msg };
        if u >= v {
            return Err(err(format!("edge {u} {v} must satisfy u < v")));
        }
        if v >= n {
            return Err(err(format!("vertex {v} out of range for n = {n}")));
        }
        if let Some(&prev) = edges.last() {
            if prev == (u, v) {
                return Err(err(format!("duplicate edge {u} {v}")));
            }
            if prev > (u, v) {
                return Err(err(format!(
                    "edge {u} {v} out of canonical order after {} {}",
                    prev.0, prev.1
                )));
            }
        }
        if r > 0 {
            let c = f[2];
            if c == 0 || c > r {
                return Err(err(format!("color {c} out of range 1..={r}")));
            }
            colors.push(c as u8);
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    let graph = Graph::from_canonical_unchecked(n, edges);
    let coloring = if r == 0 {
        None
    } else {
        Some(EdgeColoring::new(r, colors)?)
    };
    Ok(GraphFile { graph, coloring })
}

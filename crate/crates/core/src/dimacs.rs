//! DIMACS ascii graph format: `p edge <n> <m>` header, `e <u> <v>` edge lines
//! with 1-based endpoints, `c` comment lines.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn read_dimacs<R: BufRead>(reader: R) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    for line in reader.lines() {
        let line = line?;
        parse_line(line.trim(), &mut g)?;
    }
    g.ok_or_else(|| Error::Parse("missing 'p edge' header".into()))
}

fn parse_line(line: &str, g: &mut Option<Graph>) -> Result<()> {
    if line.is_empty() || line.starts_with('c') {
        return Ok(());
    }
    let mut parts = line.split_ascii_whitespace();
    match parts.next() {
        Some("p") => {
            if g.is_some() {
                return Err(Error::Parse("duplicate 'p' header".into()));
            }
            let kind = parts.next().unwrap_or("");
            if kind != "edge" && kind != "col" {
                return Err(Error::Parse(format!("unsupported problem type {kind:?}")));
            }
            let n: usize = parse_num(parts.next(), "vertex count")?;
            let _m: usize = parse_num(parts.next(), "edge count")?;
            *g = Some(Graph::edgeless(n));
        }
        Some("e") => {
            let g = g
                .as_mut()
                .ok_or_else(|| Error::Parse("'e' line before 'p' header".into()))?;
            let u: usize = parse_num(parts.next(), "edge endpoint")?;
            let v: usize = parse_num(parts.next(), "edge endpoint")?;
            if u == 0 || v == 0 || u > g.n() || v > g.n() {
                return Err(Error::Parse(format!(
                    "edge ({u}, {v}) outside 1..={}",
                    g.n()
                )));
            }
            if u != v {
                g.set_edge(u - 1, v - 1);
            }
        }
        Some(other) => return Err(Error::Parse(format!("unrecognized line kind {other:?}"))),
        None => {}
    }
    Ok(())
}

fn parse_num(tok: Option<&str>, what: &str) -> Result<usize> {
    tok.ok_or_else(|| Error::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad {what}: {e}")))
}

/// Writes the graph with edges ascending, endpoints 1-based.
pub fn write_dimacs<W: Write>(mut w: W, g: &Graph) -> std::io::Result<()> {
    writeln!(w, "p edge {} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

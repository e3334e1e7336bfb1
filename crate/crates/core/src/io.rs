//! Plain-text graph formats.
//!
//! * edge list (`el`): one `u v` pair per line, 0-based, `u < v`
//! * edge CSV (`csv`): header `source,target`, then `u,v`
//! * coordinates: `id phi r` per line, 17 significant digits
//! * delta log: `step +|- u v` per changed edge

use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::dynamics::EdgeDelta;
use crate::error::{Error, Result};
use crate::geometry::PolarPoint;
use crate::graph::{edge, Edge};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EdgeFormat {
    #[default]
    EdgeList,
    Csv,
}

impl FromStr for EdgeFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "el" => Ok(EdgeFormat::EdgeList),
            "csv" => Ok(EdgeFormat::Csv),
            other => Err(Error::InvalidParameter(format!("unknown edge format {other:?}"))),
        }
    }
}

/// Writes edges; `canonical` sorts them lexicographically first.
pub fn write_edges<W: Write>(mut w: W, edges: &[Edge], format: EdgeFormat, canonical: bool) -> Result<()> {
    let sorted;
    let edges = if canonical {
        let mut e = edges.to_vec();
        e.sort_unstable();
        sorted = e;
        &sorted[..]
    } else {
        edges
    };
    match format {
        EdgeFormat::EdgeList => {
            for &(u, v) in edges {
                writeln!(w, "{u} {v}")?;
            }
        }
        EdgeFormat::Csv => {
            writeln!(w, "source,target")?;
            for &(u, v) in edges {
                writeln!(w, "{u},{v}")?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads either edge format. Blank lines, `#` comments and a CSV header are
/// skipped; pairs are normalized to `u < v`.
pub fn read_edges<R: BufRead>(r: R) -> Result<Vec<Edge>> {
    let mut edges = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line == "source,target" {
            continue;
        }
        let mut parts = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty());
        let parse = |s: Option<&str>| -> Result<u32> {
            s.ok_or_else(|| parse_error(i, "missing vertex id"))?
                .parse()
                .map_err(|e| parse_error(i, &format!("{e}")))
        };
        let u = parse(parts.next())?;
        let v = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(parse_error(i, "trailing fields"));
        }
        if u == v {
            return Err(parse_error(i, "self-loop"));
        }
        edges.push(edge(u, v));
    }
    Ok(edges)
}

pub fn write_coords<W: Write>(mut w: W, coords: &[PolarPoint]) -> Result<()> {
    for (id, p) in coords.iter().enumerate() {
        writeln!(w, "{id} {:.16e} {:.16e}", p.phi, p.r)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a coordinate file; ids must run `0, 1, 2, …`.
pub fn read_coords<R: BufRead>(r: R) -> Result<Vec<PolarPoint>> {
    let mut coords = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_error(i, "expected `id phi r`"));
        }
        let id: usize = fields[0].parse().map_err(|e| parse_error(i, &format!("{e}")))?;
        if id != coords.len() {
            return Err(parse_error(i, &format!("expected id {}, found {id}", coords.len())));
        }
        let phi: f64 = fields[1].parse().map_err(|e| parse_error(i, &format!("{e}")))?;
        let r: f64 = fields[2].parse().map_err(|e| parse_error(i, &format!("{e}")))?;
        coords.push(PolarPoint::new(phi, r));
    }
    Ok(coords)
}

pub fn write_delta<W: Write>(mut w: W, step: u64, delta: &EdgeDelta) -> Result<()> {
    for &(u, v) in &delta.deleted {
        writeln!(w, "{step} - {u} {v}")?;
    }
    for &(u, v) in &delta.inserted {
        writeln!(w, "{step} + {u} {v}")?;
    }
    Ok(())
}

fn parse_error(index: usize, message: &str) -> Error {
    Error::Parse {
        line: index + 1,
        message: message.to_string(),
    }
}

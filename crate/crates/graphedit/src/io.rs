//! Graph text format and small serialisation helpers.
//!
//! Format (DIMACS-like, 0-based ids):
//!
//! ```text
//! c any comment
//! p <n> <m>
//! v <id> <weight>        optional, default weight 1
//! e <u> <v> [weight]     one line per edge
//! ```
//!
//! Weights may be integers, decimals (`0.25`) or fractions (`1/3`); they are
//! stored exactly.

use std::fmt::Write as _;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::graph::{Graph, Weight};

/// Parse an exact non-negative rational from `3`, `0.25` or `1/3`.
pub fn parse_weight(s: &str) -> std::result::Result<Weight, String> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n: i64 = a
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in '{s}'"))?;
        let d: i64 = b
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in '{s}'"))?;
        if d == 0 {
            return Err(format!("zero denominator in '{s}'"));
        }
        return Ok(Rational64::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("bad decimal '{s}'"));
        }
        let neg = int.starts_with('-');
        let i: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| format!("bad decimal '{s}'"))?
        };
        let scale = 10i64.pow(frac.len() as u32);
        let f: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| format!("bad decimal '{s}'"))?
        };
        let num = i.abs() * scale + f;
        return Ok(Rational64::new(if neg { -num } else { num }, scale));
    }
    let n: i64 = s.parse().map_err(|_| format!("bad weight '{s}'"))?;
    Ok(Rational64::from_integer(n))
}

pub fn format_weight(w: &Weight) -> String {
    if *w.denom() == 1 {
        w.numer().to_string()
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

/// Read a graph in the text format above.
pub fn read_graph(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut declared_m = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let perr = |msg: String| Error::Parse { line: line_no, msg };
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| perr(format!("expected a non-negative integer, got '{t}'")))
        };
        match toks[0] {
            "p" => {
                if g.is_some() {
                    return Err(perr("duplicate 'p' header".into()));
                }
                if toks.len() != 3 {
                    return Err(perr("header must be 'p <n> <m>'".into()));
                }
                g = Some(Graph::new(num(toks[1])?));
                declared_m = num(toks[2])?;
            }
            "v" | "e" => {
                let gr = g
                    .as_mut()
                    .ok_or_else(|| perr("'p' header must come first".into()))?;
                if toks[0] == "v" {
                    if toks.len() != 3 {
                        return Err(perr("vertex line must be 'v <id> <weight>'".into()));
                    }
                    let w = parse_weight(toks[2]).map_err(perr)?;
                    gr.set_vertex_weight(num(toks[1])?, w)
                        .map_err(|e| perr(e.to_string()))?;
                } else {
                    if toks.len() != 3 && toks.len() != 4 {
                        return Err(perr("edge line must be 'e <u> <v> [weight]'".into()));
                    }
                    let w = if toks.len() == 4 {
                        parse_weight(toks[3]).map_err(perr)?
                    } else {
                        Weight::from_integer(1)
                    };
                    gr.add_weighted_edge(num(toks[1])?, num(toks[2])?, w)
                        .map_err(|e| perr(e.to_string()))?;
                }
            }
            other => return Err(perr(format!("unknown line type '{other}'"))),
        }
    }
    let g = g.ok_or(Error::Parse {
        line: 0,
        msg: "missing 'p' header".into(),
    })?;
    if g.size() != declared_m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header declares {declared_m} edges, found {}", g.size()),
        });
    }
    Ok(g)
}

/// Write a graph; deleted vertices are omitted from edges but keep their ids.
pub fn write_graph(g: &Graph) -> String {
    let mut s = String::new();
    writeln!(s, "p {} {}", g.id_bound(), g.size()).unwrap();
    for v in g.vertices() {
        let w = g.vertex_weight(v);
        if w != Weight::from_integer(1) {
            writeln!(s, "v {v} {}", format_weight(&w)).unwrap();
        }
    }
    for (u, v) in g.edges() {
        let w = g.edge_weight((u, v)).unwrap();
        if w == Weight::from_integer(1) {
            writeln!(s, "e {u} {v}").unwrap();
        } else {
            writeln!(s, "e {u} {v} {}", format_weight(&w)).unwrap();
        }
    }
    s
}

/// Serde adapter storing a rational as the string `"n"` or `"n/d"`.
pub mod ratio_serde {
    use super::{format_weight, parse_weight};
    use crate::graph::Weight;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(w: &Weight, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_weight(w))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Weight, D::Error> {
        let s = String::deserialize(d)?;
        parse_weight(&s).map_err(serde::de::Error::custom)
    }
}

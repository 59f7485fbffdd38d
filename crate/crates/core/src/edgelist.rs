//! Edge-list text format for graphs.
//!
//! ```text
//! GRAPH <n1> <m>
//! u v        undirected edge
//! u > v      edge directed u -> v
//! # comment
//! ```

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::label::Label;

pub fn serialize(graph: &Graph) -> String {
    let mut out = format!("GRAPH {} {}\n", graph.vertex_count(), graph.edge_count());
    for e in graph.edges() {
        if e.oriented {
            out.push_str(&format!("{} > {}\n", e.a.base(), e.b.base()));
        } else {
            out.push_str(&format!("{} {}\n", e.a.base(), e.b.base()));
        }
    }
    out
}

pub fn parse(text: &str) -> Result<Graph> {
    let mut header: Option<(u32, usize)> = None;
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if header.is_none() {
            let mut words = content.split_whitespace();
            if words.next() != Some("GRAPH") {
                return Err(parse_err(line, "expected header `GRAPH <n1> <m>`"));
            }
            let n1 = parse_number(line, words.next())?;
            let m = parse_number(line, words.next())? as usize;
            if words.next().is_some() {
                return Err(parse_err(line, "trailing input after header"));
            }
            header = Some((n1, m));
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let edge = match words.as_slice() {
            [u, v] => Edge::undirected(parse_label(line, u)?, parse_label(line, v)?),
            [u, ">", v] => Edge::directed(parse_label(line, u)?, parse_label(line, v)?),
            _ => return Err(parse_err(line, "expected `u v` or `u > v`")),
        };
        edges.push(edge);
    }
    let (n1, m) = header.ok_or_else(|| parse_err(1, "missing `GRAPH` header"))?;
    if edges.len() != m {
        return Err(parse_err(
            0,
            &format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n1, edges)
}

fn parse_number(line: usize, word: Option<&str>) -> Result<u32> {
    word.and_then(|w| w.parse().ok())
        .ok_or_else(|| parse_err(line, "expected a count"))
}

fn parse_label(line: usize, word: &str) -> Result<Label> {
    let base: u32 = word
        .parse()
        .map_err(|_| parse_err(line, &format!("invalid vertex `{word}`")))?;
    if base == 0 {
        return Err(parse_err(line, "vertex labels start at 1"));
    }
    Ok(Label::original(base))
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

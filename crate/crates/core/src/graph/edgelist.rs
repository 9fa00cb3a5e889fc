//! Flat edge-list files: a header `n <count>` then one `u v` pair per line.
//! Blank lines and lines starting with `#` are skipped.

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::path::Path;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::EdgeList {
        line: 1,
        msg: "missing header `n <count>`".into(),
    })?;
    let mut fields = header.split_whitespace();
    let n = match (fields.next(), fields.next(), fields.next()) {
        (Some("n"), Some(count), None) => count.parse::<usize>().map_err(|_| Error::EdgeList {
            line: hline + 1,
            msg: format!("bad vertex count `{count}`"),
        })?,
        _ => {
            return Err(Error::EdgeList {
                line: hline + 1,
                msg: "expected header `n <count>`".into(),
            })
        }
    };
    let mut b = GraphBuilder::new(n);
    for (i, line) in lines {
        let lineno = i + 1;
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::EdgeList {
                line: lineno,
                msg: "expected `u v`".into(),
            });
        }
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::EdgeList {
                line: lineno,
                msg: format!("bad vertex `{s}`"),
            })
        };
        let (u, v) = (parse(parts[0])?, parse(parts[1])?);
        if u == v {
            return Err(Error::EdgeList {
                line: lineno,
                msg: format!("self-loop at {u}"),
            });
        }
        if u >= n || v >= n {
            return Err(Error::EdgeList {
                line: lineno,
                msg: format!("vertex out of range for n = {n}"),
            });
        }
        if b.has_edge(u, v) {
            return Err(Error::EdgeList {
                line: lineno,
                msg: format!("duplicate edge {u} {v}"),
            });
        }
        b.add_edge(u, v)?;
    }
    Ok(b.build())
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").expect("string write");
    }
    s
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

//! Resolving `--graph` and `--restraint` arguments.

use std::path::Path;

use clap::ValueEnum;
use rchrom_core::io::{parse_edge_list, parse_graph6};
use rchrom_core::{Error, Graph, Restraint, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    /// Edge-list text, or graph6 when the text has no `n` header.
    Auto,
    Edgelist,
    Graph6,
}

/// Accepts a family name (`P5`, `C4`, `K3`, `K2,3`, `S4`, `E3` for the
/// edgeless graph), a path to a file, or inline text. Inline edge lists may
/// separate lines with `;`.
pub fn resolve_graph(arg: &str, format: GraphFormat) -> Result<Graph> {
    if format == GraphFormat::Auto {
        if let Some(g) = family(arg)? {
            return Ok(g);
        }
    }
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("cannot read {arg}: {e}")))?
    } else {
        arg.replace(';', "\n")
    };
    match format {
        GraphFormat::Edgelist => parse_edge_list(&text),
        GraphFormat::Graph6 => parse_graph6(first_line(&text)),
        GraphFormat::Auto => {
            if text.trim_start().starts_with('n') && text.trim_start()[1..].starts_with(char::is_whitespace) {
                parse_edge_list(&text)
            } else {
                parse_graph6(first_line(&text))
            }
        }
    }
}

fn first_line(text: &str) -> &str {
    text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("")
}

fn family(name: &str) -> Result<Option<Graph>> {
    let mut chars = name.chars();
    let Some(head) = chars.next() else {
        return Ok(None);
    };
    let rest = chars.as_str();
    if let Some((a, b)) = rest.split_once(',') {
        return match (head, a.parse::<usize>(), b.parse::<usize>()) {
            ('K', Ok(a), Ok(b)) => Graph::complete_bipartite(a, b).map(Some),
            _ => Ok(None),
        };
    }
    let Ok(n) = rest.parse::<usize>() else {
        return Ok(None);
    };
    match head {
        'P' => Graph::path(n).map(Some),
        'C' => Graph::cycle(n).map(Some),
        'K' => Graph::complete(n).map(Some),
        'S' => Graph::star(n).map(Some),
        'E' => Graph::empty(n).map(Some),
        _ => Ok(None),
    }
}

/// A literal such as `[{1},{2},{1,3}]` or `[[1],[2],[1,3]]`, or a path to a
/// file holding one. Absent means the empty restraint.
pub fn resolve_restraint(arg: Option<&str>, n: usize) -> Result<Restraint> {
    let Some(arg) = arg else {
        return Ok(Restraint::empty(n));
    };
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("cannot read {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let r: Restraint = text.trim().parse()?;
    if r.len() != n {
        return Err(Error::SizeMismatch { expected: n, got: r.len() });
    }
    Ok(r)
}

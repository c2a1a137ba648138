//! Plain-text edge lists.
//!
//! The first non-comment line is `n m`, optionally followed by `multi` for a
//! multigraph or `roots=t` for a rooted forest. Each of the next `m` lines
//! holds one edge `u v` with labels in `1..=n`. Lines starting with `#` and
//! blank lines are ignored.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph, MultiGraph};
use crate::pruefer::RootedForest;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flavor {
    Simple,
    Multi,
    Forest(usize),
}

struct EdgeList {
    n: usize,
    flavor: Flavor,
    edges: Vec<Edge>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(token: &str, line: usize, what: &str) -> Result<usize> {
    token.parse().map_err(|_| {
        parse_err(
            line,
            format!("{what} `{token}` is not a non-negative integer"),
        )
    })
}

fn parse(reader: impl BufRead) -> Result<EdgeList> {
    let mut header: Option<(usize, usize, Flavor)> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some((n, m, _)) = header else {
            if !(2..=3).contains(&tokens.len()) {
                return Err(parse_err(lineno, "header must be `n m [multi|roots=t]`"));
            }
            let n = parse_usize(tokens[0], lineno, "vertex count")?;
            let m = parse_usize(tokens[1], lineno, "edge count")?;
            let flavor = match tokens.get(2) {
                None => Flavor::Simple,
                Some(&"multi") => Flavor::Multi,
                Some(t) => match t.strip_prefix("roots=") {
                    Some(r) => Flavor::Forest(parse_usize(r, lineno, "root count")?),
                    None => return Err(parse_err(lineno, format!("unknown header flag `{t}`"))),
                },
            };
            header = Some((n, m, flavor));
            edges.reserve(m);
            continue;
        };
        if tokens.len() != 2 {
            return Err(parse_err(lineno, "edge line must be `u v`"));
        }
        if edges.len() == m {
            return Err(parse_err(lineno, format!("more than {m} edge lines")));
        }
        let u = parse_usize(tokens[0], lineno, "endpoint")?;
        let v = parse_usize(tokens[1], lineno, "endpoint")?;
        for w in [u, v] {
            if w == 0 || w > n {
                return Err(parse_err(lineno, format!("vertex {w} outside 1..={n}")));
            }
        }
        edges.push((u.min(v), u.max(v)));
    }
    let Some((n, m, flavor)) = header else {
        return Err(parse_err(0, "missing header"));
    };
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Ok(EdgeList { n, flavor, edges })
}

fn expect_flavor(list: &EdgeList, want: Flavor) -> Result<()> {
    let same = matches!(
        (list.flavor, want),
        (Flavor::Simple, Flavor::Simple)
            | (Flavor::Multi, Flavor::Multi)
            | (Flavor::Forest(_), Flavor::Forest(_))
    );
    if same {
        Ok(())
    } else {
        Err(parse_err(
            1,
            format!(
                "expected a {want:?} edge list, header says {:?}",
                list.flavor
            ),
        ))
    }
}

pub fn read_graph(reader: impl BufRead) -> Result<LabeledGraph> {
    let list = parse(reader)?;
    expect_flavor(&list, Flavor::Simple)?;
    LabeledGraph::new(list.n, list.edges)
}

pub fn read_multigraph(reader: impl BufRead) -> Result<MultiGraph> {
    let list = parse(reader)?;
    expect_flavor(&list, Flavor::Multi)?;
    MultiGraph::new(list.n, list.edges)
}

pub fn read_forest(reader: impl BufRead) -> Result<RootedForest> {
    let list = parse(reader)?;
    expect_flavor(&list, Flavor::Forest(0))?;
    let Flavor::Forest(t) = list.flavor else {
        unreachable!()
    };
    RootedForest::new(list.n, t, list.edges)
}

fn render(n: usize, flag: Option<String>, edges: &[Edge]) -> String {
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    let mut out = String::with_capacity(12 * (sorted.len() + 1));
    match flag {
        Some(f) => writeln!(out, "{n} {} {f}", sorted.len()),
        None => writeln!(out, "{n} {}", sorted.len()),
    }
    .expect("writing to a String");
    for (u, v) in sorted {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

pub fn graph_to_string(g: &LabeledGraph) -> String {
    render(g.n(), None, g.edges())
}

pub fn multigraph_to_string(g: &MultiGraph) -> String {
    render(g.n(), Some("multi".into()), g.edges())
}

pub fn forest_to_string(f: &RootedForest) -> String {
    render(f.n(), Some(format!("roots={}", f.t())), f.edges())
}

pub fn write_graph(mut w: impl Write, g: &LabeledGraph) -> Result<()> {
    Ok(w.write_all(graph_to_string(g).as_bytes())?)
}

pub fn write_multigraph(mut w: impl Write, g: &MultiGraph) -> Result<()> {
    Ok(w.write_all(multigraph_to_string(g).as_bytes())?)
}

pub fn write_forest(mut w: impl Write, f: &RootedForest) -> Result<()> {
    Ok(w.write_all(forest_to_string(f).as_bytes())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_with_comments_and_reversed_endpoints() {
        let text = "# a path\n3 2\n2 1\n\n3 2\n";
        let g = read_graph(text.as_bytes()).unwrap();
        assert_eq!(g.edges(), &[(1, 2), (2, 3)]);
        assert_eq!(graph_to_string(&g), "3 2\n1 2\n2 3\n");
    }

    #[test]
    fn reports_line_numbers() {
        let err = read_graph("3 2\n1 2\n1 4\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = read_graph("3 1\n1 2\n2 3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = read_graph("3 2\n1 x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(read_graph("3 2\n1 2\n".as_bytes()).is_err());
        assert!(read_graph("".as_bytes()).is_err());
    }

    #[test]
    fn multigraph_and_forest_headers() {
        let mg = read_multigraph("2 2 multi\n1 1\n1 2\n".as_bytes()).unwrap();
        assert_eq!(mg.loop_count(), 1);
        assert!(read_graph("2 2 multi\n1 1\n1 2\n".as_bytes()).is_err());

        let f = read_forest("4 2 roots=2\n3 1\n4 3\n".as_bytes()).unwrap();
        assert_eq!(f.t(), 2);
        assert_eq!(forest_to_string(&f), "4 2 roots=2\n1 3\n3 4\n");
        assert!(read_forest("4 2 roots=2\n1 3\n2 3\n".as_bytes()).is_err());
    }
}

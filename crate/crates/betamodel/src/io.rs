//! Text formats for graphs and degree sequences.
//!
//! * Edge list: one edge per line as two whitespace-separated 1-based node
//!   ids. The node count is the largest id seen.
//! * Adjacency: `n` rows of `n` whitespace-separated 0/1 entries.
//! * Degrees: integers separated by whitespace and/or commas.
//!
//! In all formats `#` starts a comment and blank lines are skipped.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use betamodel_core::{DegreeSequence, Graph};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Adjacency,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" | "edge-list" | "edgelist" => Ok(GraphFormat::EdgeList),
            "adjacency" | "matrix" => Ok(GraphFormat::Adjacency),
            other => Err(Error::Config(format!("unknown graph format `{other}`"))),
        }
    }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((idx + 1, line))
    })
}

fn parse_node(token: &str, line: usize) -> Result<usize> {
    match token.parse::<usize>() {
        Ok(0) => Err(Error::Parse {
            line,
            message: "node ids start at 1".into(),
        }),
        Ok(id) => Ok(id),
        Err(_) => Err(Error::Parse {
            line,
            message: format!("`{token}` is not a node id"),
        }),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    for (line, content) in content_lines(text) {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 node ids, found {}", tokens.len()),
            });
        }
        let (i, j) = (parse_node(tokens[0], line)?, parse_node(tokens[1], line)?);
        if i == j {
            return Err(Error::Line {
                line,
                source: betamodel_core::Error::SelfLoop { node: i },
            });
        }
        edges.push((i, j));
    }
    let n = edges
        .iter()
        .map(|&(i, j)| i.max(j))
        .max()
        .ok_or(betamodel_core::Error::EmptyGraph)?;
    Ok(Graph::from_edges(n, edges)?)
}

pub fn parse_adjacency(text: &str) -> Result<Graph> {
    let rows: Vec<(usize, Vec<&str>)> = content_lines(text)
        .map(|(line, content)| (line, content.split_whitespace().collect()))
        .collect();
    let n = rows.len();
    let mut graph = Graph::empty(n)?;
    for (r, (line, row)) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parse {
                line: *line,
                message: format!("expected {n} entries, found {}", row.len()),
            });
        }
        for (c, token) in row.iter().enumerate() {
            let entry = match *token {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::Parse {
                        line: *line,
                        message: format!("entry `{other}` is not 0 or 1"),
                    })
                }
            };
            if r == c && entry {
                return Err(Error::Line {
                    line: *line,
                    source: betamodel_core::Error::SelfLoop { node: r + 1 },
                });
            }
            let mirrored = c < r && graph.has_edge(c + 1, r + 1);
            if c < r && entry != mirrored {
                return Err(Error::Parse {
                    line: *line,
                    message: format!("matrix is not symmetric at ({}, {})", r + 1, c + 1),
                });
            }
            if entry && c > r {
                graph.add_edge(r + 1, c + 1)?;
            }
        }
    }
    Ok(graph)
}

pub fn parse_degrees(text: &str) -> Result<DegreeSequence> {
    let mut degrees = Vec::new();
    for (line, content) in content_lines(text) {
        for token in content
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let value = token.parse::<u32>().map_err(|_| Error::Parse {
                line,
                message: format!("`{token}` is not a nonnegative integer"),
            })?;
            degrees.push(value);
        }
    }
    Ok(DegreeSequence::new(degrees)?)
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn read_graph(path: impl AsRef<Path>, format: GraphFormat) -> Result<Graph> {
    let text = read_text(path.as_ref())?;
    match format {
        GraphFormat::EdgeList => parse_edge_list(&text),
        GraphFormat::Adjacency => parse_adjacency(&text),
    }
}

pub fn read_degrees(path: impl AsRef<Path>) -> Result<DegreeSequence> {
    parse_degrees(&read_text(path.as_ref())?)
}

/// Writes the degree sequence on one comma-separated line.
pub fn format_degrees(d: &DegreeSequence) -> String {
    let parts: Vec<String> = d.as_slice().iter().map(u32::to_string).collect();
    parts.join(", ") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_edge_list() {
        let g = parse_edge_list("1 2\n2 3").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn duplicates_comments_and_blank_lines() {
        let g = parse_edge_list("# food web\n1 2\n\n2 1   # reversed\n1\t2\n3 1\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degrees().as_slice(), &[2, 1, 1]);
    }

    #[test]
    fn self_loop_reports_line() {
        let err = parse_edge_list("1 2\n1 1").unwrap_err();
        assert_eq!(err.kind(), "SelfLoop");
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn bad_node_ids() {
        assert!(matches!(
            parse_edge_list("0 1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("1 2\na 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_edge_list("1 -2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("1 2 3"), Err(Error::Parse { .. })));
        assert_eq!(
            parse_edge_list("# nothing\n").unwrap_err().kind(),
            "EmptyGraph"
        );
    }

    #[test]
    fn adjacency_round_trip() {
        let g = parse_adjacency("0 1 0\n1 0 1\n0 1 0\n").unwrap();
        assert_eq!(g, parse_edge_list("1 2\n2 3").unwrap());
        assert!(parse_adjacency("0 1\n0 0\n").is_err());
        assert_eq!(
            parse_adjacency("1 0\n0 0\n").unwrap_err().kind(),
            "SelfLoop"
        );
        assert!(parse_adjacency("0 2\n2 0\n").is_err());
    }

    #[test]
    fn degree_files() {
        let d = parse_degrees("3, 2, 2\n1 1,1\n").unwrap();
        assert_eq!(d.as_slice(), &[3, 2, 2, 1, 1, 1]);
        assert!(parse_degrees("1,2").is_err());
        assert_eq!(parse_degrees("1, 2, 2").unwrap_err().kind(), "OddDegreeSum");
        assert!(matches!(
            parse_degrees("1, x"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert_eq!(format_degrees(&d), "3, 2, 2, 1, 1, 1\n");
    }
}

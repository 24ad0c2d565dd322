use std::io::BufRead;

use thiserror::Error;

use super::{parse_graph6, Graph};

/// Input error with a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Reads one graph6 record per line. Blank lines are skipped and the
/// optional `>>graph6<<` prefix is accepted. Each graph is labelled with its
/// record text.
pub fn read_graph6_lines<R: BufRead>(reader: R) -> Result<Vec<Graph>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| ParseError::new(i + 1, e.to_string()))?;
        let rec = line.trim_end_matches(['\r', '\n']);
        let rec = rec.strip_prefix(">>graph6<<").unwrap_or(rec);
        if rec.is_empty() {
            continue;
        }
        let g = parse_graph6(rec.as_bytes()).map_err(|e| ParseError::new(i + 1, e.to_string()))?;
        out.push(g.with_label(rec));
    }
    Ok(out)
}

fn significant_lines<'a>(
    text: &'a str,
    comment: &'a str,
) -> impl Iterator<Item = (usize, Vec<&'a str>)> + 'a {
    text.lines().enumerate().filter_map(move |(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with(comment) {
            None
        } else {
            Some((i + 1, l.split_whitespace().collect()))
        }
    })
}

fn number(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| {
        ParseError::new(
            line,
            format!("expected a non-negative integer, found {tok:?}"),
        )
    })
}

/// Plain edge list: a header `n m`, then `m` lines `u v` with 0-based
/// endpoints. Lines starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = significant_lines(text, "#");
    let (hline, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing `n m` header"))?;
    if header.len() != 2 {
        return Err(ParseError::new(hline, "header must be `n m`"));
    }
    let n = number(header[0], hline)?;
    let m = number(header[1], hline)?;
    Graph::empty(n).map_err(|e| ParseError::new(hline, e.to_string()))?;
    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for (line, toks) in lines {
        if toks.len() != 2 {
            return Err(ParseError::new(line, "edge line must be `u v`"));
        }
        let (u, v) = (number(toks[0], line)?, number(toks[1], line)?);
        if edges.len() == m {
            return Err(ParseError::new(
                line,
                format!("more than the declared {m} edges"),
            ));
        }
        if u >= n || v >= n {
            return Err(ParseError::new(
                line,
                format!("endpoint out of range for n = {n}"),
            ));
        }
        if u == v {
            return Err(ParseError::new(line, format!("loop at vertex {u}")));
        }
        edges.push((u, v));
        last = line;
    }
    if edges.len() != m {
        return Err(ParseError::new(
            last,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, &edges).map_err(|e| ParseError::new(hline, e.to_string()))
}

/// DIMACS `.col`: `c` comments, `p edge n m`, then `e u v` with 1-based
/// endpoints.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut n = None;
    let mut pline = 0;
    let mut edges = Vec::new();
    for (line, toks) in significant_lines(text, "c") {
        match toks[0] {
            "p" => {
                if n.is_some() {
                    return Err(ParseError::new(line, "duplicate problem line"));
                }
                if toks.len() != 4 || !(toks[1] == "edge" || toks[1] == "col") {
                    return Err(ParseError::new(line, "problem line must be `p edge n m`"));
                }
                n = Some(number(toks[2], line)?);
                number(toks[3], line)?;
                pline = line;
            }
            "e" => {
                let n = n.ok_or_else(|| ParseError::new(line, "edge before problem line"))?;
                if toks.len() != 3 {
                    return Err(ParseError::new(line, "edge line must be `e u v`"));
                }
                let (u, v) = (number(toks[1], line)?, number(toks[2], line)?);
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(ParseError::new(
                        line,
                        format!("endpoint out of range 1..={n}"),
                    ));
                }
                if u == v {
                    return Err(ParseError::new(line, format!("loop at vertex {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            other => {
                return Err(ParseError::new(
                    line,
                    format!("unknown line type {other:?}"),
                ))
            }
        }
    }
    let n = n.ok_or_else(|| ParseError::new(1, "missing problem line"))?;
    Graph::from_edges(n, &edges).map_err(|e| ParseError::new(pline, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list() {
        let g = parse_edge_list("3 2\n0 1\n# comment\n1 2\n").unwrap();
        assert_eq!(g, Graph::path(3).unwrap());
        assert_eq!(parse_edge_list("3 2\n0 1\n").unwrap_err().line, 2);
        assert_eq!(parse_edge_list("3 1\n0 5\n").unwrap_err().line, 2);
        assert_eq!(parse_edge_list("3 1\n0 x\n").unwrap_err().line, 2);
        assert_eq!(parse_edge_list("3 1\n0 1\n1 2\n").unwrap_err().line, 3);
        assert_eq!(parse_edge_list("").unwrap_err().line, 1);
        assert_eq!(parse_edge_list("200 0\n").unwrap_err().line, 1);
    }

    #[test]
    fn dimacs() {
        let g = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g, Graph::complete(3).unwrap());
        assert_eq!(parse_dimacs("e 1 2\n").unwrap_err().line, 1);
        assert_eq!(parse_dimacs("p edge 2 1\ne 1 3\n").unwrap_err().line, 2);
        assert_eq!(parse_dimacs("p edge 2 1\nx\n").unwrap_err().line, 2);
    }

    #[test]
    fn graph6_lines() {
        let text = ">>graph6<<C~\n\nD?{\r\nB?\n";
        let gs = read_graph6_lines(text.as_bytes()).unwrap();
        assert_eq!(gs.len(), 3);
        assert_eq!(gs[1].label(), Some("D?{"));
        let err = read_graph6_lines("C~\nD?\n".as_bytes()).unwrap_err();
        assert_eq!(err.line, 2);
    }
}

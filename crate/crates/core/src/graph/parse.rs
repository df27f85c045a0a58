use std::io::BufRead;

use super::{Graph, GraphError};

/// Reads the edge-list format.
///
/// Lines starting with `#` are comments and blank lines are skipped. The first
/// remaining line holds the vertex count `n`; every later line is `u v` with
/// `0 <= u, v < n` and `u != v`. Duplicate edges collapse.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    let mut order: Option<usize> = None;
    let mut edges = Vec::new();
    let mut name = None;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| GraphError::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if order.is_none() && name.is_none() && !comment.trim().is_empty() {
                name = Some(comment.trim().to_string());
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match order {
            None => {
                let n = match fields.as_slice() {
                    [n] => n.parse::<usize>().map_err(|_| parse_err(lineno, "malformed header: expected vertex count"))?,
                    _ => return Err(parse_err(lineno, "malformed header: expected a single vertex count")),
                };
                if n == 0 {
                    return Err(parse_err(lineno, "vertex count must be at least 1"));
                }
                order = Some(n);
            }
            Some(n) => {
                let (u, v) = match fields.as_slice() {
                    [u, v] => (
                        u.parse::<usize>().map_err(|_| parse_err(lineno, "malformed edge"))?,
                        v.parse::<usize>().map_err(|_| parse_err(lineno, "malformed edge"))?,
                    ),
                    _ => return Err(parse_err(lineno, "malformed edge: expected `u v`")),
                };
                for x in [u, v] {
                    if x >= n {
                        return Err(parse_err(lineno, &format!("vertex {x} out of range (order {n})")));
                    }
                }
                if u == v {
                    return Err(parse_err(lineno, &format!("self-loop at vertex {u}")));
                }
                edges.push((u, v));
            }
        }
    }

    let order = order.ok_or_else(|| parse_err(0, "missing vertex count header"))?;
    let g = Graph::from_edges(order, edges)?;
    Ok(match name {
        Some(n) => g.with_name(n),
        None => g,
    })
}

fn parse_err(line: usize, message: &str) -> GraphError {
    GraphError::Parse {
        line,
        message: message.to_string(),
    }
}

//! Text format for graphs and trigraphs.
//!
//! ```text
//! # comment
//! n m_black m_red
//! u v        (m_black lines)
//! u v        (m_red lines)
//! ```
//!
//! A header with two numbers `n m` declares a plain graph. Ids are 0-based.

use std::fmt::Write as _;

use super::{Color, Trigraph, VertexId};
use crate::error::{Error, Result};

/// Largest vertex count accepted by the parser.
pub const MAX_VERTICES: usize = 1 << 20;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-empty, comment-stripped lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn parse_usizes(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| {
                parse_err(
                    line_no,
                    format!("expected a non-negative integer, found `{tok}`"),
                )
            })
        })
        .collect()
}

pub fn parse_graph(text: &str) -> Result<Trigraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
    let nums = parse_usizes(hline, header)?;
    let (n, m_black, m_red) = match nums.as_slice() {
        [n, m] => (*n, *m, 0),
        [n, b, r] => (*n, *b, *r),
        _ => {
            return Err(parse_err(
                hline,
                "header must be `n m` or `n m_black m_red`",
            ))
        }
    };
    if n > MAX_VERTICES {
        return Err(parse_err(
            hline,
            format!("vertex count {n} exceeds {MAX_VERTICES}"),
        ));
    }
    let mut g = Trigraph::with_vertices(n);
    let mut expect = |color: Color, count: usize, g: &mut Trigraph| -> Result<()> {
        for _ in 0..count {
            let (ln, line) = lines.next().ok_or_else(|| {
                parse_err(
                    0,
                    format!("unexpected end of input, expected a {color:?} edge"),
                )
            })?;
            let uv = parse_usizes(ln, line)?;
            let [u, v] = uv.as_slice() else {
                return Err(parse_err(ln, "edge line must be `u v`"));
            };
            if *u >= n || *v >= n {
                return Err(parse_err(ln, format!("vertex id out of range 0..{n}")));
            }
            g.add_edge(VertexId(*u), VertexId(*v), color)
                .map_err(|e| parse_err(ln, e.to_string()))?;
        }
        Ok(())
    };
    expect(Color::Black, m_black, &mut g)?;
    expect(Color::Red, m_red, &mut g)?;
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing content after the declared edges"));
    }
    Ok(g)
}

/// Writes `n m_black m_red`. Vertices are renumbered densely in id order.
pub fn format_trigraph(g: &Trigraph) -> String {
    write_graph(g, true)
}

/// Writes `n m` for plain graphs and falls back to the trigraph header when
/// red edges are present.
pub fn format_graph(g: &Trigraph) -> String {
    write_graph(g, g.red_edge_count() > 0)
}

fn write_graph(g: &Trigraph, with_red: bool) -> String {
    let (d, _) = g.relabel_dense();
    let edges = d.edges();
    let mut out = String::new();
    if with_red {
        let _ = writeln!(
            out,
            "{} {} {}",
            d.vertex_count(),
            d.black_edge_count(),
            d.red_edge_count()
        );
    } else {
        let _ = writeln!(out, "{} {}", d.vertex_count(), d.edge_count());
    }
    for color in [Color::Black, Color::Red] {
        for (u, v, _) in edges.iter().filter(|e| e.2 == color) {
            let _ = writeln!(out, "{u} {v}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_and_trigraph_headers() {
        let g = parse_graph("# triangle\n3 3\n0 1\n1 2 # inline\n\n0 2\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.black_edge_count(), 3);
        let t = parse_graph("3 1 1\n0 1\n1 2\n").unwrap();
        assert_eq!(t.edge(VertexId(1), VertexId(2)), Some(Color::Red));
        assert_eq!(parse_graph(&format_trigraph(&t)).unwrap(), t);
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_graph("3 2\n0 1\n\n0 7\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = parse_graph("2 1\n0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_graph("2 1\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(parse_graph("").is_err());
        assert!(parse_graph("3 1\n0 x\n").is_err());
        assert!(parse_graph("3 2\n0 1\n").is_err());
        assert!(parse_graph("1 2 3 4\n").is_err());
        assert!(parse_graph("99999999999 0\n").is_err());
    }

    #[test]
    fn non_dense_ids_are_renumbered() {
        let mut g = Trigraph::new();
        g.add_vertex(VertexId(4));
        g.add_vertex(VertexId(9));
        g.add_edge(VertexId(4), VertexId(9), Color::Red).unwrap();
        assert_eq!(format_trigraph(&g), "2 0 1\n0 1\n");
    }
}

//! Sequence text format.
//!
//! ```text
//! n
//! u v -> w
//! ```
//!
//! One line per step; `w` must follow the fresh-id convention.

use std::fmt::Write as _;

use super::{ContractionSequence, ContractionStep};
use crate::error::{Error, Result};
use crate::graph::io::content_lines;
use crate::graph::{Trigraph, VertexId};

/// A sequence file parsed but not yet bound to a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedSequence {
    pub n: usize,
    /// Steps with the 1-based line they came from.
    pub steps: Vec<(usize, ContractionStep)>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_id(line: usize, tok: &str) -> Result<VertexId> {
    tok.parse::<usize>()
        .map(VertexId)
        .map_err(|_| parse_err(line, format!("expected a vertex id, found `{tok}`")))
}

pub fn parse_sequence(text: &str) -> Result<ParsedSequence> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
    let n = header
        .parse::<usize>()
        .map_err(|_| parse_err(hl, "header must be the vertex count `n`"))?;
    let mut steps = Vec::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [u, v, "->", w] = toks.as_slice() else {
            return Err(parse_err(ln, "step must be `u v -> w`"));
        };
        steps.push((
            ln,
            ContractionStep {
                u: parse_id(ln, u)?,
                v: parse_id(ln, v)?,
                w: parse_id(ln, w)?,
            },
        ));
    }
    Ok(ParsedSequence { n, steps })
}

impl ParsedSequence {
    /// Checks every step against `initial` and reports the offending line.
    pub fn bind(&self, initial: &Trigraph) -> Result<ContractionSequence> {
        if self.n != initial.vertex_count() {
            return Err(Error::InvalidStep {
                line: 1,
                msg: format!(
                    "header says {} vertices, graph has {}",
                    self.n,
                    initial.vertex_count()
                ),
            });
        }
        let base = initial.id_bound();
        let mut live = initial.vertex_set();
        for (i, (line, s)) in self.steps.iter().enumerate() {
            let bad = |msg: String| Error::InvalidStep { line: *line, msg };
            if s.u == s.v {
                return Err(bad(format!("contracts {} with itself", s.u)));
            }
            for x in [s.u, s.v] {
                if !live.contains(&x) {
                    return Err(bad(format!("vertex {x} is not live")));
                }
            }
            if s.w.0 != base + i {
                return Err(bad(format!("product must be {}, found {}", base + i, s.w)));
            }
            live.remove(&s.u);
            live.remove(&s.v);
            live.insert(s.w);
        }
        ContractionSequence::from_steps(
            initial.clone(),
            self.steps.iter().map(|&(_, s)| s).collect(),
        )
    }
}

pub fn format_sequence(c: &ContractionSequence) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", c.initial().vertex_count());
    for s in c.steps() {
        let _ = writeln!(out, "{} {} -> {}", s.u, s.v, s.w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{figure1, figure1_sequence};

    #[test]
    fn round_trip() {
        let c = figure1_sequence();
        let text = format_sequence(&c);
        assert!(text.starts_with("6\n4 5 -> 6\n"));
        let parsed = parse_sequence(&text).unwrap();
        assert_eq!(parsed.bind(&figure1()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_steps_with_lines() {
        let g = figure1();
        let err = parse_sequence("6\n4 5 -> 6\n# c\n4 0 -> 7\n")
            .unwrap()
            .bind(&g)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidStep { line: 4, .. }), "{err}");
        let err = parse_sequence("6\n4 5 -> 9\n")
            .unwrap()
            .bind(&g)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidStep { line: 2, .. }));
        let err = parse_sequence("6\n4 4 -> 6\n")
            .unwrap()
            .bind(&g)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidStep { line: 2, .. }));
        assert!(parse_sequence("6\n4 5 6\n").is_err());
        assert!(parse_sequence("").is_err());
        assert!(parse_sequence("5\n").unwrap().bind(&g).is_err());
    }

    #[test]
    fn truncated_sequence_is_partial() {
        let c = parse_sequence("6\n4 5 -> 6\n0 1 -> 7\n")
            .unwrap()
            .bind(&figure1())
            .unwrap();
        assert_eq!(c.len(), 2);
        assert!(!c.is_complete());
    }
}

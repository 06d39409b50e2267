//! Independent verification of contraction sequences.

use serde::Serialize;

use crate::contraction::{parse_sequence, replay, trigraph_from_bags, ContractionSequence};
use crate::error::Error;
use crate::graph::Trigraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub complete: bool,
    pub steps: usize,
    pub width: Option<usize>,
    /// Maximum red degree of each trigraph.
    pub profile: Option<Vec<usize>>,
    /// Every replayed trigraph equals the quotient of the input by its bags.
    pub bag_oracle: Option<bool>,
    pub error: Option<String>,
    pub error_line: Option<usize>,
}

impl VerifyReport {
    fn failed(e: &Error) -> Self {
        let line = match e {
            Error::Parse { line, .. } | Error::InvalidStep { line, .. } => Some(*line),
            _ => None,
        };
        VerifyReport {
            valid: false,
            complete: false,
            steps: 0,
            width: None,
            profile: None,
            bag_oracle: None,
            error: Some(e.to_string()),
            error_line: line,
        }
    }
}

/// Replays `c` from scratch and compares every trigraph with its bag
/// quotient.
pub fn verify(c: &ContractionSequence) -> VerifyReport {
    let r = match replay(c) {
        Ok(r) => r,
        Err(e) => return VerifyReport::failed(&e),
    };
    let oracle = r
        .trigraphs
        .iter()
        .zip(&r.bags)
        .all(|(t, b)| trigraph_from_bags(c.initial(), b).is_ok_and(|q| &q == t));
    VerifyReport {
        valid: oracle,
        complete: c.is_complete(),
        steps: c.len(),
        width: Some(r.profile.width),
        profile: Some(r.profile.per_trigraph),
        bag_oracle: Some(oracle),
        error: (!oracle).then(|| "a replayed trigraph differs from its bag quotient".to_string()),
        error_line: None,
    }
}

/// Parses a sequence file against `g` and verifies it; a bad step is
/// reported with its line.
pub fn verify_text(g: &Trigraph, sequence: &str) -> VerifyReport {
    match parse_sequence(sequence).and_then(|p| p.bind(g)) {
        Ok(c) => verify(&c),
        Err(e) => VerifyReport::failed(&e),
    }
}

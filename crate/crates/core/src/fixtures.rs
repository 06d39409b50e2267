//! The six-vertex example graph and its width-2 contraction sequence.

use crate::contraction::ContractionSequence;
use crate::graph::{Trigraph, VertexId};

pub const A: VertexId = VertexId(0);
pub const B: VertexId = VertexId(1);
pub const C: VertexId = VertexId(2);
pub const D: VertexId = VertexId(3);
pub const E: VertexId = VertexId(4);
pub const F: VertexId = VertexId(5);

/// Vertices `A..F = 0..6`; eight edges, feedback edge number 3, twin-width 2.
pub fn figure1() -> Trigraph {
    let edges = [
        (A, B),
        (B, C),
        (C, F),
        (F, E),
        (E, D),
        (D, B),
        (A, C),
        (C, E),
    ];
    let pairs: Vec<(usize, usize)> = edges.iter().map(|(u, v)| (u.0, v.0)).collect();
    Trigraph::from_edges(6, &pairs).expect("valid fixture")
}

/// `EF`, `AB`, `CD`, `CD+EF`, then the last two vertices.
pub fn figure1_sequence() -> ContractionSequence {
    ContractionSequence::from_pairs(
        figure1(),
        [
            (E, F),
            (A, B),
            (C, D),
            (VertexId(8), VertexId(6)),
            (VertexId(7), VertexId(9)),
        ],
    )
    .expect("valid fixture")
}

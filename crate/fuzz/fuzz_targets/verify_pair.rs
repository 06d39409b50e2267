//! A graph and a sequence separated by a NUL byte, bound and replayed.

#![no_main]

use libfuzzer_sys::fuzz_target;
use tww_core::graph::parse_graph;
use tww_core::report::verify_text;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Some((graph, sequence)) = text.split_once('\0') else {
        return;
    };
    let Ok(g) = parse_graph(graph) else {
        return;
    };
    if g.vertex_count() > 200 {
        return;
    }
    let r = verify_text(&g, sequence);
    if r.valid {
        assert!(r.width.unwrap() < g.vertex_count().max(1));
        assert!(r.steps < g.vertex_count().max(1));
    }
});

//! Graph and trigraph text parsing, plus a format/parse round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use tww_core::graph::{format_trigraph, parse_graph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_graph(text) {
        let again = parse_graph(&format_trigraph(&g)).expect("formatted trigraph parses");
        assert_eq!(g, again);
    }
});

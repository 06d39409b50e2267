//! Sequence text parsing and format round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use tww_core::contraction::parse_sequence;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_sequence(text) {
        let mut out = format!("{}\n", p.n);
        for (_, s) in &p.steps {
            out.push_str(&format!("{} {} -> {}\n", s.u, s.v, s.w));
        }
        let again = parse_sequence(&out).expect("formatted sequence parses");
        assert_eq!(again.n, p.n);
        assert!(again
            .steps
            .iter()
            .map(|x| x.1)
            .eq(p.steps.iter().map(|x| x.1)));
    }
});

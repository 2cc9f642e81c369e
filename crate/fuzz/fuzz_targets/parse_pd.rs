#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(d) = knotclass::parse_diagram(s, knotclass::DiagramFormat::Pd) {
            // accepted diagrams must round-trip through the canonical form
            let canon = d.to_pd_string();
            let d2 = knotclass::parse_diagram(&canon, knotclass::DiagramFormat::Pd)
                .expect("canonical form parses");
            assert_eq!(d2.to_pd_string(), canon);
            let _ = d.is_alternating();
            let _ = d.is_reduced();
        }
    }
});

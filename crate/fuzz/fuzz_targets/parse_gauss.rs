#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(d) = knotclass::parse_diagram(s, knotclass::DiagramFormat::Gauss) {
            assert_eq!(d.strand_components().len(), 1);
            let _ = d.to_pd_string();
        }
    }
});

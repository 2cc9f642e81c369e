#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(t) = knotclass::tangle::parse_tangle(s) {
            let _ = t.boundary_pairing();
            let _ = t.is_alternating();
            let again = knotclass::tangle::parse_tangle(&t.serialize()).expect("round trip");
            assert_eq!(again.serialize(), t.serialize());
        }
    }
});

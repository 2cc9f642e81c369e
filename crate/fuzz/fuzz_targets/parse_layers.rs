#![no_main]
use libfuzzer_sys::fuzz_target;
use knotclass::rational::{fraction, generate, parse_layer_sequence, recognize_rational};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(seq) = parse_layer_sequence(s) {
            if seq.layers.len() <= 12 {
                let t = generate(&seq);
                let r = recognize_rational(&t).expect("generated tangles peel");
                assert_eq!(fraction(&r), fraction(&seq));
            }
        }
    }
});

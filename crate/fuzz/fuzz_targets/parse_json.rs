#![no_main]

use cxembed::format::{parse_json, write_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = parse_json(s) {
        // metadata numbers may not survive a float round trip, so compare facets
        assert_eq!(parse_json(&write_json(&file)).unwrap().facets, file.facets);
        let _ = file.to_complex();
    }
});

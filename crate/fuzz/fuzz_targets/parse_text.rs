#![no_main]

use cxembed::format::{parse_text, write_text};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = parse_text(s) {
        assert_eq!(parse_text(&write_text(&file)).unwrap(), file);
        if let Ok(k) = file.to_complex() {
            let _ = k.f_vector();
        }
    }
});

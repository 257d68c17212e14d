#![no_main]

use cxembed::reduction::{parse_dimacs, write_dimacs};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(phi) = parse_dimacs(s) {
        assert_eq!(parse_dimacs(&write_dimacs(&phi)).unwrap(), phi);
    }
});

#![no_main]

use delforge::io::{lattice_json, parse_lattice};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(l) = parse_lattice(text) {
        assert_eq!(parse_lattice(&lattice_json(&l)).unwrap(), l);
    }
});

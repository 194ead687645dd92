#![no_main]

use delforge::io::{instance_json, parse_instance};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(inst) = parse_instance(text) {
        assert_eq!(parse_instance(&instance_json(&inst)).unwrap(), inst);
    }
});

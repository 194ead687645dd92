#![no_main]

use delforge::io::to_json;
use delforge::report::parse_report;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = parse_report(text) {
        assert_eq!(parse_report(&to_json(&report)).unwrap(), report);
    }
});

#![no_main]

use delforge::io::{parse_symmetry_report, symmetry_report_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = parse_symmetry_report(text) {
        assert_eq!(
            parse_symmetry_report(&symmetry_report_json(&report)).unwrap(),
            report
        );
    }
});

#![no_main]

use delforge::io::{extremality_certificate_json, parse_extremality_certificate};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cert) = parse_extremality_certificate(text) {
        assert_eq!(
            parse_extremality_certificate(&extremality_certificate_json(&cert)).unwrap(),
            cert
        );
    }
});

#![no_main]

use delforge::io::{parse_sphere_certificate, sphere_certificate_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cert) = parse_sphere_certificate(text) {
        assert_eq!(
            parse_sphere_certificate(&sphere_certificate_json(&cert)).unwrap(),
            cert
        );
    }
});

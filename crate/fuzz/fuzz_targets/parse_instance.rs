#![no_main]

use libfuzzer_sys::fuzz_target;
use pierce_core::io::{instance_to_json, parse_instance, parse_instance_bytes};

fuzz_target!(|data: &[u8]| {
    let from_bytes = parse_instance_bytes(data);
    if let Ok(text) = std::str::from_utf8(data) {
        assert_eq!(parse_instance(text).is_ok(), from_bytes.is_ok());
    }
    if let Ok(inst) = from_bytes {
        let again = parse_instance(&instance_to_json(&inst)).expect("written instances parse");
        assert_eq!(again, inst);
    }
});

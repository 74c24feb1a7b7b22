#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(map) = subgames::parse::parse_config(text) {
        for key in map.keys() {
            assert!(!key.is_empty());
            assert!(!key.contains('='));
        }
    }
});

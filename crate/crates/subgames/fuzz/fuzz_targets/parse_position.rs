#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(pos) = subgames::parse::parse_position(text) {
        assert!(!pos.is_empty());
    }
});

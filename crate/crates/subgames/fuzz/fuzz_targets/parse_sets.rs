#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sets) = subgames::parse::parse_sets(text) {
        assert!(!sets.is_empty());
        for set in &sets {
            assert!(!set.elements().is_empty());
        }
    }
});

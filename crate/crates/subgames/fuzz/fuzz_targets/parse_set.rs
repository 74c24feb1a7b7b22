#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(set) = subgames::parse::parse_set(text) {
        // Anything accepted must satisfy the set invariants.
        let elems = set.elements();
        assert!(!elems.is_empty());
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
        assert!(elems.iter().all(|&k| k >= 1));
        assert_eq!(set.all_odd(), elems.iter().all(|k| k % 2 == 1));
    }
});

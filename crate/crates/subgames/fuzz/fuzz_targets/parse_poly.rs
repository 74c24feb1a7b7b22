#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(poly) = subgames::parse::parse_poly(text) {
        // Display round-trips through the parser to the same polynomial.
        let rendered = poly.to_string();
        let reparsed = subgames::parse::parse_poly(&rendered).unwrap();
        assert_eq!(poly, reparsed);
    }
});

#![no_main]

use jordan_hall_cli::syntax;
use libfuzzer_sys::fuzz_target;

// Parsing never panics, and a parsed tree prints to text that parses back to it.
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(e) = syntax::parse(src) {
        let printed = e.to_string();
        let again = syntax::parse(&printed).expect("printed expression parses");
        assert_eq!(again, e, "{printed}");
    }
});

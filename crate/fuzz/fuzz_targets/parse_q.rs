#![no_main]

use jordan_hall::Scalar;
use jordan_hall_cli::eval::{parse_rational, Specialization};
use libfuzzer_sys::fuzz_target;

// The --q argument parser: no panics, and accepted values specialize cleanly.
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Some(q) = parse_rational(src) {
        let s = Specialization::new(q);
        let _ = s.scalar(&Scalar::q());
        let _ = s.scalar(&Scalar::v());
        let _ = s.scalar(&(&Scalar::q() - &Scalar::one()).inv().unwrap());
    }
});

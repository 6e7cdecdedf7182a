#![no_main]

use jordan_hall::symfunc::SymRing;
use jordan_hall_cli::eval::{Context, Value};
use jordan_hall_cli::{render, syntax};
use libfuzzer_sys::fuzz_target;

// Evaluated output reads back as the same value.
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    // Keep products small; weight grows with every factor.
    if src.len() > 48 || src.matches('*').count() > 2 || src.contains('^') {
        return;
    }
    let ctx = Context {
        ring: SymRing::new(4),
        ..Context::default()
    };
    let Ok(e) = syntax::parse(src) else { return };
    let Ok(v) = ctx.eval(&e) else { return };
    let text = render::text(&v);
    let back = ctx
        .eval(&syntax::parse(&text).expect("output parses"))
        .expect("output evaluates");
    let same = match (&back, &v) {
        (Value::Derived(a), Value::Derived(b)) => a.same_element(b),
        (Value::Scalar(s), other) if s.is_zero() => render::text(other) == "0",
        (a, b) => a == b,
    };
    assert!(same, "{src} -> {text}");
});

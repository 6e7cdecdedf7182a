use std::process::{Command, Output};

use jordan_hall_cli::eval::{Context, Specialization};
use jordan_hall_cli::{render, syntax};
use num_bigint::BigInt;
use num_rational::BigRational;

fn jhall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jhall"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = jhall(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["eval", "u[1] * u[ ;1]"]), "u[1;1] + (q-1)·u[;]");
    assert_eq!(ok(&["eval", "psi(u[1])", "--sym-basis", "e"]), "(q-1)·e[1]");
    assert_eq!(ok(&["eval", "q^2 - q", "--q", "3"]), "6");
    assert_eq!(ok(&["eval", "T(1,1)"]), "(1/(q-1))·u[1]");
    assert_eq!(ok(&["eval", "hl(2)"]), "m[2] + ((q-1)/q)·m[1,1]");
}

#[test]
fn parse_errors_exit_one_with_position() {
    let o = jhall(&["eval", "u[1,2]"]);
    assert_eq!(o.status.code(), Some(1));
    let e = stderr(&o);
    assert!(e.contains("line 1, column 5"), "{e}");
    assert!(e.contains("weakly decreasing") && e.contains("u[2,1]"), "{e}");
    let o = jhall(&["eval", "frob(u[1])"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown function 'frob'"));
}

#[test]
fn usage_and_type_errors_exit_one() {
    assert_eq!(jhall(&["check", "nonsense"]).status.code(), Some(1));
    assert_eq!(jhall(&["eval"]).status.code(), Some(1));
    assert_eq!(jhall(&["eval", "u[1]", "--q", "x"]).status.code(), Some(1));
    let o = jhall(&["eval", "pair(u[1], e[1])"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("type mismatch"));
    assert_eq!(jhall(&["check", "oracle-hall", "--p", "5"]).status.code(), Some(1));
}

#[test]
fn caps_exit_three() {
    assert_eq!(jhall(&["eval", "e(9)"]).status.code(), Some(3));
    assert_eq!(jhall(&["eval", "e(9)", "--degree-bound", "9"]).status.code(), Some(0));
    assert_eq!(
        jhall(&["check", "associativity", "--weight", "4"]).status.code(),
        Some(3)
    );
    assert_eq!(
        jhall(&["check", "oracle-hall", "--p", "3", "--weight", "5"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        jhall(&["check", "appendix", "--samples", "100001"]).status.code(),
        Some(3)
    );
    assert_eq!(jhall(&["table", "5"]).status.code(), Some(3));
}

#[test]
fn documented_suites_pass() {
    for args in [
        vec!["check", "commutativity", "--weight", "3"],
        vec!["check", "dd", "--weight", "4"],
        vec!["check", "oracle-hall", "--weight", "5", "--p", "2"],
    ] {
        let out = ok(&args);
        assert!(out.contains("PASS") && out.contains(" 0 failures"), "{out}");
    }
}

#[test]
fn suite_reports_are_reproducible() {
    let a = ok(&[
        "check",
        "appendix",
        "--samples",
        "50",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    let b = ok(&[
        "check",
        "appendix",
        "--samples",
        "50",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(a, b);
    assert!(a.starts_with(r#"{"suite":"appendix""#), "{a}");
}

#[test]
fn json_records_are_integer_only() {
    let out = ok(&["eval", "u[1] * u[;1]", "--format", "json"]);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(
        lines,
        [
            r#"{"h0":[1],"h1":[1],"num":[1],"den":[1]}"#,
            r#"{"h0":[],"h1":[],"num":[-1,0,1],"den":[1]}"#,
        ]
    );
    let table = ok(&["table", "1"]);
    // Three root objects of weight at most 1, so nine products.
    assert_eq!(ok(&["table", "1", "--format", "text"]).lines().count(), 9);
    assert!(table.lines().count() >= 9);
    for line in table.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["x0", "x1", "y0", "y1", "h0", "h1", "num", "den"] {
            assert!(v.get(key).is_some(), "{line}");
        }
    }
    let hl = ok(&["export-hl", "2", "--format", "json"]);
    assert_eq!(
        hl.lines().collect::<Vec<_>>(),
        [
            r#"{"lambda":[2],"mu":[2],"t":[1]}"#,
            r#"{"lambda":[2],"mu":[1,1],"t":[1,-1]}"#,
            r#"{"lambda":[1,1],"mu":[1,1],"t":[1]}"#,
        ]
    );
}

#[test]
fn normal_basis_output_denotes_the_same_element() {
    let nat = ok(&["eval", "u[2,1] * u[1;1]"]);
    let normal = ok(&["eval", "u[2,1] * u[1;1]", "--basis", "normal"]);
    assert!(normal.contains("*u[;"), "{normal}");
    let a = ok(&["eval", &format!("natural({normal})")]);
    assert_eq!(a, nat);
}

/// Numeric mode agrees with evaluating the symbolic output at the same q.
#[test]
fn numeric_mode_matches_symbolic() {
    let exprs = [
        "u[1] * u[;1]",
        "u[2,1] * u[1;1]",
        "(u[1] * u[;1]) * u[1]",
        "pair(u[2], u[1,1] + u[2])",
        "psi(u[1,1,1])",
        "psi(u[2] * u[1])",
        "theta(u[2;1])",
        "hl(2,1)",
        "pair(p[2], p[2])",
        "T(3,1)",
        "T(3,3)",
        "T(4,3)",
        "delta(u[2,1])",
        "straighten(u[2;1,1])",
        "e[2]⊗e[1] * p[1]⊗p[1]",
    ];
    for p in [2u32, 3] {
        let q = BigRational::from_integer(BigInt::from(p));
        let spec = Specialization::new(q);
        for e in exprs {
            let symbolic = ok(&["eval", e]);
            let numeric = ok(&["eval", e, "--q", &p.to_string()]);
            let ctx = Context::default();
            let value = ctx.present(ctx.eval(&syntax::parse(e).unwrap()).unwrap()).unwrap();
            assert_eq!(symbolic, render::text(&value));
            let want = render::text(&spec.value(&value).unwrap());
            assert_eq!(numeric, want, "{e} at q = {p}");
        }
    }
}

#[test]
fn numeric_mode_errors() {
    let o = jhall(&["eval", "1/(q-2)", "--q", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("pole"));
    assert_eq!(ok(&["eval", "v^3", "--q", "4"]), "8");
    // [2]_v carries odd powers of v.
    assert_eq!(jhall(&["eval", "T(2,1)", "--q", "2"]).status.code(), Some(1));
    assert_eq!(jhall(&["eval", "T(2,1)", "--q", "4"]).status.code(), Some(0));
    assert_eq!(ok(&["eval", "u[1]/q", "--q", "3/2"]), "(2/3)·u[1]");
}

#[test]
fn help_exits_zero() {
    let o = jhall(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("export-hl"));
}

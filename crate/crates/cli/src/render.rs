//! Text and JSON-lines output.
//!
//! Text output is itself a valid expression: parsing and evaluating it gives
//! back the same value.

use jordan_hall::derived::{DerivedBasis, RootObject};
use jordan_hall::poly::Poly;
use jordan_hall::{LinComb, Partition, Scalar};
use num_bigint::BigInt;
use serde_json::{Map, Value as Json};

use crate::eval::Value;

fn root_label(obj: &RootObject) -> String {
    match (obj.h0.is_empty(), obj.h1.is_empty()) {
        (true, true) => "u[;]".into(),
        (_, true) => format!("u[{}]", obj.h0.render_parts()),
        _ => format!("u[{};{}]", obj.h0.render_parts(), obj.h1.render_parts()),
    }
}

fn derived_label(basis: DerivedBasis, obj: &RootObject) -> String {
    match basis {
        DerivedBasis::Normal if !obj.h0.is_empty() && !obj.h1.is_empty() => {
            format!("u[{}]*u[;{}]", obj.h0.render_parts(), obj.h1.render_parts())
        }
        _ => root_label(obj),
    }
}

/// A term ready for printing: sort key, label, coefficient.
struct Term<'a> {
    key: (usize, Vec<&'a Partition>),
    label: String,
    coeff: &'a Scalar,
}

fn terms_of<'a, K: Ord + Clone>(
    x: &'a LinComb<K>,
    mut key: impl FnMut(&'a K) -> Vec<&'a Partition>,
    mut label: impl FnMut(&K) -> String,
) -> Vec<Term<'a>> {
    let mut out: Vec<Term<'a>> = x
        .iter()
        .map(|(k, c)| {
            let parts = key(k);
            Term {
                key: (parts.iter().map(|p| p.weight()).sum(), parts),
                label: label(k),
                coeff: c,
            }
        })
        .collect();
    out.sort_by(|a, b| b.key.cmp(&a.key));
    out
}

fn coeff_times(c: &Scalar, label: &str) -> String {
    if c.is_one() {
        label.to_string()
    } else if c.is_simple() {
        format!("{}·{label}", c.render())
    } else {
        format!("({})·{label}", c.render())
    }
}

fn join(terms: &[Term<'_>]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        let neg = t.coeff.is_negative();
        let body = if neg {
            coeff_times(&-t.coeff.clone(), &t.label)
        } else {
            coeff_times(t.coeff, &t.label)
        };
        match (i, neg) {
            (0, false) => {}
            (0, true) => s.push('-'),
            (_, false) => s.push_str(" + "),
            (_, true) => s.push_str(" - "),
        }
        s.push_str(&body);
    }
    s
}

fn ordered(v: &Value) -> Vec<Term<'_>> {
    match v {
        Value::Scalar(_) => Vec::new(),
        Value::Derived(x) => terms_of(&x.terms, |k| vec![&k.h0, &k.h1], |k| derived_label(x.basis, k)),
        Value::Sym(f) => terms_of(
            &f.terms,
            |k| vec![k],
            |k| format!("{}[{}]", f.basis.symbol(), k.render_parts()),
        ),
        Value::SymTensor(t) => {
            let b = t.basis.symbol();
            terms_of(
                &t.terms,
                |(l, r)| vec![l, r],
                |(l, r)| format!("{b}[{}]⊗{b}[{}]", l.render_parts(), r.render_parts()),
            )
        }
        Value::HallTensor(t) => terms_of(
            t,
            |(l, r)| vec![l, r],
            |(l, r)| format!("u[{}]⊗u[{}]", l.render_parts(), r.render_parts()),
        ),
    }
}

pub fn text(v: &Value) -> String {
    match v {
        Value::Scalar(s) => s.render(),
        _ => join(&ordered(v)),
    }
}

fn big(n: &BigInt) -> Json {
    Json::Number(n.to_string().parse().expect("integer literal"))
}

pub fn parts_json(p: &Partition) -> Json {
    Json::Array(p.parts().iter().map(|&x| Json::from(x)).collect())
}

pub fn poly_json(p: &Poly) -> Json {
    Json::Array(p.coeffs().iter().map(big).collect())
}

/// `num` and `den`, coefficients in `v` ascending.
fn push_scalar(rec: &mut Map<String, Json>, s: &Scalar) {
    rec.insert("num".into(), poly_json(s.numer()));
    rec.insert("den".into(), poly_json(s.denom()));
}

/// `{prefix}0` and `{prefix}1` fields for a root object.
pub fn push_root(rec: &mut Map<String, Json>, prefix: &str, obj: &RootObject) {
    rec.insert(format!("{prefix}0"), parts_json(&obj.h0));
    rec.insert(format!("{prefix}1"), parts_json(&obj.h1));
}

fn sorted_by_weight<K: Ord + Clone>(x: &LinComb<K>, weight: impl Fn(&K) -> usize) -> Vec<(&K, &Scalar)> {
    let mut items: Vec<_> = x.iter().collect();
    items.sort_by(|a, b| (weight(b.0), b.0).cmp(&(weight(a.0), a.0)));
    items
}

/// One record per term, in the text order. A zero element has no records.
pub fn json_records(v: &Value) -> Vec<Map<String, Json>> {
    let mut out = Vec::new();
    match v {
        Value::Scalar(s) => {
            let mut rec = Map::new();
            push_scalar(&mut rec, s);
            out.push(rec);
        }
        Value::Derived(x) => {
            for (k, c) in sorted_by_weight(&x.terms, RootObject::total_weight) {
                let mut rec = Map::new();
                if x.basis == DerivedBasis::Normal {
                    rec.insert("basis".into(), "normal".into());
                }
                rec.insert("h0".into(), parts_json(&k.h0));
                rec.insert("h1".into(), parts_json(&k.h1));
                push_scalar(&mut rec, c);
                out.push(rec);
            }
        }
        Value::Sym(f) => {
            for (k, c) in sorted_by_weight(&f.terms, Partition::weight) {
                let mut rec = Map::new();
                rec.insert("basis".into(), f.basis.symbol().into());
                rec.insert("parts".into(), parts_json(k));
                push_scalar(&mut rec, c);
                out.push(rec);
            }
        }
        Value::SymTensor(t) => {
            for ((l, r), c) in sorted_by_weight(&t.terms, |(l, r)| l.weight() + r.weight()) {
                let mut rec = Map::new();
                rec.insert("basis".into(), t.basis.symbol().into());
                rec.insert("left".into(), parts_json(l));
                rec.insert("right".into(), parts_json(r));
                push_scalar(&mut rec, c);
                out.push(rec);
            }
        }
        Value::HallTensor(t) => {
            for ((l, r), c) in sorted_by_weight(t, |(l, r)| l.weight() + r.weight()) {
                let mut rec = Map::new();
                rec.insert("left".into(), parts_json(l));
                rec.insert("right".into(), parts_json(r));
                push_scalar(&mut rec, c);
                out.push(rec);
            }
        }
    }
    out
}

pub fn json_lines(v: &Value) -> Vec<String> {
    json_records(v)
        .into_iter()
        .map(|r| Json::Object(r).to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Context;
    use crate::syntax::parse;

    fn show(s: &str) -> String {
        text(&Context::default().eval(&parse(s).unwrap()).unwrap())
    }

    #[test]
    fn renders_terms_in_canonical_order() {
        assert_eq!(show("u[1] * u[;1]"), "u[1;1] + (q-1)·u[;]");
        assert_eq!(show("u[;] - u[1]"), "-u[1] + u[;]");
        assert_eq!(show("2*e[1] + e[2] - q*e[1,1]"), "e[2] - q·e[1,1] + 2·e[1]");
        assert_eq!(show("u[1] - u[1]"), "0");
        assert_eq!(show("q^2 - q"), "q^2-q");
        assert_eq!(show("e[1]⊗e[]"), "e[1]⊗e[]");
    }

    #[test]
    fn json_records() {
        let v = Context::default().eval(&parse("u[1] * u[;1]").unwrap()).unwrap();
        assert_eq!(
            json_lines(&v),
            vec![
                r#"{"h0":[1],"h1":[1],"num":[1],"den":[1]}"#.to_string(),
                r#"{"h0":[],"h1":[],"num":[-1,0,1],"den":[1]}"#.to_string(),
            ]
        );
    }
}

//! Verification sweeps behind `jhall check`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use jordan_hall::derived::{self, derived_product, DerivedBasis, DerivedElem, RootObject};
use jordan_hall::hall;
use jordan_hall::oracle;
use jordan_hall::partition::{partitions_of, partitions_up_to};
use jordan_hall::symfunc::SymRing;
use jordan_hall::{Partition, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::eval::Value;
use crate::render;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Associativity,
    Commutativity,
    Dd,
    Straighten,
    Psi,
    Pairing,
    OracleHall,
    OracleMorphisms,
    Appendix,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Associativity,
        Suite::Commutativity,
        Suite::Dd,
        Suite::Straighten,
        Suite::Psi,
        Suite::Pairing,
        Suite::OracleHall,
        Suite::OracleMorphisms,
        Suite::Appendix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Associativity => "associativity",
            Suite::Commutativity => "commutativity",
            Suite::Dd => "dd",
            Suite::Straighten => "straighten",
            Suite::Psi => "psi",
            Suite::Pairing => "pairing",
            Suite::OracleHall => "oracle-hall",
            Suite::OracleMorphisms => "oracle-morphisms",
            Suite::Appendix => "appendix",
        }
    }

    /// Default and maximum weight bound.
    fn weights(self, p: u32) -> (usize, usize) {
        match self {
            Suite::Associativity => (2, 3),
            Suite::Commutativity => (3, 4),
            Suite::Dd => (4, 5),
            Suite::Straighten => (6, 8),
            Suite::Psi | Suite::Pairing => (4, 5),
            Suite::OracleHall if p == 2 => (5, 5),
            Suite::OracleHall => (4, 4),
            Suite::OracleMorphisms => (4, 4),
            Suite::Appendix => (0, 0),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite '{s}'; expected one of {}", names.join(", "))
        })
    }
}

pub const MAX_SAMPLES: usize = 100_000;
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Default)]
pub struct Bounds {
    pub weight: Option<usize>,
    /// Restrict oracle suites to one prime.
    pub prime: Option<u32>,
    pub samples: Option<usize>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("{suite} is capped at {cap}, got {got}")]
    Cap { suite: Suite, cap: usize, got: usize },
    #[error("the oracle works over F_2 and F_3, got p = {0}")]
    Prime(u32),
    #[error(transparent)]
    Core(#[from] jordan_hall::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub inputs: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub bound: String,
    pub cases: usize,
    pub skipped: usize,
    pub failures: Vec<Counterexample>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn text(&self) -> String {
        let mut s = format!(
            "{}: {} ({}), {} cases, {} failures",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.bound,
            self.cases,
            self.failures.len()
        );
        if self.skipped > 0 {
            s.push_str(&format!(", {} skipped over budget", self.skipped));
        }
        for c in &self.failures {
            s.push_str(&format!(
                "\n  {}\n    left:  {}\n    right: {}",
                c.inputs, c.left, c.right
            ));
        }
        s
    }

    pub fn json_lines(&self) -> Vec<String> {
        let mut out = vec![json!({
            "suite": self.suite.name(),
            "bound": self.bound,
            "passed": self.passed(),
            "cases": self.cases,
            "skipped": self.skipped,
            "failures": self.failures.len(),
        })
        .to_string()];
        for c in &self.failures {
            out.push(json!({"inputs": c.inputs, "left": c.left, "right": c.right}).to_string());
        }
        out
    }
}

fn show(x: &DerivedElem) -> String {
    render::text(&Value::Derived(x.clone()))
}

fn label(x: &RootObject) -> String {
    show(&DerivedElem::natural(x.clone()))
}

fn at(s: &Scalar, p: u32) -> BigRational {
    s.eval_at(p as i64).expect("no pole at a prime")
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Compare sides for each case in parallel; failures keep the case order.
fn sweep<T: Sync>(cases: &[T], run: impl Fn(&T) -> Option<Counterexample> + Sync + Send) -> Vec<Counterexample> {
    cases
        .par_iter()
        .map(run)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn derived_mismatch(inputs: String, left: &DerivedElem, right: &DerivedElem) -> Option<Counterexample> {
    (!left.same_element(right)).then(|| Counterexample {
        inputs,
        left: show(left),
        right: show(right),
    })
}

fn primes(b: &Bounds) -> Result<Vec<u32>, CheckError> {
    match b.prime {
        None => Ok(vec![2, 3]),
        Some(p @ (2 | 3)) => Ok(vec![p]),
        Some(p) => Err(CheckError::Prime(p)),
    }
}

fn weight_for(suite: Suite, b: &Bounds, p: u32) -> Result<usize, CheckError> {
    let (def, cap) = suite.weights(p);
    let w = b.weight.unwrap_or(def.min(cap));
    if w > cap {
        return Err(CheckError::Cap { suite, cap, got: w });
    }
    Ok(w)
}

pub fn run(suite: Suite, b: &Bounds) -> Result<Report, CheckError> {
    let nat = DerivedBasis::Natural;
    let report = |bound: String, cases: usize, skipped: usize, failures: Vec<Counterexample>| Report {
        suite,
        bound,
        cases,
        skipped,
        failures,
    };
    match suite {
        Suite::Associativity | Suite::Commutativity | Suite::Straighten => {
            let w = weight_for(suite, b, 2)?;
            let objs = derived::root_objects_up_to(w);
            let elems: Vec<_> = objs.iter().cloned().map(DerivedElem::natural).collect();
            let bound = format!("total weight ≤ {w}");
            match suite {
                Suite::Associativity => {
                    let n = elems.len();
                    let triples: Vec<_> = (0..n * n * n).map(|i| (i / (n * n), (i / n) % n, i % n)).collect();
                    let fails = sweep(&triples, |&(i, j, k)| {
                        let (x, y, z) = (&elems[i], &elems[j], &elems[k]);
                        let l = derived_product(&derived_product(x, y, nat), z, nat);
                        let r = derived_product(x, &derived_product(y, z, nat), nat);
                        derived_mismatch(
                            format!("{}, {}, {}", label(&objs[i]), label(&objs[j]), label(&objs[k])),
                            &l,
                            &r,
                        )
                    });
                    Ok(report(bound, triples.len(), 0, fails))
                }
                Suite::Commutativity => {
                    let n = elems.len();
                    let pairs: Vec<_> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
                    let fails = sweep(&pairs, |&(i, j)| {
                        let l = derived_product(&elems[i], &elems[j], nat);
                        let r = derived_product(&elems[j], &elems[i], nat);
                        derived_mismatch(format!("{}, {}", label(&objs[i]), label(&objs[j])), &l, &r)
                    });
                    Ok(report(bound, pairs.len(), 0, fails))
                }
                _ => {
                    let fails = sweep(&elems, |x| {
                        let back = derived::to_natural(&derived::straighten(x));
                        (back != *x).then(|| Counterexample {
                            inputs: show(x),
                            left: show(&back),
                            right: show(x),
                        })
                    });
                    Ok(report(bound, elems.len(), 0, fails))
                }
            }
        }
        Suite::Dd => {
            let w = weight_for(suite, b, 2)?;
            let ps = partitions_up_to(w);
            let pairs: Vec<_> = ps.iter().flat_map(|a| ps.iter().map(move |c| (a, c))).collect();
            let fails = sweep(&pairs, |(l, m)| {
                let (lhs, rhs) = derived::dd_relation_sides(l, m);
                derived_mismatch(format!("{l}, {m}"), &lhs, &rhs)
            });
            Ok(report(format!("weights ≤ {w}"), pairs.len(), 0, fails))
        }
        Suite::Psi | Suite::Pairing => {
            let w = weight_for(suite, b, 2)?;
            let ring = SymRing::new(2 * w);
            let ps = partitions_up_to(w);
            let pairs: Vec<_> = ps.iter().flat_map(|a| ps.iter().map(move |c| (a, c))).collect();
            let fails = sweep(&pairs, |(a, c)| {
                let (x, y) = (hall::basis((*a).clone()), hall::basis((*c).clone()));
                let inputs = format!("u[{}], u[{}]", a.render_parts(), c.render_parts());
                if suite == Suite::Psi {
                    let lhs = ring.psi(&hall::product(&x, &y)).expect("within bound");
                    let rhs = ring
                        .multiply(
                            &ring.psi(&x).expect("within bound"),
                            &ring.psi(&y).expect("within bound"),
                        )
                        .expect("within bound");
                    let rhs = ring.convert(&rhs, lhs.basis).expect("within bound");
                    (lhs != rhs).then(|| Counterexample {
                        inputs,
                        left: render::text(&Value::Sym(lhs)),
                        right: render::text(&Value::Sym(rhs)),
                    })
                } else {
                    let lhs = hall::hopf_pairing(&x, &y);
                    let rhs = ring
                        .paper_pairing(
                            &ring.psi(&x).expect("within bound"),
                            &ring.psi(&y).expect("within bound"),
                        )
                        .expect("within bound");
                    (lhs != rhs).then(|| Counterexample {
                        inputs,
                        left: lhs.render(),
                        right: rhs.render(),
                    })
                }
            });
            Ok(report(format!("weights ≤ {w}"), pairs.len(), 0, fails))
        }
        Suite::OracleHall => {
            let ps = primes(b)?;
            let mut cases = Vec::new();
            let mut bounds = Vec::new();
            for p in ps {
                let w = weight_for(suite, b, p)?;
                bounds.push(format!("|λ| ≤ {w} at p = {p}"));
                cases.extend(partitions_up_to(w).into_iter().map(|l| (p, l)));
            }
            let results: Vec<_> = cases
                .par_iter()
                .map(|(p, l)| oracle_hall_case(*p, l))
                .collect::<Result<Vec<_>, _>>()?;
            let total = results.iter().map(|(n, _)| n).sum();
            let fails = results.into_iter().flat_map(|(_, f)| f).collect();
            Ok(report(bounds.join(", "), total, 0, fails))
        }
        Suite::OracleMorphisms => {
            let mut cases = Vec::new();
            let mut bounds = Vec::new();
            for p in primes(b)? {
                let w = weight_for(suite, b, p)?;
                bounds.push(format!("|λ|, |μ| ≤ {w} at p = {p}"));
                let ps = partitions_up_to(w);
                for l in &ps {
                    for z in &ps {
                        cases.push((p, l.clone(), z.clone()));
                    }
                }
            }
            let results: Vec<_> = cases
                .par_iter()
                .map(|(p, l, z)| oracle_morphism_case(*p, l, z))
                .collect::<Result<Vec<_>, _>>()?;
            let skipped = results.iter().filter(|r| r.is_none()).count();
            let fails = results.into_iter().flatten().flatten().collect();
            Ok(report(bounds.join(", "), cases.len() - skipped, skipped, fails))
        }
        Suite::Appendix => {
            let samples = b.samples.unwrap_or(DEFAULT_SAMPLES);
            if samples > MAX_SAMPLES {
                return Err(CheckError::Cap {
                    suite,
                    cap: MAX_SAMPLES,
                    got: samples,
                });
            }
            if let Some(w) = b.weight {
                return Err(CheckError::Cap { suite, cap: 0, got: w });
            }
            let ps = primes(b)?;
            let mut cases = Vec::new();
            for &p in &ps {
                let per = samples.div_ceil(DIMS.len());
                let mut left = samples;
                for (i, d) in DIMS.iter().enumerate() {
                    let n = per.min(left);
                    left -= n;
                    if n > 0 {
                        let seed = b.seed.wrapping_mul(1_000_003).wrapping_add(1000 * p as u64 + i as u64);
                        cases.push((p, *d, n, seed));
                    }
                }
            }
            let results: Vec<_> = cases
                .par_iter()
                .map(|&(p, d, n, seed)| oracle::rank_identity_check(p, d, n, seed).map(|r| (p, d, r)))
                .collect::<Result<Vec<_>, _>>()?;
            let mut total = 0;
            let mut fails = Vec::new();
            for (p, d, r) in results {
                total += r.accepted;
                if !r.passed() {
                    fails.push(Counterexample {
                        inputs: format!("p = {p}, dims {d:?}"),
                        left: format!("{} rank failures", r.rank_failures),
                        right: format!("{} square failures", r.square_failures),
                    });
                }
            }
            let primes: Vec<_> = ps.iter().map(|p| p.to_string()).collect();
            Ok(report(
                format!(
                    "{samples} samples per prime, p ∈ {{{}}}, seed {}",
                    primes.join(", "),
                    b.seed
                ),
                total,
                0,
                fails,
            ))
        }
    }
}

const DIMS: [(usize, usize, usize); 10] = [
    (4, 5, 4),
    (3, 3, 3),
    (6, 6, 6),
    (5, 4, 2),
    (2, 3, 4),
    (6, 5, 3),
    (1, 1, 1),
    (4, 6, 5),
    (3, 5, 6),
    (6, 2, 6),
];

fn oracle_hall_case(p: u32, lambda: &Partition) -> Result<(usize, Vec<Counterexample>), CheckError> {
    let hist = oracle::submodule_histogram(lambda, p)?;
    let n = lambda.weight();
    let mut cases = 0;
    let mut fails = Vec::new();
    for k in 0..=n {
        for mu in partitions_of(n - k) {
            for nu in partitions_of(k) {
                let want = hist.get(&(mu.clone(), nu.clone())).copied().unwrap_or(0);
                let got = at(&hall::hall_number(lambda, &mu, &nu), p);
                cases += 1;
                if got != int(want) {
                    fails.push(Counterexample {
                        inputs: format!("λ = {lambda}, quotient {mu}, submodule {nu}, q = {p}"),
                        left: got.to_string(),
                        right: want.to_string(),
                    });
                }
            }
        }
    }
    Ok((cases, fails))
}

/// `None` when the hom space is over budget.
fn oracle_morphism_case(p: u32, l: &Partition, z: &Partition) -> Result<Option<Option<Counterexample>>, CheckError> {
    let hist = match oracle::classify_morphisms(l, z, p) {
        Ok(h) => h,
        Err(jordan_hall::Error::Budget(_)) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let got: BTreeMap<_, _> = hist.into_iter().map(|(k, v)| (k, int(v))).collect();
    let mut want = BTreeMap::new();
    for ker in partitions_up_to(l.weight()) {
        for coker in partitions_up_to(z.weight()) {
            let c = at(&derived::count_maps_by_ker_coker(l, z, &ker, &coker), p);
            if c != int(0) {
                want.insert((ker.clone(), coker), c);
            }
        }
    }
    let fmt = |m: &BTreeMap<(Partition, Partition), BigRational>| {
        m.iter()
            .map(|((k, c), n)| format!("{k}|{c}: {n}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    Ok(Some((got != want).then(|| Counterexample {
        inputs: format!("Hom({l}, {z}) over F_{p}"),
        left: fmt(&got),
        right: fmt(&want),
    })))
}

pub const TABLE_CAP: usize = 4;

/// Products of all pairs of root objects of total weight ≤ `w`, one JSON
/// record per product term.
pub fn table(w: usize, basis: DerivedBasis) -> Vec<String> {
    let objs = derived::root_objects_up_to(w);
    let pairs: Vec<_> = objs.iter().flat_map(|a| objs.iter().map(move |c| (a, c))).collect();
    pairs
        .par_iter()
        .map(|(x, y)| {
            let prod = derived_product(
                &DerivedElem::natural((*x).clone()),
                &DerivedElem::natural((*y).clone()),
                basis,
            );
            render::json_records(&Value::Derived(prod))
                .into_iter()
                .map(|term| {
                    let mut rec = serde_json::Map::new();
                    render::push_root(&mut rec, "x", x);
                    render::push_root(&mut rec, "y", y);
                    rec.extend(term);
                    serde_json::Value::Object(rec).to_string()
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Text form of the table: `x * y = product` per pair.
pub fn table_text(w: usize, basis: DerivedBasis) -> Vec<String> {
    let objs = derived::root_objects_up_to(w);
    let pairs: Vec<_> = objs.iter().flat_map(|a| objs.iter().map(move |c| (a, c))).collect();
    pairs
        .par_iter()
        .map(|(x, y)| {
            let prod = derived_product(
                &DerivedElem::natural((*x).clone()),
                &DerivedElem::natural((*y).clone()),
                basis,
            );
            format!("{} * {} = {}", label(x), label(y), show(&prod))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_parse_and_cap() {
        assert_eq!("dd".parse::<Suite>().unwrap(), Suite::Dd);
        assert!("ddd".parse::<Suite>().is_err());
        let b = Bounds {
            weight: Some(9),
            ..Bounds::default()
        };
        assert!(matches!(run(Suite::Dd, &b), Err(CheckError::Cap { .. })));
        let b = Bounds {
            prime: Some(5),
            ..Bounds::default()
        };
        assert!(matches!(run(Suite::OracleHall, &b), Err(CheckError::Prime(5))));
    }

    #[test]
    fn small_sweeps_pass() {
        let b = Bounds {
            weight: Some(2),
            ..Bounds::default()
        };
        for s in [
            Suite::Commutativity,
            Suite::Dd,
            Suite::Straighten,
            Suite::Psi,
            Suite::Pairing,
        ] {
            let r = run(s, &b).unwrap();
            assert!(r.passed(), "{}", r.text());
            assert!(r.cases > 0);
        }
        let r = run(
            Suite::Appendix,
            &Bounds {
                samples: Some(20),
                ..Bounds::default()
            },
        )
        .unwrap();
        assert!(r.passed());
        assert_eq!(r.cases, 40);
    }

    #[test]
    fn table_records_carry_inputs() {
        let rows = table(1, DerivedBasis::Natural);
        assert!(rows
            .iter()
            .any(|r| r.starts_with(r#"{"x0":[1],"x1":[],"y0":[],"y1":[1],"h0":[1],"h1":[1]"#)));
    }
}

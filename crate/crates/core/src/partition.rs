//! Integer partitions, which index isoclasses of nilpotent Jordan-quiver
//! modules: `λ = (λ1, λ2, ...)` stands for `S^(λ1) ⊕ S^(λ2) ⊕ ...`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// The derived `Ord` is lexicographic on the parts, which is a linear
/// extension of dominance on each weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validate and wrap parts. Zero parts and increases are rejected.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(i) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!(
                "part {} is zero; parts must be positive",
                i + 1
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition("parts must be weakly decreasing".to_string()));
        }
        Ok(Partition(parts))
    }

    /// Sort arbitrary positive parts into a partition, dropping zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(1^r)`, the semisimple module `S^{⊕r}`.
    pub fn column(r: usize) -> Self {
        Partition(vec![1; r])
    }

    /// `(n)`, the uniserial module of length `n`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// The i-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition(
            (1..=first)
                .map(|i| self.0.iter().filter(|&&p| p >= i).count())
                .collect(),
        )
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> usize {
        self.0.iter().enumerate().map(|(i, p)| i * p).sum()
    }

    /// `m_i(λ)` for `i = 1..=λ1`, index 0 unused.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    /// `z_λ = Π i^{m_i} m_i!`, the centralizer order of a permutation of cycle type λ.
    pub fn z(&self) -> u128 {
        self.multiplicities()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &m)| (i as u128).pow(m as u32) * (1..=m as u128).product::<u128>())
            .product()
    }

    /// Containment of Young diagrams, `μ ⊆ λ`.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Concatenate parts (the power-sum product index).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_unsorted(parts)
    }

    /// Reverse-lexicographic comparison: larger partitions sort first.
    pub fn cmp_revlex(&self, other: &Partition) -> Ordering {
        other.cmp(self)
    }

    /// Comma list of parts, as used in literals like `u[2,1]`.
    pub fn render_parts(&self) -> String {
        self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render_parts())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Construct a partition from a literal list, panicking on invalid input.
/// Meant for tests and constants.
#[macro_export]
macro_rules! part {
    () => { $crate::Partition::empty() };
    ($($p:expr),+ $(,)?) => {
        $crate::Partition::new(vec![$($p),+]).expect("invalid partition literal")
    };
}

/// `λ ⊴ μ` in dominance order; both must have the same weight.
pub fn dominance_leq(lambda: &Partition, mu: &Partition) -> Result<bool> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch {
            left: lambda.weight(),
            right: mu.weight(),
        });
    }
    let (mut a, mut b) = (0, 0);
    for i in 0..lambda.len().max(mu.len()) {
        a += lambda.part(i);
        b += mu.part(i);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `λ/μ` is a vertical strip of size `r`: `μ ⊆ λ`, at most one box
/// per row, and `|λ| - |μ| = r`.
pub fn vertical_strip(lambda: &Partition, mu: &Partition, r: usize) -> bool {
    if !lambda.contains(mu) || lambda.weight() != mu.weight() + r {
        return false;
    }
    (0..lambda.len()).all(|i| lambda.part(i) - mu.part(i) <= 1)
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight at most `n`, by weight then reverse lex.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// All `λ` with `λ/μ` a vertical `r`-strip.
pub fn add_vertical_strip(mu: &Partition, r: usize) -> Vec<Partition> {
    let rows = mu.len() + r;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(r);
    fn go(mu: &Partition, rows: usize, start: usize, left: usize, chosen: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if left == 0 {
            let mut parts: Vec<usize> = (0..rows).map(|i| mu.part(i)).collect();
            for &i in chosen.iter() {
                parts[i] += 1;
            }
            if parts.windows(2).all(|w| w[0] >= w[1]) {
                out.push(Partition::from_unsorted(parts));
            }
            return;
        }
        for i in start..rows {
            if rows - i < left {
                break;
            }
            chosen.push(i);
            go(mu, rows, i + 1, left - 1, chosen, out);
            chosen.pop();
        }
    }
    go(mu, rows, 0, r, &mut chosen, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_examples() {
        assert_eq!(part![2, 1].conjugate(), part![2, 1]);
        assert_eq!(part![].conjugate(), part![]);
        assert_eq!(part![3, 1].conjugate(), part![2, 1, 1]);
    }

    #[test]
    fn n_stat_examples() {
        assert_eq!(part![1, 1].n_stat(), 1);
        assert_eq!(part![2].n_stat(), 0);
        assert_eq!(part![1, 1, 1].n_stat(), 3);
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn order_predicates() {
        assert!(dominance_leq(&part![1, 1], &part![2]).unwrap());
        assert!(!dominance_leq(&part![2], &part![1, 1]).unwrap());
        assert!(dominance_leq(&part![2], &part![1]).is_err());
        assert!(vertical_strip(&part![2, 1], &part![1, 1], 1));
        assert!(!vertical_strip(&part![2], &part![], 2));
        assert_eq!(partitions_of(3), vec![part![3], part![2, 1], part![1, 1, 1]]);
        assert_eq!(partitions_of(0), vec![part![]]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn z_values() {
        assert_eq!(part![1, 1].z(), 2);
        assert_eq!(part![2, 1].z(), 2);
        assert_eq!(part![2, 2, 1].z(), 8);
    }

    #[test]
    fn vertical_strips_agree_with_predicate() {
        for mu in partitions_up_to(5) {
            for r in 0..4 {
                let got = add_vertical_strip(&mu, r);
                let want: Vec<_> = partitions_of(mu.weight() + r)
                    .into_iter()
                    .filter(|l| vertical_strip(l, &mu, r))
                    .collect();
                let mut g = got.clone();
                g.sort();
                let mut w = want.clone();
                w.sort();
                assert_eq!(g, w, "mu={mu} r={r}");
            }
        }
    }

    #[test]
    fn lex_refines_dominance() {
        for n in 1..=7 {
            for a in partitions_of(n) {
                for b in partitions_of(n) {
                    if a != b && dominance_leq(&a, &b).unwrap() {
                        assert!(a < b);
                    }
                }
            }
        }
    }
}

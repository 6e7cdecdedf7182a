//! Brute-force counts over `F_2` and `F_3`.
//!
//! Modules are explicit nilpotent matrices in Jordan form. Homomorphism
//! spaces are solved as nullspaces of the intertwiner equation, subspaces are
//! enumerated through their reduced row-echelon forms, and isomorphism types
//! are read back from rank sequences. Nothing here uses the closed formulas of
//! the other modules, so agreement with them is a genuine check.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Largest number of maps any enumeration may visit.
pub const MORPHISM_BUDGET: u64 = 1 << 20;

/// A dense matrix over `F_p`, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<u8>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Mat, p: u8) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u32;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = ((out.data[idx] as u32 + a * other.get(k, j) as u32) % p as u32) as u8;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Stack the rows of `other` below `self`.
    pub fn stack(&self, other: &Mat) -> Mat {
        assert!(self.rows == 0 || other.rows == 0 || self.cols == other.cols);
        let cols = self.cols.max(other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat {
            rows: self.rows + other.rows,
            cols,
            data,
        }
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self, p: u8) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = inverse(m.get(r, c), p);
            for j in 0..m.cols {
                m.set(r, j, mulp(m.get(r, j), inv, p));
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i != r && f != 0 {
                    for j in 0..m.cols {
                        let v = subp(m.get(i, j), mulp(f, m.get(r, j), p), p);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, p: u8) -> usize {
        self.rref(p).1.len()
    }

    /// A basis of `{x : self · x = 0}`, as rows.
    pub fn nullspace(&self, p: u8) -> Mat {
        let (r, pivots) = self.rref(p);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, subp(0, r.get(i, f), p));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

fn mulp(a: u8, b: u8, p: u8) -> u8 {
    ((a as u32 * b as u32) % p as u32) as u8
}

fn subp(a: u8, b: u8, p: u8) -> u8 {
    ((a as u32 + p as u32 - b as u32) % p as u32) as u8
}

fn inverse(a: u8, p: u8) -> u8 {
    (1..p).find(|&b| mulp(a, b, p) == 1).expect("nonzero element")
}

fn check_prime(p: u32) -> Result<u8> {
    match p {
        2 | 3 => Ok(p as u8),
        _ => Err(Error::UnsupportedPrime(p)),
    }
}

/// A nilpotent module given by its action on column vectors.
#[derive(Clone, Debug)]
pub struct NilModule {
    pub p: u8,
    pub dim: usize,
    pub action: Mat,
}

impl NilModule {
    /// `S^(λ)` as a direct sum of Jordan blocks; the action sends each basis
    /// vector of a block to the next one.
    pub fn jordan(lambda: &Partition, p: u32) -> Result<Self> {
        let p = check_prime(p)?;
        let dim = lambda.weight();
        let mut action = Mat::zeros(dim, dim);
        let mut start = 0;
        for &b in lambda.parts() {
            for i in 0..b - 1 {
                action.set(start + i + 1, start + i, 1);
            }
            start += b;
        }
        Ok(NilModule { p, dim, action })
    }

    /// `rank(N^k)` for `k = 0, 1, ...` until it reaches zero.
    pub fn rank_sequence(&self) -> Vec<usize> {
        powers_on(&self.action, &Mat::identity(self.dim), self.p)
    }

    /// The isomorphism type, from the rank sequence.
    pub fn recover_type(&self) -> Partition {
        type_from_ranks(&self.rank_sequence())
    }
}

/// Ranks of `N^k · span(basis columns)`, `k = 0, 1, ...`, ending at zero.
fn powers_on(action: &Mat, basis_cols: &Mat, p: u8) -> Vec<usize> {
    let mut cur = basis_cols.clone();
    let mut out = vec![cur.rank(p)];
    while *out.last().unwrap() > 0 {
        cur = action.mul(&cur, p);
        out.push(cur.rank(p));
    }
    out
}

/// The partition whose conjugate has parts `r_{k-1} - r_k`.
pub fn type_from_ranks(ranks: &[usize]) -> Partition {
    let conj: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    Partition::from_unsorted(conj).conjugate()
}

/// The type of the submodule spanned by the columns of `sub`.
fn sub_type(m: &NilModule, sub: &Mat) -> Partition {
    type_from_ranks(&powers_on(&m.action, sub, m.p))
}

/// The type of the quotient by the submodule spanned by the columns of `sub`.
fn quotient_type(m: &NilModule, sub: &Mat) -> Partition {
    let p = m.p;
    let base = sub.transpose();
    let d = base.rank(p);
    let mut ranks = Vec::new();
    let mut power = Mat::identity(m.dim);
    loop {
        let r = base.stack(&power.transpose()).rank(p) - d;
        ranks.push(r);
        if r == 0 {
            break;
        }
        power = m.action.mul(&power, p);
    }
    type_from_ranks(&ranks)
}

/// A basis of `Hom(S^(λ), S^(μ))`: matrices `X` (dim μ × dim λ) with
/// `X J_λ = J_μ X`.
pub fn hom_basis(lambda: &Partition, mu: &Partition, p: u32) -> Result<Vec<Mat>> {
    let a = NilModule::jordan(lambda, p)?;
    let b = NilModule::jordan(mu, p)?;
    let (n, m) = (a.dim, b.dim);
    if n > 8 || m > 8 {
        return Err(Error::Budget(format!(
            "hom spaces are solved for dimensions up to 8, got {n} and {m}"
        )));
    }
    let pp = a.p;
    // Unknown X[i][j] is variable i * n + j; equation (i, k) of X J - J' X.
    let mut sys = Mat::zeros(m * n, m * n);
    for i in 0..m {
        for k in 0..n {
            let eq = i * n + k;
            for j in 0..n {
                let c = a.action.get(j, k);
                if c != 0 {
                    let v = i * n + j;
                    sys.set(eq, v, (sys.get(eq, v) + c) % pp);
                }
            }
            for l in 0..m {
                let c = b.action.get(i, l);
                if c != 0 {
                    let v = l * n + k;
                    sys.set(eq, v, subp(sys.get(eq, v), c, pp));
                }
            }
        }
    }
    let null = sys.nullspace(pp);
    Ok((0..null.rows)
        .map(|r| {
            let mut x = Mat::zeros(m, n);
            x.data.copy_from_slice(null.row(r));
            x
        })
        .collect())
}

pub fn hom_dim_oracle(lambda: &Partition, mu: &Partition, p: u32) -> Result<usize> {
    Ok(hom_basis(lambda, mu, p)?.len())
}

/// Sum the maps `Σ d_i B_i` for all digit vectors in `range`, folding each
/// into an accumulator.
fn for_each_map<A: Send>(
    basis: &[Mat],
    rows: usize,
    cols: usize,
    p: u8,
    init: impl Fn() -> A + Sync + Send,
    visit: impl Fn(&mut A, &Mat) + Sync + Send,
    merge: impl Fn(A, A) -> A + Sync + Send,
) -> A {
    let k = basis.len() as u32;
    let total = (p as u64).pow(k);
    let chunk = 4096u64;
    let chunks = total.div_ceil(chunk);
    (0..chunks)
        .into_par_iter()
        .fold(&init, |mut acc, c| {
            let lo = c * chunk;
            let hi = (lo + chunk).min(total);
            let mut digits = vec![0u8; basis.len()];
            let mut x = Mat::zeros(rows, cols);
            let mut rest = lo;
            for (d, b) in digits.iter_mut().zip(basis) {
                *d = (rest % p as u64) as u8;
                rest /= p as u64;
                for _ in 0..*d {
                    add_into(&mut x, b, p);
                }
            }
            for _ in lo..hi {
                visit(&mut acc, &x);
                // Odometer step: each digit that moves adds its basis map
                // once, and a wrap from p-1 to 0 also adds it once (p·B = 0).
                for (d, b) in digits.iter_mut().zip(basis) {
                    add_into(&mut x, b, p);
                    *d += 1;
                    if *d < p {
                        break;
                    }
                    *d = 0;
                }
            }
            acc
        })
        .reduce(&init, merge)
}

fn add_into(x: &mut Mat, b: &Mat, p: u8) {
    for (o, &v) in x.data.iter_mut().zip(&b.data) {
        let s = *o + v;
        *o = if s >= p { s - p } else { s };
    }
}

fn budget_check(p: u8, dim: usize, budget: u64) -> Result<()> {
    let size = (p as u64).checked_pow(dim as u32);
    match size {
        Some(s) if s <= budget => Ok(()),
        _ => Err(Error::Budget(format!(
            "{p}^{dim} maps exceed the enumeration budget of {budget}"
        ))),
    }
}

/// `|Aut S^(λ)|` over `F_p`, by enumerating the endomorphism ring.
pub fn aut_count(lambda: &Partition, p: u32) -> Result<u64> {
    aut_count_with_budget(lambda, p, MORPHISM_BUDGET)
}

pub fn aut_count_with_budget(lambda: &Partition, p: u32, budget: u64) -> Result<u64> {
    let basis = hom_basis(lambda, lambda, p)?;
    let pp = check_prime(p)?;
    budget_check(pp, basis.len(), budget)?;
    let n = lambda.weight();
    Ok(for_each_map(
        &basis,
        n,
        n,
        pp,
        || 0u64,
        |acc, x| {
            if x.rank(pp) == n {
                *acc += 1;
            }
        },
        |a, b| a + b,
    ))
}

/// All `k`-dimensional subspaces of `F_p^n`, as reduced row-echelon bases.
pub fn subspaces(n: usize, k: usize, p: u32) -> Result<Vec<Mat>> {
    let pp = check_prime(p)?;
    if k > n {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(k);
    fn pick(n: usize, k: usize, start: usize, pivots: &mut Vec<usize>, p: u8, out: &mut Vec<Mat>) {
        if pivots.len() == k {
            // Free entries: row i, columns after its pivot that are not pivots.
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let piv = pivots.clone();
                    (pivots[i] + 1..n)
                        .filter(move |c| !piv.contains(c))
                        .map(move |c| (i, c))
                })
                .collect();
            let total = (p as u64).pow(free.len() as u32);
            for idx in 0..total {
                let mut m = Mat::zeros(k, n);
                for (i, &c) in pivots.iter().enumerate() {
                    m.set(i, c, 1);
                }
                let mut rest = idx;
                for &(i, c) in &free {
                    m.set(i, c, (rest % p as u64) as u8);
                    rest /= p as u64;
                }
                out.push(m);
            }
            return;
        }
        for c in start..n {
            pivots.push(c);
            pick(n, k, c + 1, pivots, p, out);
            pivots.pop();
        }
    }
    pick(n, k, 0, &mut pivots, pp, &mut out);
    Ok(out)
}

/// Histogram of invariant subspaces `X ⊆ S^(λ)` by `(type of S^(λ)/X, type of X)`.
pub fn submodule_histogram(lambda: &Partition, p: u32) -> Result<BTreeMap<(Partition, Partition), u64>> {
    let limit = match p {
        2 => 5,
        3 => 4,
        _ => return Err(Error::UnsupportedPrime(p)),
    };
    if lambda.weight() > limit {
        return Err(Error::Budget(format!(
            "submodule enumeration is capped at weight {limit} over F_{p}, got {}",
            lambda.weight()
        )));
    }
    let m = NilModule::jordan(lambda, p)?;
    let pp = m.p;
    let mut hist = BTreeMap::new();
    for k in 0..=m.dim {
        for s in subspaces(m.dim, k, p)? {
            let cols = s.transpose();
            let moved = m.action.mul(&cols, pp);
            if s.stack(&moved.transpose()).rank(pp) != k {
                continue;
            }
            let key = (quotient_type(&m, &cols), sub_type(&m, &cols));
            *hist.entry(key).or_insert(0) += 1;
        }
    }
    Ok(hist)
}

/// Submodules of `S^(λ)` isomorphic to `S^(ν)` with quotient `S^(μ)`.
pub fn count_submodules(lambda: &Partition, mu: &Partition, nu: &Partition, p: u32) -> Result<u64> {
    let hist = submodule_histogram(lambda, p)?;
    Ok(hist.get(&(mu.clone(), nu.clone())).copied().unwrap_or(0))
}

/// Maps `S^(λ) → S^(μ)` sorted by `(type of kernel, type of cokernel)`.
pub fn classify_morphisms(lambda: &Partition, mu: &Partition, p: u32) -> Result<BTreeMap<(Partition, Partition), u64>> {
    let basis = hom_basis(lambda, mu, p)?;
    let pp = check_prime(p)?;
    budget_check(pp, basis.len(), MORPHISM_BUDGET)?;
    let src = NilModule::jordan(lambda, p)?;
    let dst = NilModule::jordan(mu, p)?;
    Ok(for_each_map(
        &basis,
        dst.dim,
        src.dim,
        pp,
        BTreeMap::new,
        |acc, x| {
            let ker = x.nullspace(pp).transpose();
            let key = (sub_type(&src, &ker), quotient_type(&dst, x));
            *acc.entry(key).or_insert(0) += 1;
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    ))
}

fn random_mat(rows: usize, cols: usize, p: u8, rng: &mut ChaCha8Rng) -> Mat {
    let mut m = Mat::zeros(rows, cols);
    for x in m.data.iter_mut() {
        *x = rng.gen_range(0..p);
    }
    m
}

/// Dimension of the span of the columns of `a` and `b` together.
fn span_dim(a: &Mat, b: &Mat, p: u8) -> usize {
    a.transpose().stack(&b.transpose()).rank(p)
}

/// Outcome of a run of [`rank_identity_check`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RankIdentityReport {
    /// Samples that passed the filter `ker g ⊆ im f`.
    pub accepted: usize,
    pub rejected: usize,
    /// Accepted samples on which `rank f + rank g = dim V₂ + rank(g f)` failed.
    pub rank_failures: usize,
    /// Samples (filtered or not) on which the exact-square dimension count
    /// `dim ker(g f) = dim ker f + dim(ker g ∩ im f)` failed.
    pub square_failures: usize,
}

impl RankIdentityReport {
    pub fn passed(&self) -> bool {
        self.rank_failures == 0 && self.square_failures == 0
    }
}

/// Draw random `f : V₁ → V₂`, `g : V₂ → V₃` over `F_p` until `trials` pairs
/// satisfy `ker g ⊆ im f`, and test the rank identity on each.
pub fn rank_identity_check(
    p: u32,
    dims: (usize, usize, usize),
    trials: usize,
    seed: u64,
) -> Result<RankIdentityReport> {
    let pp = check_prime(p)?;
    let (d1, d2, d3) = dims;
    if d1 > 6 || d2 > 6 || d3 > 6 {
        return Err(Error::InvalidArgument("sample dimensions are at most 6".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RankIdentityReport::default();
    let max_draws = trials.saturating_mul(1000).max(1000);
    let mut draws = 0;
    while report.accepted < trials {
        draws += 1;
        if draws > max_draws {
            return Err(Error::Budget(format!(
                "only {} of {trials} samples passed the filter in {max_draws} draws",
                report.accepted
            )));
        }
        let f = random_mat(d2, d1, pp, &mut rng);
        let g = random_mat(d3, d2, pp, &mut rng);
        let gf = g.mul(&f, pp);
        let rf = f.rank(pp);
        let rg = g.rank(pp);
        let rgf = gf.rank(pp);
        let ker_g = g.nullspace(pp).transpose();
        let inter = ker_g.cols + rf - span_dim(&ker_g, &f, pp);
        if d1 - rgf != (d1 - rf) + inter {
            report.square_failures += 1;
        }
        // Filter vector by vector: each kernel basis vector must already lie
        // in the image.
        let contained = (0..ker_g.cols).all(|j| {
            let mut v = Mat::zeros(d2, 1);
            for i in 0..d2 {
                v.set(i, 0, ker_g.get(i, j));
            }
            span_dim(&f, &v, pp) == rf
        });
        if !contained {
            report.rejected += 1;
            continue;
        }
        report.accepted += 1;
        if rf + rg != d2 + rgf {
            report.rank_failures += 1;
        }
    }
    Ok(report)
}

//! Symmetric functions over `Q(v)` and the maps from the Hall algebras.
//!
//! Every basis is expanded in monomials `m_λ`; identities of degree `n` are
//! decided in `n` variables, where the monomial expansion is faithful. The
//! ring carries a degree bound (default 8) beyond which operations refuse to
//! build tables.
//!
//! Hall–Littlewood polynomials `P_λ(x; t)` come from Gram–Schmidt on the
//! monomial basis for `⟨p_λ, p_μ⟩_t = δ_{λμ} z_λ Π (1 - t^{λ_i})^{-1}`, run
//! along a linear extension of dominance. Their coefficients are kept as
//! polynomials in `t` and specialized to `t = q^{-1}` for the `P` basis.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock};

use num_bigint::BigInt;

use crate::derived::{self, DerivedElem};
use crate::error::{Error, Result};
use crate::hall::{Extension, HallElem};
use crate::lincomb::LinComb;
use crate::memo::Memo;
use crate::partition::{partitions_of, Partition};
use crate::poly::Poly;
use crate::qcomb::{aut_order, quantum_integer};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymBasis {
    Monomial,
    Elementary,
    Power,
    /// `P_λ(x; q^{-1})`.
    HallLittlewood,
}

impl SymBasis {
    pub const ALL: [SymBasis; 4] = [
        SymBasis::Monomial,
        SymBasis::Elementary,
        SymBasis::Power,
        SymBasis::HallLittlewood,
    ];

    /// The literal prefix, `m`, `e`, `p` or `P`.
    pub fn symbol(self) -> &'static str {
        match self {
            SymBasis::Monomial => "m",
            SymBasis::Elementary => "e",
            SymBasis::Power => "p",
            SymBasis::HallLittlewood => "P",
        }
    }

    pub fn from_symbol(s: &str) -> Option<SymBasis> {
        SymBasis::ALL.into_iter().find(|b| b.symbol() == s)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFunc {
    pub basis: SymBasis,
    pub terms: LinComb<Partition>,
}

impl SymFunc {
    pub fn new(basis: SymBasis, terms: LinComb<Partition>) -> Self {
        SymFunc { basis, terms }
    }

    pub fn zero(basis: SymBasis) -> Self {
        SymFunc::new(basis, LinComb::zero())
    }

    /// The constant 1, which is the empty-partition element of every basis.
    pub fn one(basis: SymBasis) -> Self {
        SymFunc::elem(basis, Partition::empty())
    }

    pub fn elem(basis: SymBasis, lambda: Partition) -> Self {
        SymFunc::new(basis, LinComb::basis(lambda))
    }

    /// Largest weight of a term; zero for the zero function.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Partition::weight).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        SymFunc::new(self.basis, self.terms.scale(c))
    }
}

/// `Σ c · f_λ ⊗ f_μ`, both legs in the same basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorSymFunc {
    pub basis: SymBasis,
    pub terms: LinComb<(Partition, Partition)>,
}

impl TensorSymFunc {
    pub fn new(basis: SymBasis, terms: LinComb<(Partition, Partition)>) -> Self {
        TensorSymFunc { basis, terms }
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|(a, b)| a.weight().max(b.weight()))
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TensorSymFunc::new(self.basis, self.terms.scale(c))
    }
}

/// Number of matrices with the given row and column sums, entries in `0..=1`
/// when `binary`, otherwise with each row's sum placed in a single column.
fn count_fillings(rows: &[usize], cols: &[usize], binary: bool) -> i64 {
    fn go(rows: &[usize], cols: &mut Vec<usize>, binary: bool, memo: &mut HashMap<(usize, Vec<usize>), i64>) -> i64 {
        let Some((&r, rest)) = rows.split_first() else {
            return i64::from(cols.iter().all(|&c| c == 0));
        };
        let key = (rows.len(), cols.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut total = 0;
        if binary {
            fn choose(
                start: usize,
                left: usize,
                rest: &[usize],
                cols: &mut Vec<usize>,
                memo: &mut HashMap<(usize, Vec<usize>), i64>,
                total: &mut i64,
            ) {
                if left == 0 {
                    *total += go(rest, cols, true, memo);
                    return;
                }
                for j in start..cols.len() {
                    if cols[j] == 0 {
                        continue;
                    }
                    cols[j] -= 1;
                    choose(j + 1, left - 1, rest, cols, memo, total);
                    cols[j] += 1;
                }
            }
            choose(0, r, rest, cols, memo, &mut total);
        } else {
            for j in 0..cols.len() {
                if cols[j] >= r {
                    cols[j] -= r;
                    total += go(rest, cols, false, memo);
                    cols[j] += r;
                }
            }
        }
        memo.insert(key, total);
        total
    }
    let mut c = cols.to_vec();
    go(rows, &mut c, binary, &mut HashMap::new())
}

/// `⟨p_λ, p_λ⟩_t` with `t` carried by the variable `q`.
fn power_weight_t(lambda: &Partition) -> Scalar {
    let t = Scalar::q();
    let den: Scalar = lambda
        .parts()
        .iter()
        .map(|&k| &Scalar::one() - &t.pow(k as i64).unwrap())
        .product();
    &Scalar::from_bigint(BigInt::from(lambda.z())) / &den
}

type HlTable = Memo<(usize, Extension), HashMap<Partition, LinComb<Partition>>>;

static HL_T: LazyLock<HlTable> = LazyLock::new(Memo::new);

/// `P_λ(x; t)` for all `|λ| = n`, in monomials, with `t` written as `q`.
/// Gram–Schmidt runs along `ext`.
fn hl_table_t(n: usize, ext: Extension) -> Arc<HashMap<Partition, LinComb<Partition>>> {
    HL_T.get_or_insert_with(&(n, ext), || {
        let order = ext.ascending(n);
        let in_power: Vec<Arc<LinComb<Partition>>> = order.iter().map(|l| from_monomial(SymBasis::Power, l)).collect();
        let weights: HashMap<Partition, Scalar> = partitions_of(n)
            .into_iter()
            .map(|l| (l.clone(), power_weight_t(&l)))
            .collect();
        let ip = |a: &LinComb<Partition>, b: &LinComb<Partition>| -> Scalar {
            a.iter()
                .filter_map(|(k, x)| {
                    let y = b.coeff(k);
                    (!y.is_zero()).then(|| &(x * &y) * &weights[k])
                })
                .sum()
        };
        // (m-expansion, p-expansion, norm) for each finished P.
        let mut done: Vec<(LinComb<Partition>, LinComb<Partition>, Scalar)> = Vec::new();
        let mut out = HashMap::new();
        for (lambda, lp) in order.iter().zip(&in_power) {
            let mut m = LinComb::basis(lambda.clone());
            let mut p = (**lp).clone();
            for (pm, pp, norm) in &done {
                let c = &ip(lp, pp) / norm;
                if c.is_zero() {
                    continue;
                }
                let neg = -c;
                m.add_scaled(pm, &neg);
                p.add_scaled(pp, &neg);
            }
            let norm = ip(&p, &p);
            out.insert(lambda.clone(), m.clone());
            done.push((m, p, norm));
        }
        out
    })
}

/// The coefficients of `P_λ(x; t)` in monomials as integer polynomials in `t`,
/// using the given linear extension of dominance.
pub fn hl_coefficients_t(lambda: &Partition, ext: Extension) -> Vec<(Partition, Poly)> {
    let table = hl_table_t(lambda.weight(), ext);
    table[lambda].iter().map(|(mu, c)| (mu.clone(), t_poly(c))).collect()
}

/// Read a polynomial in `q` as a polynomial in `t`.
fn t_poly(c: &Scalar) -> Poly {
    assert!(c.is_polynomial() && c.is_even(), "P coefficients are polynomials in t");
    Poly::new(c.numer().coeffs().iter().step_by(2).cloned().collect())
}

static TO_M: LazyLock<Memo<(SymBasis, Partition), LinComb<Partition>>> = LazyLock::new(Memo::new);

/// A basis element expanded in monomials.
fn to_monomial(basis: SymBasis, lambda: &Partition) -> Arc<LinComb<Partition>> {
    TO_M.get_or_insert_with(&(basis, lambda.clone()), || {
        let n = lambda.weight();
        match basis {
            SymBasis::Monomial => LinComb::basis(lambda.clone()),
            SymBasis::Elementary | SymBasis::Power => partitions_of(n)
                .into_iter()
                .map(|mu| {
                    let c = count_fillings(lambda.parts(), mu.parts(), basis == SymBasis::Elementary);
                    (mu, Scalar::from_int(c))
                })
                .collect(),
            SymBasis::HallLittlewood => hl_table_t(n, Extension::Lex)[lambda].map_coeffs(|c| c.substitute_power(-1)),
        }
    })
}

static FROM_M: LazyLock<Memo<(SymBasis, Partition), LinComb<Partition>>> = LazyLock::new(Memo::new);

/// `m_λ` expanded in `basis`, by peeling off leading terms.
fn from_monomial(basis: SymBasis, lambda: &Partition) -> Arc<LinComb<Partition>> {
    FROM_M.get_or_insert_with(&(basis, lambda.clone()), || {
        if basis == SymBasis::Monomial {
            return LinComb::basis(lambda.clone());
        }
        let mut rest = LinComb::basis(lambda.clone());
        let mut out = LinComb::zero();
        loop {
            // e_{μ'} and P_μ lead with m_μ over lex-smaller terms; p_μ leads
            // with m_μ over lex-larger ones.
            let key = match basis {
                SymBasis::Power => rest.keys().next().cloned(),
                _ => rest.keys().next_back().cloned(),
            };
            let Some(key) = key else { break };
            let index = match basis {
                SymBasis::Elementary => key.conjugate(),
                _ => key.clone(),
            };
            let image = to_monomial(basis, &index);
            let c = &rest.coeff(&key) / &image.coeff(&key);
            out.add_term(index, &c);
            rest.add_scaled(&image, &-c);
        }
        out
    })
}

static CONVERT: LazyLock<Memo<(SymBasis, SymBasis, Partition), LinComb<Partition>>> = LazyLock::new(Memo::new);

fn convert_basis_elem(from: SymBasis, to: SymBasis, lambda: &Partition) -> Arc<LinComb<Partition>> {
    CONVERT.get_or_insert_with(&(from, to, lambda.clone()), || {
        to_monomial(from, lambda).flat_map(|mu| (*from_monomial(to, mu)).clone())
    })
}

/// `{p_λ, p_λ} = z_λ Π (q^{λ_i} - 1)^{-1}`.
pub fn power_pairing_weight(lambda: &Partition) -> Scalar {
    let den: Scalar = lambda
        .parts()
        .iter()
        .map(|&k| &Scalar::q_pow(k as i64) - &Scalar::one())
        .product();
    &Scalar::from_bigint(BigInt::from(lambda.z())) / &den
}

/// `q^{-n(λ)} |Aut S^(λ)|`, the image scale of `u_λ` on `P_λ(x; q^{-1})`.
pub fn psi_scale(lambda: &Partition) -> Scalar {
    &Scalar::q_pow(-(lambda.n_stat() as i64)) * &aut_order(lambda)
}

/// Symmetric functions up to a fixed degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymRing {
    bound: usize,
}

impl Default for SymRing {
    fn default() -> Self {
        SymRing { bound: 8 }
    }
}

impl SymRing {
    pub fn new(bound: usize) -> Self {
        SymRing { bound }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn check(&self, degree: usize) -> Result<()> {
        if degree > self.bound {
            Err(Error::DegreeBound {
                degree,
                bound: self.bound,
            })
        } else {
            Ok(())
        }
    }

    pub fn convert(&self, f: &SymFunc, target: SymBasis) -> Result<SymFunc> {
        self.check(f.degree())?;
        if f.basis == target {
            return Ok(f.clone());
        }
        let terms = f.terms.flat_map(|l| (*convert_basis_elem(f.basis, target, l)).clone());
        Ok(SymFunc::new(target, terms))
    }

    /// Sum in the basis of `f`.
    pub fn add(&self, f: &SymFunc, g: &SymFunc) -> Result<SymFunc> {
        let g = self.convert(g, f.basis)?;
        Ok(SymFunc::new(f.basis, f.terms.add(&g.terms)))
    }

    /// Product, returned in the basis of `f`.
    pub fn multiply(&self, f: &SymFunc, g: &SymFunc) -> Result<SymFunc> {
        self.check(f.degree() + g.degree())?;
        let fp = self.convert(f, SymBasis::Power)?;
        let gp = self.convert(g, SymBasis::Power)?;
        let mut prod = LinComb::zero();
        for (a, s) in fp.terms.iter() {
            for (b, t) in gp.terms.iter() {
                prod.add_term(a.union(b), &(s * t));
            }
        }
        self.convert(&SymFunc::new(SymBasis::Power, prod), f.basis)
    }

    /// `P_λ(x; q^{-1})` in monomials.
    pub fn hl_p(&self, lambda: &Partition) -> Result<SymFunc> {
        self.convert(
            &SymFunc::elem(SymBasis::HallLittlewood, lambda.clone()),
            SymBasis::Monomial,
        )
    }

    /// The pairing with `{p_r, p_s} = δ_{rs} r / (q^r - 1)`, extended
    /// multiplicatively.
    pub fn paper_pairing(&self, f: &SymFunc, g: &SymFunc) -> Result<Scalar> {
        let fp = self.convert(f, SymBasis::Power)?;
        let gp = self.convert(g, SymBasis::Power)?;
        Ok(fp
            .terms
            .iter()
            .filter_map(|(l, a)| {
                let b = gp.terms.coeff(l);
                (!b.is_zero()).then(|| &(a * &b) * &power_pairing_weight(l))
            })
            .sum())
    }

    /// `u_λ ↦ q^{-n(λ)} a_λ P_λ(x; q^{-1})`, in the `P` basis.
    pub fn psi(&self, x: &HallElem) -> Result<SymFunc> {
        let degree = x.keys().map(Partition::weight).max().unwrap_or(0);
        self.check(degree)?;
        Ok(SymFunc::new(
            SymBasis::HallLittlewood,
            x.iter().map(|(l, c)| (l.clone(), c * &psi_scale(l))).collect(),
        ))
    }

    pub fn psi_inv(&self, f: &SymFunc) -> Result<HallElem> {
        let f = self.convert(f, SymBasis::HallLittlewood)?;
        Ok(f.terms.iter().map(|(l, c)| (l.clone(), c / &psi_scale(l))).collect())
    }

    /// Straighten into `u_A * u_{B[1]}` and apply `ψ` on each leg, returning
    /// the tensor in `basis`.
    pub fn theta(&self, x: &DerivedElem, basis: SymBasis) -> Result<TensorSymFunc> {
        let normal = derived::straighten(x);
        let degree = normal
            .terms
            .keys()
            .map(|k| k.h0.weight().max(k.h1.weight()))
            .max()
            .unwrap_or(0);
        self.check(degree)?;
        let mut out = LinComb::zero();
        for (k, c) in normal.terms.iter() {
            let scale = &(c * &psi_scale(&k.h0)) * &psi_scale(&k.h1);
            let left = self.convert(&SymFunc::elem(SymBasis::HallLittlewood, k.h0.clone()), basis)?;
            let right = self.convert(&SymFunc::elem(SymBasis::HallLittlewood, k.h1.clone()), basis)?;
            for (a, s) in left.terms.iter() {
                for (b, t) in right.terms.iter() {
                    out.add_term((a.clone(), b.clone()), &(&scale * &(s * t)));
                }
            }
        }
        Ok(TensorSymFunc::new(basis, out))
    }

    pub fn tensor_convert(&self, x: &TensorSymFunc, target: SymBasis) -> Result<TensorSymFunc> {
        self.check(x.degree())?;
        let mut out = LinComb::zero();
        for ((a, b), c) in x.terms.iter() {
            let left = convert_basis_elem(x.basis, target, a);
            let right = convert_basis_elem(x.basis, target, b);
            for (l, s) in left.iter() {
                for (r, t) in right.iter() {
                    out.add_term((l.clone(), r.clone()), &(c * &(s * t)));
                }
            }
        }
        Ok(TensorSymFunc::new(target, out))
    }

    /// Factorwise product, returned in the basis of `x`.
    pub fn tensor_multiply(&self, x: &TensorSymFunc, y: &TensorSymFunc) -> Result<TensorSymFunc> {
        self.check(x.degree() + y.degree())?;
        let xp = self.tensor_convert(x, SymBasis::Power)?;
        let yp = self.tensor_convert(y, SymBasis::Power)?;
        let mut out = LinComb::zero();
        for ((a, b), s) in xp.terms.iter() {
            for ((c, d), t) in yp.terms.iter() {
                out.add_term((a.union(c), b.union(d)), &(s * t));
            }
        }
        self.tensor_convert(&TensorSymFunc::new(SymBasis::Power, out), x.basis)
    }

    /// The torsion generator at a point of residue degree `d`:
    /// `[r]_v (d/r) ψ^{-1}(p_{r/d})` over the local algebra with `q ↦ q^d`
    /// when `d | r`, and zero otherwise.
    pub fn torsion_t(&self, r: usize, d: usize) -> Result<HallElem> {
        if r == 0 || d == 0 {
            return Err(Error::InvalidArgument("torsion generators need r, d ≥ 1".into()));
        }
        if !r.is_multiple_of(d) {
            return Ok(HallElem::zero());
        }
        let k = r / d;
        let local = self.psi_inv(&SymFunc::elem(SymBasis::Power, Partition::row(k)))?;
        let c = &quantum_integer(r as i64) * &Scalar::from_ratio(d as i64, r as i64);
        Ok(local.map_coeffs(|x| &x.substitute_power(d as i64) * &c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hall;
    use crate::part;

    fn q() -> Scalar {
        Scalar::q()
    }

    fn sf(basis: SymBasis, terms: Vec<(Partition, Scalar)>) -> SymFunc {
        SymFunc::new(basis, terms.into_iter().collect())
    }

    #[test]
    fn conversion_examples() {
        let r = SymRing::default();
        let m = SymBasis::Monomial;
        let conv = |b, l: Partition| r.convert(&SymFunc::elem(b, l), m).unwrap();
        assert_eq!(conv(SymBasis::Power, part![1]), SymFunc::elem(m, part![1]));
        assert_eq!(conv(SymBasis::Power, part![2]), SymFunc::elem(m, part![2]));
        assert_eq!(conv(SymBasis::Elementary, part![2]), SymFunc::elem(m, part![1, 1]));
        let e1 = SymFunc::elem(SymBasis::Elementary, part![1]);
        let sq = r.multiply(&e1, &e1).unwrap();
        let want = sf(m, vec![(part![2], Scalar::one()), (part![1, 1], Scalar::from_int(2))]);
        assert_eq!(r.convert(&sq, m).unwrap(), want);
        let p1 = SymFunc::elem(SymBasis::Power, part![1]);
        assert_eq!(
            r.multiply(&p1, &p1).unwrap(),
            SymFunc::elem(SymBasis::Power, part![1, 1])
        );
        assert_eq!(r.multiply(&p1, &SymFunc::one(SymBasis::Monomial)).unwrap(), p1);
    }

    #[test]
    fn round_trips_to_degree_five() {
        let r = SymRing::default();
        for n in 0..=5 {
            for l in partitions_of(n) {
                for a in SymBasis::ALL {
                    for b in SymBasis::ALL {
                        let f = SymFunc::elem(a, l.clone());
                        let back = r.convert(&r.convert(&f, b).unwrap(), a).unwrap();
                        assert_eq!(back, f, "{l} {a:?} {b:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn hl_small_cases() {
        let two = hl_coefficients_t(&part![2], Extension::Lex);
        assert_eq!(
            two,
            vec![(part![1, 1], Poly::from_i64s(&[1, -1])), (part![2], Poly::one())]
        );
        let r = SymRing::default();
        for k in 1..=4 {
            let p = r.hl_p(&Partition::column(k)).unwrap();
            let e = r.convert(
                &SymFunc::elem(SymBasis::Elementary, Partition::row(k)),
                SymBasis::Monomial,
            );
            assert_eq!(p, e.unwrap());
        }
    }

    #[test]
    fn pairing_examples() {
        let r = SymRing::default();
        let p1 = SymFunc::elem(SymBasis::Power, part![1]);
        let p2 = SymFunc::elem(SymBasis::Power, part![2]);
        let e1 = SymFunc::elem(SymBasis::Elementary, part![1]);
        let want = (&q() - &Scalar::one()).inv().unwrap();
        assert_eq!(r.paper_pairing(&p1, &p1).unwrap(), want);
        assert!(r.paper_pairing(&p2, &p1).unwrap().is_zero());
        assert_eq!(r.paper_pairing(&e1, &e1).unwrap(), want);
    }

    #[test]
    fn psi_examples() {
        let r = SymRing::default();
        let e = SymBasis::Elementary;
        let qm1 = &q() - &Scalar::one();
        let img = r.convert(&r.psi(&hall::basis(part![1])).unwrap(), e).unwrap();
        assert_eq!(img, sf(e, vec![(part![1], qm1.clone())]));
        let img = r.convert(&r.psi(&hall::basis(part![1, 1])).unwrap(), e).unwrap();
        let c = &aut_order(&part![1, 1]) / &q();
        assert_eq!(img, sf(e, vec![(part![2], c)]));
        let u1 = hall::basis(part![1]);
        let img = r.psi(&hall::product(&u1, &u1)).unwrap();
        let img = r.convert(&img, SymBasis::Power).unwrap();
        assert_eq!(img, sf(SymBasis::Power, vec![(part![1, 1], &qm1 * &qm1)]));
        let back = r.psi_inv(&img).unwrap();
        assert_eq!(back, hall::product(&u1, &u1));
    }

    #[test]
    fn theta_examples() {
        use crate::derived::RootObject;
        let r = SymRing::default();
        let e = SymBasis::Elementary;
        let qm1 = &q() - &Scalar::one();
        let t = r.theta(&DerivedElem::natural(RootObject::stalk0(part![1])), e).unwrap();
        assert_eq!(t.terms, LinComb::term((part![1], part![]), qm1.clone()));
        let t = r.theta(&DerivedElem::natural(RootObject::stalk1(part![1])), e).unwrap();
        assert_eq!(t.terms, LinComb::term((part![], part![1]), qm1.clone()));
        let t = r
            .theta(&DerivedElem::natural(RootObject::new(part![1], part![1])), e)
            .unwrap();
        let want: LinComb<_> = vec![((part![1], part![1]), &qm1 * &qm1), ((part![], part![]), -&qm1)]
            .into_iter()
            .collect();
        assert_eq!(t.terms, want);
    }

    #[test]
    fn torsion_examples() {
        let r = SymRing::default();
        let t11 = r.torsion_t(1, 1).unwrap();
        let want = hall::HallElem::term(part![1], (&q() - &Scalar::one()).inv().unwrap());
        assert_eq!(t11, want);
        assert!(r.torsion_t(1, 2).unwrap().is_zero());
        assert!(!r.torsion_t(4, 2).unwrap().is_zero());
    }

    #[test]
    fn degree_bound_enforced() {
        let r = SymRing::new(3);
        let f = SymFunc::elem(SymBasis::Power, part![2, 2]);
        assert!(matches!(
            r.convert(&f, SymBasis::Monomial),
            Err(Error::DegreeBound { degree: 4, bound: 3 })
        ));
    }
}

//! The twisted Hall algebra of nilpotent Jordan-quiver representations.
//!
//! Basis elements `u_λ` are isoclasses `[S^(λ)]`. Two normalizations occur:
//!
//! * the *classical* product `u_μ ∘ u_ν = Σ G^λ_{μν} u_λ`, whose structure
//!   constants are the Hall numbers (submodules of type `ν` with quotient of
//!   type `μ`);
//! * the *twisted* product `u_M * u_N = ⟨M,N⟩^{1/2} Σ G^L_{MN} a_M a_N / a_L u_L`,
//!   which is the multiplication `|Ext¹(M,N)_L| / |Hom(M,N)|` rewritten with
//!   the Riedtmann–Peng formula.
//!
//! Hall numbers are computed symbolically in `q`. The classical product with
//! a column `u_{(1^r)}` is given by the vertical-strip Pieri rule; products
//! `E_ν = u_{(1^{ν'_1})} ∘ u_{(1^{ν'_2})} ∘ ⋯` are unitriangular in dominance
//! order, so every `u_ν` is a finite combination of `E`'s and an arbitrary
//! product reduces to iterated Pieri steps.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock};

use crate::euler::{EulerForm, EULER};
use crate::lincomb::LinComb;
use crate::memo::Memo;
use crate::partition::{add_vertical_strip, partitions_of, Partition};
use crate::poly::Poly;
use crate::qcomb::{aut_order, gaussian_poly};
use crate::Scalar;

/// An element of the twisted Hall algebra.
pub type HallElem = LinComb<Partition>;

/// An element of the tensor square, `Σ c · u_B ⊗ u_C`.
pub type TensorHallElem = LinComb<(Partition, Partition)>;

/// A linear extension of dominance order on partitions of a fixed weight,
/// used to order the triangular solve for the `E`-basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Extension {
    /// Lexicographic order (partitions listed in reverse lex, solved from the
    /// bottom up).
    #[default]
    Lex,
    /// Decreasing `n(λ)`, ties broken by reverse lex.
    NStat,
}

impl Extension {
    /// Partitions of `n`, smallest in the extension first.
    pub fn ascending(self, n: usize) -> Vec<Partition> {
        let mut ps = partitions_of(n);
        match self {
            Extension::Lex => ps.sort(),
            Extension::NStat => ps.sort_by(|a, b| b.n_stat().cmp(&a.n_stat()).then_with(|| b.cmp(a))),
        }
        ps
    }
}

/// `u_λ`.
pub fn basis(lambda: Partition) -> HallElem {
    HallElem::basis(lambda)
}

/// The unit `u_()`.
pub fn unit() -> HallElem {
    basis(Partition::empty())
}

/// The Pieri coefficient `G^λ_{μ,(1^r)}`: the number of submodules
/// `X ⊆ S^(λ)` with `X ≅ S^{⊕r}` and `S^(λ)/X ≅ S^(μ)`.
///
/// For a vertical strip `λ/μ` it equals
/// `q^{n(λ)-n(μ)-n(1^r)} Π_i [λ'_i - λ'_{i+1}, λ'_i - μ'_i]_{q^{-1}}`;
/// otherwise it is zero.
pub fn pieri_coeff(lambda: &Partition, mu: &Partition, r: usize) -> Scalar {
    if !crate::partition::vertical_strip(lambda, mu, r) {
        return Scalar::zero();
    }
    let lc = lambda.conjugate();
    let mc = mu.conjugate();
    let mut poly = Poly::one();
    // exponent of q, accumulated as a signed integer
    let mut e = lambda.n_stat() as i64 - mu.n_stat() as i64 - (r * r.saturating_sub(1) / 2) as i64;
    for i in 0..lc.len() {
        let n = lc.part(i) - lc.part(i + 1);
        let Some(k) = lc.part(i).checked_sub(mc.part(i)) else {
            return Scalar::zero();
        };
        if k > n {
            return Scalar::zero();
        }
        // [n,k]_{1/q} = q^{-k(n-k)} [n,k]_q
        e -= (k * (n - k)) as i64;
        poly = &poly * &gaussian_poly(n, k);
    }
    assert!(e >= 0, "Pieri coefficient is a polynomial in q");
    Scalar::from_poly(poly.shift(e as usize).spread(2))
}

/// `(λ, r)` to the `μ` with nonzero Pieri coefficient.
type PieriTable = Memo<(Partition, usize), Vec<(Partition, Scalar)>>;

static PIERI: LazyLock<PieriTable> = LazyLock::new(Memo::new);

fn pieri_terms(mu: &Partition, r: usize) -> Arc<Vec<(Partition, Scalar)>> {
    PIERI.get_or_insert_with(&(mu.clone(), r), || {
        add_vertical_strip(mu, r)
            .into_iter()
            .map(|l| {
                let c = pieri_coeff(&l, mu, r);
                (l, c)
            })
            .filter(|(_, c)| !c.is_zero())
            .collect()
    })
}

/// `x ∘ u_{(1^r)}` in the classical normalization.
fn times_column(x: &HallElem, r: usize) -> HallElem {
    if r == 0 {
        return x.clone();
    }
    let mut out = HallElem::zero();
    for (mu, c) in x.iter() {
        for (lambda, g) in pieri_terms(mu, r).iter() {
            out.add_term(lambda.clone(), &(c * g));
        }
    }
    out
}

/// `E_ν = u_{(1^{ν'_1})} ∘ u_{(1^{ν'_2})} ∘ ⋯` in the classical normalization.
pub fn elementary_product(nu: &Partition) -> HallElem {
    nu.conjugate()
        .parts()
        .iter()
        .fold(unit(), |acc, &r| times_column(&acc, r))
}

/// `u_ν` written in the `E`-basis for every `ν ⊢ n`, solved in the order of
/// `ext`. Keys of the inner combinations label `E_ρ`.
///
/// Panics if some `E_ν` is not unitriangular with respect to `ext`.
pub fn e_basis_inverse(n: usize, ext: Extension) -> HashMap<Partition, LinComb<Partition>> {
    let order = ext.ascending(n);
    let position: HashMap<&Partition, usize> = order.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut solved: HashMap<Partition, LinComb<Partition>> = HashMap::new();
    for nu in &order {
        let e = elementary_product(nu);
        assert!(e.coeff(nu).is_one(), "E_{nu} has leading coefficient {}", e.coeff(nu));
        let mut u = LinComb::basis(nu.clone());
        for (lambda, c) in e.iter() {
            if lambda == nu {
                continue;
            }
            assert!(
                position[lambda] < position[nu],
                "E_{nu} has a term {lambda} above it in the extension"
            );
            u.add_scaled(&solved[lambda], &-c);
        }
        solved.insert(nu.clone(), u);
    }
    solved
}

static E_INVERSE: LazyLock<Memo<usize, HashMap<Partition, LinComb<Partition>>>> = LazyLock::new(Memo::new);

/// The classical product via a given linear extension, uncached.
pub fn classical_product_with(mu: &Partition, nu: &Partition, ext: Extension) -> HallElem {
    let inv = e_basis_inverse(nu.weight(), ext);
    classical_from_inverse(mu, &inv[nu])
}

fn classical_from_inverse(mu: &Partition, nu_in_e: &LinComb<Partition>) -> HallElem {
    let mut out = HallElem::zero();
    for (rho, d) in nu_in_e.iter() {
        let x = rho
            .conjugate()
            .parts()
            .iter()
            .fold(basis(mu.clone()), |acc, &r| times_column(&acc, r));
        out.add_scaled(&x, d);
    }
    out
}

static CLASSICAL: LazyLock<Memo<(Partition, Partition), HallElem>> = LazyLock::new(Memo::new);

/// `u_μ ∘ u_ν = Σ_λ G^λ_{μν} u_λ`.
pub fn classical_product(mu: &Partition, nu: &Partition) -> Arc<HallElem> {
    CLASSICAL.get_or_insert_with(&(mu.clone(), nu.clone()), || {
        if nu.is_empty() {
            return basis(mu.clone());
        }
        if mu.is_empty() {
            return basis(nu.clone());
        }
        let inv = E_INVERSE.get_or_insert_with(&nu.weight(), || e_basis_inverse(nu.weight(), Extension::default()));
        classical_from_inverse(mu, &inv[nu])
    })
}

/// The Hall polynomial `G^λ_{μν}`: submodules of `S^(λ)` isomorphic to
/// `S^(ν)` with quotient isomorphic to `S^(μ)`.
pub fn hall_number(lambda: &Partition, mu: &Partition, nu: &Partition) -> Scalar {
    if lambda.weight() != mu.weight() + nu.weight() {
        return Scalar::zero();
    }
    classical_product(mu, nu).coeff(lambda)
}

static TWISTED: LazyLock<Memo<(Partition, Partition), HallElem>> = LazyLock::new(Memo::new);

/// `u_M * u_N` for basis elements.
pub fn basis_product(m: &Partition, n: &Partition) -> Arc<HallElem> {
    TWISTED.get_or_insert_with(&(m.clone(), n.clone()), || {
        let twist = EULER.half_twist(m.weight() as i64, n.weight() as i64);
        let an = &(&aut_order(m) * &aut_order(n)) * &twist;
        classical_product(m, n).flat_map(|l| HallElem::term(l.clone(), &an / &aut_order(l)))
    })
}

/// The twisted Hall product.
pub fn product(x: &HallElem, y: &HallElem) -> HallElem {
    let mut out = HallElem::zero();
    for (m, a) in x.iter() {
        for (n, b) in y.iter() {
            out.add_scaled(&basis_product(m, n), &(a * b));
        }
    }
    out
}

static COPRODUCT: LazyLock<Memo<Partition, TensorHallElem>> = LazyLock::new(Memo::new);

/// `Δ(u_A) = Σ ⟨B,C⟩^{1/2} G^A_{BC} u_B ⊗ u_C`.
pub fn basis_coproduct(a: &Partition) -> Arc<TensorHallElem> {
    COPRODUCT.get_or_insert_with(a, || {
        let n = a.weight();
        let mut out = TensorHallElem::zero();
        for k in 0..=n {
            for b in partitions_of(n - k) {
                for c in partitions_of(k) {
                    let g = hall_number(a, &b, &c);
                    if g.is_zero() {
                        continue;
                    }
                    let t = EULER.half_twist(b.weight() as i64, c.weight() as i64);
                    out.add_term((b.clone(), c.clone()), &(&g * &t));
                }
            }
        }
        out
    })
}

/// Green's coproduct, extended linearly.
pub fn coproduct(x: &HallElem) -> TensorHallElem {
    x.flat_map(|a| (*basis_coproduct(a)).clone())
}

/// `ε(u_A) = δ_{A,0}`.
pub fn counit(x: &HallElem) -> Scalar {
    x.coeff(&Partition::empty())
}

/// The Hopf pairing `(u_M, u_N) = δ_{MN} |Aut M|`.
pub fn hopf_pairing(x: &HallElem, y: &HallElem) -> Scalar {
    x.iter()
        .map(|(l, a)| {
            let b = y.coeff(l);
            if b.is_zero() {
                Scalar::zero()
            } else {
                &(a * &b) * &aut_order(l)
            }
        })
        .sum()
}

/// The pairing on the tensor square, taken factorwise.
pub fn tensor_pairing(x: &TensorHallElem, y: &TensorHallElem) -> Scalar {
    x.iter()
        .map(|((l, m), a)| {
            let b = y.coeff(&(l.clone(), m.clone()));
            if b.is_zero() {
                Scalar::zero()
            } else {
                &(&(a * &b) * &aut_order(l)) * &aut_order(m)
            }
        })
        .sum()
}

/// `a ⊗ b`.
pub fn tensor(x: &HallElem, y: &HallElem) -> TensorHallElem {
    let mut out = TensorHallElem::zero();
    for (l, a) in x.iter() {
        for (m, b) in y.iter() {
            out.add_term((l.clone(), m.clone()), &(a * b));
        }
    }
    out
}

/// Factorwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
pub fn tensor_product(x: &TensorHallElem, y: &TensorHallElem) -> TensorHallElem {
    let mut out = TensorHallElem::zero();
    for ((a, b), s) in x.iter() {
        for ((c, d), t) in y.iter() {
            let left = basis_product(a, c);
            let right = basis_product(b, d);
            out.add_scaled(&tensor(&left, &right), &(s * t));
        }
    }
    out
}

/// Total weight of a homogeneous element, `None` if zero or inhomogeneous.
pub fn weight(x: &HallElem) -> Option<usize> {
    let mut w = x.keys().map(Partition::weight);
    let first = w.next()?;
    w.all(|k| k == first).then_some(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::partition::partitions_up_to;

    fn q() -> Scalar {
        Scalar::q()
    }

    fn qp(c: &[i64]) -> Scalar {
        Scalar::q_poly(c)
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_coeff(&part![1, 1], &part![1], 1), qp(&[1, 1]));
        assert_eq!(pieri_coeff(&part![2], &part![1], 1), Scalar::one());
        assert_eq!(pieri_coeff(&part![2, 1], &part![1, 1], 1), Scalar::one());
        // one socle line gives (1,1); the other q give (2)
        assert_eq!(pieri_coeff(&part![2, 1], &part![2], 1), q());
        assert!(pieri_coeff(&part![2], &part![], 2).is_zero());
        assert!(pieri_coeff(&part![3], &part![1], 2).is_zero());
    }

    #[test]
    fn elementary_product_examples() {
        let mut want = basis(part![2]);
        want.add_term(part![1, 1], &qp(&[1, 1]));
        assert_eq!(elementary_product(&part![2]), want);
        assert_eq!(elementary_product(&part![1, 1]), basis(part![1, 1]));
        assert_eq!(elementary_product(&part![]), unit());
    }

    #[test]
    fn elementary_products_are_unitriangular() {
        for nu in partitions_up_to(6) {
            let e = elementary_product(&nu);
            assert!(e.coeff(&nu).is_one());
            for l in e.keys() {
                assert!(crate::partition::dominance_leq(l, &nu).unwrap(), "{l} in E_{nu}");
            }
        }
    }

    #[test]
    fn hall_number_examples() {
        assert_eq!(hall_number(&part![2], &part![1], &part![1]), Scalar::one());
        assert_eq!(hall_number(&part![1, 1], &part![1], &part![1]), qp(&[1, 1]));
        for l in partitions_up_to(4) {
            for m in partitions_of(l.weight()) {
                let want = if l == m { Scalar::one() } else { Scalar::zero() };
                assert_eq!(hall_number(&l, &m, &part![]), want);
            }
        }
    }

    #[test]
    fn hall_numbers_are_integral_polynomials_and_symmetric() {
        for l in partitions_up_to(6) {
            for k in 0..=l.weight() {
                for m in partitions_of(l.weight() - k) {
                    for n in partitions_of(k) {
                        let g = hall_number(&l, &m, &n);
                        assert!(g.is_polynomial() && g.denom().is_one(), "G^{l}_{m},{n} = {g}");
                        assert!(g.is_even());
                        assert_eq!(g, hall_number(&l, &n, &m));
                    }
                }
            }
        }
    }

    #[test]
    fn hall_numbers_independent_of_extension() {
        for n in 1..=5 {
            for a in partitions_up_to(5 - n) {
                for b in partitions_of(n) {
                    assert_eq!(
                        classical_product_with(&a, &b, Extension::Lex),
                        classical_product_with(&a, &b, Extension::NStat),
                        "{a} ∘ {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn product_examples() {
        let u1 = basis(part![1]);
        let mut want = HallElem::zero();
        let qm1 = qp(&[-1, 1]);
        want.add_term(part![2], &(&qm1 / &q()));
        want.add_term(part![1, 1], &(&Scalar::one() / &q()));
        assert_eq!(product(&u1, &u1), want);
        let x = basis(part![2, 1]);
        assert_eq!(product(&unit(), &x), x);
        assert_eq!(product(&x, &unit()), x);
        assert_eq!(weight(&product(&u1, &basis(part![2]))), Some(3));
    }

    #[test]
    fn coproduct_examples() {
        let e = Partition::empty;
        let mut want = TensorHallElem::zero();
        want.add_term((part![1], e()), &Scalar::one());
        want.add_term((e(), part![1]), &Scalar::one());
        assert_eq!(coproduct(&basis(part![1])), want);

        let mut want = TensorHallElem::zero();
        want.add_term((part![2], e()), &Scalar::one());
        want.add_term((part![1], part![1]), &Scalar::one());
        want.add_term((e(), part![2]), &Scalar::one());
        assert_eq!(coproduct(&basis(part![2])), want);

        let mut want = TensorHallElem::zero();
        want.add_term((part![1, 1], e()), &Scalar::one());
        want.add_term((part![1], part![1]), &qp(&[1, 1]));
        want.add_term((e(), part![1, 1]), &Scalar::one());
        assert_eq!(coproduct(&basis(part![1, 1])), want);
        assert!(counit(&basis(part![1])).is_zero());
        assert!(counit(&unit()).is_one());
    }

    #[test]
    fn pairing_examples() {
        let u1 = basis(part![1]);
        let u2 = basis(part![2]);
        assert_eq!(hopf_pairing(&u1, &u1), qp(&[-1, 1]));
        assert!(hopf_pairing(&u1, &u2).is_zero());
        let lhs = hopf_pairing(&product(&u1, &u1), &u2);
        assert_eq!(lhs, qp(&[1, -2, 1]));
        assert_eq!(lhs, tensor_pairing(&tensor(&u1, &u1), &coproduct(&u2)));
    }

    #[test]
    fn associative_and_commutative_to_weight_six() {
        let ps = partitions_up_to(6);
        for a in &ps {
            for b in &ps {
                if a.weight() + b.weight() > 6 {
                    continue;
                }
                let (x, y) = (basis(a.clone()), basis(b.clone()));
                assert_eq!(product(&x, &y), product(&y, &x));
                for c in &ps {
                    if a.weight() + b.weight() + c.weight() > 6 {
                        continue;
                    }
                    let z = basis(c.clone());
                    assert_eq!(
                        product(&product(&x, &y), &z),
                        product(&x, &product(&y, &z)),
                        "{a} {b} {c}"
                    );
                }
            }
        }
    }

    #[test]
    fn bialgebra_and_pairing_compatibility() {
        let ps = partitions_up_to(4);
        for a in &ps {
            for b in &ps {
                let (x, y) = (basis(a.clone()), basis(b.clone()));
                let xy = product(&x, &y);
                assert_eq!(
                    coproduct(&xy),
                    tensor_product(&coproduct(&x), &coproduct(&y)),
                    "Δ({a}*{b})"
                );
                if a.weight() + b.weight() > 4 {
                    continue;
                }
                for c in partitions_of(a.weight() + b.weight()) {
                    let z = basis(c.clone());
                    assert_eq!(
                        hopf_pairing(&xy, &z),
                        tensor_pairing(&tensor(&x, &y), &coproduct(&z)),
                        "({a}*{b}, {c})"
                    );
                }
            }
        }
    }
}

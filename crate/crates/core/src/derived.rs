//! The twisted derived Hall algebra of the root category.
//!
//! Every object of the root category is `M₀ ⊕ M₁[1]` for modules `M₀, M₁`,
//! recorded as a [`RootObject`]. Elements are kept in one of two bases:
//!
//! * natural: `u_{[M₀ ⊕ M₁[1]]}`;
//! * normal: the ordered products `u_{[A]} * u_{[B[1]]}`.
//!
//! Products inside one sector are Hall products. A degree-0 object times a
//! degree-1 object expands over the strata of `Hom(L, Z)` by kernel and
//! cokernel, and the reverse order expands over the strata of `Hom(Z, L)`
//! with the roles of kernel and cokernel exchanged. Straightening inverts the
//! first expansion. General products are computed in the normal basis, where
//! only the middle factor `u_{[B[1]]} * u_{[C]}` needs to be reordered.
//!
//! The straightening recursion terminates because every correction term comes
//! from a map of rank at least one and so has strictly smaller total weight
//! `|M₀| + |M₁|`. (The classical argument inducts on `|End|` instead; both
//! measures decrease along the same terms.)

use std::fmt;
use std::sync::{Arc, LazyLock};

use crate::error::{Error, Result};
use crate::euler::{EulerForm, EULER};
use crate::hall::{self, HallElem};
use crate::lincomb::LinComb;
use crate::memo::Memo;
use crate::partition::{partitions_of, Partition};
use crate::qcomb::aut_order;
use crate::Scalar;

/// `H⁰ ⊕ H¹[1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RootObject {
    pub h0: Partition,
    pub h1: Partition,
}

/// Which copy of the module category an object lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    Degree0,
    Degree1,
}

impl RootObject {
    pub fn new(h0: Partition, h1: Partition) -> Self {
        RootObject { h0, h1 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `M` in degree 0.
    pub fn stalk0(m: Partition) -> Self {
        RootObject::new(m, Partition::empty())
    }

    /// `M[1]`.
    pub fn stalk1(m: Partition) -> Self {
        RootObject::new(Partition::empty(), m)
    }

    /// The class in `K₀`, `|H⁰| - |H¹|`.
    pub fn k0_class(&self) -> i64 {
        self.h0.weight() as i64 - self.h1.weight() as i64
    }

    pub fn total_weight(&self) -> usize {
        self.h0.weight() + self.h1.weight()
    }

    /// The sector of a stalk object; the zero object counts as degree 0.
    pub fn sector(&self) -> Option<Sector> {
        if self.h1.is_empty() {
            Some(Sector::Degree0)
        } else if self.h0.is_empty() {
            Some(Sector::Degree1)
        } else {
            None
        }
    }
}

impl fmt::Display for RootObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊕{}[1]", self.h0, self.h1)
    }
}

impl fmt::Debug for RootObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// How the keys of a [`DerivedElem`] are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DerivedBasis {
    /// `(M₀, M₁)` stands for `u_{[M₀ ⊕ M₁[1]]}`.
    #[default]
    Natural,
    /// `(A, B)` stands for `u_{[A]} * u_{[B[1]]}`.
    Normal,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivedElem {
    pub basis: DerivedBasis,
    pub terms: LinComb<RootObject>,
}

impl DerivedElem {
    pub fn zero(basis: DerivedBasis) -> Self {
        DerivedElem {
            basis,
            terms: LinComb::zero(),
        }
    }

    pub fn new(basis: DerivedBasis, terms: LinComb<RootObject>) -> Self {
        DerivedElem { basis, terms }
    }

    /// `u_{[M₀ ⊕ M₁[1]]}`.
    pub fn natural(obj: RootObject) -> Self {
        DerivedElem::new(DerivedBasis::Natural, LinComb::basis(obj))
    }

    /// `u_{[A]} * u_{[B[1]]}`.
    pub fn normal(a: Partition, b: Partition) -> Self {
        DerivedElem::new(DerivedBasis::Normal, LinComb::basis(RootObject::new(a, b)))
    }

    /// The unit `u_{[0]}`.
    pub fn unit() -> Self {
        Self::natural(RootObject::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        DerivedElem::new(self.basis, self.terms.scale(c))
    }

    /// Sum, in the basis of `self`.
    pub fn add(&self, other: &DerivedElem) -> Self {
        let other = to_basis(other, self.basis);
        DerivedElem::new(self.basis, self.terms.add(&other.terms))
    }

    pub fn sub(&self, other: &DerivedElem) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Equality as algebra elements, whatever the bases.
    pub fn same_element(&self, other: &DerivedElem) -> bool {
        to_basis(self, DerivedBasis::Natural).terms == to_basis(other, DerivedBasis::Natural).terms
    }

    /// The common sector of all terms, if any. Zero counts as degree 0.
    fn sector(&self) -> Option<Sector> {
        if self.terms.keys().all(|k| k.h1.is_empty()) {
            Some(Sector::Degree0)
        } else if self.terms.keys().all(|k| k.h0.is_empty()) {
            Some(Sector::Degree1)
        } else {
            None
        }
    }
}

static STRATA: LazyLock<Memo<(Partition, Partition), LinComb<RootObject>>> = LazyLock::new(Memo::new);

/// The maps `L → Z` sorted by isoclass of `(ker, coker)`; the coefficient of
/// `(M₀, M₁)` is the number of maps with kernel `M₀` and cokernel `M₁`.
pub fn morphism_strata(l: &Partition, z: &Partition) -> Arc<LinComb<RootObject>> {
    STRATA.get_or_insert_with(&(l.clone(), z.clone()), || {
        let mut out = LinComb::zero();
        for rank in 0..=l.weight().min(z.weight()) {
            for image in partitions_of(rank) {
                let a = aut_order(&image);
                for ker in partitions_of(l.weight() - rank) {
                    let g = hall::hall_number(l, &image, &ker);
                    if g.is_zero() {
                        continue;
                    }
                    let ga = &g * &a;
                    for coker in partitions_of(z.weight() - rank) {
                        let h = hall::hall_number(z, &coker, &image);
                        if !h.is_zero() {
                            out.add_term(RootObject::new(ker.clone(), coker), &(&ga * &h));
                        }
                    }
                }
            }
        }
        out
    })
}

/// `|{l : L → Z, ker l ≅ M₀, coker l ≅ M₁}| = Σ_I G^L_{I,M₀} G^Z_{M₁,I} a_I`.
pub fn count_maps_by_ker_coker(l: &Partition, z: &Partition, m0: &Partition, m1: &Partition) -> Scalar {
    if l.weight() < m0.weight() || z.weight() < m1.weight() {
        return Scalar::zero();
    }
    if l.weight() - m0.weight() != z.weight() - m1.weight() {
        return Scalar::zero();
    }
    morphism_strata(l, z).coeff(&RootObject::new(m0.clone(), m1.clone()))
}

fn chi(a: &Partition, b: &Partition) -> i64 {
    EULER.exponent(a.weight() as i64, b.weight() as i64)
}

/// `u_{[L]} * u_{[Z[1]]}` in the natural basis.
pub fn mixed_forward(l: &Partition, z: &Partition) -> LinComb<RootObject> {
    let base = Scalar::v_pow(-chi(l, z));
    morphism_strata(l, z)
        .iter()
        .map(|(m, c)| {
            let twist = &base * &Scalar::q_pow(-chi(&m.h0, &m.h1));
            (m.clone(), c * &twist)
        })
        .collect()
}

/// `u_{[L[1]]} * u_{[Z]}` in the natural basis: maps `L → Z` with kernel
/// `M₁` and cokernel `M₀`.
pub fn mixed_backward(l: &Partition, z: &Partition) -> LinComb<RootObject> {
    let base = Scalar::v_pow(-chi(l, z));
    morphism_strata(l, z)
        .iter()
        .map(|(m, c)| {
            let obj = RootObject::new(m.h1.clone(), m.h0.clone());
            let twist = &base * &Scalar::q_pow(-2 * chi(&obj.h0, &obj.h1));
            (obj, c * &twist)
        })
        .collect()
}

/// Product of two elements each supported in a single sector, in the natural
/// basis. Stalk objects read the same in both bases.
pub fn sector_product(x: &DerivedElem, y: &DerivedElem) -> Result<DerivedElem> {
    let sx = x.sector().ok_or_else(|| mixed("left"))?;
    let sy = y.sector().ok_or_else(|| mixed("right"))?;
    let mut out = LinComb::zero();
    for (a, s) in x.terms.iter() {
        for (b, t) in y.terms.iter() {
            let st = s * t;
            let part = match (sx, sy) {
                (Sector::Degree0, Sector::Degree0) => {
                    hall::basis_product(&a.h0, &b.h0).relabel(|m| RootObject::stalk0(m.clone()))
                }
                (Sector::Degree1, Sector::Degree1) => {
                    hall::basis_product(&a.h1, &b.h1).relabel(|m| RootObject::stalk1(m.clone()))
                }
                (Sector::Degree0, Sector::Degree1) => mixed_forward(&a.h0, &b.h1),
                (Sector::Degree1, Sector::Degree0) => mixed_backward(&a.h1, &b.h0),
            };
            out.add_scaled(&part, &st);
        }
    }
    Ok(DerivedElem::new(DerivedBasis::Natural, out))
}

fn mixed(side: &str) -> Error {
    Error::MixedSector(format!(
        "{side} operand has terms outside a single sector; use derived_product"
    ))
}

static STRAIGHT: LazyLock<Memo<RootObject, LinComb<RootObject>>> = LazyLock::new(Memo::new);

/// The normal-basis expansion of `u_{[A ⊕ B[1]]}`.
pub fn straighten_basis(obj: &RootObject) -> Arc<LinComb<RootObject>> {
    STRAIGHT.get_or_insert_with(obj, || {
        let forward = mixed_forward(&obj.h0, &obj.h1);
        let lead = forward.coeff(obj);
        let inv = lead.inv().expect("zero map always lies in its own stratum");
        let mut out = LinComb::term(obj.clone(), inv.clone());
        for (m, c) in forward.iter() {
            if m == obj {
                continue;
            }
            debug_assert!(m.total_weight() < obj.total_weight());
            out.add_scaled(&straighten_basis(m), &-(c * &inv));
        }
        out
    })
}

/// Rewrite an element in the requested basis.
pub fn to_basis(x: &DerivedElem, basis: DerivedBasis) -> DerivedElem {
    if x.basis == basis {
        return x.clone();
    }
    let terms = match basis {
        DerivedBasis::Normal => x.terms.flat_map(|k| (*straighten_basis(k)).clone()),
        DerivedBasis::Natural => x.terms.flat_map(|k| mixed_forward(&k.h0, &k.h1)),
    };
    DerivedElem::new(basis, terms)
}

/// Natural basis to normal basis.
pub fn straighten(x: &DerivedElem) -> DerivedElem {
    to_basis(x, DerivedBasis::Normal)
}

/// Normal basis to natural basis.
pub fn to_natural(x: &DerivedElem) -> DerivedElem {
    to_basis(x, DerivedBasis::Natural)
}

static SWAP: LazyLock<Memo<(Partition, Partition), LinComb<RootObject>>> = LazyLock::new(Memo::new);

/// `u_{[B[1]]} * u_{[C]}` in the normal basis.
fn swap(b: &Partition, c: &Partition) -> Arc<LinComb<RootObject>> {
    SWAP.get_or_insert_with(&(b.clone(), c.clone()), || {
        if b.is_empty() || c.is_empty() {
            return LinComb::basis(RootObject::new(c.clone(), b.clone()));
        }
        mixed_backward(b, c).flat_map(|k| (*straighten_basis(k)).clone())
    })
}

fn normal_product(x: &LinComb<RootObject>, y: &LinComb<RootObject>) -> LinComb<RootObject> {
    let mut out = LinComb::zero();
    for (ab, s) in x.iter() {
        for (cd, t) in y.iter() {
            let st = s * t;
            for (ef, m) in swap(&ab.h1, &cd.h0).iter() {
                let left = hall::basis_product(&ab.h0, &ef.h0);
                let right = hall::basis_product(&ef.h1, &cd.h1);
                let c = &st * m;
                for (l, a) in left.iter() {
                    for (r, b) in right.iter() {
                        out.add_term(RootObject::new(l.clone(), r.clone()), &(&c * &(a * b)));
                    }
                }
            }
        }
    }
    out
}

/// The product of the derived Hall algebra, returned in `out`.
pub fn derived_product(x: &DerivedElem, y: &DerivedElem, out: DerivedBasis) -> DerivedElem {
    let xn = to_basis(x, DerivedBasis::Normal);
    let yn = to_basis(y, DerivedBasis::Normal);
    let prod = DerivedElem::new(DerivedBasis::Normal, normal_product(&xn.terms, &yn.terms));
    to_basis(&prod, out)
}

/// `[M] ↦ u_{[M]}`.
pub fn psi_plus(x: &HallElem) -> DerivedElem {
    DerivedElem::new(DerivedBasis::Natural, x.relabel(|m| RootObject::stalk0(m.clone())))
}

/// `[M] ↦ u_{[M[1]]}`.
pub fn psi_minus(x: &HallElem) -> DerivedElem {
    DerivedElem::new(DerivedBasis::Natural, x.relabel(|m| RootObject::stalk1(m.clone())))
}

/// Both sides of the double relation
/// `Σ (x₍₂₎, y₍₁₎) Ψ⁺(x₍₁₎) * Ψ⁻(y₍₂₎) = Σ (x₍₁₎, y₍₂₎) Ψ⁻(y₍₁₎) * Ψ⁺(x₍₂₎)`
/// for `x = u_λ`, `y = u_μ`, in the natural basis.
pub fn dd_relation_sides(lambda: &Partition, mu: &Partition) -> (DerivedElem, DerivedElem) {
    let dx = hall::basis_coproduct(lambda);
    let dy = hall::basis_coproduct(mu);
    let mut lhs = LinComb::zero();
    let mut rhs = LinComb::zero();
    for ((x1, x2), a) in dx.iter() {
        for ((y1, y2), b) in dy.iter() {
            let ab = a * b;
            if x2 == y1 {
                let c = &ab * &aut_order(x2);
                lhs.add_scaled(&mixed_forward(x1, y2), &c);
            }
            if x1 == y2 {
                let c = &ab * &aut_order(x1);
                rhs.add_scaled(&mixed_backward(y1, x2), &c);
            }
        }
    }
    (
        DerivedElem::new(DerivedBasis::Natural, lhs),
        DerivedElem::new(DerivedBasis::Natural, rhs),
    )
}

pub fn dd_relation_check(lambda: &Partition, mu: &Partition) -> bool {
    let (l, r) = dd_relation_sides(lambda, mu);
    l == r
}

/// `(u_A * u_{B[1]}) * (u_C * u_{D[1]}) = (u_A * u_C) * (u_{B[1]} * u_{D[1]})`.
pub fn tensor_factorization_check(a: &Partition, b: &Partition, c: &Partition, d: &Partition) -> bool {
    let lhs = derived_product(
        &DerivedElem::normal(a.clone(), b.clone()),
        &DerivedElem::normal(c.clone(), d.clone()),
        DerivedBasis::Natural,
    );
    let ac = psi_plus(&hall::basis_product(a, c));
    let bd = psi_minus(&hall::basis_product(b, d));
    let rhs = derived_product(&ac, &bd, DerivedBasis::Natural);
    lhs == rhs
}

/// Whether every term of the natural-basis product of two basis objects has
/// the sum of their `K₀` classes.
pub fn k0_conserved(x: &RootObject, y: &RootObject, product: &DerivedElem) -> bool {
    let want = x.k0_class() + y.k0_class();
    to_natural(product).terms.keys().all(|k| k.k0_class() == want)
}

/// All root objects of total weight at most `n`.
pub fn root_objects_up_to(n: usize) -> Vec<RootObject> {
    let mut out = Vec::new();
    for total in 0..=n {
        for w0 in (0..=total).rev() {
            for h0 in partitions_of(w0) {
                for h1 in partitions_of(total - w0) {
                    out.push(RootObject::new(h0.clone(), h1));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    fn q() -> Scalar {
        Scalar::q()
    }

    fn obj(h0: Partition, h1: Partition) -> RootObject {
        RootObject::new(h0, h1)
    }

    fn nat(terms: Vec<(RootObject, Scalar)>) -> DerivedElem {
        DerivedElem::new(DerivedBasis::Natural, terms.into_iter().collect())
    }

    #[test]
    fn ker_coker_counts() {
        let qm1 = &q() - &Scalar::one();
        assert_eq!(count_maps_by_ker_coker(&part![1], &part![1], &part![], &part![]), qm1);
        assert_eq!(
            count_maps_by_ker_coker(&part![1], &part![1], &part![1], &part![1]),
            Scalar::one()
        );
        assert_eq!(count_maps_by_ker_coker(&part![2], &part![1], &part![1], &part![]), qm1);
        assert!(count_maps_by_ker_coker(&part![2], &part![1], &part![], &part![]).is_zero());
    }

    #[test]
    fn strata_sum_to_hom_space() {
        for l in crate::partition::partitions_up_to(4) {
            for z in crate::partition::partitions_up_to(4) {
                let total: Scalar = morphism_strata(&l, &z).iter().map(|(_, c)| c.clone()).sum();
                let want = Scalar::q_pow(crate::qcomb::hom_dim(&l, &z) as i64);
                assert_eq!(total, want, "{l} {z}");
            }
        }
    }

    #[test]
    fn sector_examples() {
        let qm1 = &q() - &Scalar::one();
        let a = DerivedElem::natural(RootObject::stalk0(part![1]));
        let b = DerivedElem::natural(RootObject::stalk1(part![1]));
        let want = nat(vec![
            (obj(part![1], part![1]), Scalar::one()),
            (RootObject::zero(), qm1.clone()),
        ]);
        assert_eq!(sector_product(&a, &b).unwrap(), want);
        assert_eq!(sector_product(&b, &a).unwrap(), want);
        let aa = sector_product(&a, &a).unwrap();
        let want = nat(vec![
            (RootObject::stalk0(part![2]), &qm1 / &q()),
            (RootObject::stalk0(part![1, 1]), q().inv().unwrap()),
        ]);
        assert_eq!(aa, want);
        let m = DerivedElem::natural(obj(part![1], part![1]));
        assert!(matches!(sector_product(&m, &a), Err(Error::MixedSector(_))));
    }

    #[test]
    fn straighten_examples() {
        let qm1 = &q() - &Scalar::one();
        let x = DerivedElem::natural(obj(part![1], part![1]));
        let want = DerivedElem::new(
            DerivedBasis::Normal,
            vec![(obj(part![1], part![1]), Scalar::one()), (RootObject::zero(), -&qm1)]
                .into_iter()
                .collect(),
        );
        assert_eq!(straighten(&x), want);
        let y = DerivedElem::natural(RootObject::stalk0(part![2, 1]));
        assert_eq!(straighten(&y).terms, y.terms);

        let n = DerivedElem::normal(part![2], part![1]);
        let want = nat(vec![
            (obj(part![2], part![1]), Scalar::one()),
            (RootObject::stalk0(part![1]), qm1),
        ]);
        assert_eq!(to_natural(&n), want);
    }

    #[test]
    fn round_trip_small() {
        for o in root_objects_up_to(4) {
            let x = DerivedElem::natural(o.clone());
            assert_eq!(to_natural(&straighten(&x)), x, "{o}");
            let y = DerivedElem::new(DerivedBasis::Normal, LinComb::basis(o.clone()));
            assert_eq!(straighten(&to_natural(&y)), y, "{o}");
        }
    }

    #[test]
    fn product_examples() {
        let qm1 = &q() - &Scalar::one();
        let m = DerivedElem::natural(obj(part![1], part![1]));
        assert_eq!(derived_product(&DerivedElem::unit(), &m, DerivedBasis::Natural), m);
        assert_eq!(derived_product(&m, &DerivedElem::unit(), DerivedBasis::Natural), m);
        let a = DerivedElem::natural(RootObject::stalk0(part![1]));
        let b = DerivedElem::natural(RootObject::stalk1(part![1]));
        let want = nat(vec![
            (obj(part![1], part![1]), Scalar::one()),
            (RootObject::zero(), qm1),
        ]);
        assert_eq!(derived_product(&a, &b, DerivedBasis::Natural), want);
        assert_eq!(derived_product(&b, &a, DerivedBasis::Natural), want);
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        let u1 = hall::basis(part![1]);
        let prod = hall::product(&u1, &u1);
        let p = psi_plus(&u1);
        assert_eq!(derived_product(&p, &p, DerivedBasis::Natural), psi_plus(&prod));
        let m = psi_minus(&u1);
        assert_eq!(derived_product(&m, &m, DerivedBasis::Natural), psi_minus(&prod));
    }

    #[test]
    fn dd_examples() {
        let qm1 = &q() - &Scalar::one();
        let (l, r) = dd_relation_sides(&part![1], &part![1]);
        assert_eq!(l, r);
        let want = DerivedElem::normal(part![1], part![1]).add(&DerivedElem::unit().scale(&qm1));
        assert!(l.same_element(&want));
        assert!(dd_relation_check(&part![1], &part![]));
        assert!(dd_relation_check(&part![2], &part![1, 1]));
    }

    #[test]
    fn factorization_examples() {
        assert!(tensor_factorization_check(&part![1], &part![], &part![1], &part![]));
        assert!(tensor_factorization_check(&part![1], &part![1], &part![1], &part![]));
        assert!(tensor_factorization_check(&part![2], &part![1], &part![1], &part![1]));
    }

    #[test]
    fn mixed_orders_agree() {
        for l in crate::partition::partitions_up_to(3) {
            for z in crate::partition::partitions_up_to(3) {
                assert_eq!(mixed_forward(&l, &z), mixed_backward(&z, &l), "{l} {z}");
            }
        }
    }
}

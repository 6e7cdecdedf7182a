use jordan_hall::derived::{
    derived_product, psi_minus, psi_plus, tensor_factorization_check, DerivedBasis, DerivedElem, RootObject,
};
use jordan_hall::hall::{self, HallElem};
use jordan_hall::oracle;
use jordan_hall::partition::{partitions_of, partitions_up_to};
use jordan_hall::qcomb::{gaussian_binomial, hom_dim};
use jordan_hall::symfunc::{SymBasis, SymFunc, SymRing};
use jordan_hall::{LinComb, Partition, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn at(s: &Scalar, q: i64) -> BigRational {
    s.eval_at(q).unwrap()
}

#[test]
fn subspace_counts_match_gaussian_binomials() {
    for p in [2u32, 3] {
        for n in 0..=5 {
            for k in 0..=n {
                let got = oracle::subspaces(n, k, p).unwrap().len();
                let want = at(&gaussian_binomial(n, k), p as i64);
                assert_eq!(BigRational::from_integer(BigInt::from(got)), want, "[{n},{k}] at {p}");
            }
        }
    }
}

#[test]
fn hom_dim_is_symmetric() {
    for a in partitions_up_to(6) {
        for b in partitions_up_to(6) {
            let d = hom_dim(&a, &b);
            assert_eq!(d, hom_dim(&b, &a));
            let direct: usize = a
                .parts()
                .iter()
                .flat_map(|x| b.parts().iter().map(move |y| *x.min(y)))
                .sum();
            assert_eq!(d, direct);
        }
    }
}

#[test]
fn pieri_matches_oracle() {
    for lambda in partitions_up_to(5) {
        for r in 0..=lambda.weight() {
            for mu in partitions_of(lambda.weight() - r) {
                let want = oracle::count_submodules(&lambda, &mu, &Partition::column(r), 2).unwrap();
                let got = at(&hall::pieri_coeff(&lambda, &mu, r), 2);
                assert_eq!(got, BigRational::from_integer(want.into()), "{lambda} {mu} {r}");
            }
        }
    }
}

#[test]
fn embeddings_are_homomorphisms() {
    let ps = partitions_up_to(3);
    for a in &ps {
        for b in &ps {
            let prod = hall::basis_product(a, b);
            let (x, y) = (hall::basis(a.clone()), hall::basis(b.clone()));
            let nat = DerivedBasis::Natural;
            assert_eq!(derived_product(&psi_plus(&x), &psi_plus(&y), nat), psi_plus(&prod));
            assert_eq!(derived_product(&psi_minus(&x), &psi_minus(&y), nat), psi_minus(&prod));
        }
    }
}

#[test]
fn normal_form_factorizes() {
    let ps = partitions_up_to(2);
    for a in &ps {
        for b in &ps {
            for c in &ps {
                for d in &ps {
                    assert!(tensor_factorization_check(a, b, c, d), "{a} {b} {c} {d}");
                }
            }
        }
    }
}

#[test]
fn sym_round_trips_degree_six() {
    let ring = SymRing::default();
    for l in partitions_of(6) {
        for a in SymBasis::ALL {
            for b in SymBasis::ALL {
                let f = SymFunc::elem(a, l.clone());
                let back = ring.convert(&ring.convert(&f, b).unwrap(), a).unwrap();
                assert_eq!(back, f);
            }
        }
    }
}

#[test]
fn psi_inverts() {
    let ring = SymRing::default();
    for l in partitions_up_to(5) {
        let x = hall::basis(l.clone());
        let img = ring.convert(&ring.psi(&x).unwrap(), SymBasis::Elementary).unwrap();
        assert_eq!(ring.psi_inv(&img).unwrap(), x);
    }
}

fn small_partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=2, 0..=2).prop_map(Partition::from_unsorted)
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 0i64..=2).prop_map(|(c, k)| &Scalar::from_int(c) * &Scalar::q_pow(k))
}

fn derived_elem() -> impl Strategy<Value = DerivedElem> {
    prop::collection::vec((small_partition(), small_partition(), small_scalar()), 1..=3).prop_map(|ts| {
        let terms: LinComb<RootObject> = ts.into_iter().map(|(a, b, c)| (RootObject::new(a, b), c)).collect();
        DerivedElem::new(DerivedBasis::Natural, terms)
    })
}

fn hall_elem() -> impl Strategy<Value = HallElem> {
    prop::collection::vec((small_partition(), small_scalar()), 1..=3)
        .prop_map(|ts| ts.into_iter().collect::<HallElem>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn derived_product_commutes(x in derived_elem(), y in derived_elem()) {
        let nat = DerivedBasis::Natural;
        prop_assert_eq!(derived_product(&x, &y, nat), derived_product(&y, &x, nat));
    }

    #[test]
    fn derived_product_is_bilinear(x in derived_elem(), y in derived_elem(), z in derived_elem()) {
        let nat = DerivedBasis::Natural;
        let lhs = derived_product(&x.add(&y), &z, nat);
        let rhs = derived_product(&x, &z, nat).add(&derived_product(&y, &z, nat));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_output_is_the_same_element(x in derived_elem(), y in derived_elem()) {
        let a = derived_product(&x, &y, DerivedBasis::Normal);
        let b = derived_product(&x, &y, DerivedBasis::Natural);
        prop_assert!(a.same_element(&b));
    }

    #[test]
    fn coproduct_is_multiplicative(x in hall_elem(), y in hall_elem()) {
        let lhs = hall::coproduct(&hall::product(&x, &y));
        let rhs = hall::tensor_product(&hall::coproduct(&x), &hall::coproduct(&y));
        prop_assert_eq!(lhs, rhs);
    }
}

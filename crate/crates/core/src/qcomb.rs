//! q-combinatorics of nilpotent Jordan modules: automorphism orders, Hom
//! dimensions and Gaussian binomials, all as polynomials in `q`.

use num_bigint::BigInt;

use crate::partition::Partition;
use crate::poly::Poly;
use crate::Scalar;

/// `q^k - 1` as a polynomial in `q`.
fn q_k_minus_one(k: usize) -> Poly {
    &Poly::monomial(BigInt::from(1), k) - &Poly::one()
}

/// `|Aut S^(λ)| = q^{|λ|+2n(λ)} Π_i φ_{m_i(λ)}(q^{-1})` with
/// `φ_m(t) = Π_{j≤m} (1 - t^j)`.
pub fn aut_order(lambda: &Partition) -> Scalar {
    let m = lambda.multiplicities();
    let mut poly = Poly::one();
    let mut shift = lambda.weight() + 2 * lambda.n_stat();
    for &mi in m.iter().skip(1) {
        for j in 1..=mi {
            poly = &poly * &q_k_minus_one(j);
        }
        shift -= mi * (mi + 1) / 2;
    }
    Scalar::from_poly(poly.shift(shift).spread(2))
}

/// `dim Hom(S^(λ), S^(μ)) = Σ_{i,j} min(λ_i, μ_j) = Σ_i λ'_i μ'_i`.
pub fn hom_dim(lambda: &Partition, mu: &Partition) -> usize {
    let (a, b) = (lambda.conjugate(), mu.conjugate());
    a.parts().iter().zip(b.parts()).map(|(x, y)| x * y).sum()
}

/// The Gaussian binomial `[n, k]_q`, zero when `k > n`.
pub fn gaussian_binomial(n: usize, k: usize) -> Scalar {
    Scalar::from_poly(gaussian_poly(n, k).spread(2))
}

/// `[n, k]` as a polynomial in its own variable (not spread to `v`).
pub(crate) fn gaussian_poly(n: usize, k: usize) -> Poly {
    if k > n {
        return Poly::zero();
    }
    let k = k.min(n - k);
    let mut num = Poly::one();
    let mut den = Poly::one();
    for i in 1..=k {
        num = &num * &q_k_minus_one(n - k + i);
        den = &den * &q_k_minus_one(i);
    }
    num.div_exact(&den).expect("Gaussian binomial is a polynomial")
}

/// `[r]_v = (v^r - v^{-r}) / (v - v^{-1})`.
pub fn quantum_integer(r: i64) -> Scalar {
    let num = &Scalar::v_pow(r) - &Scalar::v_pow(-r);
    let den = &Scalar::v() - &Scalar::v_pow(-1);
    &num / &den
}

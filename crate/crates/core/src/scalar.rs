//! The coefficient field `Q(v)` with `v^2 = q`.
//!
//! A [`Scalar`] is a reduced quotient of integer polynomials in `v`. The
//! normal form is: numerator and denominator coprime over `Q`, denominator
//! with positive leading coefficient, and the two sharing no common integer
//! content. That makes the representation unique, so `==` is structural.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar {
            num: Poly::constant(n),
            den: Poly::one(),
        }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
    }

    /// The indeterminate `v`.
    pub fn v() -> Self {
        Self::v_pow(1)
    }

    /// `q = v^2`.
    pub fn q() -> Self {
        Self::v_pow(2)
    }

    /// `v^k` for any integer `k`.
    pub fn v_pow(k: i64) -> Self {
        let m = Poly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Scalar {
                num: m,
                den: Poly::one(),
            }
        } else {
            Scalar {
                num: Poly::one(),
                den: m,
            }
        }
    }

    pub fn q_pow(k: i64) -> Self {
        Self::v_pow(2 * k)
    }

    /// A polynomial in `q` given by ascending integer coefficients.
    pub fn q_poly(coeffs: &[i64]) -> Self {
        Self::from_poly(Poly::from_i64s(coeffs).spread(2))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    /// Build and normalize `num / den`. Panics if `den` is zero.
    pub fn from_parts(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Self::normalize_content(num, den)
    }

    fn normalize_content(num: Poly, den: Poly) -> Self {
        let mut c = num.content().gcd(&den.content());
        if den.leading().unwrap().is_negative() {
            c = -c;
        }
        if c.is_one() {
            Scalar { num, den }
        } else {
            Scalar {
                num: num.div_scalar_exact(&c),
                den: den.div_scalar_exact(&c),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value does not involve the indeterminate.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// True for polynomials (denominator a constant).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// True when numerator and denominator only use even powers of `v`,
    /// i.e. the value is a rational function of `q`.
    pub fn is_even(&self) -> bool {
        self.num.is_even() && self.den.is_even()
    }

    /// Sign of the leading coefficient of the numerator.
    pub fn is_negative(&self) -> bool {
        self.num.leading().is_some_and(Signed::is_negative)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        let n = self.num.coeffs().first().cloned().unwrap_or_default();
        let d = self.den.coeffs()[0].clone();
        Some(BigRational::new(n, d))
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalize_content(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs()).ok()?;
        Some(
            Scalar {
                num: base.num.pow(e),
                den: base.den.pow(e),
            }
            .renormalized(),
        )
    }

    fn renormalized(self) -> Scalar {
        if self.num.is_zero() {
            return Scalar::zero();
        }
        Self::normalize_content(self.num, self.den)
    }

    /// Substitute `v -> v^k` for a nonzero integer `k`.
    pub fn substitute_power(&self, k: i64) -> Scalar {
        assert!(k != 0, "v -> v^0 is not a field map");
        let m = k.unsigned_abs() as usize;
        if k > 0 {
            return Self::from_parts(self.num.spread(m), self.den.spread(m));
        }
        // p(v^-m) = v^(-m deg p) * rev(p)(v^m)
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap();
        let num = self.num.reversed().spread(m);
        let den = self.den.reversed().spread(m);
        let (num, den) = if dd >= dn {
            (num.shift(m * (dd - dn)), den)
        } else {
            (num, den.shift(m * (dn - dd)))
        };
        Self::from_parts(num, den)
    }

    /// Evaluate at a rational value of `v`. `None` if the denominator vanishes.
    pub fn eval_v(&self, v: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(v) / d)
    }

    /// Evaluate an even scalar at a rational value of `q`. `None` if the
    /// scalar is not even or the denominator vanishes there.
    pub fn eval_q(&self, q: &BigRational) -> Option<BigRational> {
        if !self.is_even() {
            return None;
        }
        let halve = |p: &Poly| Poly::new(p.coeffs().iter().step_by(2).cloned().collect());
        let d = halve(&self.den).eval(q);
        if d.is_zero() {
            return None;
        }
        Some(halve(&self.num).eval(q) / d)
    }

    /// Evaluate at an integer `q`, as an exact rational.
    pub fn eval_at(&self, q: i64) -> Option<BigRational> {
        self.eval_q(&BigRational::from_integer(BigInt::from(q)))
    }

    /// Render in `q` when even, otherwise in `v`.
    pub fn render(&self) -> String {
        let (var, step) = if self.is_even() { ("q", 2) } else { ("v", 1) };
        self.render_in(var, step)
    }

    /// Render treating the indeterminate as `var`, dividing exponents by `step`.
    pub fn render_in(&self, var: &str, step: usize) -> String {
        let n = self.num.render(var, step);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.render(var, step);
        let wrap = |s: String, p: &Poly| {
            if p.term_count() > 1 || (p.degree() > Some(0) && !p.leading().unwrap().is_one()) {
                format!("({s})")
            } else {
                s
            }
        };
        let n = if self.num.term_count() > 1 { format!("({n})") } else { n };
        format!("{}/{}", n, wrap(d, &self.den))
    }

    /// Whether `render` yields a single signed monomial with no `+`, `-` or
    /// `/` inside, so it can be juxtaposed with a basis label unparenthesized.
    pub fn is_simple(&self) -> bool {
        self.den.is_one() && self.num.term_count() == 1
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.render())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Scalar {
                    num: &self.num + &rhs.num,
                    den: Poly::one(),
                };
            }
            return Scalar::from_parts(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            // both polynomial up to a rational factor
            let a = &self.den.coeffs()[0];
            let b = &rhs.den.coeffs()[0];
            let l = a.lcm(b);
            let num = &self.num.scale(&(&l / a)) + &rhs.num.scale(&(&l / b));
            return Scalar::from_parts(num, Poly::constant(l));
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        let den = &(&a * &b) * &g;
        Scalar::from_parts(num, den)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar {
                num: &self.num * &rhs.num,
                den: Poly::one(),
            }
            .renormalized();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        Scalar {
            num: &n1 * &n2,
            den: &d1 * &d2,
        }
        .renormalized()
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] to check first.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| &a * &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Scalar {
        Scalar::q()
    }

    #[test]
    fn normal_form_is_structural() {
        // (q^2-1)/(q-1) == q+1
        let a = &(&(&q() * &q()) - &Scalar::one()) / &(&q() - &Scalar::one());
        assert_eq!(a, Scalar::q_poly(&[1, 1]));
        // 2/4 == 1/2
        assert_eq!(Scalar::from_ratio(2, 4), Scalar::from_ratio(1, 2));
        assert_eq!(Scalar::from_ratio(1, -2), Scalar::from_ratio(-1, 2));
        assert!(Scalar::from_ratio(1, 2).denom().leading().unwrap().is_positive());
    }

    #[test]
    fn render_examples() {
        let qm1 = &q() - &Scalar::one();
        assert_eq!(qm1.render(), "q-1");
        assert_eq!((&qm1 / &q()).render(), "(q-1)/q");
        assert_eq!(Scalar::one().div(&qm1).render(), "1/(q-1)");
        assert_eq!(Scalar::v().render(), "v");
        assert_eq!(Scalar::from_ratio(-3, 2).render(), "-3/2");
        assert_eq!((&q() * &q() - q()).render(), "q^2-q");
    }

    #[test]
    fn substitution() {
        let x = &q() - &Scalar::one();
        assert_eq!(x.substitute_power(2), &Scalar::q_pow(2) - &Scalar::one());
        // t = v^-2: (1 - t) -> (q-1)/q
        let t_expr = Scalar::from_parts(Poly::from_i64s(&[1, -1]), Poly::one());
        assert_eq!(t_expr.substitute_power(-2), &(&q() - &Scalar::one()) / &q());
        assert_eq!(Scalar::v_pow(3).substitute_power(-1), Scalar::v_pow(-3));
    }

    #[test]
    fn evaluation() {
        let a = &(&q() * &q()) - &q();
        assert_eq!(a.eval_at(3), Some(BigRational::from_integer(6.into())));
        assert_eq!(Scalar::v().eval_at(4), None);
        let b = Scalar::one().div(&(&q() - &Scalar::from_int(2)));
        assert_eq!(b.eval_at(2), None);
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-4i64..=4, 0..4).prop_map(|c| Poly::from_i64s(&c))
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (arb_poly(), arb_poly())
            .prop_filter_map("nonzero den", |(n, d)| (!d.is_zero()).then(|| Scalar::from_parts(n, d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
            }
            for s in [&a, &b, &c] {
                let g = s.numer().gcd(s.denom());
                prop_assert!(s.is_zero() || g.is_one());
                prop_assert!(s.denom().leading().unwrap().is_positive());
                prop_assert!(s.numer().content().gcd(&s.denom().content()).is_one() || s.is_zero());
            }
        }

        #[test]
        fn equality_agrees_with_cross_multiplication(a in arb_scalar(), b in arb_scalar()) {
            let cross = a.numer() * b.denom() == b.numer() * a.denom();
            prop_assert_eq!(a == b, cross);
        }
    }
}

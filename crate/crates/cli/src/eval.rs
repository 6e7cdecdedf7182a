//! Evaluation of parsed expressions against the core algebra.

use jordan_hall::derived::{self, DerivedBasis, DerivedElem, RootObject};
use jordan_hall::hall::{self, HallElem, TensorHallElem};
use jordan_hall::symfunc::{SymBasis, SymFunc, SymRing, TensorSymFunc};
use jordan_hall::{LinComb, Partition, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::syntax::{BinOp, Expr, Func};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("type mismatch: {0}")]
    Type(String),
    #[error("{0}")]
    Argument(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("q = {0} is a pole of {1}")]
    Pole(BigRational, String),
    #[error("v = sqrt({0}) is irrational; the value has odd powers of v")]
    IrrationalV(BigRational),
    /// Degree bound or enumeration budget.
    #[error(transparent)]
    Cap(jordan_hall::Error),
    #[error("resource limit: {0}")]
    Limit(String),
}

/// Largest total weight of a derived or Hall value.
pub const MAX_WEIGHT: usize = 12;
/// Largest degree in `v` of a scalar built by `^`.
pub const MAX_SCALAR_DEGREE: usize = 4096;
/// Largest `r` or `d` accepted by `T(r, d)`.
pub const MAX_TORSION: usize = 24;

fn derived_weight(x: &DerivedElem) -> usize {
    x.terms.keys().map(RootObject::total_weight).max().unwrap_or(0)
}

fn tensor_weight(x: &TensorHallElem) -> usize {
    x.keys().map(|(a, b)| a.weight() + b.weight()).max().unwrap_or(0)
}

fn weight_limit(w: usize) -> EvalResult<()> {
    if w > MAX_WEIGHT {
        Err(EvalError::Limit(format!("total weight {w} exceeds {MAX_WEIGHT}")))
    } else {
        Ok(())
    }
}

fn scalar_degree(s: &Scalar) -> usize {
    s.numer().degree().unwrap_or(0).max(s.denom().degree().unwrap_or(0))
}

impl From<jordan_hall::Error> for EvalError {
    fn from(e: jordan_hall::Error) -> Self {
        match e {
            jordan_hall::Error::DegreeBound { .. } | jordan_hall::Error::Budget(_) => EvalError::Cap(e),
            other => EvalError::Argument(other.to_string()),
        }
    }
}

pub type EvalResult<T> = Result<T, EvalError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(Scalar),
    Derived(DerivedElem),
    Sym(SymFunc),
    SymTensor(TensorSymFunc),
    HallTensor(TensorHallElem),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Derived(_) => "derived element",
            Value::Sym(_) => "symmetric function",
            Value::SymTensor(_) => "symmetric tensor",
            Value::HallTensor(_) => "Hall tensor",
        }
    }

    pub fn scale(&self, c: &Scalar) -> Value {
        match self {
            Value::Scalar(s) => Value::Scalar(s * c),
            Value::Derived(x) => Value::Derived(x.scale(c)),
            Value::Sym(f) => Value::Sym(f.scale(c)),
            Value::SymTensor(t) => Value::SymTensor(t.scale(c)),
            Value::HallTensor(t) => Value::HallTensor(t.scale(c)),
        }
    }

    /// Apply `f` to every coefficient.
    pub fn try_map_coeffs(&self, f: impl Fn(&Scalar) -> EvalResult<Scalar>) -> EvalResult<Value> {
        fn go<K: Ord + Clone>(x: &LinComb<K>, f: &impl Fn(&Scalar) -> EvalResult<Scalar>) -> EvalResult<LinComb<K>> {
            let mut out = LinComb::zero();
            for (k, c) in x.iter() {
                out.add_term(k.clone(), &f(c)?);
            }
            Ok(out)
        }
        Ok(match self {
            Value::Scalar(s) => Value::Scalar(f(s)?),
            Value::Derived(x) => Value::Derived(DerivedElem::new(x.basis, go(&x.terms, &f)?)),
            Value::Sym(x) => Value::Sym(SymFunc::new(x.basis, go(&x.terms, &f)?)),
            Value::SymTensor(x) => Value::SymTensor(TensorSymFunc::new(x.basis, go(&x.terms, &f)?)),
            Value::HallTensor(x) => Value::HallTensor(go(x, &f)?),
        })
    }
}

pub fn hall_value(x: &HallElem) -> Value {
    Value::Derived(derived::psi_plus(x))
}

/// The degree-0 part, if `x` has nothing else.
pub fn as_hall(x: &DerivedElem) -> Option<HallElem> {
    let nat = derived::to_natural(x);
    let mut out = HallElem::zero();
    for (k, c) in nat.terms.iter() {
        if !k.h1.is_empty() {
            return None;
        }
        out.add_term(k.h0.clone(), c);
    }
    Some(out)
}

#[derive(Debug, Clone, Default)]
pub struct Context {
    pub ring: SymRing,
    /// Basis products are returned in; `None` means natural.
    pub basis: Option<DerivedBasis>,
    pub sym_basis: Option<SymBasis>,
}

impl Context {
    fn product_basis(&self) -> DerivedBasis {
        self.basis.unwrap_or_default()
    }

    fn sym_out(&self, default: SymBasis) -> SymBasis {
        self.sym_basis.unwrap_or(default)
    }

    pub fn eval(&self, e: &Expr) -> EvalResult<Value> {
        match e {
            Expr::Int(n) => Ok(Value::Scalar(Scalar::from_bigint(n.clone()))),
            Expr::Q => Ok(Value::Scalar(Scalar::q())),
            Expr::V => Ok(Value::Scalar(Scalar::v())),
            Expr::Root(a, b) => {
                weight_limit(a.weight() + b.weight())?;
                Ok(Value::Derived(DerivedElem::natural(RootObject::new(
                    a.clone(),
                    b.clone(),
                ))))
            }
            Expr::Sym(b, l) => {
                let f = SymFunc::elem(*b, l.clone());
                // Surface the degree bound at the literal.
                self.ring.convert(&f, *b)?;
                Ok(Value::Sym(f))
            }
            Expr::Neg(x) => Ok(self.eval(x)?.scale(&Scalar::from_int(-1))),
            Expr::Bin(op, a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.binary(*op, a, b)
            }
            Expr::Pow(b, k) => {
                let b = self.eval(b)?;
                self.power(b, *k)
            }
            Expr::Call(f, args) => self.call(*f, args),
        }
    }

    fn binary(&self, op: BinOp, a: Value, b: Value) -> EvalResult<Value> {
        match op {
            BinOp::Add => self.add(a, b),
            BinOp::Sub => self.add(a, b.scale(&Scalar::from_int(-1))),
            BinOp::Mul => self.mul(a, b),
            BinOp::Div => match b {
                Value::Scalar(s) => {
                    let inv = s.inv().ok_or(EvalError::DivisionByZero)?;
                    Ok(a.scale(&inv))
                }
                other => Err(EvalError::Type(format!("cannot divide by a {}", other.kind()))),
            },
            BinOp::Tensor => self.tensor(a, b),
        }
    }

    fn add(&self, a: Value, b: Value) -> EvalResult<Value> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
            (Value::Derived(x), Value::Derived(y)) => Value::Derived(x.add(&y)),
            (Value::Sym(x), Value::Sym(y)) => Value::Sym(self.ring.add(&x, &y)?),
            (Value::SymTensor(x), Value::SymTensor(y)) => {
                let y = self.ring.tensor_convert(&y, x.basis)?;
                Value::SymTensor(TensorSymFunc::new(x.basis, x.terms.add(&y.terms)))
            }
            (Value::HallTensor(x), Value::HallTensor(y)) => Value::HallTensor(x.add(&y)),
            (a, b) => return Err(EvalError::Type(format!("cannot add a {} and a {}", a.kind(), b.kind()))),
        })
    }

    fn mul(&self, a: Value, b: Value) -> EvalResult<Value> {
        Ok(match (a, b) {
            (Value::Scalar(s), x) | (x, Value::Scalar(s)) => x.scale(&s),
            (Value::Derived(x), Value::Derived(y)) => {
                weight_limit(derived_weight(&x) + derived_weight(&y))?;
                Value::Derived(derived::derived_product(&x, &y, self.product_basis()))
            }
            (Value::Sym(x), Value::Sym(y)) => Value::Sym(self.ring.multiply(&x, &y)?),
            (Value::SymTensor(x), Value::SymTensor(y)) => Value::SymTensor(self.ring.tensor_multiply(&x, &y)?),
            (Value::HallTensor(x), Value::HallTensor(y)) => {
                weight_limit(tensor_weight(&x) + tensor_weight(&y))?;
                Value::HallTensor(hall::tensor_product(&x, &y))
            }
            (a, b) => {
                return Err(EvalError::Type(format!(
                    "cannot multiply a {} by a {}",
                    a.kind(),
                    b.kind()
                )))
            }
        })
    }

    fn tensor(&self, a: Value, b: Value) -> EvalResult<Value> {
        match (a, b) {
            (Value::Derived(x), Value::Derived(y)) => {
                let (Some(x), Some(y)) = (as_hall(&x), as_hall(&y)) else {
                    return Err(EvalError::Type("tensor legs must lie in degree 0".into()));
                };
                Ok(Value::HallTensor(hall::tensor(&x, &y)))
            }
            (Value::Sym(x), Value::Sym(y)) => {
                let y = self.ring.convert(&y, x.basis)?;
                let mut out = LinComb::zero();
                for (l, s) in x.terms.iter() {
                    for (r, t) in y.terms.iter() {
                        out.add_term((l.clone(), r.clone()), &(s * t));
                    }
                }
                let t = TensorSymFunc::new(x.basis, out);
                self.ring.tensor_convert(&t, x.basis)?;
                Ok(Value::SymTensor(t))
            }
            (a, b) => Err(EvalError::Type(format!(
                "cannot tensor a {} with a {}",
                a.kind(),
                b.kind()
            ))),
        }
    }

    fn power(&self, b: Value, k: i64) -> EvalResult<Value> {
        if let Value::Scalar(s) = &b {
            let deg = (scalar_degree(s) as u128) * u128::from(k.unsigned_abs());
            if deg > MAX_SCALAR_DEGREE as u128 {
                return Err(EvalError::Limit(format!(
                    "power has degree {deg}, above {MAX_SCALAR_DEGREE}"
                )));
            }
            return s.pow(k).map(Value::Scalar).ok_or(EvalError::DivisionByZero);
        }
        if k < 0 {
            return Err(EvalError::Type(format!("negative power of a {}", b.kind())));
        }
        let mut acc = match &b {
            Value::Derived(_) => Value::Derived(DerivedElem::unit()),
            Value::Sym(f) => Value::Sym(SymFunc::one(f.basis)),
            Value::SymTensor(t) => Value::SymTensor(TensorSymFunc::new(
                t.basis,
                LinComb::basis((Partition::empty(), Partition::empty())),
            )),
            Value::HallTensor(_) => Value::HallTensor(LinComb::basis((Partition::empty(), Partition::empty()))),
            Value::Scalar(_) => unreachable!(),
        };
        for _ in 0..k {
            acc = self.mul(acc, b.clone())?;
        }
        Ok(acc)
    }

    fn arity(f: Func, args: &[Expr], n: usize) -> EvalResult<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(EvalError::Argument(format!(
                "{}() takes {n} argument{}, got {}",
                f.name(),
                if n == 1 { "" } else { "s" },
                args.len()
            )))
        }
    }

    fn int_arg(&self, f: Func, e: &Expr) -> EvalResult<usize> {
        let v = self.eval(e)?;
        let r = match &v {
            Value::Scalar(s) => s.as_rational(),
            _ => None,
        };
        r.filter(|r| r.is_integer() && !r.is_negative())
            .and_then(|r| r.to_integer().to_usize())
            .ok_or_else(|| EvalError::Argument(format!("{}() takes nonnegative integers, got {e}", f.name())))
    }

    fn partition_args(&self, f: Func, args: &[Expr]) -> EvalResult<Partition> {
        let parts = args
            .iter()
            .map(|a| self.int_arg(f, a))
            .collect::<EvalResult<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(EvalError::Argument(format!("{}() parts must be positive", f.name())));
        }
        Ok(Partition::from_unsorted(parts))
    }

    fn hall_arg(&self, f: Func, v: Value) -> EvalResult<HallElem> {
        match v {
            Value::Derived(x) => {
                as_hall(&x).ok_or_else(|| EvalError::Type(format!("{}() needs an element of degree 0", f.name())))
            }
            other => Err(EvalError::Type(format!(
                "{}() needs a Hall element, got a {}",
                f.name(),
                other.kind()
            ))),
        }
    }

    fn call(&self, f: Func, args: &[Expr]) -> EvalResult<Value> {
        match f {
            Func::Delta => {
                Self::arity(f, args, 1)?;
                let x = self.hall_arg(f, self.eval(&args[0])?)?;
                Ok(Value::HallTensor(hall::coproduct(&x)))
            }
            Func::Pair => {
                Self::arity(f, args, 2)?;
                let (a, b) = (self.eval(&args[0])?, self.eval(&args[1])?);
                match (a, b) {
                    (Value::Derived(x), Value::Derived(y)) => {
                        let x = self.hall_arg(f, Value::Derived(x))?;
                        let y = self.hall_arg(f, Value::Derived(y))?;
                        Ok(Value::Scalar(hall::hopf_pairing(&x, &y)))
                    }
                    (Value::Sym(x), Value::Sym(y)) => Ok(Value::Scalar(self.ring.paper_pairing(&x, &y)?)),
                    (Value::HallTensor(x), Value::HallTensor(y)) => Ok(Value::Scalar(hall::tensor_pairing(&x, &y))),
                    (a, b) => Err(EvalError::Type(format!(
                        "cannot pair a {} with a {}",
                        a.kind(),
                        b.kind()
                    ))),
                }
            }
            Func::Straighten | Func::Natural => {
                Self::arity(f, args, 1)?;
                match self.eval(&args[0])? {
                    Value::Derived(x) if f == Func::Straighten => Ok(Value::Derived(derived::straighten(&x))),
                    Value::Derived(x) => Ok(Value::Derived(derived::to_natural(&x))),
                    other => Err(EvalError::Type(format!(
                        "{}() needs a derived element, got a {}",
                        f.name(),
                        other.kind()
                    ))),
                }
            }
            Func::Psi => {
                Self::arity(f, args, 1)?;
                let x = self.hall_arg(f, self.eval(&args[0])?)?;
                let img = self.ring.psi(&x)?;
                Ok(Value::Sym(self.ring.convert(&img, self.sym_out(SymBasis::Elementary))?))
            }
            Func::PsiInv => {
                Self::arity(f, args, 1)?;
                match self.eval(&args[0])? {
                    Value::Sym(g) => Ok(hall_value(&self.ring.psi_inv(&g)?)),
                    other => Err(EvalError::Type(format!(
                        "psi_inv() needs a symmetric function, got a {}",
                        other.kind()
                    ))),
                }
            }
            Func::Theta => {
                Self::arity(f, args, 1)?;
                match self.eval(&args[0])? {
                    Value::Derived(x) => Ok(Value::SymTensor(
                        self.ring.theta(&x, self.sym_out(SymBasis::Elementary))?,
                    )),
                    other => Err(EvalError::Type(format!(
                        "theta() needs a derived element, got a {}",
                        other.kind()
                    ))),
                }
            }
            Func::Hl => {
                let l = self.partition_args(f, args)?;
                let g = self.ring.hl_p(&l)?;
                Ok(Value::Sym(self.ring.convert(&g, self.sym_out(SymBasis::Monomial))?))
            }
            Func::P | Func::E | Func::M => {
                let l = self.partition_args(f, args)?;
                let b = match f {
                    Func::P => SymBasis::Power,
                    Func::E => SymBasis::Elementary,
                    _ => SymBasis::Monomial,
                };
                let g = SymFunc::elem(b, l);
                self.ring.convert(&g, b)?;
                Ok(Value::Sym(g))
            }
            Func::T => {
                Self::arity(f, args, 2)?;
                let (r, d) = (self.int_arg(f, &args[0])?, self.int_arg(f, &args[1])?);
                if r.max(d) > MAX_TORSION {
                    return Err(EvalError::Limit(format!("T(r, d) takes r, d ≤ {MAX_TORSION}")));
                }
                Ok(hall_value(&self.ring.torsion_t(r, d)?))
            }
        }
    }

    /// Bring a top-level result into the bases selected by the flags.
    pub fn present(&self, v: Value) -> EvalResult<Value> {
        Ok(match v {
            Value::Derived(x) => match self.basis {
                Some(b) => Value::Derived(derived::to_basis(&x, b)),
                None => Value::Derived(x),
            },
            Value::Sym(g) => match self.sym_basis {
                Some(b) => Value::Sym(self.ring.convert(&g, b)?),
                None => Value::Sym(g),
            },
            Value::SymTensor(t) => match self.sym_basis {
                Some(b) => Value::SymTensor(self.ring.tensor_convert(&t, b)?),
                None => Value::SymTensor(t),
            },
            other => other,
        })
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Numeric specialization at a rational `q`.
#[derive(Debug, Clone)]
pub struct Specialization {
    pub q: BigRational,
    v: Option<BigRational>,
}

impl Specialization {
    pub fn new(q: BigRational) -> Self {
        let v = exact_sqrt(q.numer())
            .zip(exact_sqrt(q.denom()))
            .map(|(a, b)| BigRational::new(a, b));
        Specialization { q, v }
    }

    pub fn scalar(&self, s: &Scalar) -> EvalResult<Scalar> {
        let r = if s.is_even() {
            s.eval_q(&self.q)
        } else {
            let v = self.v.as_ref().ok_or_else(|| EvalError::IrrationalV(self.q.clone()))?;
            s.eval_v(v)
        };
        r.map(|r| Scalar::from_rational(&r))
            .ok_or_else(|| EvalError::Pole(self.q.clone(), s.render()))
    }

    pub fn value(&self, v: &Value) -> EvalResult<Value> {
        v.try_map_coeffs(|s| self.scalar(s))
    }
}

/// Parse a `--q` argument such as `3`, `-1` or `3/2`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let r: BigRational = s.trim().parse().ok()?;
    if r.denom().is_zero() {
        return None;
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;
    use jordan_hall::part;

    fn ev(s: &str) -> EvalResult<Value> {
        Context::default().eval(&parse(s).unwrap())
    }

    #[test]
    fn sector_product() {
        let Value::Derived(x) = ev("u[1] * u[;1]").unwrap() else {
            panic!()
        };
        let want = DerivedElem::natural(RootObject::new(part![1], part![1]))
            .add(&DerivedElem::unit().scale(&(&Scalar::q() - &Scalar::one())));
        assert_eq!(x, want);
    }

    #[test]
    fn type_errors() {
        assert!(matches!(ev("pair(u[1], e[1])"), Err(EvalError::Type(_))));
        assert!(matches!(ev("u[1] + e[1]"), Err(EvalError::Type(_))));
        assert!(matches!(ev("psi(u[;1])"), Err(EvalError::Type(_))));
        assert!(matches!(ev("u[1] / u[1]"), Err(EvalError::Type(_))));
        assert!(matches!(ev("1/(q-q)"), Err(EvalError::DivisionByZero)));
        assert!(matches!(ev("e(9)"), Err(EvalError::Cap(_))));
        assert!(matches!(ev("T(0,1)"), Err(EvalError::Argument(_))));
        assert!(matches!(ev("u[13]"), Err(EvalError::Limit(_))));
        assert!(matches!(ev("u[1]^13"), Err(EvalError::Limit(_))));
        assert!(matches!(ev("(q+1)^100000"), Err(EvalError::Limit(_))));
        assert!(matches!(ev("T(100,1)"), Err(EvalError::Limit(_))));
    }

    #[test]
    fn scalars_and_numeric() {
        let Value::Scalar(s) = ev("q^2 - q").unwrap() else {
            panic!()
        };
        let sp = Specialization::new(BigRational::from_integer(3.into()));
        assert_eq!(sp.scalar(&s).unwrap(), Scalar::from_int(6));
        assert!(sp.scalar(&Scalar::v()).is_err());
        let sp4 = Specialization::new(BigRational::from_integer(4.into()));
        assert_eq!(sp4.scalar(&Scalar::v()).unwrap(), Scalar::from_int(2));
        let pole = (&Scalar::q() - &Scalar::from_int(3)).inv().unwrap();
        assert!(matches!(sp.scalar(&pole), Err(EvalError::Pole(..))));
    }

    #[test]
    fn functions() {
        let Value::Scalar(s) = ev("pair(u[1], u[1])").unwrap() else {
            panic!()
        };
        assert_eq!(s, &Scalar::q() - &Scalar::one());
        assert_eq!(ev("e(2,1)").unwrap(), ev("e[2,1]").unwrap());
        assert_eq!(ev("psi_inv(psi(u[2,1]))").unwrap(), ev("u[2,1]").unwrap());
        assert!(matches!(ev("delta(u[1])").unwrap(), Value::HallTensor(_)));
        assert_eq!(
            ev("T(3,2)").unwrap(),
            Value::Derived(DerivedElem::zero(DerivedBasis::Natural))
        );
    }
}

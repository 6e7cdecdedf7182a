//! Euler forms on the Grothendieck group, as twist factors in `Q(v)`.
//!
//! A form is stored through its exponent `χ(a, b)` with `⟨a, b⟩ = q^χ`, so the
//! half twist `⟨a, b⟩^{1/2}` is `v^χ`. Classes of the Jordan quiver are
//! dimensions, hence plain integers.

use crate::Scalar;

pub trait EulerForm: Send + Sync {
    fn exponent(&self, a: i64, b: i64) -> i64;

    /// `⟨a, b⟩ = q^{χ(a,b)}`.
    fn value(&self, a: i64, b: i64) -> Scalar {
        Scalar::q_pow(self.exponent(a, b))
    }

    /// `⟨a, b⟩^{1/2}`.
    fn half_twist(&self, a: i64, b: i64) -> Scalar {
        Scalar::v_pow(self.exponent(a, b))
    }
}

/// The Euler form of nilpotent Jordan-quiver representations, which is
/// identically one: `dim Hom(M, N) = dim Ext¹(M, N)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct JordanEulerForm;

impl EulerForm for JordanEulerForm {
    fn exponent(&self, _a: i64, _b: i64) -> i64 {
        0
    }
}

/// The form every product in this crate is twisted by.
pub const EULER: JordanEulerForm = JordanEulerForm;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jordan_form_is_trivial_and_skew() {
        for a in -3..4 {
            for b in -3..4 {
                assert!(EULER.value(a, b).is_one());
                assert!((&EULER.value(a, b) * &EULER.value(b, a)).is_one());
                assert!(EULER.half_twist(a, b).is_one());
            }
        }
    }
}

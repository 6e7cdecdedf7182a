//! Exact arithmetic in the twisted derived Hall algebra of the root category
//! of nilpotent Jordan-quiver representations.
//!
//! Layers, bottom up:
//!
//! * [`scalar`], [`partition`], [`qcomb`]: the field `Q(v)`, partitions and
//!   the q-counting formulas every structure constant is built from;
//! * [`hall`]: the twisted Hall algebra with Green's coproduct and the Hopf
//!   pairing;
//! * [`derived`]: the derived Hall algebra of the root category, its natural
//!   and normal bases, and the Drinfeld-double relation;
//! * [`symfunc`]: symmetric functions, Hall–Littlewood polynomials and the
//!   maps `ψ` and `Θ` onto them;
//! * [`oracle`]: brute-force counts over `F_2` and `F_3` that every formula
//!   above is checked against.

pub mod derived;
pub mod error;
pub mod euler;
pub mod hall;
pub mod lincomb;
mod memo;
pub mod oracle;
pub mod partition;
pub mod poly;
pub mod qcomb;
pub mod scalar;
pub mod symfunc;

pub use error::{Error, Result};
pub use lincomb::LinComb;
pub use partition::Partition;
pub use scalar::Scalar;

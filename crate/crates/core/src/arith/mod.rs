//! Exact rational, p-adic and cyclotomic arithmetic.

pub mod cyclo;
pub mod int;
pub mod iwasawa;
pub mod padic;
pub mod point;

pub use cyclo::CycNumber;
pub use iwasawa::{angle, exponent_l, log_principal, teichmuller};
pub use padic::PAdic;
pub use point::{eval_point, ArithPoint, PointKind};

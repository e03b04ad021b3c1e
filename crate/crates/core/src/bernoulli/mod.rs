//! Generalized Bernoulli numbers, Dirichlet L-values at non-positive integers and the
//! Kubota–Leopoldt function.

pub mod kl;
pub mod numbers;

pub use kl::{kl_eval, kl_exact, kl_residue, EulerFactor};
pub use numbers::{bernoulli_number, bernoulli_poly, gen_bernoulli, l_neg};

//! Dirichlet characters, Gauss sums and quadratic characters.

pub mod dirichlet;
pub mod gauss;

pub use dirichlet::{decompose, DirichletChar};
pub use gauss::{gauss_sum, matrix_gauss_closed_form, matrix_gauss_sum, quad_char_sigma, QuadChar};

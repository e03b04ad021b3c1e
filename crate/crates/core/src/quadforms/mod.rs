//! Half-integral matrices, the block matrices I, coset enumeration, local Siegel series
//! and the polynomials B_q.

pub mod blocks;
pub mod bq;
pub mod cosets;
pub mod density;
pub mod matrix;
pub mod poly;

pub use blocks::{enumerate_i, BlockI};
pub use bq::{cohen_oracle, siegel_poly_bq};
pub use cosets::{d_cosets, hnf_with_det, q_power_cosets, CosetRep};
pub use density::{binary_closed_form, f_poly, local_density, siegel_sum};
pub use matrix::{HalfIntMat, IntMatrix};
pub use poly::Poly;

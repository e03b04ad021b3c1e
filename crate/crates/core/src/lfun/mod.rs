//! Euler factors of the standard L-function and the derivative at a trivial zero.

pub mod family;
pub mod satake;
pub mod series;

pub use family::{
    e1_family, gs_derivative, two_var_vanishing_check, DerivativeReport, SatakeFamily, VanishingReport,
};
pub use satake::{
    detect_steinberg, epsilon_factor, euler_dq, euler_e, euler_e1, euler_estar, EulerScalar, PrimeKind,
    SatakeData, SteinbergReport,
};
pub use series::PSeries;

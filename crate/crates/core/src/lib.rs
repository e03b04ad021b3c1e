//! Computational pieces of the two-variable p-adic L-function attached to the
//! standard representation of Siegel modular forms.
//!
//! Modules build on each other bottom-up: [`arith`] supplies the scalar types,
//! [`characters`] and [`bernoulli`] the Dirichlet data, [`quadforms`] the local
//! Siegel series, and [`eisenstein`], [`ordinary`], [`lfun`] the assembled objects.

pub mod arith;
pub mod bernoulli;
pub mod characters;
pub mod cli;
pub mod eisenstein;
pub mod error;
pub mod lfun;
pub mod ordinary;
pub mod quadforms;

pub use error::{Error, Result};

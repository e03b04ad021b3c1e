//! Arithmetic points z ↦ ε(z)·z^k of the Iwasawa algebra.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::cyclo::CycNumber;
use super::iwasawa::angle;
use super::padic::PAdic;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    /// κ = ε[k] in the weight variable.
    Weight,
    /// κ′ = ε[t] in the cyclotomic variable.
    Cyclotomic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArithPoint {
    pub kind: PointKind,
    pub p: u64,
    pub exponent: i64,
    /// ε(u), a root of unity of p-power order.
    pub eps_at_u: CycNumber,
}

impl ArithPoint {
    pub fn weight(p: u64, k: i64) -> Self {
        ArithPoint {
            kind: PointKind::Weight,
            p,
            exponent: k,
            eps_at_u: CycNumber::one(),
        }
    }

    pub fn cyclotomic(p: u64, t: i64) -> Self {
        ArithPoint {
            kind: PointKind::Cyclotomic,
            p,
            exponent: t,
            eps_at_u: CycNumber::one(),
        }
    }

    pub fn has_trivial_eps(&self) -> bool {
        self.eps_at_u == CycNumber::one()
    }

    /// Error unless ε is trivial, the only p-power-order character with values in Z_p.
    pub fn require_trivial_eps(&self) -> Result<()> {
        if self.has_trivial_eps() {
            Ok(())
        } else {
            Err(Error::Unsupported(
                "finite-order part of p-power order has no p-adic value".into(),
            ))
        }
    }
}

/// κ(u^(l_z)) = ε(u^(l_z))·⟨z⟩^k.
pub fn eval_point(kappa: &ArithPoint, z: &BigInt, prec: i64) -> Result<PAdic> {
    kappa.require_trivial_eps()?;
    angle(z, kappa.p, prec)?.pow(kappa.exponent)
}

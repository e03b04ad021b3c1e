//! Level, character and weight data of the Eisenstein family.

use serde::{Deserialize, Serialize};

use crate::arith::int::{gcd, is_prime};
use crate::bernoulli::EulerFactor;
use crate::characters::DirichletChar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EisParams {
    pub g: usize,
    pub p: u64,
    #[serde(rename = "N")]
    pub level: u64,
    #[serde(rename = "N1")]
    pub n1: u64,
    #[serde(rename = "R")]
    pub r: u64,
    /// exponent of the p-power modulus of ε1
    pub n: u32,
    #[serde(rename = "L", default = "one")]
    pub l: u64,
    /// Nebentypus, modulo a divisor of N·p.
    pub phi: DirichletChar,
    pub chi1: DirichletChar,
    pub chi_prime: DirichletChar,
    pub eps1: DirichletChar,
    pub t: i64,
    #[serde(default)]
    pub s: i64,
    #[serde(default)]
    pub euler: EulerFactor,
}

fn one() -> u64 {
    1
}

impl EisParams {
    /// Level one: N = N1 = R = 1, every character trivial.
    pub fn level_one(g: usize, p: u64, t: i64) -> Self {
        EisParams {
            g,
            p,
            level: 1,
            n1: 1,
            r: 1,
            n: 0,
            l: 1,
            phi: DirichletChar::trivial(1),
            chi1: DirichletChar::trivial(1),
            chi_prime: DirichletChar::trivial(1),
            eps1: DirichletChar::trivial(1),
            t,
            s: 0,
            euler: EulerFactor::Corrected,
        }
    }

    pub fn with_phi(mut self, phi: DirichletChar) -> Self {
        self.phi = phi;
        self
    }

    pub fn with_l(mut self, l: u64) -> Self {
        self.l = l;
        self
    }

    pub fn k(&self) -> i64 {
        self.t + self.g as i64 + self.s
    }

    /// χ = χ1·χ′·ε1.
    pub fn chi(&self) -> DirichletChar {
        self.chi1.mul(&self.chi_prime).mul(&self.eps1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.g == 0 {
            return Err(Error::domain("genus must be positive"));
        }
        if self.p < 3 || !is_prime(self.p) {
            return Err(Error::Unsupported(format!("p = {} is not an odd prime", self.p)));
        }
        if self.level == 0 || self.n1 == 0 || self.r == 0 || self.level % self.n1 != 0 {
            return Err(Error::domain("need N1 | N with N, R ≥ 1"));
        }
        if gcd(self.r, self.level * self.p) != 1 {
            return Err(Error::domain("R must be prime to N·p"));
        }
        if self.l == 0 || !is_p_power(self.l, self.p) {
            return Err(Error::domain("L must be a power of p"));
        }
        if (self.level * self.p) % self.phi.modulus() != 0 {
            return Err(Error::domain("φ modulus must divide N·p"));
        }
        if self.n1 % self.chi1.modulus() != 0 {
            return Err(Error::domain("χ1 modulus must divide N1"));
        }
        if self.chi_prime.modulus() != self.r || !self.chi_prime.is_primitive() {
            return Err(Error::domain("χ′ must be primitive modulo R"));
        }
        if !is_p_power(self.eps1.modulus(), self.p) || self.p.pow(self.n) % self.eps1.modulus() != 0 {
            return Err(Error::domain("ε1 modulus must divide p^n"));
        }
        if self.t < 1 || self.s < 0 {
            return Err(Error::domain("need t ≥ 1 and s ≥ 0"));
        }
        Ok(())
    }
}

pub(crate) fn is_p_power(mut m: u64, p: u64) -> bool {
    while m > 1 && m % p == 0 {
        m /= p;
    }
    m == 1
}

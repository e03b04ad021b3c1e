//! Dense univariate polynomials with rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{CycNumber, PAdic};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with −1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Poly { coeffs: vec![] };
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// c·X^k·self.
    pub fn shift_scale(&self, k: usize, c: &BigRational) -> Poly {
        let mut out = vec![BigRational::zero(); k];
        out.extend(self.coeffs.iter().map(|x| x * c));
        Self::from_coeffs(out)
    }

    /// Truncation mod X^n.
    pub fn truncate(&self, n: usize) -> Poly {
        Self::from_coeffs(self.coeffs.iter().take(n).cloned().collect())
    }

    /// Power series inverse mod X^n; the constant term must be nonzero.
    pub fn inverse_series(&self, n: usize) -> Poly {
        let a0 = self.coeff(0);
        assert!(!a0.is_zero(), "series inverse needs a unit constant term");
        let mut out = vec![BigRational::zero(); n];
        if n == 0 {
            return Poly { coeffs: out };
        }
        out[0] = a0.recip();
        for k in 1..n {
            let mut s = BigRational::zero();
            for i in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -s / &a0;
        }
        Self::from_coeffs(out)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_cyc(&self, x: &CycNumber) -> CycNumber {
        self.coeffs.iter().rev().fold(CycNumber::zero(), |acc, c| {
            &(&acc * x) + &CycNumber::from_rational(c.clone())
        })
    }

    pub fn eval_padic(&self, x: &PAdic) -> PAdic {
        let (p, prec) = (x.prime(), x.precision());
        self.coeffs.iter().rev().fold(PAdic::zero(p, prec), |acc, c| {
            &(&acc * x) + &PAdic::from_rational(c, p, prec)
        })
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom() == &BigInt::one())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*X"),
                _ => format!("({c})*X^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

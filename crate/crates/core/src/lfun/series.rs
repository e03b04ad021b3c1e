//! Truncated power series in x = k − k0 over Z_p.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::PAdic;
use crate::error::{Error, Result};

/// Σ_(n < order) c_n·x^n modulo x^order.
#[derive(Clone, Debug, PartialEq)]
pub struct PSeries {
    p: u64,
    precision: i64,
    coeffs: Vec<PAdic>,
}

impl PSeries {
    pub fn new(p: u64, precision: i64, coeffs: Vec<PAdic>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("a series needs at least one coefficient"));
        }
        if coeffs.iter().any(|c| c.prime() != p) {
            return Err(Error::domain("coefficients over a different prime"));
        }
        let coeffs = coeffs.into_iter().map(|c| c.reduce(precision)).collect();
        Ok(PSeries { p, precision, coeffs })
    }

    pub fn from_ints(p: u64, precision: i64, c: &[i64]) -> Result<Self> {
        Self::new(p, precision, c.iter().map(|&x| PAdic::from_int(x, p, precision)).collect())
    }

    pub fn constant(c: PAdic, order: usize) -> Self {
        let (p, n) = (c.prime(), c.precision());
        let mut coeffs = vec![PAdic::zero(p, n); order.max(1)];
        coeffs[0] = c;
        PSeries { p, precision: n, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[PAdic] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> PAdic {
        self.coeffs.get(n).cloned().unwrap_or_else(|| PAdic::zero(self.p, self.precision))
    }

    fn zip_order(&self, o: &PSeries) -> usize {
        self.order().min(o.order())
    }

    pub fn add(&self, o: &PSeries) -> PSeries {
        let n = self.zip_order(o);
        PSeries {
            p: self.p,
            precision: self.precision.min(o.precision),
            coeffs: (0..n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(),
        }
    }

    pub fn neg(&self) -> PSeries {
        PSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }

    pub fn sub(&self, o: &PSeries) -> PSeries {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &PSeries) -> PSeries {
        let n = self.zip_order(o);
        let prec = self.precision.min(o.precision);
        let mut c = vec![PAdic::zero(self.p, prec); n];
        for i in 0..n {
            for j in 0..n - i {
                c[i + j] = &c[i + j] + &(&self.coeffs[i] * &o.coeffs[j]);
            }
        }
        PSeries { p: self.p, precision: prec, coeffs: c }
    }

    pub fn scale(&self, c: &PAdic) -> PSeries {
        PSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    /// 1/f for a unit constant term.
    pub fn inverse(&self) -> Result<PSeries> {
        let a0 = &self.coeffs[0];
        if !a0.is_unit() {
            return Err(Error::domain("series inverse needs a unit constant term"));
        }
        let inv0 = a0.inv()?;
        let n = self.order();
        let mut b: Vec<PAdic> = vec![inv0.clone()];
        for k in 1..n {
            let mut s = PAdic::zero(self.p, self.precision);
            for i in 1..=k {
                s = &s + &(&self.coeffs[i] * &b[k - i]);
            }
            b.push(-&(&s * &inv0));
        }
        Ok(PSeries { coeffs: b, ..self.clone() })
    }

    /// Formal derivative; the order drops by one.
    pub fn derivative(&self) -> PSeries {
        let c: Vec<PAdic> = (1..self.order())
            .map(|i| &self.coeffs[i] * &PAdic::from_int(i as i64, self.p, self.precision))
            .collect();
        if c.is_empty() {
            return PSeries::constant(PAdic::zero(self.p, self.precision), 1);
        }
        PSeries { coeffs: c, ..self.clone() }
    }

    /// The truncated polynomial evaluated at x.
    pub fn eval(&self, x: &PAdic) -> PAdic {
        self.coeffs
            .iter()
            .rev()
            .fold(PAdic::zero(self.p, self.precision), |acc, c| &(&acc * x) + c)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum Coeff {
    Int(i64),
    Text(String),
    PAdic(PAdic),
}

impl Coeff {
    pub(crate) fn to_padic(&self, p: u64, prec: i64) -> std::result::Result<PAdic, String> {
        match self {
            Coeff::Int(x) => Ok(PAdic::from_int(*x, p, prec)),
            Coeff::Text(s) => s
                .parse::<BigInt>()
                .map(|x| PAdic::from_int(x, p, prec))
                .map_err(|_| format!("{s} is not an integer")),
            Coeff::PAdic(x) if x.prime() == p => Ok(x.clone()),
            Coeff::PAdic(_) => Err("coefficient over a different prime".into()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    p: u64,
    precision: i64,
    coeffs: Vec<Coeff>,
}

impl Serialize for PSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            p: self.p,
            precision: self.precision,
            coeffs: self.coeffs.iter().cloned().map(Coeff::PAdic).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = SeriesJson::deserialize(d)?;
        let c = j
            .coeffs
            .iter()
            .map(|c| c.to_padic(j.p, j.precision))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        PSeries::new(j.p, j.precision, c).map_err(D::Error::custom)
    }
}

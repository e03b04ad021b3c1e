//! Capped absolute precision p-adic numbers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub(crate) fn ppow(p: u64, e: i64) -> BigInt {
    debug_assert!(e >= 0);
    BigInt::from(p).pow(e as u32)
}

/// An element p^v·u + O(p^N) of Q_p.
///
/// `unit` is prime to p and reduced mod p^(N−v). Zero is stored with v = N and unit 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PAdic {
    p: u64,
    prec: i64,
    val: i64,
    unit: BigInt,
}

fn strip_p(mut n: BigInt, p: u64) -> (BigInt, i64) {
    let pb = BigInt::from(p);
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return (n, v);
        }
        n = q;
        v += 1;
    }
}

impl PAdic {
    pub fn zero(p: u64, prec: i64) -> Self {
        PAdic {
            p,
            prec,
            val: prec,
            unit: BigInt::zero(),
        }
    }

    pub fn one(p: u64, prec: i64) -> Self {
        Self::from_int(1, p, prec)
    }

    fn normalize(p: u64, prec: i64, mut val: i64, mut n: BigInt) -> Self {
        if n.is_zero() || val >= prec {
            return Self::zero(p, prec);
        }
        let pb = BigInt::from(p);
        loop {
            let (q, r) = n.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            n = q;
            val += 1;
        }
        if val >= prec {
            return Self::zero(p, prec);
        }
        let unit = n.mod_floor(&ppow(p, prec - val));
        PAdic {
            p,
            prec,
            val,
            unit,
        }
    }

    pub fn from_int(n: impl Into<BigInt>, p: u64, prec: i64) -> Self {
        Self::normalize(p, prec, 0, n.into())
    }

    /// Embeds a rational number; denominators divisible by p give negative valuation.
    pub fn from_rational(q: &BigRational, p: u64, prec: i64) -> Self {
        if q.is_zero() {
            return Self::zero(p, prec);
        }
        let (nu, nv) = strip_p(q.numer().clone(), p);
        let (du, dv) = strip_p(q.denom().clone(), p);
        let val = nv - dv;
        if val >= prec {
            return Self::zero(p, prec);
        }
        let m = ppow(p, prec - val);
        let inv = du
            .mod_floor(&m)
            .modpow(&(&m - &m / BigInt::from(p) - 1), &m);
        Self::normalize(p, prec, val, nu.mod_floor(&m) * inv)
    }

    /// Constructs p^v·u directly; `unit` must be prime to p.
    pub fn from_parts(p: u64, prec: i64, val: i64, unit: BigInt) -> Result<Self> {
        if unit.is_zero() {
            return Ok(Self::zero(p, prec));
        }
        if (&unit % BigInt::from(p)).is_zero() {
            return Err(Error::domain("unit part divisible by p"));
        }
        Ok(Self::normalize(p, prec, val, unit))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Valuation; equals the precision for zero.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.val == 0 && !self.is_zero()
    }

    /// Canonical representative in [0, p^N) of an integral element.
    pub fn residue(&self) -> Result<BigInt> {
        if self.val < 0 {
            return Err(Error::domain("non-integral p-adic number has no residue"));
        }
        if self.prec <= 0 {
            return Ok(BigInt::zero());
        }
        Ok((&self.unit * ppow(self.p, self.val)).mod_floor(&ppow(self.p, self.prec)))
    }

    /// Residue as a machine integer (small moduli only).
    pub fn residue_u64(&self) -> Result<u64> {
        self.residue()?
            .to_u64()
            .ok_or_else(|| Error::Precision("residue does not fit in 64 bits".into()))
    }

    /// Rational number p^v·u with u the stored representative.
    pub fn to_rational(&self) -> BigRational {
        let u = BigRational::from_integer(self.unit.clone());
        if self.val >= 0 {
            u * BigRational::from_integer(ppow(self.p, self.val))
        } else {
            u / BigRational::from_integer(ppow(self.p, -self.val))
        }
    }

    /// Lowers the absolute precision.
    pub fn reduce(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::normalize(self.p, prec, self.val, self.unit.clone())
    }

    /// Multiplication by p^k; shifts valuation and precision together.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero(self.p, self.prec + k);
        }
        PAdic {
            p: self.p,
            prec: self.prec + k,
            val: self.val + k,
            unit: self.unit.clone(),
        }
    }

    /// True when self ≡ other mod p^m with both known at least that far.
    pub fn eq_mod(&self, other: &PAdic, m: i64) -> bool {
        let d = self - other;
        d.prec >= m && d.val >= m
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one(self.p, self.prec).div(self)
    }

    pub fn div(&self, b: &PAdic) -> Result<Self> {
        assert_eq!(self.p, b.p, "mixed primes");
        if b.is_zero() {
            return Err(Error::domain("p-adic division by zero"));
        }
        let val = self.val - b.val;
        let prec = (self.prec - b.val)
            .min(b.prec + self.val - 2 * b.val)
            .min(self.prec.min(b.prec));
        if self.is_zero() {
            return Ok(Self::zero(self.p, prec));
        }
        if prec <= val {
            return Ok(Self::zero(self.p, prec));
        }
        let m = ppow(self.p, prec - val);
        let inv = b
            .unit
            .mod_floor(&m)
            .modpow(&(&m - &m / BigInt::from(self.p) - 1), &m);
        Ok(Self::normalize(self.p, prec, val, &self.unit * inv))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = PAdic::one(self.p, self.prec.max(1));
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

impl Add for &PAdic {
    type Output = PAdic;
    fn add(self, b: &PAdic) -> PAdic {
        assert_eq!(self.p, b.p, "mixed primes");
        let prec = self.prec.min(b.prec);
        let v = self.val.min(b.val);
        if v >= prec {
            return PAdic::zero(self.p, prec);
        }
        let n = &self.unit * ppow(self.p, self.val - v) + &b.unit * ppow(self.p, b.val - v);
        PAdic::normalize(self.p, prec, v, n)
    }
}

impl Neg for &PAdic {
    type Output = PAdic;
    fn neg(self) -> PAdic {
        PAdic::normalize(self.p, self.prec, self.val, -&self.unit)
    }
}

impl Sub for &PAdic {
    type Output = PAdic;
    fn sub(self, b: &PAdic) -> PAdic {
        self + &(-b)
    }
}

impl Mul for &PAdic {
    type Output = PAdic;
    fn mul(self, b: &PAdic) -> PAdic {
        assert_eq!(self.p, b.p, "mixed primes");
        let prec = (self.prec + b.val)
            .min(b.prec + self.val)
            .min(self.prec.max(b.prec));
        let prec = if self.val >= 0 && b.val >= 0 {
            prec.min(self.prec.min(b.prec))
        } else {
            prec
        };
        PAdic::normalize(self.p, prec, self.val + b.val, &self.unit * &b.unit)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for PAdic {
            type Output = PAdic;
            fn $f(self, b: PAdic) -> PAdic {
                (&self).$f(&b)
            }
        }
        impl $tr<&PAdic> for PAdic {
            type Output = PAdic;
            fn $f(self, b: &PAdic) -> PAdic {
                (&self).$f(b)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for PAdic {
    type Output = PAdic;
    fn neg(self) -> PAdic {
        -&self
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "O({}^{})", self.p, self.prec)
        } else {
            write!(f, "{}*{}^{} + O({}^{})", self.unit, self.p, self.val, self.p, self.prec)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PAdicJson {
    p: u64,
    precision: i64,
    valuation: i64,
    unit: String,
}

impl Serialize for PAdic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PAdicJson {
            p: self.p,
            precision: self.prec,
            valuation: self.val,
            unit: self.unit.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PAdic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PAdicJson::deserialize(d)?;
        if j.p < 3 || !crate::arith::int::is_prime(j.p) {
            return Err(D::Error::custom("p must be an odd prime"));
        }
        let unit: BigInt = j
            .unit
            .parse()
            .map_err(|_| D::Error::custom("unit is not a decimal integer"))?;
        if unit.is_negative() {
            return Err(D::Error::custom("unit must be nonnegative"));
        }
        PAdic::from_parts(j.p, j.precision, j.valuation, unit).map_err(D::Error::custom)
    }
}

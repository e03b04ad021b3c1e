//! Exact arithmetic in cyclotomic fields Q(ζ_m).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::int::{divisors, euler_phi, lcm, primitive_root};
use super::iwasawa::teichmuller;
use super::padic::PAdic;
use crate::error::{Error, Result};

fn cyclotomic_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients (low degree first) of the m-th cyclotomic polynomial.
pub fn cyclotomic_poly(m: u64) -> Arc<Vec<i64>> {
    if let Some(c) = cyclotomic_cache().read().unwrap().get(&m) {
        return c.clone();
    }
    // x^m - 1 divided by every Φ_d with d | m, d < m
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let div = cyclotomic_poly(d);
        let dd = div.len() - 1;
        let mut quot = vec![0i64; num.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = num[i + dd];
            quot[i] = c;
            for (j, &dj) in div.iter().enumerate() {
                num[i + j] -= c * dj;
            }
        }
        num = quot;
    }
    let out = Arc::new(num);
    cyclotomic_cache().write().unwrap().insert(m, out.clone());
    out
}

/// An element of Q(ζ_m) in the power basis 1, ζ, …, ζ^(φ(m)−1).
#[derive(Clone, Debug)]
pub struct CycNumber {
    order: u64,
    coeffs: Vec<BigRational>,
}

fn reduce_mod_phi(m: u64, mut v: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_poly(m);
    let deg = phi.len() - 1;
    if v.len() < deg {
        v.resize(deg, BigRational::zero());
        return v;
    }
    for i in (deg..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[i], BigRational::zero());
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                v[i - deg + j] -= &c * BigRational::from_integer(pj.into());
            }
        }
    }
    v.truncate(deg);
    v
}

impl CycNumber {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycNumber {
            order: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// ζ_m^e.
    pub fn root_of_unity(m: u64, e: i64) -> Self {
        let mut v = vec![BigRational::zero(); m as usize];
        v[e.rem_euclid(m as i64) as usize] = BigRational::one();
        Self::from_exponent_sums(m, v)
    }

    /// Σ_e sums[e]·ζ_m^e for a vector of length m.
    pub fn from_exponent_sums(m: u64, sums: Vec<BigRational>) -> Self {
        assert_eq!(sums.len() as u64, m);
        CycNumber {
            order: m,
            coeffs: reduce_mod_phi(m, sums),
        }
    }

    /// Coordinates given directly in the power basis (length φ(m)).
    pub fn from_coeffs(m: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        if m == 0 || coeffs.len() as u64 != euler_phi(m) {
            return Err(Error::Parse(format!(
                "order {m} needs {} coefficients",
                euler_phi(m.max(1))
            )));
        }
        Ok(CycNumber { order: m, coeffs })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        let r = self.in_subfield(1)?;
        Some(r.coeffs[0].clone())
    }

    /// Rewrites the element over ζ_big with m | big.
    pub fn lift(&self, big: u64) -> Self {
        if big == self.order {
            return self.clone();
        }
        assert_eq!(big % self.order, 0, "lift target must be a multiple");
        let step = (big / self.order) as usize;
        let mut v = vec![BigRational::zero(); big as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[(i * step) % big as usize] += c;
        }
        Self::from_exponent_sums(big, v)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Complex conjugation ζ ↦ ζ^(−1).
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        let mut v = vec![BigRational::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[(m - i) % m] += c;
        }
        Self::from_exponent_sums(self.order, v)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = CycNumber::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value under ζ_m ↦ exp(2πi/m).
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.order as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
            let x = c.to_f64().unwrap_or(f64::NAN);
            let th = 2.0 * std::f64::consts::PI * i as f64 / m;
            (re + x * th.cos(), im + x * th.sin())
        })
    }

    /// Expresses the element over ζ_d (d | m) when it lies in Q(ζ_d).
    pub fn in_subfield(&self, d: u64) -> Option<Self> {
        if self.order % d != 0 {
            return None;
        }
        if d == self.order {
            return Some(self.clone());
        }
        let n = self.coeffs.len();
        let k = euler_phi(d) as usize;
        // columns: images of ζ_d^j in the big basis; solve A x = coeffs
        let cols: Vec<Vec<BigRational>> = (0..k)
            .map(|j| CycNumber::root_of_unity(d, j as i64).lift(self.order).coeffs)
            .collect();
        let mut rows: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut r: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
                r.push(self.coeffs[i].clone());
                r
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..k {
            let Some(pr) = (pivot_row..n).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(pivot_row, pr);
            let inv = rows[pivot_row][col].recip();
            for x in rows[pivot_row].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != pivot_row && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in 0..=k {
                        let t = &f * &rows[pivot_row][c];
                        rows[r][c] -= t;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        if rows[pivot_row..].iter().any(|r| !r[k].is_zero()) {
            return None;
        }
        let mut x = vec![BigRational::zero(); k];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rows[r][k].clone();
        }
        Some(CycNumber {
            order: d,
            coeffs: x,
        })
    }

    /// The same element over the smallest ζ_d containing it.
    pub fn minimal(&self) -> Self {
        for d in divisors(self.order) {
            if let Some(x) = self.in_subfield(d) {
                return x;
            }
        }
        self.clone()
    }

    /// p-adic image under ζ_m ↦ ω(g)^((p−1)/m), g the least primitive root mod p.
    ///
    /// Needs the element to lie in some Q(ζ_d) with d | p − 1.
    pub fn to_padic(&self, p: u64, prec: i64) -> Result<PAdic> {
        let x = if (p - 1) % self.order == 0 {
            self.clone()
        } else {
            let y = self.minimal();
            if (p - 1) % y.order != 0 {
                return Err(Error::Unsupported(format!(
                    "value of order {} does not embed in Q_{p}",
                    y.order
                )));
            }
            y
        };
        let work = prec + 2;
        let g = primitive_root(p, 1);
        let zeta = teichmuller(&BigInt::from(g), p, work)?
            .pow(((p - 1) / x.order) as i64)?;
        let mut acc = PAdic::zero(p, work);
        let mut power = PAdic::one(p, work);
        for c in &x.coeffs {
            if !c.is_zero() {
                acc = &acc + &(&PAdic::from_rational(c, p, work) * &power);
            }
            power = &power * &zeta;
        }
        Ok(acc.reduce(prec))
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        let m = lcm(self.order, other.order);
        self.lift(m).coeffs == other.lift(m).coeffs
    }
}

impl Eq for CycNumber {}

impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, b: &CycNumber) -> CycNumber {
        let m = lcm(self.order, b.order);
        let (x, y) = (self.lift(m), b.lift(m));
        CycNumber {
            order: m,
            coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, b: &CycNumber) -> CycNumber {
        self + &(-b)
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, b: &CycNumber) -> CycNumber {
        if self.order == 1 {
            return b.scale(&self.coeffs[0]);
        }
        if b.order == 1 {
            return self.scale(&b.coeffs[0]);
        }
        let m = lcm(self.order, b.order);
        let (x, y) = (self.lift(m), b.lift(m));
        let mu = m as usize;
        let mut v = vec![BigRational::zero(); mu];
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, c) in y.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    v[(i + j) % mu] += a * c;
                }
            }
        }
        CycNumber::from_exponent_sums(m, v)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for CycNumber {
            type Output = CycNumber;
            fn $f(self, b: CycNumber) -> CycNumber {
                (&self).$f(&b)
            }
        }
        impl $tr<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $f(self, b: &CycNumber) -> CycNumber {
                (&self).$f(b)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                _ => format!("({c})*z{}^{i}", self.order),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    order: u64,
    coeffs: Vec<String>,
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycJson {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = CycJson::deserialize(d)?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|c| parse_rational(c).ok_or_else(|| D::Error::custom("bad rational")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CycNumber::from_coeffs(j.order, coeffs).map_err(D::Error::custom)
    }
}

impl CycNumber {
    /// Squared absolute value under the complex embedding, as a float.
    pub fn abs2(&self) -> f64 {
        let (re, im) = self.to_complex();
        re * re + im * im
    }

    pub fn is_negative_rational(&self) -> bool {
        self.as_rational().map(|q| q.is_negative()).unwrap_or(false)
    }

    /// σ_a: ζ ↦ ζ^a for a prime to the order.
    pub fn galois(&self, a: u64) -> Self {
        let m = self.order;
        let mut v = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[(a * i as u64 % m) as usize] += c;
        }
        Self::from_exponent_sums(m, v)
    }

    /// x⁻¹ = ∏_(σ ≠ 1) σ(x) / N(x).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("zero has no inverse"));
        }
        let m = self.order;
        let mut others = Self::one();
        for a in 2..m.max(2) {
            if crate::arith::int::gcd(a, m) == 1 {
                others = &others * &self.galois(a);
            }
        }
        let norm = (self * &others)
            .as_rational()
            .expect("the norm is rational");
        Ok(others.scale(&norm.recip()))
    }
}

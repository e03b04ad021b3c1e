//! Satake parameters, Euler factors at q and the modified factors at p.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::{CycNumber, PAdic};
use crate::error::{Error, Result};

/// Field operations needed to evaluate an Euler factor.
pub trait EulerScalar: Clone {
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, q: &BigRational) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn inverse(&self) -> Result<Self>;
}

impl EulerScalar for PAdic {
    fn one_like(&self) -> Self {
        PAdic::one(self.prime(), self.precision())
    }
    fn from_rational_like(&self, q: &BigRational) -> Self {
        PAdic::from_rational(q, self.prime(), self.precision())
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn inverse(&self) -> Result<Self> {
        self.inv()
    }
}

impl EulerScalar for CycNumber {
    fn one_like(&self) -> Self {
        CycNumber::one()
    }
    fn from_rational_like(&self, q: &BigRational) -> Self {
        CycNumber::from_rational(q.clone())
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn inverse(&self) -> Result<Self> {
        self.inv()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeKind {
    Good,
    Bad,
}

fn q_pow(q: u64, e: i64) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(q));
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b.recip(), (-e) as usize)
    }
}

/// D_q at T = χ(q)·q^(−s): (1 − φ(q)T)·∏(1 − φ(q)α_i^(−1)T)(1 − φ(q)α_iT) at good q,
/// ∏(1 − α_iT) at bad q.
pub fn euler_dq<S: EulerScalar>(q: u64, kind: PrimeKind, alphas: &[S], phi_q: &S, chi_q: &S, s: i64) -> Result<S> {
    let one = chi_q.one_like();
    let t = chi_q.times(&chi_q.from_rational_like(&q_pow(q, -s)));
    match kind {
        PrimeKind::Bad => Ok(alphas.iter().fold(one.clone(), |acc, a| acc.times(&one.minus(&a.times(&t))))),
        PrimeKind::Good => {
            let pt = phi_q.times(&t);
            let mut acc = one.minus(&pt);
            for a in alphas {
                acc = acc.times(&one.minus(&pt.times(&a.inverse()?)));
                acc = acc.times(&one.minus(&pt.times(a)));
            }
            Ok(acc)
        }
    }
}

/// Local data of a Siegel eigenform: β_i and α_p at p, α_(q,i) away from p.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SatakeData {
    pub g: usize,
    pub p: u64,
    pub k: i64,
    pub precision: i64,
    pub betas: Vec<PAdic>,
    pub alpha_p: PAdic,
    /// φ(q) for the primes that appear below.
    #[serde(default)]
    pub phi_values: BTreeMap<u64, PAdic>,
    #[serde(default)]
    pub good: BTreeMap<u64, Vec<PAdic>>,
    #[serde(default)]
    pub bad: BTreeMap<u64, Vec<PAdic>>,
    /// The g, g+1 monodromy entry is nonzero; supplied, not computed.
    #[serde(default)]
    pub monodromy: bool,
}

fn close(a: &PAdic, b: &PAdic) -> bool {
    a.eq_mod(b, a.precision().min(b.precision()))
}

impl SatakeData {
    pub fn new(g: usize, p: u64, k: i64, precision: i64, betas: Vec<PAdic>, alpha_p: PAdic) -> Result<Self> {
        let d = SatakeData {
            g,
            p,
            k,
            precision,
            betas,
            alpha_p,
            phi_values: BTreeMap::new(),
            good: BTreeMap::new(),
            bad: BTreeMap::new(),
            monodromy: false,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.betas.len() != self.g || self.g == 0 {
            return Err(Error::domain("need exactly g parameters β_i"));
        }
        if !self.alpha_p.is_unit() {
            return Err(Error::domain("α_p must be a p-adic unit"));
        }
        for (i, b) in self.betas.iter().enumerate() {
            let i = i as i64 + 1;
            if b.is_zero() || b.valuation() != i - self.k {
                return Err(Error::domain(format!("β_{i}·p^(k−{i}) is not a unit")));
            }
        }
        let gi = self.g as i64;
        let lhs = self
            .betas
            .iter()
            .fold(PAdic::one(self.p, self.precision), |acc, b| &acc * b);
        let rhs = &PAdic::one(self.p, self.precision).shift(gi * (gi + 1) / 2 - gi * self.k)
            * &(&self.alpha_p * &self.alpha_p);
        if !close(&lhs, &rhs) {
            return Err(Error::domain("∏β_i differs from p^(g(g+1)/2 − gk)·α_p²"));
        }
        Ok(())
    }

    fn p_pow(&self, e: i64) -> PAdic {
        PAdic::one(self.p, self.precision).shift(e)
    }

    /// D_q(χ(q)q^(−s)) from the stored parameters; primes without data give 1.
    pub fn euler_at(&self, q: u64, chi_q: &PAdic, s: i64) -> Result<PAdic> {
        let phi = self.phi_values.get(&q).cloned().unwrap_or_else(|| PAdic::one(self.p, self.precision));
        if let Some(a) = self.good.get(&q) {
            euler_dq(q, PrimeKind::Good, a, &phi, chi_q, s)
        } else if let Some(a) = self.bad.get(&q) {
            euler_dq(q, PrimeKind::Bad, a, &phi, chi_q, s)
        } else {
            Ok(PAdic::one(self.p, self.precision))
        }
    }
}

/// E_1 = ∏_i (1 − c·β_i^(−1)·p^(−t)), c the value at p of χεω^(−t).
pub fn euler_e1(data: &SatakeData, c: &PAdic, t: i64) -> Result<PAdic> {
    let one = PAdic::one(data.p, data.precision);
    let pt = data.p_pow(-t);
    let mut acc = one.clone();
    for b in &data.betas {
        acc = &acc * &(&one - &(&(c * &b.inv()?) * &pt));
    }
    Ok(acc)
}

/// E = E_1·∏_i 1/(1 − c^(−1)·β_i·p^(t−1)); the inverse character also vanishes at p when c = 0.
pub fn euler_e(data: &SatakeData, c: &PAdic, t: i64) -> Result<PAdic> {
    let e1 = euler_e1(data, c, t)?;
    if c.is_zero() {
        return Ok(e1);
    }
    let one = PAdic::one(data.p, data.precision);
    let cinv = c.inv()?;
    let pt = data.p_pow(t - 1);
    let mut acc = e1;
    for (i, b) in data.betas.iter().enumerate() {
        let den = &one - &(&(&cinv * b) * &pt);
        if den.is_zero() {
            return Err(Error::pole(format!("factor i = {} of the denominator of E vanishes", i + 1)));
        }
        acc = acc.div(&den)?;
    }
    Ok(acc)
}

/// E* = ∏_(i=2..g)(1 − β_i^(−1)p^(−1)) / ∏_(i=1..g)(1 − β_i·p).
pub fn euler_estar(data: &SatakeData) -> Result<PAdic> {
    let one = PAdic::one(data.p, data.precision);
    let pinv = data.p_pow(-1);
    let pp = data.p_pow(1);
    let mut num = one.clone();
    for b in data.betas.iter().skip(1) {
        num = &num * &(&one - &(&b.inv()? * &pinv));
    }
    for (i, b) in data.betas.iter().enumerate() {
        let den = &one - &(b * &pp);
        if den.is_zero() {
            return Err(Error::pole(format!("1 − β_{}·p vanishes", i + 1)));
        }
        num = num.div(&den)?;
    }
    Ok(num)
}

/// p^(ng(1−t)) / (G^g·(p^(g(g+1)/2 − gk)·α_p²)^n), G the Gauss sum of εω^(−t) embedded in Z_p.
pub fn epsilon_factor(n: i64, t: i64, k: i64, g: usize, alpha_p: &PAdic, gauss: &PAdic) -> Result<PAdic> {
    if !alpha_p.is_unit() {
        return Err(Error::domain("α_p must be a unit"));
    }
    let gi = g as i64;
    let (p, prec) = (alpha_p.prime(), alpha_p.precision());
    let one = PAdic::one(p, prec);
    let base = &one.shift(gi * (gi + 1) / 2 - gi * k) * &(alpha_p * alpha_p);
    let den = &gauss.pow(gi)? * &base.pow(n)?;
    one.shift(n * gi * (1 - t)).div(&den)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteinbergReport {
    /// Some β_i equals p^(−1) at working precision.
    pub beta_condition: bool,
    /// 1-based position of that β_i after reindexing.
    pub index: Option<usize>,
    pub monodromy: bool,
    pub steinberg: bool,
}

/// Γ_0(p)-Steinberg test: β_g = p^(−1) (after moving the matching β to position g) and
/// the supplied monodromy flag.
pub fn detect_steinberg(data: &SatakeData) -> Result<SteinbergReport> {
    let target = data.p_pow(-1);
    let mut hit = None;
    for (i, b) in data.betas.iter().enumerate() {
        let m = b.precision().min(target.precision());
        if b.eq_mod(&target, m) {
            if b.precision() < data.precision {
                return Err(Error::Precision(format!(
                    "β_{} agrees with p^(−1) only to p^{}",
                    i + 1,
                    b.precision()
                )));
            }
            hit = Some(i);
        }
    }
    let beta_condition = hit.is_some();
    Ok(SteinbergReport {
        beta_condition,
        index: hit.map(|_| data.g),
        monodromy: data.monodromy,
        steinberg: beta_condition && data.monodromy,
    })
}

//! Bernoulli numbers and polynomials, generalized Bernoulli numbers and L(1−t, η).

use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::CycNumber;
use crate::characters::DirichletChar;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

static NUMBERS: RwLock<Vec<BigRational>> = RwLock::new(Vec::new());

/// B_n with B_1 = −1/2.
pub fn bernoulli_number(n: usize) -> BigRational {
    if let Some(b) = NUMBERS.read().unwrap().get(n) {
        return b.clone();
    }
    let mut tab = NUMBERS.write().unwrap();
    if tab.is_empty() {
        tab.push(BigRational::one());
    }
    // Σ_(k<m+1) C(m+1, k) B_k = 0
    while tab.len() <= n {
        let m = tab.len();
        let mut binom = BigInt::one();
        let mut s = BigRational::zero();
        for (k, b) in tab.iter().enumerate() {
            s += b * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        tab.push(-s / rat(m as i64 + 1));
    }
    tab[n].clone()
}

/// Coefficients of B_n(x), constant term first.
pub fn bernoulli_poly(n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n + 1];
    let mut binom = BigInt::one();
    for k in 0..=n {
        out[n - k] = bernoulli_number(k) * BigRational::from_integer(binom.clone());
        binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    out
}

/// B_(t,η) = M^(t−1)·Σ_(a=1..M) η(a)·B_t(a/M), expanded as
/// Σ_k C(t,k)·B_k·M^(k−1)·Σ_a η(a)·a^(t−k) so the inner sums stay integral.
pub fn gen_bernoulli(t: usize, eta: &DirichletChar) -> CycNumber {
    let m = eta.modulus();
    let o = eta.order() as usize;
    // power sums per value class: s[e][j] = Σ_(η(a) = ζ^e) a^j
    let mut sums = vec![vec![BigInt::zero(); t + 1]; o];
    for a in 1..=m {
        if let Some(e) = eta.exponent(a as i64) {
            let row = &mut sums[e as usize];
            let mut pw = BigInt::one();
            let ab = BigInt::from(a);
            for slot in row.iter_mut() {
                *slot += &pw;
                pw *= &ab;
            }
        }
    }
    let mb = BigRational::from_integer(BigInt::from(m));
    let mut coef = Vec::with_capacity(t + 1);
    let mut binom = BigInt::one();
    let mut mpow = mb.recip();
    for k in 0..=t {
        coef.push(bernoulli_number(k) * BigRational::from_integer(binom.clone()) * &mpow);
        binom = binom * BigInt::from(t - k) / BigInt::from(k + 1);
        mpow *= &mb;
    }
    let per_class = sums
        .iter()
        .map(|row| {
            (0..=t).fold(BigRational::zero(), |acc, k| {
                acc + &coef[k] * BigRational::from_integer(row[t - k].clone())
            })
        })
        .collect();
    CycNumber::from_exponent_sums(o as u64, per_class)
}

/// L(1−t, η) = −B_(t,η)/t for t ≥ 1.
pub fn l_neg(t: usize, eta: &DirichletChar) -> CycNumber {
    assert!(t >= 1, "L(1−t, η) needs t ≥ 1");
    gen_bernoulli(t, eta).scale(&(-BigRational::one() / rat(t as i64)))
}

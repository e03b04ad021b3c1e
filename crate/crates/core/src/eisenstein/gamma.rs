//! Siegel Γ-factors, the constant B_2g(t) and the prefactor A.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::params::EisParams;
use crate::arith::CycNumber;
use crate::characters::gauss_sum;
use crate::error::{Error, Result};

/// sign · rational · π^(pi_twice/2) · 2^two_power, with the rational positive and odd over odd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymConst {
    pub sign: i8,
    #[serde(serialize_with = "rational_str")]
    pub rational: BigRational,
    pub pi_twice: i64,
    pub two_power: i64,
}

fn rational_str<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl SymConst {
    pub fn new(q: BigRational, pi_twice: i64, two_power: i64) -> Self {
        if q.is_zero() {
            return SymConst { sign: 0, rational: q, pi_twice: 0, two_power: 0 };
        }
        let sign = if q.is_negative() { -1 } else { 1 };
        let (mut n, mut d) = (q.numer().abs(), q.denom().clone());
        let mut e = two_power;
        let two = BigInt::from(2);
        while n.is_even() {
            n /= &two;
            e += 1;
        }
        while d.is_even() {
            d /= &two;
            e -= 1;
        }
        SymConst { sign, rational: BigRational::new(n, d), pi_twice, two_power: e }
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), 0, 0)
    }

    pub fn mul(&self, o: &SymConst) -> SymConst {
        let q = &self.rational * &o.rational * BigRational::from_integer((self.sign * o.sign).into());
        Self::new(q, self.pi_twice + o.pi_twice, self.two_power + o.two_power)
    }

    pub fn pow(&self, e: u32) -> SymConst {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn to_f64(&self) -> f64 {
        self.sign as f64
            * self.rational.to_f64().unwrap_or(f64::NAN)
            * std::f64::consts::PI.powf(self.pi_twice as f64 / 2.0)
            * 2f64.powi(self.two_power as i32)
    }
}

fn check_arg(x: f64) -> Result<()> {
    if x <= 0.0 && x.fract() == 0.0 {
        return Err(Error::pole(format!("Γ has a pole at {x}")));
    }
    Ok(())
}

fn gamma_product(s: f64, g: usize) -> Result<f64> {
    let mut acc = 1.0;
    for i in 1..=g {
        let x = s - (i as f64 - 1.0) / 2.0;
        check_arg(x)?;
        acc *= libm::tgamma(x);
    }
    Ok(acc)
}

/// Γ_g(s) = π^(g(g+1)/4)·∏_(i=1..g) Γ(s − (i−1)/2), the normalization used by B_2g.
pub fn gamma_g(s: f64, g: usize) -> Result<f64> {
    let e = (g * (g + 1)) as f64 / 4.0;
    Ok(std::f64::consts::PI.powf(e) * gamma_product(s, g)?)
}

/// The usual Siegel Γ-function, with π^(g(g−1)/4).
pub fn gamma_g_standard(s: f64, g: usize) -> Result<f64> {
    let e = (g * (g - 1)) as f64 / 4.0;
    Ok(std::f64::consts::PI.powf(e) * gamma_product(s, g)?)
}

/// Γ(a/2) for a ≥ 1 as rational·π^(e/2).
fn half_gamma(a: i64) -> (BigRational, i64) {
    assert!(a >= 1);
    let fact = |n: i64| (1..=n).fold(BigInt::one(), |acc, i| acc * i);
    if a % 2 == 0 {
        (BigRational::from_integer(fact(a / 2 - 1)), 0)
    } else {
        let n = (a - 1) / 2;
        let den = BigInt::from(4).pow(n as u32) * fact(n);
        (BigRational::new(fact(2 * n), den), 1)
    }
}

/// Γ_m(a/2) exactly, in the B_2g normalization.
pub fn gamma_g_exact(a: i64, m: usize) -> Result<SymConst> {
    let mut q = BigRational::one();
    let mut pi_twice = (m * (m + 1)) as i64 / 2;
    for i in 1..=m as i64 {
        let b = a - (i - 1);
        if b <= 0 {
            return Err(Error::Unsupported("exact Γ_g only for positive arguments".into()));
        }
        let (r, e) = half_gamma(b);
        q *= r;
        pi_twice += e;
    }
    Ok(SymConst::new(q, pi_twice, 0))
}

/// B_2g(t) = (−1)^(g(g+t))·2^(g+2gt)·π^(g+2g²) / Γ_2g(g+1/2).
pub fn const_b2g(t: i64, g: usize) -> Result<SymConst> {
    if t < 1 {
        return Err(Error::domain("B_2g(t) needs t ≥ 1"));
    }
    let gi = g as i64;
    let den = gamma_g_exact(2 * gi + 1, 2 * g)?;
    let sign = if (gi * (gi + t)) % 2 == 0 { 1 } else { -1 };
    let num = SymConst::new(
        BigRational::from_integer(sign.into()),
        2 * (gi + 2 * gi * gi),
        gi + 2 * gi * t,
    );
    let inv = SymConst {
        sign: den.sign,
        rational: den.rational.recip(),
        pi_twice: -den.pi_twice,
        two_power: -den.two_power,
    };
    Ok(num.mul(&inv))
}

/// A = constant·(2πi)^(two_pi_i_power)·gauss.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prefactor {
    pub constant: SymConst,
    pub two_pi_i_power: i64,
    pub gauss: CycNumber,
}

/// A = (R·p^n)^(g(g−1)/2)·B_2g(t)·(2πi)^(sg)·G(χ′ε1)^g.
pub fn prefactor_a(params: &EisParams) -> Result<Prefactor> {
    params.validate()?;
    let g = params.g;
    let m = params.r * params.p.pow(params.n);
    let scale = SymConst::new(
        BigRational::from_integer(BigInt::from(m).pow((g * (g - 1) / 2) as u32)),
        0,
        0,
    );
    let twist = params.chi_prime.mul(&params.eps1).primitive_part();
    Ok(Prefactor {
        constant: scale.mul(&const_b2g(params.t, g)?),
        two_pi_i_power: params.s * g as i64,
        gauss: gauss_sum(&twist).pow(g as u64),
    })
}

/// A*(k) = R^(g(g−1)/2)·B_2g(k−g)·G(χ′)^g.
pub fn prefactor_a_star(k: i64, params: &EisParams) -> Result<Prefactor> {
    let mut q = params.clone();
    q.t = k - params.g as i64;
    q.s = 0;
    q.n = 0;
    q.eps1 = crate::characters::DirichletChar::trivial(1);
    prefactor_a(&q)
}

/// Report of the duplication and ratio identities at sample points.
#[derive(Clone, Debug, Serialize)]
pub struct GammaIdentityReport {
    pub holds: bool,
    pub max_rel_error: f64,
    /// The ratio identity evaluated with the B_2g normalization.
    pub ratio_holds_displayed: bool,
    /// max |π^(−g)·lhs/rhs − 1| for the duplication formula with the B_2g normalization.
    pub duplication_displayed_excess: f64,
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Γ_g(s)Γ_g(s+1/2) = π^(g(g−1)/2)·2^(g(g+1)/2−2gs)·π^(g/2)·∏Γ(2s−i+1), and
/// Γ_2g(g+1/2) / (Γ_g(g+1/2)·Γ_g((g+1)/2)) = π^(g²/2), with the standard Γ_g.
pub fn gamma_identities_check(g: usize, samples: &[f64]) -> Result<GammaIdentityReport> {
    let pi = std::f64::consts::PI;
    let gf = g as f64;
    let mut worst = 0f64;
    let mut worst_disp = 0f64;
    for &s in samples {
        let lhs = gamma_g_standard(s, g)? * gamma_g_standard(s + 0.5, g)?;
        let mut rhs = pi.powf(gf * (gf - 1.0) / 2.0 + gf / 2.0)
            * 2f64.powf(gf * (gf + 1.0) / 2.0 - 2.0 * gf * s);
        for i in 1..=g {
            let x = 2.0 * s - i as f64 + 1.0;
            check_arg(x)?;
            rhs *= libm::tgamma(x);
        }
        worst = worst.max(rel(lhs, rhs));
        let disp = gamma_g(s, g)? * gamma_g(s + 0.5, g)? / pi.powf(gf);
        worst_disp = worst_disp.max(rel(disp, rhs));
    }
    let ratio = |f: fn(f64, usize) -> Result<f64>| -> Result<f64> {
        Ok(f(gf + 0.5, 2 * g)? / (f(gf + 0.5, g)? * f((gf + 1.0) / 2.0, g)?))
    };
    let target = pi.powf(gf * gf / 2.0);
    worst = worst.max(rel(ratio(gamma_g_standard)?, target));
    let disp_ok = rel(ratio(gamma_g)?, target) < 1e-10;
    Ok(GammaIdentityReport {
        holds: worst < 1e-10,
        max_rel_error: worst,
        ratio_holds_displayed: disp_ok,
        duplication_displayed_excess: worst_disp,
    })
}

//! Fourier coefficients: the classical ones at s = 0, the two-variable family and the improved one.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::params::EisParams;
use crate::arith::int::factorize;
use crate::arith::{angle, ArithPoint, CycNumber, PAdic};
use crate::bernoulli::{kl_eval, l_neg};
use crate::characters::{matrix_gauss_sum, quad_char_sigma, DirichletChar};
use crate::error::{Error, Result};
use crate::quadforms::{d_cosets, enumerate_i, siegel_poly_bq, BlockI, HalfIntMat};

fn pow_rat(base: i64, e: i64) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(base));
    if e >= 0 {
        num_traits::pow(b, e as usize)
    } else {
        num_traits::pow(b.recip(), (-e) as usize)
    }
}

fn as_i64(x: i128, what: &str) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Precision(format!("{what} overflows 64 bits")))
}

/// σ for the block: the quadratic character of (−1)^g·det(2I).
fn sigma_of(blk: &BlockI) -> Result<DirichletChar> {
    let d = as_i64(blk.det2i(), "det(2I)")?;
    let sign = if blk.g % 2 == 0 { 1 } else { -1 };
    Ok(quad_char_sigma(sign * d)?.character)
}

fn primes_of(m: &HalfIntMat) -> Vec<u64> {
    factorize(m.det2().unsigned_abs() as u64).into_iter().map(|(q, _)| q).collect()
}

fn blocks(t1: &HalfIntMat, t4: &HalfIntMat, params: &EisParams) -> Result<Vec<BlockI>> {
    params.validate()?;
    if t1.size() != params.g || t4.size() != params.g {
        return Err(Error::domain("index matrices must have size g"));
    }
    if !t1.is_positive_semidefinite() || !t4.is_positive_semidefinite() {
        return Err(Error::domain("index matrices must be positive semidefinite"));
    }
    enumerate_i(t1, t4, params.l)
}

/// Classical coefficient at s = 0, without the prefactor A:
/// Σ_I G_g(T2, N, χ1)·(χ′ε1)^(−1)(det 2T2)·L(1−t, σφχ)·
/// Σ_G (φχ)²(det G)·(det G)^(2t−1)·∏_q B_q(φχ(q)·q^(t−g−1), G^(−t)IG^(−1)).
pub fn classical_coeff(t1: &HalfIntMat, t4: &HalfIntMat, params: &EisParams) -> Result<CycNumber> {
    if params.s != 0 {
        return Err(Error::Unsupported("the classical coefficient is only available at s = 0".into()));
    }
    let g = params.g as i64;
    let t = params.t;
    let chi = params.chi();
    let phichi = params.phi.mul(&chi);
    let twist = params.chi_prime.mul(&params.eps1).inverse();
    let mut total = CycNumber::zero();
    for blk in blocks(t1, t4, params)? {
        let d2 = as_i64(blk.det_2t2(), "det(2T2)")?;
        let tw = twist.value(d2);
        if tw.is_zero() {
            continue;
        }
        let gg = matrix_gauss_sum(&blk.t2_twice, params.level, &params.chi1, 1)?;
        if gg.is_zero() {
            continue;
        }
        let lval = l_neg(t as usize, &sigma_of(&blk)?.mul(&phichi));
        if lval.is_zero() {
            continue;
        }
        let mut inner = CycNumber::zero();
        for c in d_cosets(&blk.matrix())? {
            let w = phichi.value(c.d as i64).pow(2);
            if w.is_zero() {
                continue;
            }
            let mut term = w.scale(&pow_rat(c.d as i64, 2 * t - 1));
            for q in primes_of(&c.reduced) {
                let arg = phichi.value(q as i64).scale(&pow_rat(q as i64, t - g - 1));
                term = &term * &siegel_poly_bq(&c.reduced, q)?.eval_cyc(&arg);
            }
            inner = &inner + &term;
        }
        total = &total + &(&(&gg * &tw) * &(&lval * &inner));
    }
    Ok(total)
}

fn kl_or_zero(t: i64, eta: &DirichletChar, params: &EisParams, prec: i64) -> Result<PAdic> {
    // an odd character has identically vanishing interpolation values
    if !eta.is_even() {
        return Ok(PAdic::zero(params.p, prec));
    }
    kl_eval(&ArithPoint::cyclotomic(params.p, t), eta, prec, params.euler)
}

fn guard(prec: i64) -> i64 {
    prec + 6
}

/// a_(T1,T4,L)(κ, κ′) at κ = [k], κ′ = [t]:
/// Σ_(I, p ∤ det 2T2) G_g·ω^t(d)(χ′ε1)^(−1)(d)·⟨d⟩^(k−g−t)·L_p(κ′, σφχ)·
/// Σ_(G, p ∤ det G) (φχ)²(det G)·(det G)^(−1)·⟨det G⟩^(2t)·∏_(q ≠ p) B_q(φχ(q)⟨q⟩^t q^(−g−1)).
pub fn family_coeff(
    t1: &HalfIntMat,
    t4: &HalfIntMat,
    kappa: &ArithPoint,
    kappa_p: &ArithPoint,
    params: &EisParams,
    prec: i64,
) -> Result<PAdic> {
    kappa.require_trivial_eps()?;
    kappa_p.require_trivial_eps()?;
    let p = params.p;
    if kappa.p != p || kappa_p.p != p {
        return Err(Error::domain("arithmetic points belong to a different prime"));
    }
    let (k, t) = (kappa.exponent, kappa_p.exponent);
    let g = params.g as i64;
    let work = guard(prec);
    let chi = params.chi();
    let phichi = params.phi.mul(&chi);
    let charpart = DirichletChar::omega(p)
        .pow(t)
        .mul(&params.chi_prime.mul(&params.eps1).inverse());
    let mut total = PAdic::zero(p, work);
    for blk in blocks(t1, t4, params)? {
        let d2 = as_i64(blk.det_2t2(), "det(2T2)")?;
        let cp = charpart.value(d2);
        if d2 % p as i64 == 0 {
            assert!(cp.is_zero(), "term with p | det(2T2) must vanish");
            continue;
        }
        if cp.is_zero() {
            continue;
        }
        let gg = matrix_gauss_sum(&blk.t2_twice, params.level, &params.chi1, params.l)?;
        if gg.is_zero() {
            continue;
        }
        let front = (&gg * &cp).to_padic(p, work)?
            * angle(&BigInt::from(d2), p, work)?.pow(k - g - t)?;
        let lval = kl_or_zero(t, &sigma_of(&blk)?.mul(&phichi), params, work)?;
        if lval.is_zero() {
            continue;
        }
        let mut inner = PAdic::zero(p, work);
        for c in d_cosets(&blk.matrix())? {
            if c.d % p == 0 {
                continue;
            }
            let w = phichi.value(c.d as i64).pow(2);
            if w.is_zero() {
                continue;
            }
            let dg = BigInt::from(c.d);
            let mut term = w.to_padic(p, work)?
                * PAdic::from_rational(&pow_rat(c.d as i64, -1), p, work)
                * angle(&dg, p, work)?.pow(2 * t)?;
            for q in primes_of(&c.reduced) {
                if q == p {
                    continue;
                }
                let arg = phichi.value(q as i64).to_padic(p, work)?
                    * angle(&BigInt::from(q), p, work)?.pow(t)?
                    * PAdic::from_rational(&pow_rat(q as i64, -g - 1), p, work);
                term = term * siegel_poly_bq(&c.reduced, q)?.eval_padic(&arg);
            }
            inner = inner + term;
        }
        total = total + front * lval * inner;
    }
    Ok(total.reduce(prec))
}

/// The improved coefficient split by whether p divides det(2T2).
#[derive(Clone, Debug, Serialize)]
pub struct ImprovedParts {
    pub coprime: PAdic,
    pub divisible: PAdic,
}

impl ImprovedParts {
    pub fn total(&self) -> PAdic {
        &self.coprime + &self.divisible
    }
}

/// a*_(T1,T4)(κ) at κ = [k], t = k − g, χ = χ1χ′:
/// Σ_I (χ′χ1)^(−1)(d)·L_p([t], σφχ)·Σ_(G, p ∤ det G) (φχ)²(det G)(det G)^(2t−1)·∏_q B_q(φχ(q)q^(t−g−1)),
/// keeping the terms with p | det(2T2).
pub fn improved_coeff_parts(
    t1: &HalfIntMat,
    t4: &HalfIntMat,
    kappa: &ArithPoint,
    params: &EisParams,
    prec: i64,
) -> Result<ImprovedParts> {
    kappa.require_trivial_eps()?;
    let p = params.p;
    let g = params.g as i64;
    let t = kappa.exponent - g;
    if t < 1 {
        return Err(Error::domain("the improved coefficient needs k > g"));
    }
    let work = guard(prec);
    let chi = params.chi1.mul(&params.chi_prime);
    let phichi = params.phi.mul(&chi);
    let twist = chi.inverse();
    let mut coprime = PAdic::zero(p, work);
    let mut divisible = PAdic::zero(p, work);
    for blk in blocks(t1, t4, params)? {
        let d2 = as_i64(blk.det_2t2(), "det(2T2)")?;
        let tw = twist.value(d2);
        if tw.is_zero() {
            continue;
        }
        let lval = kl_or_zero(t, &sigma_of(&blk)?.mul(&phichi), params, work)?;
        if lval.is_zero() {
            continue;
        }
        let mut inner = CycNumber::zero();
        for c in d_cosets(&blk.matrix())? {
            if c.d % p == 0 {
                continue;
            }
            let w = phichi.value(c.d as i64).pow(2);
            if w.is_zero() {
                continue;
            }
            let mut term = w.scale(&pow_rat(c.d as i64, 2 * t - 1));
            for q in primes_of(&c.reduced) {
                let arg = phichi.value(q as i64).scale(&pow_rat(q as i64, t - g - 1));
                term = &term * &siegel_poly_bq(&c.reduced, q)?.eval_cyc(&arg);
            }
            inner = &inner + &term;
        }
        let v = (&tw * &inner).to_padic(p, work)? * lval;
        if d2 % p as i64 == 0 {
            divisible = divisible + v;
        } else {
            coprime = coprime + v;
        }
    }
    Ok(ImprovedParts {
        coprime: coprime.reduce(prec),
        divisible: divisible.reduce(prec),
    })
}

pub fn improved_coeff(
    t1: &HalfIntMat,
    t4: &HalfIntMat,
    kappa: &ArithPoint,
    params: &EisParams,
    prec: i64,
) -> Result<PAdic> {
    Ok(improved_coeff_parts(t1, t4, kappa, params, prec)?.total())
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceReport {
    pub holds: bool,
    pub j: u32,
    pub classical: PAdic,
    pub family: PAdic,
}

/// Compares the classical coefficient for the character χω^(−t) with the family at
/// ([t+g], [t]), both at the index (p^j·T1, p^j·T4) with L = 1, modulo p^j.
pub fn congruence_check(
    t1: &HalfIntMat,
    t4: &HalfIntMat,
    j: u32,
    params: &EisParams,
    prec: i64,
) -> Result<CongruenceReport> {
    if params.s != 0 {
        return Err(Error::Unsupported("the congruence is checked at s = 0 only".into()));
    }
    let p = params.p;
    let scale = p.pow(j) as i64;
    let (a, b) = (t1.scale(scale), t4.scale(scale));
    let base = params.clone().with_l(1);
    let mut twisted = base.clone();
    let n = base.n.max(1);
    twisted.n = n;
    twisted.eps1 = base
        .eps1
        .lift(p.pow(n))?
        .mul(&DirichletChar::omega(p).pow(-base.t));
    let prec = prec.max(j as i64);
    let classical = classical_coeff(&a, &b, &twisted)?.to_padic(p, prec)?;
    let family = family_coeff(
        &a,
        &b,
        &ArithPoint::weight(p, base.k()),
        &ArithPoint::cyclotomic(p, base.t),
        &base,
        prec,
    )?;
    Ok(CongruenceReport {
        holds: classical.eq_mod(&family, j as i64),
        j,
        classical,
        family,
    })
}

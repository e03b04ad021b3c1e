//! Teichmüller lifts, the ⟨·⟩ projection and logarithms relative to u = 1 + p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::int::val_i128;
use super::padic::{ppow, PAdic};
use crate::error::{Error, Result};

fn check_unit(z: &BigInt, p: u64) -> Result<()> {
    if p < 3 {
        return Err(Error::Unsupported("only odd primes are supported".into()));
    }
    if (z % BigInt::from(p)).is_zero() {
        return Err(Error::domain(format!("{z} is not a unit mod {p}")));
    }
    Ok(())
}

/// ω(z): the (p−1)-st root of unity congruent to z mod p.
pub fn teichmuller(z: &BigInt, p: u64, prec: i64) -> Result<PAdic> {
    check_unit(z, p)?;
    let m = ppow(p, prec.max(1));
    let pb = BigInt::from(p);
    let mut x = z.mod_floor(&m);
    for _ in 0..prec.max(1) {
        let next = x.modpow(&pb, &m);
        if next == x {
            break;
        }
        x = next;
    }
    Ok(PAdic::from_int(x, p, prec))
}

/// ⟨z⟩ = z / ω(z), a principal unit.
pub fn angle(z: &BigInt, p: u64, prec: i64) -> Result<PAdic> {
    let w = teichmuller(z, p, prec)?;
    PAdic::from_int(z.clone(), p, prec).div(&w)
}

/// log_p of a principal unit by the power series, to absolute precision `prec`.
pub fn log_principal(x: &PAdic, prec: i64) -> Result<PAdic> {
    let p = x.prime();
    let one = PAdic::one(p, x.precision());
    let y = x - &one;
    if y.is_zero() {
        return Ok(PAdic::zero(p, prec));
    }
    let vy = y.valuation();
    if vy < 1 {
        return Err(Error::domain("logarithm needs an argument congruent to 1 mod p"));
    }
    let mut extra = 2;
    while (p as i64).pow(extra as u32) < prec + 10 {
        extra += 1;
    }
    let work = prec + extra;
    if x.precision() < work {
        return Err(Error::Precision(format!(
            "argument known to p^{} but p^{work} needed",
            x.precision()
        )));
    }
    let y = y.reduce(work);
    let mut acc = PAdic::zero(p, work);
    let mut power = y.clone();
    let mut n: i64 = 1;
    loop {
        if n * vy - (n as u64).ilog(p) as i64 >= work {
            break;
        }
        let vn = val_i128(n as i128, p).unwrap() as i64;
        let term = power.div(&PAdic::from_int(n, p, work + vn))?;
        acc = if n % 2 == 1 { &acc + &term } else { &acc - &term };
        power = &power * &y;
        n += 1;
    }
    Ok(acc.reduce(prec))
}

/// l_z with u^(l_z) = ⟨z⟩, u = 1 + p, using log_p(z) := log_p⟨z⟩.
pub fn exponent_l(z: &BigInt, p: u64, prec: i64) -> Result<PAdic> {
    check_unit(z, p)?;
    let mut extra = 3;
    while (p as i64).pow(extra as u32) < prec + 10 {
        extra += 1;
    }
    let work = prec + 2 * extra + 2;
    let a = angle(z, p, work)?;
    let u = PAdic::from_int(1 + p as i64, p, work);
    let la = log_principal(&a, prec + 1)?;
    let lu = log_principal(&u, prec + 1)?;
    Ok(la.div(&lu)?.reduce(prec))
}

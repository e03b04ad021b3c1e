//! The local polynomials B_q(X, T) and the genus-one divisor-sum oracle.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::cosets::q_power_cosets;
use super::density::f_poly;
use super::matrix::{HalfIntMat, IntMatrix};
use super::poly::Poly;
use crate::arith::int::{divisors, fundamental_discriminant, mobius, sigma};
use crate::bernoulli::l_neg;
use crate::characters::DirichletChar;
use crate::error::{Error, Result};

type Memo = RwLock<HashMap<(u64, IntMatrix), Poly>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// B_q(X, T) for positive definite T of even size m, from
/// F_q(T, X) = Σ_(G ∈ GL_m(Z_q)\D_q(T)) (q^(m+1)X²)^(v_q det G)·B_q(X, G^(−t)TG^(−1)).
pub fn siegel_poly_bq(t: &HalfIntMat, q: u64) -> Result<Poly> {
    if !t.is_positive_definite() {
        return Err(Error::domain("B_q needs a positive definite matrix"));
    }
    if t.det2() % q as i128 != 0 {
        return Ok(Poly::one());
    }
    let key = (q, t.twice().clone());
    if let Some(b) = memo().read().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let m = t.size() as u32;
    let mut b = f_poly(t, q)?;
    for c in q_power_cosets(t, q)? {
        let n = c.d.trailing_zeros_in(q);
        let w = BigRational::from_integer(BigInt::from(q).pow((m + 1) * n));
        b = b.sub(&siegel_poly_bq(&c.reduced, q)?.shift_scale(2 * n as usize, &w));
    }
    memo().write().unwrap().insert(key, b.clone());
    Ok(b)
}

trait QVal {
    fn trailing_zeros_in(self, q: u64) -> u32;
}

impl QVal for u64 {
    fn trailing_zeros_in(mut self, q: u64) -> u32 {
        let mut n = 0;
        while self % q == 0 {
            self /= q;
            n += 1;
        }
        n
    }
}

/// The genus-one divisor-sum value H(r, N): for N = 0 it is L(1−2r, 1); otherwise with
/// D = (−1)^r·N = D0·f² it is L(1−r, χ_(D0))·Σ_(d|f) μ(d)χ_(D0)(d)d^(r−1)σ_(2r−1)(f/d),
/// and 0 when D ≡ 2, 3 mod 4.
pub fn cohen_oracle(r: u32, ndisc: u64) -> Result<BigRational> {
    if r < 1 {
        return Err(Error::domain("cohen_oracle needs r ≥ 1"));
    }
    let as_rat = |x: crate::arith::CycNumber| {
        x.as_rational()
            .ok_or_else(|| Error::domain("quadratic L-value is not rational"))
    };
    if ndisc == 0 {
        return as_rat(l_neg(2 * r as usize, &DirichletChar::trivial(1)));
    }
    let d = if r % 2 == 0 { ndisc as i64 } else { -(ndisc as i64) };
    let Some((d0, f)) = fundamental_discriminant(d) else {
        return Ok(BigRational::zero());
    };
    let chi = DirichletChar::kronecker(d0);
    let l = as_rat(l_neg(r as usize, &chi))?;
    let mut s = BigRational::zero();
    for e in divisors(f) {
        let mu = mobius(e);
        if mu == 0 {
            continue;
        }
        let c = crate::arith::int::kronecker(d0, e) as i64 * mu;
        if c == 0 {
            continue;
        }
        let term = BigInt::from(c) * BigInt::from(e).pow(r - 1) * sigma(f / e, 2 * r - 1);
        s += BigRational::from_integer(term);
    }
    Ok(l * s)
}

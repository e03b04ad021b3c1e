//! The ordinary projector e = lim U^(n!) and its tensor square.

use rand::Rng;
use serde::Serialize;

use super::model::LinearModel;
use crate::error::{Error, Result};

/// Iterates A_1 = U, A_(n+1) = A_n^(n+1) until A_(n+1) ≡ A_n and A_n² ≡ A_n mod p^N.
pub fn ordinary_projector(u: &LinearModel) -> Result<LinearModel> {
    let (d, n_prec, p) = (u.dim() as u64, u.precision() as u64, u.p());
    // (1 + p)^(n!) ≡ 1 mod p^N already needs v_p(n!) ≥ N − 1, beyond N·d + 10 for small d
    let cap = n_prec * d + 10 + p * (n_prec + d);
    let mut a = u.clone();
    let mut n = 1u64;
    loop {
        let next = a.pow((n + 1) as u128);
        if next == a && a.mul(&a)? == a {
            return Ok(a);
        }
        a = next;
        n += 1;
        if n > cap {
            return Err(Error::Convergence(format!("U^(n!) not stable mod p^{n_prec} after n = {cap}")));
        }
    }
}

/// e ⊗ e acting on the doubled expansion.
pub fn tensor_projector(left: &LinearModel, right: &LinearModel) -> Result<LinearModel> {
    left.kron(right)
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistReport {
    pub holds: bool,
    pub i: u32,
    pub j: u32,
    pub side_i: Vec<u128>,
    pub side_j: Vec<u128>,
}

/// U^(−2i)·e·U^(2i)·F against U^(−2j)·e·U^(2j)·F, with U inverted on the ordinary part
/// through V = U·e + (1 − e).
pub fn twist_stability_check(u: &LinearModel, f: &[u128], i: u32, j: u32) -> Result<TwistReport> {
    let e = ordinary_projector(u)?;
    let v = u.mul(&e)?.add(&u.identity_like().sub(&e)?)?;
    let vinv = v
        .inverse()
        .map_err(|_| Error::domain("U is not invertible on the ordinary part"))?;
    let side = |k: u32| -> Result<Vec<u128>> {
        let x = e.apply(&u.pow(2 * k as u128).apply(f)?)?;
        vinv.pow(2 * k as u128).apply(&x)
    };
    let (si, sj) = (side(i)?, side(j)?);
    Ok(TwistReport { holds: si == sj, i, j, side_i: si, side_j: sj })
}

/// U_p² = p^(gk − g(g+1))·U_(p,g) on a fixture model.
pub fn up_relation_check(up: &LinearModel, upg: &LinearModel, g: u32, k: u32) -> Result<bool> {
    let e = (g * k).checked_sub(g * (g + 1)).ok_or_else(|| Error::domain("need k ≥ g + 1"))?;
    let c = (up.p() as u128).checked_pow(e).unwrap_or(0) % up.modulus();
    Ok(up.mul(up)? == upg.scale(c))
}

/// P·diag(units, p·stuff)·P^(−1) with a random unimodular P; the first `units`
/// diagonal entries are the p-adic units.
pub fn planted_model(rng: &mut impl Rng, p: u64, n: u32, d: usize, units: usize) -> Result<LinearModel> {
    let mut diag = vec![vec![0i128; d]; d];
    for (i, row) in diag.iter_mut().enumerate() {
        let x: i128 = rng.gen_range(1..1000);
        row[i] = if i < units {
            if x % p as i128 == 0 { x + 1 } else { x }
        } else {
            p as i128 * x
        };
    }
    let mut pm = vec![vec![0i128; d]; d];
    for i in 0..d {
        for j in 0..d {
            pm[i][j] = if i == j { 1 } else if j > i { rng.gen_range(-5..5) } else { 0 };
        }
    }
    let upper = LinearModel::from_ints(p, n, &pm)?;
    let mut lower = vec![vec![0i128; d]; d];
    for i in 0..d {
        for j in 0..d {
            lower[i][j] = if i == j { 1 } else if j < i { rng.gen_range(-5..5) } else { 0 };
        }
    }
    let pmat = upper.mul(&LinearModel::from_ints(p, n, &lower)?)?;
    pmat.mul(&LinearModel::from_ints(p, n, &diag)?)?.mul(&pmat.inverse()?)
}

//! The Kubota–Leopoldt p-adic L-function at arithmetic points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::numbers::l_neg;
use crate::arith::int::factorize;
use crate::arith::{ArithPoint, CycNumber, PAdic};
use crate::characters::DirichletChar;
use crate::error::{Error, Result};

/// Which factor at p multiplies L(1−t, ψ).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EulerFactor {
    /// 1 − ψ0(p)·p^(t−1).
    #[default]
    Corrected,
    /// 1 − ψ0(p), read without the power of p.
    Literal,
}

/// 1 − ψ(q)·q^(t−1) in the cyclotomic field.
fn local_factor(psi: &DirichletChar, q: u64, t: i64, with_power: bool) -> CycNumber {
    let v = psi.value(q as i64);
    let qt = if with_power {
        BigRational::from_integer(BigInt::from(q).pow((t - 1) as u32))
    } else {
        BigRational::one()
    };
    &CycNumber::one() - &v.scale(&qt)
}

/// Exact value behind L_p(ε[t], η): with ψ0 the primitive character of ω^(−t)η,
/// (1 − ψ0(p)p^(t−1))·L(1−t, ψ0)·∏_(q | M_η, q ∤ f(ψ0), q ≠ p)(1 − ψ0(q)q^(t−1)).
pub fn kl_exact(t: i64, eta: &DirichletChar, p: u64, factor: EulerFactor) -> Result<CycNumber> {
    if t < 1 {
        return Err(Error::domain("exact Kubota–Leopoldt value needs t ≥ 1"));
    }
    let psi = DirichletChar::omega(p).pow(-t).mul(eta).primitive_part();
    let f = psi.conductor();
    let mut acc = l_neg(t as usize, &psi);
    acc = &acc * &local_factor(&psi, p, t, factor == EulerFactor::Corrected);
    for (q, _) in factorize(eta.modulus()) {
        if q != p && f % q != 0 {
            acc = &acc * &local_factor(&psi, q, t, true);
        }
    }
    Ok(acc)
}

/// L_p(κ′, η) for κ′ = ε[t] with ε trivial, embedded in Z_p to absolute precision `prec`.
///
/// [0] with η trivial is the pole; the error carries the residue.
pub fn kl_eval(kappa: &ArithPoint, eta: &DirichletChar, prec: i64, factor: EulerFactor) -> Result<PAdic> {
    let p = kappa.p;
    if !eta.is_even() {
        return Err(Error::domain("the Kubota–Leopoldt function needs an even character"));
    }
    kappa.require_trivial_eps()?;
    let t = kappa.exponent;
    if t == 0 && eta.is_trivial() {
        return Err(Error::Pole {
            what: "L_p has a simple pole at [0] for the trivial character".into(),
            residue: Some(Box::new(kl_residue(eta, p, prec)?)),
        });
    }
    if t < 1 {
        return Err(Error::domain(format!("interpolation point [{t}] needs t ≥ 1")));
    }
    kl_exact(t, eta, p, factor)?.to_padic(p, prec)
}

/// Residue 1 − 1/p at [0], in the coordinate s = 1 − t of the classical ζ_p.
pub fn kl_residue(eta: &DirichletChar, p: u64, prec: i64) -> Result<PAdic> {
    if !eta.is_trivial() {
        return Err(Error::domain("only the trivial character has a pole"));
    }
    let r = BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(p));
    Ok(PAdic::from_rational(&r, p, prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(p: u64, t: i64) -> ArithPoint {
        ArithPoint::cyclotomic(p, t)
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn trivial_combined_character() {
        let eta = DirichletChar::omega(5).pow(2);
        let got = kl_eval(&pt(5, 2), &eta, 8, EulerFactor::Corrected).unwrap();
        assert_eq!(got, PAdic::from_rational(&q(4, 12), 5, 8));
        let lit = kl_eval(&pt(5, 2), &eta, 8, EulerFactor::Literal).unwrap();
        assert!(lit.is_zero());
    }

    #[test]
    fn odd_rejection() {
        let eta = DirichletChar::omega(5).pow(3);
        assert!(matches!(
            kl_eval(&pt(5, 3), &eta, 8, EulerFactor::Corrected),
            Err(Error::Domain(_))
        ));
        // even η forces ω^(−t)η to have parity (−1)^t, so B_(t,ψ) need not vanish
        let even = DirichletChar::omega(5).pow(2);
        assert!(!kl_eval(&pt(5, 3), &even, 8, EulerFactor::Corrected).unwrap().is_zero());
    }

    #[test]
    fn pole_and_residue() {
        let one = DirichletChar::trivial(1);
        match kl_eval(&pt(5, 0), &one, 6, EulerFactor::Corrected) {
            Err(Error::Pole { residue: Some(r), .. }) => {
                assert_eq!(*r, PAdic::from_rational(&q(4, 5), 5, 6))
            }
            other => panic!("expected a pole, got {other:?}"),
        }
        assert_eq!(kl_residue(&one, 3, 6).unwrap(), PAdic::from_rational(&q(2, 3), 3, 6));
        assert!(kl_residue(&DirichletChar::kronecker(-3), 5, 6).is_err());
    }

    #[test]
    fn twisted_value() {
        // η = ω·χ_(−3) is even; at t = 1 the combined character is χ_(−3), χ_(−3)(5) = −1
        let eta = DirichletChar::omega(5).mul(&DirichletChar::kronecker(-3));
        let got = kl_eval(&pt(5, 1), &eta, 8, EulerFactor::Corrected).unwrap();
        let want = q(2, 1) * q(1, 3);
        assert_eq!(got, PAdic::from_rational(&want, 5, 8));
    }

    #[test]
    fn kummer_congruences_trivial() {
        let one = DirichletChar::trivial(1);
        // p − 1 ∤ t keeps the values integral
        for t in [2i64, 6, 10] {
            let a = kl_eval(&pt(5, t), &one.mul(&DirichletChar::omega(5).pow(t)), 6, EulerFactor::Corrected);
            let b = kl_eval(&pt(5, t + 20), &one.mul(&DirichletChar::omega(5).pow(t)), 6, EulerFactor::Corrected);
            assert!(a.unwrap().eq_mod(&b.unwrap(), 2), "t={t}");
        }
    }
}

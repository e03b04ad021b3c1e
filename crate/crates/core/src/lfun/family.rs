//! Families of Satake units near k0 = g + 1 and the derivative at a trivial zero.

use serde::{Deserialize, Deserializer, Serialize};

use super::series::{Coeff, PSeries};
use crate::arith::PAdic;
use crate::error::{Error, Result};

/// The units 𝔹_i(k) as series in k − k0, i = 1..g.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SatakeFamily {
    pub g: usize,
    pub p: u64,
    pub k0: i64,
    pub series: Vec<PSeries>,
}

impl SatakeFamily {
    pub fn new(g: usize, p: u64, series: Vec<PSeries>) -> Result<Self> {
        if g == 0 || series.len() != g {
            return Err(Error::domain("need one series per index i = 1..g"));
        }
        for (i, s) in series.iter().enumerate() {
            if s.p() != p {
                return Err(Error::domain("series over a different prime"));
            }
            if !s.coeff(0).is_unit() {
                return Err(Error::domain(format!("𝔹_{}(k0) is not a unit", i + 1)));
            }
        }
        Ok(SatakeFamily { g, p, k0: g as i64 + 1, series })
    }

    pub fn order(&self) -> usize {
        self.series.iter().map(PSeries::order).min().unwrap_or(0)
    }

    pub fn precision(&self) -> i64 {
        self.series.iter().map(PSeries::precision).min().unwrap_or(0)
    }

    fn factor(&self, i: usize) -> Result<PSeries> {
        let s = &self.series[i];
        let one = PSeries::constant(PAdic::one(self.p, s.precision()), s.order());
        let w = PAdic::one(self.p, s.precision()).shift((self.g - i - 1) as i64);
        Ok(one.sub(&s.inverse()?.scale(&w)))
    }
}

#[derive(Deserialize)]
struct FamilyJson {
    g: usize,
    p: u64,
    #[serde(default)]
    k0: Option<i64>,
    precision: i64,
    series: Vec<Vec<Coeff>>,
    #[serde(default)]
    order: Option<usize>,
}

impl<'de> Deserialize<'de> for SatakeFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = FamilyJson::deserialize(d)?;
        if let Some(k0) = j.k0 {
            if k0 != j.g as i64 + 1 {
                return Err(D::Error::custom("k0 must be g + 1"));
            }
        }
        let mut series = Vec::new();
        for row in &j.series {
            let mut c = row
                .iter()
                .map(|x| x.to_padic(j.p, j.precision))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(D::Error::custom)?;
            if let Some(m) = j.order {
                c.resize(m.max(1), PAdic::zero(j.p, j.precision));
            }
            series.push(PSeries::new(j.p, j.precision, c).map_err(D::Error::custom)?);
        }
        SatakeFamily::new(j.g, j.p, series).map_err(D::Error::custom)
    }
}

/// E_1(f_x, 1, k − g) = ∏_i (1 − 𝔹_i^(−1)·p^(g−i)) as a series.
pub fn e1_family(fam: &SatakeFamily) -> Result<PSeries> {
    let mut acc = fam.factor(0)?;
    for i in 1..fam.g {
        acc = acc.mul(&fam.factor(i)?);
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivativeReport {
    /// ℓ = −𝔹_g′(k0).
    pub ell: PAdic,
    /// ∏_(i<g)(1 − 𝔹_i^(−1)(k0)·p^(g−i)).
    pub estar_cofactor: PAdic,
    pub lstar_value: PAdic,
    /// d/ds L_p at (k, s) = (g+1, 0), i.e. −d/dk of E_1·L* at k0.
    pub derivative: PAdic,
    /// ℓ·cofactor·L*(k0) reproduces the derivative.
    pub closed_form_agrees: bool,
    /// (P(k0 + h) − P(k0))/h with h = p^4.
    pub finite_difference: PAdic,
    pub finite_difference_agrees: bool,
}

/// Step used for the finite-difference check.
pub const FD_STEP_EXP: i64 = 4;

pub fn gs_derivative(fam: &SatakeFamily, lstar: &PSeries) -> Result<DerivativeReport> {
    let p = fam.p;
    if lstar.p() != p {
        return Err(Error::domain("L* over a different prime"));
    }
    let bg = &fam.series[fam.g - 1];
    if !bg.coeff(0).eq_mod(&PAdic::one(p, bg.precision()), bg.precision()) {
        return Err(Error::domain("𝔹_g(k0) ≠ 1: not a trivial zero"));
    }
    if fam.order() < 2 || lstar.order() < 1 {
        return Err(Error::Precision("need 𝔹 to order 2 and L* to order 1".into()));
    }
    let prod = e1_family(fam)?.mul(lstar);
    let dk = prod.coeff(1);
    let derivative = -&dk;
    let ell = -&bg.coeff(1);
    let prec = fam.precision().min(lstar.precision());
    let mut cof = PAdic::one(p, prec);
    for i in 0..fam.g - 1 {
        let w = PAdic::one(p, prec).shift((fam.g - i - 1) as i64);
        let b0 = fam.series[i].coeff(0);
        cof = &cof * &(&PAdic::one(p, prec) - &(&b0.inv()? * &w));
    }
    let lstar_value = lstar.coeff(0);
    let closed = &(&ell * &cof) * &lstar_value;
    let closed_form_agrees = closed.eq_mod(&derivative, closed.precision().min(derivative.precision()));
    let h = PAdic::one(p, prec + FD_STEP_EXP).shift(FD_STEP_EXP);
    let fd = (&prod.eval(&h) - &prod.eval(&PAdic::zero(p, prec))).div(&h)?;
    let fd_agrees = fd.eq_mod(&dk, FD_STEP_EXP.min(fd.precision()));
    Ok(DerivativeReport {
        ell,
        estar_cofactor: cof,
        lstar_value,
        derivative,
        closed_form_agrees,
        finite_difference: fd,
        finite_difference_agrees: fd_agrees,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingReport {
    pub holds: bool,
    /// (k, t, value) for each sample on the line t = 1, i.e. s = k − g − 1.
    pub samples: Vec<(i64, i64, PAdic)>,
}

/// Samples L_p(k, t) at t = 1 for each k and checks that every value vanishes.
pub fn two_var_vanishing_check<F>(lp: F, ks: &[i64]) -> Result<VanishingReport>
where
    F: Fn(i64, i64) -> Result<PAdic>,
{
    let mut samples = Vec::new();
    for &k in ks {
        samples.push((k, 1, lp(k, 1)?));
    }
    Ok(VanishingReport {
        holds: samples.iter().all(|(_, _, v)| v.is_zero()),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 5;

    fn ser(c: &[i64]) -> PSeries {
        PSeries::from_ints(P, 8, c).unwrap()
    }

    #[test]
    fn e1_constant_term_vanishes() {
        let fam = SatakeFamily::new(2, P, vec![ser(&[3, 0, 0]), ser(&[1, 0, 0])]).unwrap();
        let e = e1_family(&fam).unwrap();
        assert!(e.coeff(0).is_zero());
        let g1 = SatakeFamily::new(1, P, vec![ser(&[2, 1])]).unwrap();
        // 1 − 1/(2 + x) = 1/2 + x/4 + …
        let e = e1_family(&g1).unwrap();
        assert_eq!(e.coeff(0), PAdic::from_rational(&num_rational::BigRational::new(1.into(), 2.into()), P, 8));
    }

    #[test]
    fn linear_trivial_zero() {
        // 𝔹_2 = 1 + c·x, 𝔹_1 = 3, L* = 7: d/dk = c·(1 − 5/3)·7, d/ds = −d/dk = ℓ·(1 − 5/3)·7
        let c = 10;
        let fam = SatakeFamily::new(2, P, vec![ser(&[3, 0, 0]), ser(&[1, c, 0])]).unwrap();
        let r = gs_derivative(&fam, &ser(&[7, 0, 0])).unwrap();
        assert_eq!(r.ell, PAdic::from_int(-c, P, 8));
        let cof = PAdic::from_rational(&num_rational::BigRational::new((-2).into(), 3.into()), P, 8);
        let want = &PAdic::from_int(-c * 7, P, 8) * &cof;
        assert!(r.derivative.eq_mod(&want, r.derivative.precision().min(want.precision())));
        assert!(r.closed_form_agrees && r.finite_difference_agrees);
        // a linear term in L* changes nothing
        let r2 = gs_derivative(&fam, &ser(&[7, 4, 0])).unwrap();
        assert_eq!(r2.derivative, r.derivative);
        let not_zero = SatakeFamily::new(1, P, vec![ser(&[2, 1])]).unwrap();
        assert!(gs_derivative(&not_zero, &ser(&[1])).is_err());
        let short = SatakeFamily::new(1, P, vec![ser(&[1])]).unwrap();
        assert!(matches!(gs_derivative(&short, &ser(&[1])), Err(Error::Precision(_))));
    }

    #[test]
    fn vanishing() {
        let zero = |_k: i64, _t: i64| Ok(PAdic::zero(P, 8));
        assert!(two_var_vanishing_check(zero, &[3, 7, 11]).unwrap().holds);
        let f = |k: i64, t: i64| Ok(PAdic::from_int((k + 1) * (1 - 5i64.pow(t as u32 - 1)), P, 8));
        assert!(two_var_vanishing_check(f, &[3, 7]).unwrap().holds);
        let g = |k: i64, t: i64| Ok(PAdic::from_int(k + t, P, 8));
        assert!(!two_var_vanishing_check(g, &[3]).unwrap().holds);
    }

    #[test]
    fn json() {
        let s = r#"{"g":1,"p":5,"k0":2,"precision":8,"series":[[1,3]],"order":3}"#;
        let f: SatakeFamily = serde_json::from_str(s).unwrap();
        assert_eq!(f.order(), 3);
        assert!(serde_json::from_str::<SatakeFamily>(r#"{"g":1,"p":5,"precision":8,"series":[[5]]}"#).is_err());
    }
}

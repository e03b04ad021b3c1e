//! Self-test batteries behind `selftest <suite>`.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::int::{divisors, gcd, sigma};
use crate::arith::ArithPoint;
use crate::bernoulli::{kl_eval, EulerFactor};
use crate::characters::{matrix_gauss_closed_form, matrix_gauss_sum, DirichletChar};
use crate::eisenstein::{classical_coeff, congruence_check, family_coeff, gamma_identities_check, EisParams};
use crate::error::{Error, Result};
use crate::lfun::{gs_derivative, PSeries, SatakeFamily};
use crate::ordinary::{ordinary_projector, planted_model};
use crate::quadforms::{cohen_oracle, d_cosets, hnf_with_det, HalfIntMat, IntMatrix};

pub const SUITES: [&str; 9] = ["kl", "gauss", "cosets", "bq", "measure", "ordinary", "gs", "gamma", "congruences"];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub suite: String,
    pub passed: bool,
    pub total: usize,
    pub failures: usize,
    /// Failing checks only.
    pub counterexamples: Vec<Check>,
    pub elapsed_ms: u128,
}

struct Battery(Vec<Check>);

impl Battery {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: Value) {
        self.0.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }
}

pub fn run_suite(name: &str, p: Option<u64>, j: Option<u32>) -> Result<SelftestReport> {
    let start = Instant::now();
    let mut b = Battery(Vec::new());
    match name {
        "kl" => kl(&mut b)?,
        "gauss" => gauss(&mut b)?,
        "cosets" => cosets(&mut b)?,
        "bq" => bq(&mut b)?,
        "measure" => measure(&mut b)?,
        "ordinary" => ordinary(&mut b)?,
        "gs" => gs(&mut b)?,
        "gamma" => gamma(&mut b)?,
        "congruences" => congruences(&mut b, p.unwrap_or(5), j.unwrap_or(2))?,
        other => {
            return Err(Error::Domain(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    }
    let failures: Vec<Check> = b.0.iter().filter(|c| !c.passed).cloned().collect();
    Ok(SelftestReport {
        suite: name.to_string(),
        passed: failures.is_empty(),
        total: b.0.len(),
        failures: failures.len(),
        counterexamples: failures,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn kl(b: &mut Battery) -> Result<()> {
    let p = 5;
    let triv = DirichletChar::trivial(1);
    let v = |t: i64, eta: &DirichletChar| kl_eval(&ArithPoint::cyclotomic(p, t), eta, 8, EulerFactor::Corrected);
    // nontrivial even η prime to p: no pole, so the values are integral
    for d in [8i64, 12, 13] {
        let eta = DirichletChar::kronecker(d);
        for t in 1..=6 {
            for shift in [20, 40] {
                let (a, c) = (v(t, &eta)?, v(t + shift, &eta)?);
                b.push(
                    format!("kummer eta=({d}/.) t={t} t'={}", t + shift),
                    a.eq_mod(&c, 2),
                    json!({ "a": a, "b": c }),
                );
            }
        }
    }
    let pole = matches!(v(0, &triv), Err(Error::Pole { residue: Some(_), .. }));
    b.push("pole at [0]", pole, Value::Null);
    let odd = kl_eval(&ArithPoint::cyclotomic(p, 2), &DirichletChar::kronecker(-4), 8, EulerFactor::Corrected);
    b.push("odd character rejected", matches!(odd, Err(Error::Domain(_))), Value::Null);
    Ok(())
}

fn gauss(b: &mut Battery) -> Result<()> {
    for c in [3u64, 5] {
        for chi in DirichletChar::all(c).into_iter().filter(|x| x.is_primitive()) {
            let mut mats: Vec<IntMatrix> = (-3..=3).map(|x| IntMatrix::from_vec(1, 1, vec![x])).collect();
            for e in 0..625 {
                let d: Vec<i64> = (0..4).map(|i| (e / 5i64.pow(i)) % 5 - 2).collect();
                mats.push(IntMatrix::from_vec(2, 2, d));
            }
            for m in mats {
                if gcd(m.det().unsigned_abs() as u64 % c, c) != 1 {
                    continue;
                }
                let closed = matrix_gauss_closed_form(&m, &chi)?;
                let brute = matrix_gauss_sum(&m, c, &chi, 1)?;
                if closed != brute {
                    b.push(format!("C={c} 2T2={:?}", m.to_rows()), false, json!({ "closed": closed, "brute": brute }));
                } else {
                    b.push(format!("C={c}"), true, Value::Null);
                }
            }
        }
    }
    // even conductor: integral T2 with det T2 odd
    let chi = DirichletChar::kronecker(-4);
    for e in 0..625 {
        let t2 = IntMatrix::from_vec(2, 2, (0..4).map(|i| (e / 5i64.pow(i)) % 5 - 2).collect());
        if t2.det().rem_euclid(2) == 0 {
            continue;
        }
        let m = t2.map(|x| 2 * x);
        let closed = matrix_gauss_closed_form(&m, &chi)?;
        let brute = matrix_gauss_sum(&m, 4, &chi, 1)?;
        b.push(format!("C=4 T2={:?}", t2.to_rows()), closed == brute, json!({ "closed": closed, "brute": brute }));
    }
    Ok(())
}

fn cosets(b: &mut Battery) -> Result<()> {
    for d in 1..=40u64 {
        b.push(format!("hnf count d={d}"), BigInt::from(hnf_with_det(2, d).len()) == sigma(d, 1), Value::Null);
    }
    for (a, bb, c) in [(1, 0, 1), (2, 1, 2), (2, 0, 8), (4, 4, 4), (6, 3, 3), (3, 0, 3)] {
        let i = HalfIntMat::from_twice_rows(&[vec![2 * a, bb], vec![bb, 2 * c]])?;
        let det = i.det2();
        for r in d_cosets(&i)? {
            let ok = r.reduced.det2() * (r.d as i128).pow(2) == det;
            b.push(format!("det identity 2I=[[{},{bb}],[{bb},{}]] d={}", 2 * a, 2 * c, r.d), ok, Value::Null);
        }
    }
    Ok(())
}

fn pow_rat(b: i64, e: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(b).pow(e as u32))
}

/// Level-one genus-two Eisenstein coefficient at (T1, T4) = (a, c) by the
/// divisor-sum formula, summed over the off-diagonal entry.
fn cohen_coefficient(a: i64, c: i64, k: u32) -> Result<BigRational> {
    let mut acc = BigRational::from_integer(0.into());
    let r = 2 * ((a * c) as f64).sqrt() as i64 + 2;
    for bb in -r..=r {
        let det = 4 * a * c - bb * bb;
        if det <= 0 {
            continue;
        }
        let cont = num_integer::gcd(num_integer::gcd(a, bb.abs()), c) as u64;
        for e in divisors(cont) {
            acc += pow_rat(e as i64, k as i64 - 1) * cohen_oracle(k - 1, det as u64 / (e * e))?;
        }
    }
    Ok(acc)
}

fn bq(b: &mut Battery) -> Result<()> {
    for k in [4u32, 6] {
        let params = EisParams::level_one(1, 5, k as i64 - 1);
        for (a, c) in [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)] {
            let got = classical_coeff(&HalfIntMat::scalar(a), &HalfIntMat::scalar(c), &params)?;
            let want = cohen_coefficient(a, c, k)?;
            b.push(
                format!("k={k} T1={a} T4={c}"),
                got.as_rational().as_ref() == Some(&want),
                json!({ "classical": got, "oracle": want.to_string() }),
            );
        }
    }
    Ok(())
}

fn measure(b: &mut Battery) -> Result<()> {
    let p = 5;
    let params = EisParams::level_one(1, p, 2).with_phi(DirichletChar::omega(p));
    for (a, c) in [(1, 1), (1, 2), (2, 1)] {
        let v = |k, t| {
            family_coeff(
                &HalfIntMat::scalar(a),
                &HalfIntMat::scalar(c),
                &ArithPoint::weight(p, k),
                &ArithPoint::cyclotomic(p, t),
                &params,
                4,
            )
        };
        for (k, t, m) in [(3i64, 2i64, 1u32), (3, 2, 2), (5, 4, 1)] {
            let step = ((p - 1) * p.pow(m - 1)) as i64;
            let (x, y) = (v(k, t)?, v(k + step, t + step)?);
            b.push(
                format!("({a},{c}) [{k}],[{t}] vs +{step} mod p^{m}"),
                !x.is_zero() && x.eq_mod(&y, m as i64),
                json!({ "a": x, "b": y }),
            );
        }
    }
    Ok(())
}

fn ordinary(b: &mut Battery) -> Result<()> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(20);
    for n in 0..20 {
        let units = rng.gen_range(0..=6);
        let u = planted_model(&mut rng, 5, 10, 6, units)?;
        let e = ordinary_projector(&u)?;
        let ok = e.mul(&e)? == e && e.mul(&u)? == u.mul(&e)? && e.rank_mod_p() == units;
        b.push(format!("planted model {n} with {units} unit eigenvalues"), ok, Value::Null);
    }
    Ok(())
}

/// A family with 𝔹_g(k0) = 1 and random unit constants elsewhere.
pub fn synthetic_family(rng: &mut impl Rng, g: usize, p: u64, prec: i64) -> Result<(SatakeFamily, PSeries)> {
    let unit = |rng: &mut dyn rand::RngCore| loop {
        let x: i64 = rng.gen_range(1..10_000);
        if x % p as i64 != 0 {
            return x;
        }
    };
    let mut series = Vec::new();
    for i in 0..g {
        let c0 = if i + 1 == g { 1 } else { unit(rng) };
        let c: Vec<i64> = std::iter::once(c0).chain((0..3).map(|_| rng.gen_range(-50..50))).collect();
        series.push(PSeries::from_ints(p, prec, &c)?);
    }
    let l: Vec<i64> = (0..4).map(|_| rng.gen_range(-100..100)).collect();
    Ok((SatakeFamily::new(g, p, series)?, PSeries::from_ints(p, prec, &l)?))
}

fn gs(b: &mut Battery) -> Result<()> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(9);
    for n in 0..25 {
        let g = 1 + n % 3;
        let (fam, l) = synthetic_family(&mut rng, g, 5, 10)?;
        let r = gs_derivative(&fam, &l)?;
        b.push(
            format!("family {n} (g={g})"),
            r.closed_form_agrees && r.finite_difference_agrees,
            json!({ "derivative": r.derivative, "finite_difference": r.finite_difference }),
        );
    }
    Ok(())
}

fn gamma(b: &mut Battery) -> Result<()> {
    let samples: Vec<f64> = (0..20).map(|i| 3.25 + 0.37 * i as f64).collect();
    for g in 1..=3 {
        let r = gamma_identities_check(g, &samples)?;
        b.push(format!("g={g}"), r.holds, json!({ "max_rel_error": r.max_rel_error }));
    }
    Ok(())
}

fn congruences(b: &mut Battery, p: u64, j: u32) -> Result<()> {
    if p < 5 || !crate::arith::int::is_prime(p) {
        return Err(Error::domain("congruences need a prime p ≥ 5"));
    }
    let prec = 2 * j as i64 + 4;
    for t in [2i64, 4] {
        let params = EisParams::level_one(1, p, t).with_phi(DirichletChar::omega(p));
        for (a, c) in [(1, 1), (1, 2)] {
            let r = congruence_check(&HalfIntMat::scalar(a), &HalfIntMat::scalar(c), j, &params, prec)?;
            b.push(
                format!("t={t} j={j} T1={a} T4={c}"),
                r.holds,
                json!({ "classical": r.classical, "family": r.family }),
            );
        }
    }
    Ok(())
}

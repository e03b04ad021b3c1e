//! Truncated double q-expansions and evaluation of the measure.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coeffs::family_coeff;
use super::params::EisParams;
use crate::arith::{ArithPoint, PAdic};
use crate::error::Result;
use crate::quadforms::{HalfIntMat, IntMatrix};

/// Positive semidefinite half-integral g×g matrices with trace at most `bound`.
pub fn psd_matrices(g: usize, bound: i64) -> Vec<HalfIntMat> {
    let mut out = Vec::new();
    let mut diag = vec![0i64; g];
    loop {
        if diag.iter().sum::<i64>() <= bound {
            push_off_diagonal(&diag, &mut out);
        }
        let mut k = 0;
        loop {
            if k == g {
                out.sort();
                return out;
            }
            diag[k] += 1;
            if diag.iter().sum::<i64>() <= bound {
                break;
            }
            diag[k] = 0;
            k += 1;
        }
    }
}

fn push_off_diagonal(diag: &[i64], out: &mut Vec<HalfIntMat>) {
    let g = diag.len();
    let pairs: Vec<(usize, usize)> = (0..g).flat_map(|i| (i + 1..g).map(move |j| (i, j))).collect();
    let lim: Vec<i64> = pairs
        .iter()
        .map(|&(i, j)| (4.0 * (diag[i] * diag[j]) as f64).sqrt().floor() as i64)
        .collect();
    let mut x: Vec<i64> = lim.iter().map(|l| -l).collect();
    loop {
        let mut m = IntMatrix::diagonal(&diag.iter().map(|d| 2 * d).collect::<Vec<_>>());
        for (k, &(i, j)) in pairs.iter().enumerate() {
            m.set(i, j, x[k]);
            m.set(j, i, x[k]);
        }
        let t = HalfIntMat::from_twice(m).expect("even diagonal");
        if t.is_positive_semidefinite() {
            out.push(t);
        }
        let mut k = 0;
        loop {
            if k == pairs.len() {
                return;
            }
            x[k] += 1;
            if x[k] <= lim[k] {
                break;
            }
            x[k] = -lim[k];
            k += 1;
        }
    }
}

/// Σ a(T1, T4) q1^T1 q2^T4 over pairs with both traces at most `bound`; absent keys are 0.
#[derive(Clone, Debug, PartialEq)]
pub struct QExp2<V> {
    pub bound: i64,
    pub coeffs: BTreeMap<(HalfIntMat, HalfIntMat), V>,
}

impl<V: Clone> QExp2<V> {
    pub fn new(bound: i64) -> Self {
        QExp2 { bound, coeffs: BTreeMap::new() }
    }

    pub fn get(&self, t1: &HalfIntMat, t4: &HalfIntMat) -> Option<&V> {
        self.coeffs.get(&(t1.clone(), t4.clone()))
    }

    pub fn insert(&mut self, t1: HalfIntMat, t4: HalfIntMat, v: V) {
        if t1.trace() <= self.bound && t4.trace() <= self.bound {
            self.coeffs.insert((t1, t4), v);
        }
    }

    /// The same expansion truncated at a smaller bound.
    pub fn restrict(&self, bound: i64) -> Self {
        let bound = bound.min(self.bound);
        QExp2 {
            bound,
            coeffs: self
                .coeffs
                .iter()
                .filter(|((a, b), _)| a.trace() <= bound && b.trace() <= bound)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Entry<V> {
    #[serde(rename = "T1")]
    t1: HalfIntMat,
    #[serde(rename = "T4")]
    t4: HalfIntMat,
    value: V,
}

#[derive(Serialize, Deserialize)]
struct Wire<V> {
    bound: i64,
    coefficients: Vec<Entry<V>>,
}

impl<V: Serialize + Clone> Serialize for QExp2<V> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            bound: self.bound,
            coefficients: self
                .coeffs
                .iter()
                .map(|((a, b), v)| Entry { t1: a.clone(), t4: b.clone(), value: v.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, V: Deserialize<'de> + Clone> Deserialize<'de> for QExp2<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::<V>::deserialize(d)?;
        let mut q = QExp2::new(w.bound);
        for e in w.coefficients {
            q.insert(e.t1, e.t4, e.value);
        }
        Ok(q)
    }
}

/// H_L(κ, κ′) truncated at `bound`, with nonzero coefficients only.
pub fn measure_eval(
    kappa: &ArithPoint,
    kappa_p: &ArithPoint,
    bound: i64,
    params: &EisParams,
    prec: i64,
) -> Result<QExp2<PAdic>> {
    params.validate()?;
    let mats = psd_matrices(params.g, bound);
    let pairs: Vec<(&HalfIntMat, &HalfIntMat)> =
        mats.iter().flat_map(|a| mats.iter().map(move |b| (a, b))).collect();
    let vals = pairs
        .par_iter()
        .map(|&(a, b)| family_coeff(a, b, kappa, kappa_p, params, prec))
        .collect::<Result<Vec<_>>>()?;
    let mut q = QExp2::new(bound);
    for ((a, b), v) in pairs.into_iter().zip(vals) {
        if !v.is_zero() {
            q.insert(a.clone(), b.clone(), v);
        }
    }
    Ok(q)
}

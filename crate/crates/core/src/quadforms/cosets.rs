//! Hermite normal forms and the coset space GL_m(Z)\D(I).

use serde::Serialize;

use super::matrix::{HalfIntMat, IntMatrix};
use crate::arith::int::divisors;
use crate::error::{Error, Result};

/// One left coset GL_m(Z)·G inside D(I), with the reduced matrix G^(−t)·I·G^(−1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetRep {
    pub g: IntMatrix,
    pub d: u64,
    pub reduced: HalfIntMat,
}

/// Ordered factorizations of d into m positive factors.
fn diagonals(m: usize, d: u64) -> Vec<Vec<u64>> {
    if m == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for a in divisors(d) {
        for mut rest in diagonals(m - 1, d / a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// All upper-triangular row-style HNFs of size m and determinant d: positive diagonal,
/// entries above the diagonal in column j reduced into [0, H_jj).
pub fn hnf_with_det(m: usize, d: u64) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for diag in diagonals(m, d) {
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .collect();
        let mut x = vec![0i64; free.len()];
        loop {
            let mut g = IntMatrix::diagonal(&diag.iter().map(|&v| v as i64).collect::<Vec<_>>());
            for (k, &(i, j)) in free.iter().enumerate() {
                g.set(i, j, x[k]);
            }
            out.push(g);
            let mut k = 0;
            loop {
                if k == free.len() {
                    break;
                }
                x[k] += 1;
                if x[k] < diag[free[k].1] as i64 {
                    break;
                }
                x[k] = 0;
                k += 1;
            }
            if k == free.len() {
                break;
            }
        }
    }
    out
}

/// HNF representatives G with G^(−t)·I·G^(−1) half-integral, ordered by (det G, G).
///
/// det(2·G^(−t)IG^(−1))·det(G)² = det(2I) bounds the search to d² | det(2I).
pub fn d_cosets(i: &HalfIntMat) -> Result<Vec<CosetRep>> {
    if !i.is_positive_definite() {
        return Err(Error::domain("coset enumeration needs a positive definite matrix"));
    }
    let det = i.det2();
    let det = u64::try_from(det).map_err(|_| Error::Precision("det(2I) exceeds 64 bits".into()))?;
    let mut out = Vec::new();
    for d in divisors(det) {
        if det % (d * d) != 0 {
            continue;
        }
        let mut reps: Vec<CosetRep> = hnf_with_det(i.size(), d)
            .into_iter()
            .filter_map(|g| {
                i.transform_inverse(&g)
                    .map(|reduced| CosetRep { g, d, reduced })
            })
            .collect();
        reps.sort_by(|a, b| a.g.cmp(&b.g));
        out.extend(reps);
    }
    Ok(out)
}

/// Cosets whose determinant is a positive power of the prime q.
pub fn q_power_cosets(i: &HalfIntMat, q: u64) -> Result<Vec<CosetRep>> {
    Ok(d_cosets(i)?
        .into_iter()
        .filter(|c| {
            let mut d = c.d;
            while d % q == 0 {
                d /= q;
            }
            d == 1 && c.d > 1
        })
        .collect())
}

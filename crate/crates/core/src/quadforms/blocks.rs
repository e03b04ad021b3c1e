//! The block matrices I = [[L²T1, T2], [T2ᵗ, L²T4]] indexing Eisenstein coefficients.

use serde::Serialize;

use super::matrix::{HalfIntMat, IntMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockI {
    pub g: usize,
    pub l: u64,
    pub t1: HalfIntMat,
    /// The integer matrix 2T2.
    pub t2_twice: IntMatrix,
    pub t4: HalfIntMat,
}

impl BlockI {
    /// The assembled 2g×2g matrix I.
    pub fn matrix(&self) -> HalfIntMat {
        let g = self.g;
        let l2 = (self.l * self.l) as i64;
        let mut m = IntMatrix::zero(2 * g, 2 * g);
        for i in 0..g {
            for j in 0..g {
                m.set(i, j, l2 * self.t1.twice().get(i, j));
                m.set(g + i, g + j, l2 * self.t4.twice().get(i, j));
                m.set(i, g + j, self.t2_twice.get(i, j));
                m.set(g + j, i, self.t2_twice.get(i, j));
            }
        }
        HalfIntMat::from_twice(m).expect("assembled block matrix is half-integral")
    }

    /// det(2I).
    pub fn det2i(&self) -> i128 {
        self.matrix().det2()
    }

    /// det(2T2).
    pub fn det_2t2(&self) -> i128 {
        self.t2_twice.det()
    }
}

fn isqrt(n: i128) -> i128 {
    if n <= 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// All I with 2T2 integral and I positive definite, in lexicographic order of 2T2.
///
/// Entry bound: the 2×2 minor on rows i, g+j of 2I gives (2T2)_ij² < L⁴·(2T1)_ii·(2T4)_jj.
pub fn enumerate_i(t1: &HalfIntMat, t4: &HalfIntMat, l: u64) -> Result<Vec<BlockI>> {
    let g = t1.size();
    if t4.size() != g {
        return Err(Error::domain("T1 and T4 must have the same size"));
    }
    if l == 0 {
        return Err(Error::domain("L must be positive"));
    }
    if !t1.is_positive_semidefinite() || !t4.is_positive_semidefinite() {
        return Err(Error::domain("T1 and T4 must be positive semidefinite"));
    }
    let l4 = (l as i128).pow(4);
    let mut bounds = Vec::with_capacity(g * g);
    for i in 0..g {
        for j in 0..g {
            let prod = l4 * t1.twice().get(i, i) as i128 * t4.twice().get(j, j) as i128;
            if prod == 0 {
                return Ok(Vec::new());
            }
            // largest b with b² < prod
            bounds.push(isqrt(prod - 1) as i64);
        }
    }
    let total: f64 = bounds.iter().map(|&b| (2 * b + 1) as f64).product();
    if total > 2e7 {
        return Err(Error::Precision(format!("{total:.0} candidate T2 matrices")));
    }
    let mut out = Vec::new();
    let mut x: Vec<i64> = bounds.iter().map(|&b| -b).collect();
    loop {
        let block = BlockI {
            g,
            l,
            t1: t1.clone(),
            t2_twice: IntMatrix::from_vec(g, g, x.clone()),
            t4: t4.clone(),
        };
        if block.matrix().is_positive_definite() {
            out.push(block);
        }
        // odometer, last entry fastest
        let mut k = x.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if x[k] < bounds[k] {
                x[k] += 1;
                break;
            }
            x[k] = -bounds[k];
        }
    }
}

//! U_p on truncated double expansions.

use serde::{Deserialize, Serialize};

use crate::eisenstein::QExp2;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Both,
}

/// Coefficient at (T1, T4) becomes the input coefficient at (pT1, T4), (T1, pT4) or (pT1, pT4).
///
/// The output bound is ⌊B/p⌋, the largest bound at which every output coefficient is known.
pub fn up_on_qexp<V: Clone>(f: &QExp2<V>, p: u64, side: Side) -> Result<QExp2<V>> {
    if p < 2 {
        return Err(Error::domain("U_p needs a prime p"));
    }
    let pi = p as i64;
    let mut out = QExp2::new(f.bound / pi);
    for ((a, b), v) in &f.coeffs {
        let img = match side {
            Side::Left => a.divide(pi).map(|x| (x, b.clone())),
            Side::Right => b.divide(pi).map(|y| (a.clone(), y)),
            Side::Both => a.divide(pi).zip(b.divide(pi)),
        };
        if let Some((x, y)) = img {
            out.insert(x, y, v.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::psd_matrices;
    use crate::quadforms::HalfIntMat;
    use rand::{Rng, SeedableRng};

    #[test]
    fn examples() {
        let mut f = QExp2::new(10);
        f.insert(HalfIntMat::scalar(5), HalfIntMat::scalar(5), 7i64);
        let g = up_on_qexp(&f, 5, Side::Both).unwrap();
        assert_eq!(g.get(&HalfIntMat::scalar(1), &HalfIntMat::scalar(1)), Some(&7));
        assert_eq!(g.coeffs.len(), 1);
        let mut h = QExp2::new(10);
        h.insert(HalfIntMat::scalar(3), HalfIntMat::scalar(5), 1i64);
        assert!(up_on_qexp(&h, 5, Side::Left).unwrap().coeffs.is_empty());
    }

    #[test]
    fn iterate_is_index_scaling() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let mats = psd_matrices(2, 12);
        let mut f = QExp2::new(12);
        for a in &mats {
            for b in &mats {
                f.insert(a.clone(), b.clone(), rng.gen_range(-9..10i64));
            }
        }
        let once = up_on_qexp(&up_on_qexp(&f, 2, Side::Both).unwrap(), 2, Side::Both).unwrap();
        let scaled = up_on_qexp(&f, 4, Side::Both).unwrap();
        assert_eq!(once, scaled);
        for ((a, b), v) in &scaled.coeffs {
            assert_eq!(f.get(&a.scale(4), &b.scale(4)), Some(v));
        }
    }
}

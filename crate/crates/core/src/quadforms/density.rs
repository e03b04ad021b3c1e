//! Local Siegel series at a prime q, from exact character sums over Sym_m(Z/q^ν).
//!
//! The coefficient of X^j in b_q(T, X) sums e(tr(TS)) over S ∈ Sym_m(Q_q)/Sym_m(Z_q)
//! with ν(S) = q^j. Writing S = A/q^ν and averaging over unit multiples of A turns the
//! exponential into a Ramanujan sum c_(q^ν)(r) that depends only on v_q(r).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::matrix::HalfIntMat;
use super::poly::Poly;
use crate::arith::int::{fundamental_discriminant, kronecker, val_i128};
use crate::error::{Error, Result};

/// Work limit on the number of symmetric matrices visited.
const MAX_SUMMANDS: f64 = 6e8;

fn val(mut x: u64, q: u64, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    if q == 2 {
        return x.trailing_zeros().min(cap);
    }
    let mut v = 0;
    while v < cap && x % q == 0 {
        x /= q;
        v += 1;
    }
    v
}

fn val128(x: i128, q: u64, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    val_i128(x, q).unwrap_or(cap).min(cap)
}

/// Table counts[j][w] = #{A : j(A) = j, min(v_q(r(A)), ν) = w}.
type Counts = Vec<Vec<u64>>;

fn add_counts(mut a: Counts, b: Counts) -> Counts {
    for (x, y) in a.iter_mut().zip(b) {
        for (u, v) in x.iter_mut().zip(y) {
            *u += v;
        }
    }
    a
}

/// Binary case: elementary divisors from v(content) and v(ac − b²) of the lift.
fn counts_binary(t: &HalfIntMat, q: u64, nu: u32) -> Counts {
    let n = q.pow(nu);
    let tt = t.twice();
    let (t11, t12, t22) = (
        (tt.get(0, 0) / 2).rem_euclid(n as i64) as u64,
        tt.get(0, 1).rem_euclid(n as i64) as u64,
        (tt.get(1, 1) / 2).rem_euclid(n as i64) as u64,
    );
    let width = 2 * nu as usize + 1;
    let empty = || vec![vec![0u64; nu as usize + 1]; width];
    (0..n)
        .into_par_iter()
        .fold(empty, |mut acc, a| {
            let va = val(a, q, nu);
            let ra = (t11 as u128 * a as u128 % n as u128) as u64;
            for b in 0..n {
                let vab = va.min(val(b, q, nu));
                let rab = ((ra as u128 + t12 as u128 * b as u128) % n as u128) as u64;
                let bb = b as i128 * b as i128;
                for c in 0..n {
                    let v1 = vab.min(val(c, q, nu));
                    let j = if v1 >= nu {
                        0
                    } else {
                        let vd = val128(a as i128 * c as i128 - bb, q, 2 * nu + 2);
                        let v2 = (vd - v1).min(nu);
                        (nu - v1) + (nu - v2)
                    };
                    let r = ((rab as u128 + t22 as u128 * c as u128) % n as u128) as u64;
                    acc[j as usize][val(r, q, nu) as usize] += 1;
                }
            }
            acc
        })
        .reduce(empty, add_counts)
}

/// Valuations of the elementary divisors of a square matrix over Z/q^ν.
fn elementary_vals(a: &mut [i128], m: usize, q: u64, nu: u32) -> Vec<u32> {
    let n = (q as i128).pow(nu);
    let mut out = Vec::with_capacity(m);
    for k in 0..m {
        let mut best = (nu, k, k);
        for i in k..m {
            for j in k..m {
                let v = val128(a[i * m + j].rem_euclid(n), q, nu);
                if v < best.0 {
                    best = (v, i, j);
                }
            }
        }
        let (v, pi, pj) = best;
        if v >= nu {
            out.extend(std::iter::repeat(nu).take(m - k));
            break;
        }
        out.push(v);
        for c in 0..m {
            a.swap(k * m + c, pi * m + c);
        }
        for r in 0..m {
            a.swap(r * m + k, r * m + pj);
        }
        let qv = (q as i128).pow(v);
        let unit = (a[k * m + k] / qv).rem_euclid(n);
        let inv = crate::arith::int::mod_inv(unit, n).expect("pivot unit");
        for i in k + 1..m {
            let f = (a[i * m + k] / qv).rem_euclid(n) * inv % n;
            for c in k..m {
                a[i * m + c] = (a[i * m + c] - f * a[k * m + c]).rem_euclid(n);
            }
        }
        for j in k + 1..m {
            let f = (a[k * m + j] / qv).rem_euclid(n) * inv % n;
            for r in k..m {
                a[r * m + j] = (a[r * m + j] - f * a[r * m + k]).rem_euclid(n);
            }
        }
    }
    out
}

fn counts_general(t: &HalfIntMat, q: u64, nu: u32) -> Counts {
    let m = t.size();
    let n = q.pow(nu);
    let tt = t.twice();
    // pairing weights on the upper triangle
    let slots: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let w: Vec<u64> = slots
        .iter()
        .map(|&(i, j)| {
            let x = if i == j { tt.get(i, i) / 2 } else { tt.get(i, j) };
            x.rem_euclid(n as i64) as u64
        })
        .collect();
    let width = m * nu as usize + 1;
    let empty = || vec![vec![0u64; nu as usize + 1]; width];
    let rest = slots.len() - 1;
    (0..n)
        .into_par_iter()
        .fold(empty, |mut acc, first| {
            let mut x = vec![0u64; rest];
            let mut a = vec![0i128; m * m];
            loop {
                let mut r = (first as u128 * w[0] as u128) % n as u128;
                let vals: Vec<u64> = std::iter::once(first).chain(x.iter().copied()).collect();
                for (k, &(i, j)) in slots.iter().enumerate() {
                    a[i * m + j] = vals[k] as i128;
                    a[j * m + i] = vals[k] as i128;
                    if k > 0 {
                        r = (r + vals[k] as u128 * w[k] as u128) % n as u128;
                    }
                }
                let ev = elementary_vals(&mut a, m, q, nu);
                let j: u32 = ev.iter().map(|&v| nu - v).sum();
                acc[j as usize][val(r as u64, q, nu) as usize] += 1;
                let mut k = 0;
                loop {
                    if k == rest {
                        return acc;
                    }
                    x[k] += 1;
                    if x[k] < n {
                        break;
                    }
                    x[k] = 0;
                    k += 1;
                }
            }
        })
        .reduce(empty, add_counts)
}

/// Ramanujan sum c_(q^ν)(r) with v_q(r) = w (w = ν meaning r ≡ 0).
fn ramanujan(q: u64, nu: u32, w: u32) -> i128 {
    let qn = (q as i128).pow(nu);
    if w >= nu {
        qn - qn / q as i128
    } else if w + 1 == nu {
        -(qn / q as i128)
    } else {
        0
    }
}

/// Coefficients c_0..c_(mν) of the level-q^ν Siegel sum Σ_(A mod q^ν) e(tr(TA)/q^ν)·X^(j(A)).
///
/// For j ≤ ν these are the coefficients of the Siegel series b_q(T, X).
pub fn siegel_sum(t: &HalfIntMat, q: u64, nu: u32) -> Result<Vec<BigInt>> {
    let m = t.size();
    if nu == 0 {
        return Ok(vec![BigInt::from(1)]);
    }
    let work = (q as f64).powi((nu as usize * m * (m + 1) / 2) as i32);
    if work > MAX_SUMMANDS {
        return Err(Error::Precision(format!(
            "Siegel sum for size {m} at {q}^{nu} needs {work:.2e} terms"
        )));
    }
    let counts = if m == 2 {
        counts_binary(t, q, nu)
    } else {
        counts_general(t, q, nu)
    };
    let phi = ramanujan(q, nu, nu);
    counts
        .iter()
        .map(|row| {
            let s: i128 = row
                .iter()
                .enumerate()
                .map(|(w, &k)| k as i128 * ramanujan(q, nu, w as u32))
                .sum();
            if s % phi != 0 {
                return Err(Error::Precision("non-integral Siegel sum coefficient".into()));
            }
            Ok(BigInt::from(s / phi))
        })
        .collect()
}

/// Normalized representation count of T by the split form of even rank `rank`, modulo q^ν:
/// q^(−ν(rank·m − m(m+1)/2))·#{X : XᵗHX ≡ T}, computed as Σ_j c_j·q^(−j·rank/2).
pub fn local_density(t: &HalfIntMat, q: u64, nu: u32, rank: usize) -> Result<BigRational> {
    if rank % 2 != 0 {
        return Err(Error::Unsupported("only even split ranks are supported".into()));
    }
    if rank < t.size() {
        return Err(Error::domain("rank must be at least the size of T"));
    }
    let c = siegel_sum(t, q, nu)?;
    let x = BigRational::new(BigInt::from(1), BigInt::from(q).pow((rank / 2) as u32));
    let mut acc = BigRational::zero();
    let mut pw = BigRational::from_integer(BigInt::from(1));
    for cj in c {
        acc += BigRational::from_integer(cj) * &pw;
        pw *= &x;
    }
    Ok(acc)
}

/// F_q(T, X) = b_q(T, X)·(1 − ξq^(m/2)X) / ((1 − X)·∏_(i=1..m/2)(1 − q^(2i)X²)), where
/// ξ = (D0/q) for the fundamental discriminant D0 of (−1)^(m/2)·det(2T).
pub fn f_poly(t: &HalfIntMat, q: u64) -> Result<Poly> {
    let m = t.size();
    if m % 2 != 0 {
        return Err(Error::Unsupported("F_q needs an even size".into()));
    }
    let det = t.det2();
    if det == 0 {
        return Err(Error::domain("F_q needs a nondegenerate matrix"));
    }
    let nu = val_i128(det, q).unwrap_or(0);
    // odd q with v_q(det 2T) ≤ 1: F = 1
    if nu == 0 || (q != 2 && nu == 1) {
        return Ok(Poly::one());
    }
    if m == 2 && (q as f64).powi(3 * nu as i32) > BINARY_SERIES_LIMIT {
        return binary_closed_form(t, q);
    }
    f_from_series(t, q, nu)
}

/// Above this many summands binary forms switch to the closed form.
const BINARY_SERIES_LIMIT: f64 = 2e7;

/// F_q for binary forms: with −det(2T) = D0·f², a = v_q(f), b = content valuation,
/// F = Σ_(i≤b) (q²X)^i·(S(a−i) − ξqX·S(a−i−1)), S(c) = Σ_(l≤c) q^(3l)X^(2l).
pub fn binary_closed_form(t: &HalfIntMat, q: u64) -> Result<Poly> {
    if t.size() != 2 || !t.is_positive_definite() {
        return Err(Error::domain("closed form needs a positive definite binary form"));
    }
    let det = i64::try_from(t.det2()).map_err(|_| Error::Precision("discriminant exceeds 64 bits".into()))?;
    let (d0, f) = fundamental_discriminant(-det)
        .ok_or_else(|| Error::domain(format!("{} is not a discriminant", -det)))?;
    let xi = BigInt::from(kronecker(d0, q));
    let a = val_i128(f as i128, q).unwrap_or(0) as i64;
    let b = t.content_val(q) as i64;
    let qb = BigInt::from(q);
    let s = |c: i64| {
        let mut v = vec![BigRational::zero(); (2 * c.max(0) + 1) as usize];
        for l in 0..=c {
            v[2 * l as usize] = BigRational::from_integer(qb.pow(3 * l as u32));
        }
        Poly::from_coeffs(v)
    };
    let xqx = Poly::from_coeffs(vec![BigRational::zero(), BigRational::from_integer(&xi * &qb)]);
    let zero = Poly::from_coeffs(vec![]);
    let mut acc = zero.clone();
    for i in 0..=b.min(a) {
        let mut h = s(a - i);
        if a - i >= 1 {
            h = h.sub(&xqx.mul(&s(a - i - 1)));
        }
        // acc += (q²X)^i·h
        let qi = BigRational::from_integer(qb.pow(2 * i as u32));
        acc = acc.sub(&zero.sub(&h).shift_scale(i as usize, &qi));
    }
    Ok(acc)
}

fn f_from_series(t: &HalfIntMat, q: u64, nu: u32) -> Result<Poly> {
    let m = t.size();
    let det = t.det2();
    let signed = if (m / 2) % 2 == 0 { det } else { -det };
    let d = i64::try_from(signed).map_err(|_| Error::Precision("discriminant exceeds 64 bits".into()))?;
    let (d0, _) = fundamental_discriminant(d)
        .ok_or_else(|| Error::domain(format!("{d} is not a discriminant")))?;
    let xi = kronecker(d0, q) as i64;
    let n = nu as usize + 1;
    let b = Poly::from_coeffs(
        siegel_sum(t, q, nu)?
            .into_iter()
            .take(n)
            .map(BigRational::from_integer)
            .collect(),
    );
    let qh = BigInt::from(q).pow((m / 2) as u32);
    let num = Poly::from_coeffs(vec![
        BigRational::from_integer(1.into()),
        BigRational::from_integer(-BigInt::from(xi) * qh),
    ]);
    let mut den = Poly::from_ints(&[1, -1]);
    for i in 1..=m / 2 {
        let c = BigInt::from(q).pow(2 * i as u32);
        den = den.mul(&Poly::from_coeffs(vec![
            BigRational::from_integer(1.into()),
            BigRational::zero(),
            BigRational::from_integer(-c),
        ]));
    }
    Ok(b.mul(&num).truncate(n).mul(&den.inverse_series(n)).truncate(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half(rows: &[Vec<i64>]) -> HalfIntMat {
        HalfIntMat::from_twice_rows(rows).unwrap()
    }

    /// #{X ∈ M_(rank×m)(Z/q^ν) : XᵗHX ≡ T} for H = ⊥ hyperbolic planes, by enumeration.
    fn brute_count(t: &HalfIntMat, q: u64, nu: u32, rank: usize) -> u64 {
        let m = t.size();
        let n = q.pow(nu) as i64;
        let cells = rank * m;
        let mut x = vec![0i64; cells];
        let mut count = 0;
        loop {
            // column k of X is x[k*rank .. (k+1)*rank]
            let ok = (0..m).all(|i| {
                (0..m).all(|j| {
                    if j < i {
                        return true;
                    }
                    // B(x_i, x_j) with Q(v) = Σ v_(2h) v_(2h+1)
                    let xi = &x[i * rank..(i + 1) * rank];
                    let xj = &x[j * rank..(j + 1) * rank];
                    let bil: i64 = (0..rank / 2)
                        .map(|h| xi[2 * h] * xj[2 * h + 1] + xi[2 * h + 1] * xj[2 * h])
                        .sum();
                    let target = t.twice().get(i, j);
                    if i == j {
                        (bil / 2 - target / 2).rem_euclid(n) == 0
                    } else {
                        (bil - target).rem_euclid(n) == 0
                    }
                })
            });
            if ok {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == cells {
                    return count;
                }
                x[k] += 1;
                if x[k] < n {
                    break;
                }
                x[k] = 0;
                k += 1;
            }
        }
    }

    fn normalized(t: &HalfIntMat, q: u64, nu: u32, rank: usize) -> BigRational {
        let m = t.size();
        let e = nu as usize * (rank * m - m * (m + 1) / 2);
        BigRational::new(brute_count(t, q, nu, rank).into(), BigInt::from(q).pow(e as u32))
    }

    #[test]
    fn density_matches_exhaustive_count() {
        let cases = [
            (HalfIntMat::scalar(1), 3, 2, 2),
            (HalfIntMat::scalar(0), 3, 2, 2),
            (HalfIntMat::scalar(3), 3, 2, 4),
            (HalfIntMat::scalar(2), 2, 3, 2),
            (half(&[vec![2, 0], vec![0, 2]]), 3, 1, 4),
            (half(&[vec![2, 1], vec![1, 2]]), 3, 1, 4),
            (half(&[vec![2, 1], vec![1, 2]]), 2, 1, 4),
            (half(&[vec![0, 0], vec![0, 0]]), 2, 2, 2),
        ];
        for (t, q, nu, rank) in cases {
            assert_eq!(local_density(&t, q, nu, rank).unwrap(), normalized(&t, q, nu, rank), "{t:?} q={q}");
        }
    }

    #[test]
    fn general_kernel_agrees_with_binary_kernel() {
        for rows in [[2i64, 1, 1, 2], [2, 0, 0, 8], [4, 2, 2, 10], [6, 3, 3, 6]] {
            let t = half(&[rows[..2].to_vec(), rows[2..].to_vec()]);
            for (q, nu) in [(2u64, 3u32), (3, 2)] {
                assert_eq!(counts_binary(&t, q, nu), counts_general(&t, q, nu));
            }
        }
    }

    #[test]
    fn elementary_divisors() {
        let mut a = vec![2i128, 0, 0, 4];
        assert_eq!(elementary_vals(&mut a, 2, 2, 4), vec![1, 2]);
        let mut a = vec![3i128, 1, 1, 3];
        assert_eq!(elementary_vals(&mut a, 2, 2, 4), vec![0, 3]);
    }

    #[test]
    fn binary_f_matches_closed_form() {
        for a in 1..5i64 {
            for c in a..10 {
                for b in -a..=a {
                    let t = half(&[vec![2 * a, b], vec![b, 2 * c]]);
                    let det = t.det2();
                    for q in [2u64, 3, 5] {
                        if det % q as i128 != 0 || val_i128(det, q).unwrap() > 5 {
                            continue;
                        }
                        let nu = val_i128(det, q).unwrap();
                        assert_eq!(f_from_series(&t, q, nu).unwrap(), binary_closed_form(&t, q).unwrap(), "{t:?} q={q}");
                    }
                }
            }
        }
    }

    #[test]
    fn small_valuation_shortcut_holds_in_size_four() {
        let cases = [
            half(&[vec![2, 1, 0, 0], vec![1, 2, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 2]]),
            half(&[vec![2, 0, 0, 0], vec![0, 2, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, 6]]),
            half(&[vec![2, 0, 1, 0], vec![0, 2, 0, 1], vec![1, 0, 4, 0], vec![0, 1, 0, 2]]),
        ];
        for t in cases {
            for q in [3u64, 5, 7] {
                if val_i128(t.det2(), q) == Some(1) && q <= 5 {
                    assert!(f_from_series(&t, q, 1).unwrap().is_one(), "{t:?} q={q}");
                }
            }
        }
    }
}

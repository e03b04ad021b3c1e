//! Scalar and matrix Gauss sums, and quadratic characters of discriminants.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::dirichlet::DirichletChar;
use crate::arith::int::{fundamental_discriminant, gcd, lcm, mod_inv};
use crate::arith::CycNumber;
use crate::error::{Error, Result};
use crate::quadforms::IntMatrix;

fn counts_to_cyc(m: u64, counts: &[i64]) -> CycNumber {
    CycNumber::from_exponent_sums(
        m,
        counts
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect(),
    )
}

/// G(χ) = Σ_(a mod M) χ(a)·ζ_M^a.
pub fn gauss_sum(chi: &DirichletChar) -> CycNumber {
    let m = chi.modulus();
    let o = chi.order();
    let big = lcm(m, o);
    let mut counts = vec![0i64; big as usize];
    for a in 0..m {
        if let Some(e) = chi.exponent(a as i64) {
            counts[((a * (big / m) + e * (big / o)) % big) as usize] += 1;
        }
    }
    counts_to_cyc(big, &counts)
}

/// Exponent numerators of tr(T2·X)/N as a linear form in the entries of X.
///
/// `a` holds 2T2 already divided by L; returns per-entry weights mod N.
fn trace_weights(a: &IntMatrix, n: u64, linv: i128) -> Result<Vec<u64>> {
    let g = a.rows();
    let ni = n as i128;
    let half = if n % 2 == 1 {
        mod_inv(2, ni).unwrap_or(0)
    } else {
        if a.entries().iter().any(|x| x % 2 != 0) {
            return Err(Error::domain(
                "even level needs an integral T2 for the trace pairing",
            ));
        }
        0
    };
    // weight of X[j][i] is (2T2)[i][j]/2
    let mut w = vec![0u64; g * g];
    for i in 0..g {
        for j in 0..g {
            let x = a.get(i, j) as i128;
            let v = if n % 2 == 1 { x * half } else { x / 2 };
            w[j * g + i] = (v.rem_euclid(ni) * linv).rem_euclid(ni) as u64;
        }
    }
    Ok(w)
}

fn det_mod(x: &[u64], g: usize, n: u64) -> u64 {
    let m = IntMatrix::from_vec(g, g, x.iter().map(|&v| v as i64).collect());
    m.det().rem_euclid(n as i128) as u64
}

/// G_g(T2, N, η) = Σ_(X ∈ M_g(Z/N)) η(det X)·e(tr(T2·X/L)/N), by direct summation.
///
/// `two_t2` holds the integer matrix 2T2. When L divides every entry the division is exact,
/// otherwise L must be invertible modulo N.
pub fn matrix_gauss_sum(two_t2: &IntMatrix, n: u64, eta: &DirichletChar, l: u64) -> Result<CycNumber> {
    let g = two_t2.rows();
    if two_t2.cols() != g || n == 0 || l == 0 {
        return Err(Error::domain("matrix Gauss sum needs a square T2, N ≥ 1 and L ≥ 1"));
    }
    if n % eta.modulus() != 0 {
        return Err(Error::domain(format!(
            "character modulus {} does not divide N = {n}",
            eta.modulus()
        )));
    }
    let divisible = two_t2.entries().iter().all(|&x| x % l as i64 == 0);
    let linv = if divisible {
        1
    } else {
        mod_inv(l as i128, n as i128)
            .ok_or_else(|| Error::domain("L neither divides 2T2 nor is invertible mod N"))?
    };
    if (n as f64).powi((g * g) as i32) > 5e7 {
        return Err(Error::Precision("matrix Gauss sum too large for direct summation".into()));
    }
    let a = if divisible { two_t2.map(|x| x / l as i64) } else { two_t2.clone() };
    let w = trace_weights(&a, n, linv)?;
    let o = eta.order();
    let big = lcm(n, o);
    let mut counts = vec![0i64; big as usize];
    let mut x = vec![0u64; g * g];
    loop {
        let d = det_mod(&x, g, n);
        if let Some(e) = eta.exponent(d as i64) {
            let r = x.iter().zip(&w).map(|(a, b)| a * b % n).sum::<u64>() % n;
            counts[((r * (big / n) + e * (big / o)) % big) as usize] += 1;
        }
        let mut k = 0;
        loop {
            if k == x.len() {
                return Ok(counts_to_cyc(big, &counts));
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

/// Closed form C^(g(g−1)/2)·η^(−1)(det T2)·G(η)^g for primitive η of conductor C
/// with gcd(det 2T2, C) = 1, evaluated at level N = C.
pub fn matrix_gauss_closed_form(two_t2: &IntMatrix, eta: &DirichletChar) -> Result<CycNumber> {
    let g = two_t2.rows();
    let c = eta.modulus();
    if !eta.is_primitive() {
        return Err(Error::domain("closed form needs a primitive character"));
    }
    let det2 = two_t2.det();
    // det T2 = det(2T2)/2^g, read modulo C; at even C the coprimality is on det T2
    let det_t2 = if c % 2 == 1 {
        if gcd(det2.unsigned_abs() as u64 % c.max(1), c) != 1 && c > 1 {
            return Err(Error::domain("det 2T2 is not prime to the conductor"));
        }
        let inv2 = mod_inv(2, c as i128).unwrap_or(0);
        let mut d = det2.rem_euclid(c as i128);
        for _ in 0..g {
            d = d * inv2 % c as i128;
        }
        d as i64
    } else {
        if two_t2.entries().iter().any(|x| x % 2 != 0) {
            return Err(Error::domain("even conductor needs an integral T2"));
        }
        let d = two_t2.map(|x| x / 2).det().rem_euclid(c as i128) as i64;
        if gcd(d as u64, c) != 1 {
            return Err(Error::domain("det T2 is not prime to the conductor"));
        }
        d
    };
    let scalar = CycNumber::from_int((c as i64).pow((g * (g - 1) / 2) as u32));
    let twist = eta.value(det_t2).conj();
    Ok(&(&scalar * &twist) * &gauss_sum(eta).pow(g as u64))
}

/// The quadratic character of Q(√D) together with D = D0·f².
#[derive(Clone, Debug, Serialize)]
pub struct QuadChar {
    pub character: DirichletChar,
    pub d0: i64,
    pub f: u64,
}

/// σ_D: the Kronecker character (D0/·) of the fundamental discriminant D0 with D/D0 a square.
pub fn quad_char_sigma(d: i64) -> Result<QuadChar> {
    if d == 0 {
        return Err(Error::domain("σ_D needs D ≠ 0"));
    }
    let (d0, f) = fundamental_discriminant(d)
        .ok_or_else(|| Error::domain(format!("{d} is not a discriminant (≡ 2, 3 mod 4)")))?;
    Ok(QuadChar {
        character: DirichletChar::kronecker(d0),
        d0,
        f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int::mod_pow;

    fn quad3() -> DirichletChar {
        DirichletChar::kronecker(-3)
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(gauss_sum(&DirichletChar::trivial(1)), CycNumber::one());
        let z3 = CycNumber::root_of_unity(3, 1);
        assert_eq!(gauss_sum(&quad3()), &z3 - &z3.pow(2));
        let g5 = gauss_sum(&DirichletChar::kronecker(5));
        assert_eq!((&g5 * &g5.conj()).as_rational(), Some(BigRational::from_integer(5.into())));
    }

    #[test]
    fn norms_of_primitive_gauss_sums() {
        for m in [3u64, 4, 5, 7, 8, 9, 12, 13, 16] {
            for chi in DirichletChar::all(m).into_iter().filter(|c| c.is_primitive()) {
                let g = gauss_sum(&chi);
                let gb = gauss_sum(&chi.inverse());
                let sign = if chi.is_even() { 1 } else { -1 };
                assert_eq!(&g * &gb, CycNumber::from_int(sign * m as i64), "mod {m}");
                assert_eq!(&g * &g.conj(), CycNumber::from_int(m as i64));
            }
        }
    }

    #[test]
    fn matrix_examples() {
        let one = IntMatrix::from_vec(1, 1, vec![2]);
        assert_eq!(matrix_gauss_sum(&one, 1, &DirichletChar::trivial(1), 1).unwrap(), CycNumber::one());
        assert_eq!(matrix_gauss_sum(&one, 3, &quad3(), 1).unwrap(), gauss_sum(&quad3()));
        let id2 = IntMatrix::from_vec(2, 2, vec![2, 0, 0, 2]);
        let brute = matrix_gauss_sum(&id2, 3, &quad3(), 1).unwrap();
        let want = &CycNumber::from_int(3) * &gauss_sum(&quad3()).pow(2);
        assert_eq!(brute, want);
        assert_eq!(matrix_gauss_closed_form(&id2, &quad3()).unwrap(), want);
    }

    #[test]
    fn l_parameter_rescales() {
        let a = IntMatrix::from_vec(1, 1, vec![10]);
        let b = IntMatrix::from_vec(1, 1, vec![2]);
        let chi = DirichletChar::kronecker(5).lift(5).unwrap();
        assert_eq!(
            matrix_gauss_sum(&a, 7, &DirichletChar::trivial(7), 5).unwrap(),
            matrix_gauss_sum(&b, 7, &DirichletChar::trivial(7), 1).unwrap()
        );
        assert!(matrix_gauss_sum(&b, 5, &chi, 5).is_err());
        // 3 ≡ 3·5·5⁻¹: an invertible L acts as its inverse mod N
        let c = IntMatrix::from_vec(1, 1, vec![2 * 3]);
        let d = IntMatrix::from_vec(1, 1, vec![2 * 3 * 3]);
        assert_eq!(
            matrix_gauss_sum(&c, 7, &DirichletChar::trivial(7), 5).unwrap(),
            matrix_gauss_sum(&d, 7, &DirichletChar::trivial(7), 1).unwrap()
        );
    }

    #[test]
    fn sigma_examples() {
        let s = quad_char_sigma(1).unwrap();
        assert!(s.character.is_trivial() && s.f == 1);
        let s = quad_char_sigma(-4).unwrap();
        assert_eq!((s.character.modulus(), s.character.is_even()), (4, false));
        let s = quad_char_sigma(-12).unwrap();
        assert_eq!((s.d0, s.f, s.character.modulus()), (-3, 2, 3));
        assert!(quad_char_sigma(0).is_err());
        assert!(quad_char_sigma(-5).is_err());
    }

    #[test]
    fn sigma_matches_euler_criterion() {
        for d in [-3i64, -4, -7, -8, -11, -15, -20, -24, 5, 8, 12, 13, -48, 60] {
            let s = quad_char_sigma(d).unwrap();
            for q in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
                if (2 * s.d0).rem_euclid(q as i64) == 0 {
                    continue;
                }
                let e = mod_pow(s.d0.rem_euclid(q as i64) as u64, (q - 1) / 2, q);
                let want = if e == 1 { 0 } else { 1 };
                assert_eq!(s.character.exponent(q as i64), Some(want), "D={d} q={q}");
            }
        }
    }
}

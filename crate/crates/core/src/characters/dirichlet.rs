//! Table-backed Dirichlet characters.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::int::{divisors, factorize, gcd, lcm, mod_pow, primitive_root};
use crate::arith::{teichmuller, CycNumber, PAdic};
use crate::error::{Error, Result};

/// Generators of (Z/q^e)^× with their orders, in the order used for `generator_images`.
fn local_generators(q: u64, e: u32) -> Vec<(u64, u64)> {
    let m = q.pow(e);
    match (q, e) {
        (2, 1) => vec![],
        (2, 2) => vec![(3, 2)],
        (2, _) => vec![(m - 1, 2), (5, m / 4)],
        _ => vec![(primitive_root(q, e), m / q * (q - 1))],
    }
}

/// Discrete logarithms of every residue mod q^e with respect to `local_generators`.
fn local_logs(q: u64, e: u32) -> Vec<Option<Vec<u64>>> {
    let m = q.pow(e);
    let gens = local_generators(q, e);
    let mut out = vec![None; m as usize];
    if gens.is_empty() {
        out[1 % m as usize] = Some(vec![]);
        return out;
    }
    let mut idx = vec![0u64; gens.len()];
    loop {
        let mut n = 1u64;
        for (i, &(g, _)) in gens.iter().enumerate() {
            n = n * mod_pow(g, idx[i], m) % m;
        }
        out[n as usize] = Some(idx.clone());
        let mut k = 0;
        loop {
            if k == gens.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < gens[k].1 {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// A Dirichlet character χ mod M with values ζ_o^(table[n]); −1 marks non-units.
#[derive(Clone)]
pub struct DirichletChar {
    modulus: u64,
    order: u64,
    table: Arc<Vec<i32>>,
    conductor: OnceLock<u64>,
}

impl fmt::Debug for DirichletChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DirichletChar(mod {}, images {:?})", self.modulus, self.generator_images())
    }
}

impl PartialEq for DirichletChar {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && (0..self.modulus as i64).all(|n| self.value_frac(n) == other.value_frac(n))
    }
}

impl Eq for DirichletChar {}

impl DirichletChar {
    fn from_table(modulus: u64, order: u64, table: Vec<i32>) -> Self {
        // shrink the value order to the exact order of the image
        let g = table
            .iter()
            .filter(|&&x| x >= 0)
            .fold(order, |acc, &x| gcd(acc, x as u64));
        let g = g.max(1);
        let table = if g > 1 {
            table.into_iter().map(|x| if x < 0 { x } else { x / g as i32 }).collect()
        } else {
            table
        };
        DirichletChar {
            modulus,
            order: order / g,
            table: Arc::new(table),
            conductor: OnceLock::new(),
        }
    }

    pub fn trivial(modulus: u64) -> Self {
        let table = (0..modulus).map(|n| if gcd(n, modulus) == 1 { 0 } else { -1 }).collect();
        Self::from_table(modulus, 1, table)
    }

    /// Builds χ from the exponents a with χ(generator) = ζ_(order of generator)^a,
    /// one entry (q, e, [a…]) per prime power of the modulus.
    pub fn from_images(modulus: u64, images: &[(u64, u32, Vec<u64>)]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        let fac = factorize(modulus);
        let mut parts = Vec::new();
        let mut order = 1u64;
        for &(q, e) in &fac {
            let gens = local_generators(q, e);
            let imgs = images
                .iter()
                .find(|(qq, ee, _)| *qq == q && *ee == e)
                .map(|(_, _, a)| a.clone())
                .unwrap_or_else(|| vec![0; gens.len()]);
            if imgs.len() != gens.len() {
                return Err(Error::Parse(format!(
                    "{q}^{e} needs {} generator exponents",
                    gens.len()
                )));
            }
            for (&a, &(_, o)) in imgs.iter().zip(&gens) {
                order = lcm(order, o / gcd(a % o, o));
            }
            parts.push((q.pow(e), gens, imgs, local_logs(q, e)));
        }
        for (q, e, _) in images {
            if !fac.contains(&(*q, *e)) {
                return Err(Error::Parse(format!("{q}^{e} is not an exact prime power of {modulus}")));
            }
        }
        let table = (0..modulus)
            .map(|n| {
                let mut acc = 0u64;
                for (m, gens, imgs, logs) in &parts {
                    match &logs[(n % m) as usize] {
                        None => return -1,
                        Some(idx) => {
                            for ((&a, &(_, o)), &i) in imgs.iter().zip(gens).zip(idx) {
                                acc += (a % o) * i % o * order / o;
                            }
                        }
                    }
                }
                (acc % order) as i32
            })
            .collect();
        Ok(Self::from_table(modulus, order, table))
    }

    /// The Teichmüller character ω mod p, sending the least primitive root g to ζ_(p−1).
    pub fn omega(p: u64) -> Self {
        Self::from_images(p, &[(p, 1, vec![1])]).expect("prime modulus")
    }

    /// Kronecker symbol (d0 / ·) as a character mod |d0|, d0 a fundamental discriminant.
    pub fn kronecker(d0: i64) -> Self {
        let m = d0.unsigned_abs();
        let table = (0..m)
            .map(|n| match crate::arith::int::kronecker(d0, n) {
                1 => 0,
                -1 => 1,
                _ => -1,
            })
            .collect::<Vec<i32>>();
        let table = if m == 1 { vec![0] } else { table };
        Self::from_table(m, 2, table)
    }

    /// Every character mod `modulus`.
    pub fn all(modulus: u64) -> Vec<Self> {
        let fac = factorize(modulus);
        let mut choices: Vec<Vec<(u64, u32, Vec<u64>)>> = vec![vec![]];
        for &(q, e) in &fac {
            let gens = local_generators(q, e);
            let mut local: Vec<Vec<u64>> = vec![vec![]];
            for &(_, o) in &gens {
                local = local
                    .into_iter()
                    .flat_map(|v| {
                        (0..o).map(move |a| {
                            let mut w = v.clone();
                            w.push(a);
                            w
                        })
                    })
                    .collect();
            }
            choices = choices
                .into_iter()
                .flat_map(|c| {
                    local.iter().map(move |l| {
                        let mut c2 = c.clone();
                        c2.push((q, e, l.clone()));
                        c2
                    })
                })
                .collect();
        }
        choices
            .iter()
            .map(|imgs| Self::from_images(modulus, imgs).expect("valid images"))
            .collect()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Order of the value group: every value is a power of ζ_order.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Exponent e with χ(n) = ζ_order^e, or `None` when gcd(n, M) > 1.
    pub fn exponent(&self, n: i64) -> Option<u64> {
        let x = self.table[n.rem_euclid(self.modulus as i64) as usize];
        (x >= 0).then_some(x as u64)
    }

    /// χ(n) as a reduced fraction e/o of a full turn, for comparisons.
    fn value_frac(&self, n: i64) -> Option<(u64, u64)> {
        self.exponent(n).map(|e| {
            let g = gcd(e, self.order);
            (e / g, self.order / g)
        })
    }

    pub fn value(&self, n: i64) -> CycNumber {
        match self.exponent(n) {
            None => CycNumber::zero(),
            Some(e) => CycNumber::root_of_unity(self.order, e as i64),
        }
    }

    /// χ(n) in Z_p through the Teichmüller embedding of μ_(p−1).
    pub fn value_padic(&self, n: i64, p: u64, prec: i64) -> Result<PAdic> {
        let Some(e) = self.exponent(n) else {
            return Ok(PAdic::zero(p, prec));
        };
        let g = gcd(e, self.order);
        let o = self.order / g;
        if (p - 1) % o != 0 {
            return Err(Error::Unsupported(format!(
                "character value of order {o} is not in Z_{p}"
            )));
        }
        let root = teichmuller(&BigInt::from(primitive_root(p, 1)), p, prec)?;
        root.pow(((p - 1) / o * (e / g)) as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|&x| x <= 0)
    }

    pub fn is_even(&self) -> bool {
        self.exponent(-1) == Some(0)
    }

    /// Product character modulo lcm of the moduli.
    pub fn mul(&self, other: &Self) -> Self {
        let m = lcm(self.modulus, other.modulus);
        let o = lcm(self.order, other.order);
        let (fa, fb) = (o / self.order, o / other.order);
        let table = (0..m as i64)
            .map(|n| match (self.exponent(n), other.exponent(n)) {
                (Some(a), Some(b)) => ((a * fa + b * fb) % o) as i32,
                _ => -1,
            })
            .collect();
        Self::from_table(m, o, table)
    }

    pub fn pow(&self, k: i64) -> Self {
        let o = self.order as i64;
        let table = self
            .table
            .iter()
            .map(|&x| if x < 0 { -1 } else { (x as i64 * k).rem_euclid(o) as i32 })
            .collect();
        Self::from_table(self.modulus, self.order, table)
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    /// The same character viewed modulo a multiple of its modulus.
    pub fn lift(&self, modulus: u64) -> Result<Self> {
        if modulus % self.modulus != 0 {
            return Err(Error::domain(format!("{modulus} is not a multiple of {}", self.modulus)));
        }
        let table = (0..modulus as i64)
            .map(|n| {
                if gcd(n as u64, modulus) != 1 {
                    -1
                } else {
                    self.table[(n as u64 % self.modulus) as usize]
                }
            })
            .collect();
        Ok(Self::from_table(modulus, self.order, table))
    }

    /// Smallest d | M such that χ is trivial on units ≡ 1 mod d.
    pub fn conductor(&self) -> u64 {
        *self.conductor.get_or_init(|| {
            let m = self.modulus;
            divisors(m)
                .into_iter()
                .find(|&d| {
                    (1..m)
                        .step_by(d as usize)
                        .all(|n| matches!(self.table[n as usize], 0 | -1))
                })
                .unwrap_or(m)
        })
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The primitive character inducing χ.
    pub fn primitive_part(&self) -> Self {
        let f = self.conductor();
        if f == self.modulus {
            return self.clone();
        }
        let table = (0..f)
            .map(|r| {
                if gcd(r, f) != 1 {
                    return -1;
                }
                let mut n = r;
                while gcd(n, self.modulus) != 1 {
                    n += f;
                }
                self.table[n as usize]
            })
            .collect();
        Self::from_table(f, self.order, table)
    }

    /// The component of χ on the factor d of M, where gcd(d, M/d) = 1.
    pub fn component(&self, d: u64) -> Result<Self> {
        let m = self.modulus;
        if d == 0 || m % d != 0 || gcd(d, m / d) != 1 {
            return Err(Error::domain(format!("{d} is not a unitary divisor of {m}")));
        }
        let rest = m / d;
        let table = (0..d)
            .map(|r| {
                if gcd(r, d) != 1 {
                    return -1;
                }
                // n ≡ r mod d, n ≡ 1 mod rest
                let mut n = r % d;
                while n % rest != 1 % rest {
                    n += d;
                }
                self.table[n as usize]
            })
            .collect();
        Ok(Self::from_table(d, self.order, table))
    }

    /// Exponents a with χ(generator) = ζ_(generator order)^a per prime power.
    pub fn generator_images(&self) -> Vec<(u64, u32, Vec<u64>)> {
        let m = self.modulus;
        factorize(m)
            .into_iter()
            .map(|(q, e)| {
                let qe = q.pow(e);
                let rest = m / qe;
                let imgs = local_generators(q, e)
                    .into_iter()
                    .map(|(g, o)| {
                        let mut n = g;
                        while n % rest != 1 % rest {
                            n += qe;
                        }
                        let x = self.table[n as usize] as u64;
                        x * o / self.order
                    })
                    .collect();
                (q, e, imgs)
            })
            .collect()
    }
}

/// Splits χ mod n1·r·pmod into components mod n1, r and pmod (pairwise coprime).
///
/// The middle component must be primitive.
pub fn decompose(
    chi: &DirichletChar,
    n1: u64,
    r: u64,
    pmod: u64,
) -> Result<(DirichletChar, DirichletChar, DirichletChar)> {
    if gcd(n1, r) != 1 || gcd(n1, pmod) != 1 || gcd(r, pmod) != 1 {
        return Err(Error::domain("moduli are not pairwise coprime"));
    }
    if n1 * r * pmod != chi.modulus() {
        return Err(Error::domain(format!(
            "{n1}·{r}·{pmod} does not equal the modulus {}",
            chi.modulus()
        )));
    }
    let c1 = chi.component(n1)?;
    let c2 = chi.component(r)?;
    let c3 = chi.component(pmod)?;
    if !c2.is_primitive() {
        return Err(Error::domain("component mod R is not primitive"));
    }
    Ok((c1, c2, c3))
}

#[derive(Serialize, Deserialize)]
struct CharJson {
    modulus: u64,
    generator_images: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    conductor: Option<u64>,
}

impl Serialize for DirichletChar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharJson {
            modulus: self.modulus,
            generator_images: self
                .generator_images()
                .into_iter()
                .map(|(q, e, a)| {
                    let mut v = vec![q, e as u64];
                    v.extend(a);
                    v
                })
                .collect(),
            conductor: Some(self.conductor()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirichletChar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = CharJson::deserialize(d)?;
        if j.modulus == 0 || j.modulus > 100_000 {
            return Err(D::Error::custom("modulus out of range"));
        }
        let mut imgs = Vec::new();
        for v in &j.generator_images {
            if v.len() < 2 {
                return Err(D::Error::custom("generator image needs [prime, power, exponent…]"));
            }
            imgs.push((v[0], v[1] as u32, v[2..].to_vec()));
        }
        let chi = DirichletChar::from_images(j.modulus, &imgs).map_err(D::Error::custom)?;
        if let Some(c) = j.conductor {
            if c != chi.conductor() {
                return Err(D::Error::custom(format!(
                    "declared conductor {c} but the images give {}",
                    chi.conductor()
                )));
            }
        }
        Ok(chi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_values() {
        let chi = DirichletChar::kronecker(-4);
        assert_eq!(chi.exponent(1), Some(0));
        assert_eq!(chi.exponent(3), Some(1));
        assert_eq!(chi.exponent(2), None);
        assert!(!chi.is_even());
        let w = DirichletChar::omega(5);
        assert_eq!(w.order(), 4);
        assert_eq!(w.exponent(2), Some(1));
        let t = DirichletChar::trivial(1);
        assert_eq!(t.value(0), CycNumber::one());
    }

    #[test]
    fn counts_and_conductors() {
        assert_eq!(DirichletChar::all(45).len(), 24);
        assert_eq!(DirichletChar::all(16).len(), 8);
        let prim12: Vec<_> = DirichletChar::all(12).into_iter().filter(|c| c.is_primitive()).collect();
        assert_eq!(prim12.len(), 1);
        assert_eq!(DirichletChar::kronecker(-3).lift(15).unwrap().conductor(), 3);
        assert_eq!(DirichletChar::kronecker(-8).conductor(), 8);
        // number of primitive characters mod 9 is φ(9) − φ(3) = 4
        assert_eq!(DirichletChar::all(9).iter().filter(|c| c.is_primitive()).count(), 4);
    }

    #[test]
    fn omega_matches_teichmuller() {
        let p = 7;
        let w = DirichletChar::omega(p);
        for a in 1..7 {
            assert_eq!(
                w.value_padic(a, p, 6).unwrap(),
                teichmuller(&BigInt::from(a), p, 6).unwrap()
            );
            assert_eq!(w.value(a).to_padic(p, 6).unwrap(), w.value_padic(a, p, 6).unwrap());
        }
    }

    #[test]
    fn decompose_examples() {
        let chi = DirichletChar::trivial(15);
        let (a, b, c) = decompose(&chi, 3, 1, 5).unwrap();
        assert_eq!((a.modulus(), b.modulus(), c.modulus()), (3, 1, 5));
        assert!(a.is_trivial() && b.is_trivial() && c.is_trivial());
        let q = DirichletChar::kronecker(-3).lift(15).unwrap().mul(&DirichletChar::kronecker(5).lift(15).unwrap());
        let (a, _, c) = decompose(&q, 3, 1, 5).unwrap();
        assert_eq!(a, DirichletChar::kronecker(-3));
        assert_eq!(c, DirichletChar::kronecker(5));
        assert!(decompose(&q, 3, 5, 1).is_ok());
        assert!(decompose(&DirichletChar::trivial(45), 9, 1, 5).is_ok());
        assert!(decompose(&DirichletChar::trivial(45), 3, 3, 5).is_err());
        assert!(decompose(&DirichletChar::trivial(45), 9, 5, 1).is_err());
    }

    #[test]
    fn decompose_every_character_mod_45() {
        for chi in DirichletChar::all(45) {
            let (a, b, c) = match decompose(&chi, 9, 1, 5) {
                Ok(x) => x,
                Err(e) => panic!("{e}"),
            };
            let prod = a.mul(&b).mul(&c);
            let mut units = 0;
            for n in 0..45 {
                if gcd(n, 45) == 1 {
                    units += 1;
                    assert_eq!(prod.value(n as i64), chi.value(n as i64));
                }
            }
            assert_eq!(units, 24);
        }
    }

    #[test]
    fn json_round_trip() {
        for chi in DirichletChar::all(40).into_iter().chain(DirichletChar::all(63)) {
            let s = serde_json::to_string(&chi).unwrap();
            let back: DirichletChar = serde_json::from_str(&s).unwrap();
            assert_eq!(back, chi);
        }
        let s = r#"{"modulus":5,"generator_images":[[5,1,2]],"conductor":5}"#;
        let chi: DirichletChar = serde_json::from_str(s).unwrap();
        assert_eq!(chi, DirichletChar::kronecker(5));
        assert!(serde_json::from_str::<DirichletChar>(r#"{"modulus":5,"generator_images":[[5,1,2]],"conductor":1}"#).is_err());
    }

    proptest! {
        #[test]
        fn multiplicative_and_primitive(m in 1u64..80, pick in 0usize..1000, a in 0i64..500, b in 0i64..500) {
            let all = DirichletChar::all(m);
            let chi = &all[pick % all.len()];
            prop_assert_eq!(chi.value(a * b), &chi.value(a) * &chi.value(b));
            let prim = chi.primitive_part();
            prop_assert_eq!(chi.modulus() % prim.modulus(), 0);
            if gcd(a as u64, m) == 1 {
                prop_assert_eq!(prim.value(a), chi.value(a));
            } else {
                prop_assert!(chi.value(a).is_zero());
            }
        }
    }
}

//! Finite p-adic models of U_p: square matrices over Z/p^N.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::int::is_prime;
use crate::arith::PAdic;
use crate::error::{Error, Result};

/// A d×d matrix over Z_p known modulo p^N, entries stored as residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearModel {
    p: u64,
    precision: u32,
    modulus: u128,
    labels: Vec<String>,
    rows: Vec<Vec<u128>>,
}

impl LinearModel {
    /// Entries are reduced modulo p^N; p^N must stay below 2^63.
    pub fn from_ints(p: u64, precision: u32, rows: &[Vec<i128>]) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::Unsupported(format!("p = {p} is not an odd prime")));
        }
        let modulus = (p as u128)
            .checked_pow(precision)
            .filter(|m| *m < 1u128 << 63)
            .ok_or_else(|| Error::Precision(format!("{p}^{precision} exceeds 63 bits")))?;
        if precision == 0 {
            return Err(Error::domain("precision must be positive"));
        }
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::domain("model matrix must be square"));
        }
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| x.rem_euclid(modulus as i128) as u128).collect())
            .collect();
        Ok(LinearModel {
            p,
            precision,
            modulus,
            labels: (0..d).map(|i| format!("b{i}")).collect(),
            rows,
        })
    }

    /// Integral p-adic entries only; the working precision is the given N.
    pub fn from_padic(p: u64, precision: u32, rows: &[Vec<PAdic>]) -> Result<Self> {
        let mut ints = Vec::with_capacity(rows.len());
        for r in rows {
            let mut out = Vec::with_capacity(r.len());
            for x in r {
                if x.prime() != p {
                    return Err(Error::domain("entry over a different prime"));
                }
                if !x.is_zero() && x.valuation() < 0 {
                    return Err(Error::domain("model entries must be integral"));
                }
                if x.precision() < precision as i64 {
                    return Err(Error::Precision(format!(
                        "entry known to p^{} but p^{precision} requested",
                        x.precision()
                    )));
                }
                let r = x.reduce(precision as i64).residue()?;
                out.push(r.to_i128().ok_or_else(|| Error::Precision("entry too large".into()))?);
            }
            ints.push(out);
        }
        Self::from_ints(p, precision, &ints)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::domain("one label per basis vector"));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entry(&self, i: usize, j: usize) -> u128 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<u128>] {
        &self.rows
    }

    fn same_ring(&self, o: &LinearModel) -> Result<()> {
        if self.p != o.p || self.precision != o.precision {
            return Err(Error::domain("models over different rings"));
        }
        Ok(())
    }

    fn check_dims(&self, o: &LinearModel) -> Result<()> {
        self.same_ring(o)?;
        if self.dim() != o.dim() {
            return Err(Error::domain(format!("dimension {} vs {}", self.dim(), o.dim())));
        }
        Ok(())
    }

    fn with_rows(&self, rows: Vec<Vec<u128>>) -> Self {
        let d = rows.len();
        LinearModel {
            p: self.p,
            precision: self.precision,
            modulus: self.modulus,
            labels: if d == self.dim() {
                self.labels.clone()
            } else {
                (0..d).map(|i| format!("b{i}")).collect()
            },
            rows,
        }
    }

    pub fn identity_like(&self) -> Self {
        let d = self.dim();
        self.with_rows((0..d).map(|i| (0..d).map(|j| (i == j) as u128).collect()).collect())
    }

    pub fn zero_like(&self) -> Self {
        let d = self.dim();
        self.with_rows(vec![vec![0; d]; d])
    }

    pub fn mul(&self, o: &LinearModel) -> Result<Self> {
        self.check_dims(o)?;
        let d = self.dim();
        let m = self.modulus;
        let mut out = vec![vec![0u128; d]; d];
        for i in 0..d {
            for k in 0..d {
                let a = self.rows[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    out[i][j] = (out[i][j] + a * o.rows[k][j] % m) % m;
                }
            }
        }
        Ok(self.with_rows(out))
    }

    pub fn add(&self, o: &LinearModel) -> Result<Self> {
        self.check_dims(o)?;
        let m = self.modulus;
        Ok(self.with_rows(
            self.rows
                .iter()
                .zip(&o.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x + y) % m).collect())
                .collect(),
        ))
    }

    pub fn sub(&self, o: &LinearModel) -> Result<Self> {
        self.check_dims(o)?;
        let m = self.modulus;
        Ok(self.with_rows(
            self.rows
                .iter()
                .zip(&o.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x + m - y) % m).collect())
                .collect(),
        ))
    }

    pub fn scale(&self, c: u128) -> Self {
        let m = self.modulus;
        let c = c % m;
        self.with_rows(
            self.rows
                .iter()
                .map(|r| r.iter().map(|x| x * c % m).collect())
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = self.identity_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            base = base.mul(&base).expect("same shape");
            e >>= 1;
        }
        acc
    }

    pub fn apply(&self, v: &[u128]) -> Result<Vec<u128>> {
        if v.len() != self.dim() {
            return Err(Error::domain("vector length differs from the model dimension"));
        }
        let m = self.modulus;
        Ok(self
            .rows
            .iter()
            .map(|r| r.iter().zip(v).fold(0, |acc, (a, x)| (acc + a * (x % m) % m) % m))
            .collect())
    }

    /// Kronecker product.
    pub fn kron(&self, o: &LinearModel) -> Result<Self> {
        self.same_ring(o)?;
        let (a, b) = (self.dim(), o.dim());
        let m = self.modulus;
        let mut rows = vec![vec![0u128; a * b]; a * b];
        for i in 0..a {
            for j in 0..a {
                for k in 0..b {
                    for l in 0..b {
                        rows[i * b + k][j * b + l] = self.rows[i][j] * o.rows[k][l] % m;
                    }
                }
            }
        }
        let labels = self
            .labels
            .iter()
            .flat_map(|x| o.labels.iter().map(move |y| format!("{x}⊗{y}")))
            .collect();
        Ok(LinearModel { labels, ..self.with_rows(rows) })
    }

    /// Inverse modulo p^N by elimination with unit pivots.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.dim();
        let m = self.modulus;
        let mut a: Vec<Vec<u128>> = self.rows.clone();
        let mut inv = self.identity_like().rows;
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| a[r][col] % self.p as u128 != 0)
                .ok_or_else(|| Error::domain("matrix is not invertible over Z_p"))?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let ip = mod_inverse(a[col][col], m);
            for j in 0..d {
                a[col][j] = a[col][j] * ip % m;
                inv[col][j] = inv[col][j] * ip % m;
            }
            for r in 0..d {
                if r != col && a[r][col] != 0 {
                    let f = a[r][col];
                    for j in 0..d {
                        a[r][j] = (a[r][j] + m - f * a[col][j] % m) % m;
                        inv[r][j] = (inv[r][j] + m - f * inv[col][j] % m) % m;
                    }
                }
            }
        }
        Ok(self.with_rows(inv))
    }

    /// Rank of the reduction mod p.
    pub fn rank_mod_p(&self) -> usize {
        let p = self.p as u128;
        let mut a: Vec<Vec<u128>> = self.rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
        let (d, mut rank) = (self.dim(), 0);
        for col in 0..d {
            let Some(piv) = (rank..d).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let ip = mod_inverse(a[rank][col], p);
            for r in 0..d {
                if r != rank && a[r][col] != 0 {
                    let f = a[r][col] * ip % p;
                    for j in 0..d {
                        a[r][j] = (a[r][j] + p - f * a[rank][j] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn to_padic_rows(&self) -> Vec<Vec<PAdic>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| PAdic::from_int(BigInt::from(x), self.p, self.precision as i64))
                    .collect()
            })
            .collect()
    }
}

pub(crate) fn mod_inverse(a: u128, m: u128) -> u128 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(m as i128) as u128
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryJson {
    Int(i64),
    Text(String),
    PAdic(PAdic),
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    p: u64,
    precision: u32,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    rows: Vec<Vec<EntryJson>>,
}

impl Serialize for LinearModel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModelJson {
            p: self.p,
            precision: self.precision,
            dim: self.dim(),
            labels: Some(self.labels.clone()),
            rows: self
                .to_padic_rows()
                .into_iter()
                .map(|r| r.into_iter().map(EntryJson::PAdic).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearModel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ModelJson::deserialize(d)?;
        if j.rows.len() != j.dim {
            return Err(D::Error::custom("row count differs from dim"));
        }
        let mut rows = Vec::new();
        for r in j.rows {
            let mut out = Vec::new();
            for e in r {
                let v = match e {
                    EntryJson::Int(x) => PAdic::from_int(x, j.p, j.precision as i64),
                    EntryJson::Text(s) => {
                        let x: BigInt = s.parse().map_err(|_| D::Error::custom("entry is not an integer"))?;
                        PAdic::from_int(x, j.p, j.precision as i64)
                    }
                    EntryJson::PAdic(x) => x,
                };
                out.push(v);
            }
            rows.push(out);
        }
        let m = LinearModel::from_padic(j.p, j.precision, &rows).map_err(D::Error::custom)?;
        match j.labels {
            Some(l) => m.with_labels(l).map_err(D::Error::custom),
            None => Ok(m),
        }
    }
}

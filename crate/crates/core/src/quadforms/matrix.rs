//! Small integer matrices and half-integral symmetric matrices.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl IntMatrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(Self::from_vec(r, c, rows.concat()))
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_vec(rows, cols, vec![0; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let mut m = Self::zero(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn map(&self, f: impl Fn(i64) -> i64) -> Self {
        Self::from_vec(self.rows, self.cols, self.data.iter().map(|&x| f(x)).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, b: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, b.rows);
        let mut out = Self::zero(self.rows, b.cols);
        for i in 0..self.rows {
            for j in 0..b.cols {
                let s: i64 = (0..self.cols).map(|k| self.get(i, k) * b.get(k, j)).sum();
                out.set(i, j, s);
            }
        }
        out
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> i128 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    /// Adjugate matrix, so that A·adj(A) = det(A)·1.
    pub fn adjugate(&self) -> IntMatrix {
        let n = self.rows;
        let mut out = Self::zero(n, n);
        if n == 1 {
            out.set(0, 0, 1);
            return out;
        }
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<i64> = (0..n)
                    .filter(|&r| r != j)
                    .flat_map(|r| (0..n).filter(move |&c| c != i).map(move |c| (r, c)))
                    .map(|(r, c)| self.get(r, c))
                    .collect();
                let m = IntMatrix::from_vec(n - 1, n - 1, minor).det() as i64;
                out.set(i, j, if (i + j) % 2 == 0 { m } else { -m });
            }
        }
        out
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        IntMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// A half-integral symmetric matrix T, stored through the integer matrix 2T.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfIntMat {
    two_t: IntMatrix,
}

impl fmt::Debug for HalfIntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2T={:?}", self.two_t)
    }
}

impl HalfIntMat {
    /// From the entries of 2T: symmetric with even diagonal.
    pub fn from_twice(two_t: IntMatrix) -> Result<Self> {
        let n = two_t.rows();
        if two_t.cols() != n {
            return Err(Error::domain("2T must be square"));
        }
        for i in 0..n {
            if two_t.get(i, i) % 2 != 0 {
                return Err(Error::domain("2T must have an even diagonal"));
            }
            for j in 0..i {
                if two_t.get(i, j) != two_t.get(j, i) {
                    return Err(Error::domain("2T must be symmetric"));
                }
            }
        }
        Ok(HalfIntMat { two_t })
    }

    pub fn from_twice_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_twice(IntMatrix::from_rows(rows)?)
    }

    /// The 1×1 matrix (t).
    pub fn scalar(t: i64) -> Self {
        HalfIntMat {
            two_t: IntMatrix::from_vec(1, 1, vec![2 * t]),
        }
    }

    pub fn zero(n: usize) -> Self {
        HalfIntMat {
            two_t: IntMatrix::zero(n, n),
        }
    }

    pub fn size(&self) -> usize {
        self.two_t.rows()
    }

    pub fn twice(&self) -> &IntMatrix {
        &self.two_t
    }

    /// det(2T).
    pub fn det2(&self) -> i128 {
        self.two_t.det()
    }

    pub fn trace(&self) -> i64 {
        (0..self.size()).map(|i| self.two_t.get(i, i) / 2).sum()
    }

    /// k·T.
    pub fn scale(&self, k: i64) -> Self {
        HalfIntMat {
            two_t: self.two_t.map(|x| x * k),
        }
    }

    /// T/k when that is again half-integral.
    pub fn divide(&self, k: i64) -> Option<Self> {
        let ok = (0..self.size()).all(|i| {
            (0..self.size()).all(|j| {
                let x = self.two_t.get(i, j);
                if i == j {
                    x % (2 * k) == 0
                } else {
                    x % k == 0
                }
            })
        });
        ok.then(|| HalfIntMat {
            two_t: self.two_t.map(|x| x / k),
        })
    }

    /// Leading principal minors of 2T.
    fn leading_minors(&self) -> Vec<i128> {
        (1..=self.size())
            .map(|k| {
                let sub: Vec<i64> = (0..k)
                    .flat_map(|i| (0..k).map(move |j| (i, j)))
                    .map(|(i, j)| self.two_t.get(i, j))
                    .collect();
                IntMatrix::from_vec(k, k, sub).det()
            })
            .collect()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.leading_minors().iter().all(|&m| m > 0)
    }

    /// Positive semidefiniteness via all principal minors.
    pub fn is_positive_semidefinite(&self) -> bool {
        let n = self.size();
        (1u32..(1 << n)).all(|mask| {
            let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let k = idx.len();
            let sub: Vec<i64> = idx
                .iter()
                .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
                .map(|(i, j)| self.two_t.get(i, j))
                .collect();
            IntMatrix::from_vec(k, k, sub).det() >= 0
        })
    }

    /// Largest power q^b with T/q^b half-integral.
    pub fn content_val(&self, q: u64) -> u32 {
        let mut b = 0;
        let mut cur = self.clone();
        while let Some(next) = cur.divide(q as i64) {
            if next.two_t.entries().iter().all(|&x| x == 0) {
                return u32::MAX;
            }
            cur = next;
            b += 1;
        }
        b
    }

    /// G^(−t)·T·G^(−1) when it is half-integral.
    pub fn transform_inverse(&self, g: &IntMatrix) -> Option<HalfIntMat> {
        let d = g.det();
        if d == 0 {
            return None;
        }
        let adj = g.adjugate();
        let m = adj.transpose().mul(&self.two_t).mul(&adj);
        let dd = (d * d) as i64;
        if m.entries().iter().any(|x| x % dd != 0) {
            return None;
        }
        let two = m.map(|x| x / dd);
        HalfIntMat::from_twice(two).ok()
    }
}

impl Serialize for HalfIntMat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.two_t.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HalfIntMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = IntMatrix::deserialize(d)?;
        HalfIntMat::from_twice(m).map_err(serde::de::Error::custom)
    }
}

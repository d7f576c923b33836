//! Dense matrices over ℤ with arbitrary-precision entries.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Build from rows of machine integers; ragged input is a shape error.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].len()
            )));
        }
        let data = rows.iter().flatten().map(|&x| x.into()).collect();
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Build an `rows × columns.len()` matrix from sparse columns `(row, value)`.
    /// Repeated rows accumulate.
    pub fn from_sparse_columns(rows: usize, columns: &[Vec<(usize, i64)>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for &(i, v) in col {
                m[(i, j)] += v;
            }
        }
        m
    }

    /// Same as [`from_sparse_columns`](Self::from_sparse_columns) but laid out by rows.
    pub fn from_sparse_rows(cols: usize, rows: &[Vec<(usize, i64)>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for &(j, v) in row {
                m[(i, j)] += v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn checked_sub(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::Shape(format!(
                "cannot subtract {:?} from {:?}",
                rhs.shape(),
                self.shape()
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scaled(&self, k: i64) -> IntegerMatrix {
        let k = BigInt::from(k);
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * &k).collect(),
        }
    }

    /// Side-by-side concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::Shape(format!(
                "hstack needs equal row counts, got {} and {}",
                self.rows, rhs.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Stacking `[self ; rhs]`.
    pub fn vstack(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "vstack needs equal column counts, got {} and {}",
                self.cols, rhs.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(IntegerMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> IntegerMatrix {
        IntegerMatrix {
            rows: range.len(),
            cols: self.cols,
            data: self.data[range.start * self.cols..range.end * self.cols].to_vec(),
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntegerMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Entries reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: u64) -> IntegerMatrix {
        let m = BigInt::from(m);
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mod_floor(&m)).collect(),
        }
    }

    pub fn is_zero_mod(&self, m: u64) -> bool {
        let m = BigInt::from(m);
        self.data.iter().all(|a| a.mod_floor(&m).is_zero())
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|a| a.abs()).max().unwrap_or_else(BigInt::zero)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k · row[src]`.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = s * k;
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// `col[dst] += k · col[src]`.
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = s * k;
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    pub(crate) fn reduce_row_mod(&mut self, i: usize, m: &BigInt) {
        for v in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            if !v.is_zero() {
                *v = v.mod_floor(m);
            }
        }
    }

    pub(crate) fn reduce_col_mod(&mut self, j: usize, m: &BigInt) {
        for i in 0..self.rows {
            let v = &mut self.data[i * self.cols + j];
            if !v.is_zero() {
                *v = v.mod_floor(m);
            }
        }
    }

    /// Entries as `i64` rows, failing if any entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntegerMatrix {
    type Output = IntegerMatrix;

    fn mul(self, rhs: &IntegerMatrix) -> IntegerMatrix {
        self.checked_mul(rhs).expect("matrix shapes must agree")
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}×{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// JSON: array of row arrays; entries outside `i64` are emitted as strings.
impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Entry {
            Small(i64),
            Big(String),
        }
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<Entry> = self
                .row(i)
                .iter()
                .map(|a| a.to_i64().map_or_else(|| Entry::Big(a.to_string()), Entry::Small))
                .collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntegerMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Entry {
            Small(i64),
            Big(String),
        }
        let rows: Vec<Vec<Entry>> = Vec::deserialize(deserializer)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(serde::de::Error::custom("ragged matrix"));
        }
        let mut data = Vec::with_capacity(rows.len() * cols);
        for entry in rows.iter().flatten() {
            data.push(match entry {
                Entry::Small(v) => BigInt::from(*v),
                Entry::Big(s) => s.parse().map_err(serde::de::Error::custom)?,
            });
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }
}

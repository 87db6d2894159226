//! Exact dense linear algebra over the rationals.
//!
//! [`ExactMatrix`] stores arbitrary-precision rationals. Rank and Jordan-type
//! computations clear denominators and run integer elimination kernels
//! (`i128` with overflow detection, `BigInt` otherwise), so no floating point
//! appears anywhere.

mod jordan;
pub(crate) mod kernel;
mod toeplitz;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use jordan::{build_jordan, commutes_with_jordan, jordan_basis, jordan_type, power_ranks};
pub(crate) use jordan::jordan_type_of_integers;
pub use toeplitz::{is_ut_toeplitz, toeplitz_product_rank_check};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        ExactMatrix {
            rows,
            cols,
            entries: entries.iter().map(|&v| rat(v)).collect(),
        }
    }

    /// Builds from nested rows, e.g. `from_rows(&[&[1, 2], &[3, 4]])`.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_i64(rows.len(), cols, &flat)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn checked_mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] += a * b;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &ExactMatrix,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<ExactMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// `self^k` by repeated multiplication.
    pub fn pow(&self, k: usize) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// The block `rows r0..r1`, `cols c0..c1`.
    pub fn block(&self, r: std::ops::Range<usize>, c: std::ops::Range<usize>) -> ExactMatrix {
        let mut out = Self::zeros(r.len(), c.len());
        for (oi, i) in r.clone().enumerate() {
            for (oj, j) in c.clone().enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Writes `sub` into `self` with its top-left corner at `(r, c)`.
    pub fn place(&mut self, r: usize, c: usize, sub: &ExactMatrix) {
        for i in 0..sub.rows {
            for j in 0..sub.cols {
                self.set(r + i, c + j, sub.get(i, j).clone());
            }
        }
    }

    /// Places `sub` on rows `row_idx` and columns `col_idx` (scattered positions).
    pub fn scatter(&mut self, row_idx: &[usize], col_idx: &[usize], sub: &ExactMatrix) {
        assert_eq!(row_idx.len(), sub.rows);
        assert_eq!(col_idx.len(), sub.cols);
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                self.set(r, c, sub.get(i, j).clone());
            }
        }
    }

    pub fn direct_sum(&self, other: &ExactMatrix) -> ExactMatrix {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.place(0, 0, self);
        out.place(self.rows, self.cols, other);
        out
    }

    /// Entries scaled by the lcm of all denominators, as integers.
    pub(crate) fn integer_entries(&self) -> Vec<BigInt> {
        let lcm = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        self.entries
            .iter()
            .map(|e| e.numer() * (&lcm / e.denom()))
            .collect()
    }

    /// Entries as `i128` when they are all integers that fit.
    pub(crate) fn small_integer_entries(&self) -> Option<Vec<i128>> {
        self.entries
            .iter()
            .map(|e| if e.is_integer() { e.numer().to_i128() } else { None })
            .collect()
    }

    /// Rank over the rationals by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let (r, c) = (self.rows, self.cols);
        if let Some(small) = self.small_integer_entries() {
            if let Some(rank) = kernel::bareiss_rank(r, c, small) {
                return rank;
            }
        }
        kernel::run(
            &self.integer_entries(),
            |v| kernel::bareiss_rank(r, c, v),
            |v| kernel::bareiss_rank(r, c, v),
        )
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Kernel basis over the rationals (reduced row echelon form).
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -rref.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.entries.swap(p * m.cols + j, r * m.cols + j);
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        aug.place(0, 0, self);
        aug.place(0, n, &Self::identity(n));
        let (rref, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(rref.block(0..n, n..2 * n))
    }

    /// Text dump: a `rows cols` line, then one line per row of `p/q` entries.
    pub fn dump(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let e = self.get(i, j);
                    format!("{}/{}", e.numer(), e.denom())
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the format written by [`ExactMatrix::dump`]; bare integers are accepted.
    pub fn parse_dump(text: &str) -> Result<ExactMatrix> {
        let bad = |m: &str| Error::MatrixDump(m.to_string());
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("missing dimensions line"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("bad dimension")))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(bad("dimensions line must hold two integers"));
        };
        let mut entries = Vec::with_capacity(rows * cols);
        for line in lines {
            let row: Vec<BigRational> = line
                .split_whitespace()
                .map(|t| t.parse::<BigRational>().map_err(|_| bad(t)))
                .collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(bad("row length does not match column count"));
            }
            entries.extend(row);
        }
        if entries.len() != rows * cols {
            return Err(bad("row count does not match"));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }
}

impl<'a> Mul for &'a ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &'a ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).expect("dimension mismatch in product")
    }
}

impl<'a> Add for &'a ExactMatrix {
    type Output = ExactMatrix;

    fn add(self, rhs: &'a ExactMatrix) -> ExactMatrix {
        self.zip_with(rhs, |a, b| a + b)
            .expect("dimension mismatch in sum")
    }
}

impl<'a> Sub for &'a ExactMatrix {
    type Output = ExactMatrix;

    fn sub(self, rhs: &'a ExactMatrix) -> ExactMatrix {
        self.zip_with(rhs, |a, b| a - b)
            .expect("dimension mismatch in difference")
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;

    fn neg(self) -> ExactMatrix {
        self.scale(&rat(-1))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(ExactMatrix::identity(6).rank(), 6);
        let j5 = build_jordan(&crate::partitions::Partition::row(5));
        assert_eq!(j5.pow(2).unwrap().rank(), 3);
    }

    #[test]
    fn rank_with_fractions_and_big_entries() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut m = ExactMatrix::from_rows(&[&[1, 2], &[0, 0]]);
        m.set(1, 0, half.clone());
        m.set(1, 1, BigRational::one());
        assert_eq!(m.rank(), 1);

        let huge = BigRational::from_integer(BigInt::from(10).pow(60));
        let mut big = ExactMatrix::identity(3);
        big.set(0, 1, huge.clone());
        big.set(1, 2, huge);
        assert_eq!(big.rank(), 3);
        assert_eq!(big.pow(4).unwrap().rank(), 3);
    }

    #[test]
    fn kernel_and_inverse() {
        let m = ExactMatrix::from_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in ker {
            let col = ExactMatrix::from_entries(3, 1, v).unwrap();
            assert!((&m * &col).is_zero());
        }
        let a = ExactMatrix::from_rows(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, ExactMatrix::identity(2));
        assert!(ExactMatrix::from_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn dump_format() {
        let mut m = ExactMatrix::from_rows(&[&[1, -2], &[0, 3]]);
        m.set(1, 1, BigRational::new(BigInt::from(3), BigInt::from(4)));
        let text = m.dump();
        assert_eq!(text, "2 2\n1/1 -2/1\n0/1 3/4\n");
        assert_eq!(ExactMatrix::parse_dump(&text).unwrap(), m);
        assert_eq!(
            ExactMatrix::parse_dump("1 2\n5 -1/2\n").unwrap().get(0, 1),
            &BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
        assert!(ExactMatrix::parse_dump("2 2\n1 2\n").is_err());
        assert!(ExactMatrix::parse_dump("2\n").is_err());
    }

    #[test]
    fn shape_errors() {
        let a = ExactMatrix::zeros(2, 3);
        assert!(a.checked_mul(&a).is_err());
        assert!(matches!(a.pow(2), Err(Error::NotSquare { .. })));
        assert!(ExactMatrix::from_entries(2, 2, vec![rat(1)]).is_err());
    }
}

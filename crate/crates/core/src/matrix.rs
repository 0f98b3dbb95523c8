//! Dense exact matrices over big integers and rationals.
//!
//! Everything here is desk scale (≲ 200×200), so plain dense storage with
//! fraction-free (Bareiss) elimination is sufficient. Determinants and linear
//! solves are exact; a rational solve result can be demoted to an integer
//! matrix with [`Mat::to_integer`], which reports the offending entry when
//! integrality fails.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat<T> {
    nrows: usize,
    ncols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Mat<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Mat {
            nrows,
            ncols,
            data: vec![T::zero(); nrows * ncols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Mat {
            nrows,
            ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Mat::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }
}

impl<T: Clone + Zero + One> Mat<T> {
    pub fn identity(n: usize) -> Self {
        let mut out = Mat::zeros(n, n);
        for i in 0..n {
            out[(i, i)] = T::one();
        }
        out
    }
}

impl<T> Mat<T> {
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.ncols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.ncols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.nrows {
            write!(f, "  [")?;
            for j in 0..self.ncols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T> + std::ops::AddAssign,
{
    pub fn mul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        let mut out = Mat::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] += a.clone() * b.clone();
                }
            }
        }
        out
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + One + std::ops::Mul<Output = T> + std::ops::AddAssign,
{
    /// `self` raised to the `r`-th power (square matrices, r ≥ 0).
    pub fn pow(&self, r: u32) -> Mat<T> {
        assert!(self.is_square());
        let mut out = Mat::identity(self.nrows);
        for _ in 0..r {
            out = out.mul(self);
        }
        out
    }
}

impl<T: Clone + Zero + PartialEq> Mat<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.nrows)
                .all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl Mat<BigInt> {
    pub fn to_rational(&self) -> Mat<BigRational> {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// Exact determinant by fraction-free Gaussian elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.nrows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        swap_rows(&mut a, k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    /// Solve A·X = B exactly for square nonsingular A. Fraction-free forward
    /// elimination on the augmented matrix, then rational back-substitution.
    pub fn solve(&self, b: &Mat<BigInt>) -> Option<Mat<BigRational>> {
        assert!(self.is_square());
        assert_eq!(self.nrows, b.nrows, "dimension mismatch");
        let n = self.nrows;
        let m = b.ncols;
        if n == 0 {
            return Some(Mat::zeros(0, m));
        }
        // augmented [A | B]
        let mut a = Mat::zeros(n, n + m);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..m {
                a[(i, n + j)] = b[(i, j)].clone();
            }
        }
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let i = (k + 1..n).find(|&i| !a[(i, k)].is_zero())?;
                swap_rows(&mut a, k, i);
            }
            for i in k + 1..n {
                for j in k + 1..n + m {
                    let num = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        if a[(n - 1, n - 1)].is_zero() {
            return None;
        }
        let mut x = Mat::<BigRational>::zeros(n, m);
        for j in 0..m {
            for i in (0..n).rev() {
                let mut acc = BigRational::from_integer(a[(i, n + j)].clone());
                for k in i + 1..n {
                    acc -= BigRational::from_integer(a[(i, k)].clone()) * &x[(k, j)];
                }
                x[(i, j)] = acc / BigRational::from_integer(a[(i, i)].clone());
            }
        }
        Some(x)
    }

    /// Exact inverse as a rational matrix; `None` if singular.
    pub fn inverse(&self) -> Option<Mat<BigRational>> {
        self.solve(&Mat::identity(self.nrows))
    }

    /// Determinants of the leading principal minors, sizes 1..=n.
    pub fn leading_principal_minors(&self) -> Vec<BigInt> {
        assert!(self.is_square());
        (1..=self.nrows)
            .map(|k| {
                let mut sub = Mat::zeros(k, k);
                for i in 0..k {
                    for j in 0..k {
                        sub[(i, j)] = self[(i, j)].clone();
                    }
                }
                sub.det()
            })
            .collect()
    }
}

fn swap_rows<T>(a: &mut Mat<T>, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..a.ncols {
        a.data.swap(r1 * a.ncols + j, r2 * a.ncols + j);
    }
}

impl Mat<BigRational> {
    /// Demote to an integer matrix, reporting the first non-integral entry.
    pub fn to_integer(&self) -> Result<Mat<BigInt>> {
        let mut out = Mat::zeros(self.nrows, self.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let x = &self[(i, j)];
                if !x.is_integer() {
                    return Err(Error::NonIntegralEntry {
                        row: i,
                        col: j,
                        value: x.to_string(),
                    });
                }
                out[(i, j)] = x.to_integer();
            }
        }
        Ok(out)
    }
}

/// Entry → decimal string for serialization; rationals render as "n/d".
pub trait EntryString {
    fn entry_string(&self) -> String;
}

impl EntryString for BigInt {
    fn entry_string(&self) -> String {
        self.to_string()
    }
}

impl EntryString for BigRational {
    fn entry_string(&self) -> String {
        if self.is_integer() {
            self.to_integer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// A matrix together with its row and column labels, in canonical order.
#[derive(Clone)]
pub struct LabeledMatrix<L, T = BigInt> {
    pub row_labels: Vec<L>,
    pub col_labels: Vec<L>,
    pub mat: Mat<T>,
}

impl<L, T> LabeledMatrix<L, T> {
    pub fn new(row_labels: Vec<L>, col_labels: Vec<L>, mat: Mat<T>) -> Self {
        assert_eq!(row_labels.len(), mat.nrows());
        assert_eq!(col_labels.len(), mat.ncols());
        LabeledMatrix {
            row_labels,
            col_labels,
            mat,
        }
    }
}

impl<L: Serialize, T: EntryString> Serialize for LabeledMatrix<L, T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Vec<String>> = (0..self.mat.nrows())
            .map(|i| {
                (0..self.mat.ncols())
                    .map(|j| self.mat[(i, j)].entry_string())
                    .collect()
            })
            .collect();
        let mut st = serializer.serialize_struct("LabeledMatrix", 3)?;
        st.serialize_field("rows", &self.row_labels)?;
        st.serialize_field("cols", &self.col_labels)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// Convenience constructor for small integer matrices.
pub fn int_mat(rows: &[&[i64]]) -> Mat<BigInt> {
    Mat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
}

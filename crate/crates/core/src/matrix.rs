//! Dense matrices over exact rationals.
//!
//! Sizes here are tiny (tens of rows), so everything is row-major `Vec`
//! storage and textbook O(n^3) products. Clarity over throughput.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, rat_int, to_f64, Rational};

/// Dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = rat_int(1);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    /// Builds from row vectors; rejects ragged or empty input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::EmptyInput("matrix with no entries".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        let r = rows.len();
        Ok(RatMatrix {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
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

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Matrix product. Panics on a shape mismatch: shapes are fixed by
    /// construction everywhere this is called.
    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        RatMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                if !self.at(i, k).is_zero() && !rhs.at(k, j).is_zero() {
                    acc += self.at(i, k) * rhs.at(k, j);
                }
            }
            acc
        })
    }

    pub fn add(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + rhs.at(i, j))
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    /// First entry (row-major order) where the two matrices differ.
    /// Panics if shapes differ; callers compare like with like.
    pub fn first_mismatch(&self, other: &RatMatrix) -> Option<Mismatch> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.at(i, j) != other.at(i, j) {
                    return Some(Mismatch {
                        row: i,
                        col: j,
                        left: self.at(i, j).clone(),
                        right: other.at(i, j).clone(),
                    });
                }
            }
        }
        None
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(to_f64).collect())
            .collect()
    }
}

/// First differing entry of a failed identity check, with both values.
///
/// Scalar identities reuse the type with `row` set to the index of the
/// failing identity and `col` zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub left: Rational,
    pub right: Rational,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}): {} != {}",
            self.row,
            self.col,
            format_rational(&self.left),
            format_rational(&self.right)
        )
    }
}

/// Outcome of an exact identity check: either it holds, or the first
/// counterexample entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub holds: bool,
    pub mismatch: Option<Mismatch>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport {
            holds: true,
            mismatch: None,
        }
    }

    pub fn fail(mismatch: Mismatch) -> Self {
        CheckReport {
            holds: false,
            mismatch: Some(mismatch),
        }
    }

    /// Compares two equally-shaped matrices entrywise.
    pub fn compare(left: &RatMatrix, right: &RatMatrix) -> Self {
        match left.first_mismatch(right) {
            None => CheckReport::pass(),
            Some(m) => CheckReport::fail(m),
        }
    }

    /// Compares a list of scalar identities; `row` in a mismatch is the
    /// index of the first identity that fails.
    pub fn compare_scalars(pairs: &[(Rational, Rational)]) -> Self {
        for (idx, (l, r)) in pairs.iter().enumerate() {
            if l != r {
                return CheckReport::fail(Mismatch {
                    row: idx,
                    col: 0,
                    left: l.clone(),
                    right: r.clone(),
                });
            }
        }
        CheckReport::pass()
    }

    /// Merges sequential sub-checks: the first failure wins.
    pub fn and(self, next: impl FnOnce() -> CheckReport) -> CheckReport {
        if self.holds {
            next()
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> RatMatrix {
        RatMatrix::from_rows(vec![
            vec![rat_int(a), rat_int(b)],
            vec![rat_int(c), rat_int(d)],
        ])
        .unwrap()
    }

    #[test]
    fn product_and_transpose() {
        let a = m2(1, 2, 3, 4);
        let b = m2(0, 1, 1, 0);
        assert_eq!(a.mul(&b), m2(2, 1, 4, 3));
        assert_eq!(a.transpose(), m2(1, 3, 2, 4));
        assert_eq!(a.mul(&RatMatrix::identity(2)), a);
    }

    #[test]
    fn ragged_rows_rejected() {
        let r = RatMatrix::from_rows(vec![vec![rat_int(1)], vec![rat_int(1), rat_int(2)]]);
        assert!(matches!(r, Err(Error::Dimension(_))));
    }

    #[test]
    fn mismatch_reports_first_row_major_difference() {
        let a = m2(1, 2, 3, 4);
        let mut b = a.clone();
        *b.at_mut(0, 1) = rat(5, 2);
        *b.at_mut(1, 0) = rat_int(9);
        let m = a.first_mismatch(&b).unwrap();
        assert_eq!((m.row, m.col), (0, 1));
        assert_eq!(m.right, rat(5, 2));
        assert_eq!(m.to_string(), "(0, 1): 2 != 5/2");
        assert!(a.first_mismatch(&a.clone()).is_none());
    }

    #[test]
    fn symmetry_detection() {
        assert!(m2(1, 2, 2, 5).is_symmetric());
        assert!(!m2(1, 2, 3, 5).is_symmetric());
    }
}

//! Probabilists' Hermite polynomials and their packed coefficient rows.
//!
//! He_{n+1}(s) = s He_n(s) - n He_{n-1}(s), monic, orthogonal against the
//! unit Gaussian with <He_n, He_n> = n!. Since He_n has pure parity, only
//! every other coefficient is nonzero; "packing" keeps the nonzero ones:
//! index k holds the coefficient of s^{2k+parity}. Stacking packed odd rows
//! (or even rows) gives a unit lower triangular matrix, the exact
//! square-root-free whitening factor used in `factorization`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hankel::order_diagonal;
use crate::matrix::{CheckReport, Mismatch, RatMatrix};
use crate::moments::double_factorial;
use crate::scalar::Rational;

/// Dense coefficients of He_n: entry i is the coefficient of s^i.
pub fn dense_coefficients(n: usize) -> Vec<BigInt> {
    let mut prev: Vec<BigInt> = vec![BigInt::one()];
    if n == 0 {
        return prev;
    }
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for k in 1..n {
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        let factor = BigInt::from(k as u64);
        for (i, c) in prev.iter().enumerate() {
            next[i] -= &factor * c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn pack(dense: &[BigInt]) -> Vec<BigInt> {
    let parity = (dense.len() - 1) % 2;
    dense.iter().skip(parity).step_by(2).cloned().collect()
}

/// Packed coefficients of one Hermite polynomial, zero-padded to a row
/// length M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteCoefficients {
    n: usize,
    packed: Vec<Rational>,
}

impl HermiteCoefficients {
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Packed row of length M: entry k is the coefficient of s^{2k+parity}.
    pub fn packed(&self) -> &[Rational] {
        &self.packed
    }
}

/// Packed coefficients of He_n padded to length M.
/// He_n needs floor(n/2) + 1 slots, so M must be at least that.
pub fn hermite_coefficients(n: usize, m: usize) -> Result<HermiteCoefficients> {
    let needed = n / 2 + 1;
    if m < needed {
        return Err(Error::Dimension(format!(
            "degree {n} needs a row of length {needed}, got {m}"
        )));
    }
    let mut packed: Vec<Rational> = pack(&dense_coefficients(n))
        .into_iter()
        .map(Rational::from_integer)
        .collect();
    packed.resize(m, Rational::zero());
    Ok(HermiteCoefficients { n, packed })
}

/// Parity class of a stacked coefficient triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// M x M unit lower triangular matrix whose row k is the packed coefficient
/// row of He_{2k} (even) or He_{2k+1} (odd).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteTriangular {
    m: usize,
    parity: Parity,
    matrix: RatMatrix,
}

impl HermiteTriangular {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }
}

fn build_triangle(m: usize, parity: Parity) -> HermiteTriangular {
    assert!(m >= 1, "triangle of order zero");
    let start = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    // One shared recurrence sweep up to He_{2m-2+start}.
    let top = 2 * (m - 1) + start;
    let mut dense: Vec<Vec<BigInt>> = Vec::with_capacity(top + 1);
    dense.push(vec![BigInt::one()]);
    if top >= 1 {
        dense.push(vec![BigInt::zero(), BigInt::one()]);
    }
    for k in 1..top {
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, c) in dense[k].iter().enumerate() {
            next[i + 1] += c;
        }
        let factor = BigInt::from(k as u64);
        for (i, c) in dense[k - 1].iter().enumerate() {
            next[i] -= &factor * c;
        }
        dense.push(next);
    }

    let mut rows = RatMatrix::zeros(m, m);
    for k in 0..m {
        for (j, c) in pack(&dense[2 * k + start]).into_iter().enumerate() {
            *rows.at_mut(k, j) = Rational::from_integer(c);
        }
    }
    HermiteTriangular {
        m,
        parity,
        matrix: rows,
    }
}

/// L_b: packed odd rows He_1, He_3, ..., He_{2M-1}.
pub fn build_l_b(m: usize) -> HermiteTriangular {
    build_triangle(m, Parity::Odd)
}

/// L_a: packed even rows He_0, He_2, ..., He_{2M-2}.
pub fn build_l_a(m: usize) -> HermiteTriangular {
    build_triangle(m, Parity::Even)
}

/// Checks the intertwining identity L_b D = D L_a with D = diag(1, 3, ...,
/// 2M-1), i.e. the odd triangle is the even triangle conjugated by the
/// order diagonal.
pub fn check_commute(m: usize) -> CheckReport {
    let d = order_diagonal(m);
    let lhs = d.right_mul(build_l_b(m).matrix());
    let rhs = d.left_mul(build_l_a(m).matrix());
    CheckReport::compare(&lhs, &rhs)
}

/// Exact unit-Gaussian inner product of He_p and He_q, expanded through
/// even raw moments E s^{2k} = (2k-1)!!.
pub fn orthogonality_integral(p: usize, q: usize) -> Rational {
    let cp = dense_coefficients(p);
    let cq = dense_coefficients(q);
    let mut acc = BigInt::zero();
    for (i, a) in cp.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in cq.iter().enumerate() {
            if (i + j) % 2 != 0 || b.is_zero() {
                continue;
            }
            acc += a * b * double_factorial((i + j) as i64 - 1);
        }
    }
    Rational::from_integer(acc)
}

/// Verifies <He_p, He_q> = p! delta_{pq} for all p, q up to `max_degree`.
/// A mismatch records (p, q) and both values.
pub fn check_orthogonality(max_degree: usize) -> CheckReport {
    for p in 0..=max_degree {
        let want_diag = Rational::from_integer((1..=p as u64).map(BigInt::from).product());
        for q in 0..=p {
            let got = orthogonality_integral(p, q);
            let want = if p == q {
                want_diag.clone()
            } else {
                Rational::zero()
            };
            if got != want {
                return CheckReport::fail(Mismatch {
                    row: p,
                    col: q,
                    left: got,
                    right: want,
                });
            }
        }
    }
    CheckReport::pass()
}

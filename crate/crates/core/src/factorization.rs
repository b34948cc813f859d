//! Square-root-free factorizations of the moment Hankel matrices.
//!
//! Over the rationals an SPD matrix H splits as H = L D L^T with L unit
//! lower triangular and D a positive diagonal; no square roots appear, so
//! the factorization is exact. For Gaussian moments both factors have
//! closed forms built from packed Hermite rows and factorial pivots, which
//! `closed_form_factors` produces without any elimination. The two check
//! functions verify the underlying diagonalization identities exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hankel::{build_a, build_b, order_diagonal, sigma_diagonal};
use crate::hermite::{build_l_a, build_l_b};
use crate::matrix::{CheckReport, RatMatrix};
use crate::moments::gaussian_even_moments;
use crate::scalar::{format_rational, Rational};

/// Pivot policy for exact LDL elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    /// Every pivot must be strictly positive.
    Strict,
    /// Zero pivots are allowed when their whole column vanishes, so positive
    /// semidefinite input factors with `rank` < M instead of erroring.
    Lenient,
}

/// Exact H = L D L^T with unit lower triangular L and diagonal D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LdlFactorization {
    lower: RatMatrix,
    pivots: Vec<Rational>,
}

impl LdlFactorization {
    pub fn order(&self) -> usize {
        self.pivots.len()
    }

    pub fn lower(&self) -> &RatMatrix {
        &self.lower
    }

    pub fn pivots(&self) -> &[Rational] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| !p.is_zero()).count()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.pivots.iter().all(|p| p.is_positive())
    }

    /// L D L^T, for round-trip verification.
    pub fn reconstruct(&self) -> RatMatrix {
        let n = self.order();
        RatMatrix::from_fn(n, n, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..=i.min(j) {
                if !self.pivots[k].is_zero() {
                    acc += self.lower.at(i, k) * self.lower.at(j, k) * &self.pivots[k];
                }
            }
            acc
        })
    }
}

/// Exact LDL by symmetric elimination.
///
/// In lenient mode a zero pivot is accepted only if its entire Schur
/// column vanishes too; that is exactly the positive semidefinite case.
/// A negative pivot, or a zero pivot with a live column, is a witness that
/// the matrix is not PSD and is reported with its index and exact value.
pub fn ldl_decompose(h: &RatMatrix, strictness: Strictness) -> Result<LdlFactorization> {
    if !h.is_square() {
        return Err(Error::Dimension(format!(
            "LDL input must be square, got {} x {}",
            h.rows(),
            h.cols()
        )));
    }
    if !h.is_symmetric() {
        return Err(Error::Dimension("LDL input must be symmetric".into()));
    }

    let n = h.rows();
    let mut lower = RatMatrix::identity(n);
    let mut pivots: Vec<Rational> = Vec::with_capacity(n);

    for j in 0..n {
        // Schur column under the first j eliminations:
        // col[i - j] = H[i][j] - sum_{k<j} L[i][k] L[j][k] d_k
        let mut col: Vec<Rational> = Vec::with_capacity(n - j);
        for i in j..n {
            let mut e = h.at(i, j).clone();
            for k in 0..j {
                if !pivots[k].is_zero() {
                    e -= lower.at(i, k) * lower.at(j, k) * &pivots[k];
                }
            }
            col.push(e);
        }
        let d = col[0].clone();
        if d.is_negative() {
            return Err(Error::NotPositiveDefinite {
                index: j,
                value: format_rational(&d),
            });
        }
        if d.is_zero() {
            let column_vanishes = col.iter().skip(1).all(|e| e.is_zero());
            if strictness == Strictness::Strict || !column_vanishes {
                // in lenient mode a zero pivot over a live column is a
                // witness that the matrix is indefinite
                return Err(Error::NotPositiveDefinite {
                    index: j,
                    value: "0".into(),
                });
            }
            pivots.push(Rational::zero());
            continue;
        }
        for (offset, e) in col.into_iter().enumerate().skip(1) {
            *lower.at_mut(j + offset, j) = e / &d;
        }
        pivots.push(d);
    }

    Ok(LdlFactorization { lower, pivots })
}

/// Inverse of a unit lower triangular matrix by forward substitution.
/// The inverse is again unit lower triangular.
pub fn unit_lower_inverse(t: &RatMatrix) -> Result<RatMatrix> {
    if !t.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let n = t.rows();
    for i in 0..n {
        if !t.at(i, i).is_one() {
            return Err(Error::Dimension(format!("diagonal entry {i} is not 1")));
        }
        for j in i + 1..n {
            if !t.at(i, j).is_zero() {
                return Err(Error::Dimension(format!(
                    "entry ({i}, {j}) above the diagonal is nonzero"
                )));
            }
        }
    }
    let mut inv = RatMatrix::identity(n);
    for j in 0..n {
        for i in j + 1..n {
            let mut acc = Rational::zero();
            for k in j..i {
                if !t.at(i, k).is_zero() {
                    acc += t.at(i, k) * inv.at(k, j);
                }
            }
            *inv.at_mut(i, j) = -acc;
        }
    }
    Ok(inv)
}

fn factorial_rational(n: usize) -> Rational {
    Rational::from_integer((1..=n as u64).map(BigInt::from).product())
}

/// LDL factors of the order-M Gaussian Hankel matrices, written down
/// directly instead of eliminated:
///
/// ```text
///   A: lower = D_s La^{-1} D_s^{-1},   pivots_k = s^{4k}   (2k)!
///   B: lower = D_s Lb^{-1} D_s^{-1},   pivots_k = s^{4k+2} (2k+1)!
/// ```
///
/// where La, Lb stack packed even/odd Hermite rows. Agrees entry for entry
/// with `ldl_decompose` on the same matrices; returned as (A factor,
/// B factor).
pub fn closed_form_factors(
    m: usize,
    sigma2: &Rational,
) -> Result<(LdlFactorization, LdlFactorization)> {
    if m == 0 {
        return Err(Error::Dimension("order must be at least 1".into()));
    }
    let ds = sigma_diagonal(m, sigma2)?;
    let ds_inv = ds.inverse();

    let build = |tri_inv: RatMatrix, odd: bool| -> LdlFactorization {
        let lower = ds.left_mul(&ds_inv.right_mul(&tri_inv));
        let mut pivots = Vec::with_capacity(m);
        let mut power = if odd { sigma2.clone() } else { Rational::one() };
        let step = sigma2 * sigma2;
        for k in 0..m {
            let fact = factorial_rational(2 * k + usize::from(odd));
            pivots.push(&power * fact);
            power *= &step;
        }
        LdlFactorization { lower, pivots }
    };

    let a = build(unit_lower_inverse(build_l_a(m).matrix())?, false);
    let b = build(unit_lower_inverse(build_l_b(m).matrix())?, true);
    Ok((a, b))
}

/// Checks that the packed Hermite triangles diagonalize the variance-scaled
/// Gaussian Hankel matrices with factorial diagonals:
///
/// ```text
///   Lb (D_s^{-1} B D_s^{-1}) Lb^T = s^2 diag((2k+1)!)     (checked first)
///   La (D_s^{-1} A D_s^{-1}) La^T =     diag((2k)!)
/// ```
pub fn check_hermite_diagonalization(m: usize, sigma2: &Rational) -> Result<CheckReport> {
    let moments = gaussian_even_moments(m, sigma2)?;
    let a = build_a(&moments, m)?;
    let b = build_b(&moments, m)?;
    let ds_inv = sigma_diagonal(m, sigma2)?.inverse();

    let lb = build_l_b(m);
    let lb_m = lb.matrix();
    let lhs_b = lb_m
        .mul(&ds_inv.conjugate(b.entries()))
        .mul(&lb_m.transpose());
    let rhs_b = RatMatrix::from_fn(m, m, |i, j| {
        if i == j {
            sigma2 * factorial_rational(2 * i + 1)
        } else {
            Rational::zero()
        }
    });

    let la = build_l_a(m);
    let la_m = la.matrix();
    let lhs_a = la_m
        .mul(&ds_inv.conjugate(a.entries()))
        .mul(&la_m.transpose());
    let rhs_a = RatMatrix::from_fn(m, m, |i, j| {
        if i == j {
            factorial_rational(2 * i)
        } else {
            Rational::zero()
        }
    });

    Ok(CheckReport::compare(&lhs_b, &rhs_b).and(|| CheckReport::compare(&lhs_a, &rhs_a)))
}

/// Checks the variance-free diagonalization of the gain numerator:
///
/// ```text
///   Lb (D_s^{-1} D A D D_s^{-1}) Lb^T = diag((2k+1) (2k+1)!)
/// ```
///
/// Both sides are independent of the variance; this is the exact statement
/// behind the whitened matrix being diag(1, 3, ..., 2M-1) / s^2.
pub fn check_gain_identity(m: usize, sigma2: &Rational) -> Result<CheckReport> {
    let moments = gaussian_even_moments(m, sigma2)?;
    let a = build_a(&moments, m)?;
    let d = order_diagonal(m);
    let ds_inv = sigma_diagonal(m, sigma2)?.inverse();

    // D_s^{-1} D is diagonal, so one conjugation does it.
    let mixed =
        crate::hankel::DiagonalMatrix::new((0..m).map(|k| d.entry(k) * ds_inv.entry(k)).collect());
    let lb = build_l_b(m);
    let lhs = lb
        .matrix()
        .mul(&mixed.conjugate(a.entries()))
        .mul(&lb.matrix().transpose());
    let rhs = RatMatrix::from_fn(m, m, |i, j| {
        if i == j {
            Rational::from_integer(BigInt::from(2 * i as u64 + 1)) * factorial_rational(2 * i + 1)
        } else {
            Rational::zero()
        }
    });
    Ok(CheckReport::compare(&lhs, &rhs))
}

/// Pivot ratio beyond which a float factorization is reported as
/// ill-conditioned but still returned.
pub const PIVOT_RATIO_WARN: f64 = 1e12;

/// Pivot ratio beyond which the float factorization refuses: at working
/// precision the matrix is numerically singular and the whitened results
/// would carry no trustworthy digits. The exact path has no such limit.
pub const PIVOT_RATIO_LIMIT: f64 = 1.0 / f64::EPSILON;

/// Floating-point Cholesky factor H = L L^T with a pivot-ratio report.
#[derive(Debug, Clone)]
pub struct FloatCholesky {
    lower: Vec<Vec<f64>>,
    pivot_ratio: f64,
}

impl FloatCholesky {
    pub fn order(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[Vec<f64>] {
        &self.lower
    }

    /// max pivot / min pivot, pivots being the squared diagonal of L.
    pub fn pivot_ratio(&self) -> f64 {
        self.pivot_ratio
    }

    /// True when the pivot spread exceeds `PIVOT_RATIO_WARN`; results are
    /// returned but late digits are suspect.
    pub fn is_ill_conditioned(&self) -> bool {
        self.pivot_ratio > PIVOT_RATIO_WARN
    }

    /// Solves L y = b.
    pub fn solve_lower(&self, b: &[f64]) -> Vec<f64> {
        let n = self.order();
        assert_eq!(b.len(), n);
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut acc = b[i];
            for k in 0..i {
                acc -= self.lower[i][k] * y[k];
            }
            y[i] = acc / self.lower[i][i];
        }
        y
    }

    /// Solves L^T x = b.
    pub fn solve_lower_transpose(&self, b: &[f64]) -> Vec<f64> {
        let n = self.order();
        assert_eq!(b.len(), n);
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut acc = b[i];
            for k in i + 1..n {
                acc -= self.lower[k][i] * x[k];
            }
            x[i] = acc / self.lower[i][i];
        }
        x
    }
}

/// Floating-point Cholesky with conditioning guards.
///
/// Errors with an ill-conditioning diagnosis when a pivot fails to stay
/// positive or when the final pivot ratio exceeds `PIVOT_RATIO_LIMIT`;
/// both messages point at the exact rational path, which stays available
/// at any order.
pub fn float_cholesky(h: &[Vec<f64>]) -> Result<FloatCholesky> {
    let n = h.len();
    if n == 0 {
        return Err(Error::EmptyInput("matrix with no entries".into()));
    }
    if h.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension("Cholesky input must be square".into()));
    }

    let mut lower = vec![vec![0.0f64; n]; n];
    let mut min_pivot = f64::INFINITY;
    let mut max_pivot = 0.0f64;
    for j in 0..n {
        let mut d = h[j][j];
        for k in 0..j {
            d -= lower[j][k] * lower[j][k];
        }
        // d <= 0.0 or NaN both mean the factorization has left the SPD
        // regime representable in floats
        if d <= 0.0 || d.is_nan() {
            return Err(Error::IllConditioned(format!(
                "pivot {j} = {d:e} is not positive at working precision; \
                 use the exact rational factorization"
            )));
        }
        min_pivot = min_pivot.min(d);
        max_pivot = max_pivot.max(d);
        let root = d.sqrt();
        lower[j][j] = root;
        for i in j + 1..n {
            let mut acc = h[i][j];
            for k in 0..j {
                acc -= lower[i][k] * lower[j][k];
            }
            lower[i][j] = acc / root;
        }
    }

    let pivot_ratio = max_pivot / min_pivot;
    if pivot_ratio > PIVOT_RATIO_LIMIT || pivot_ratio.is_nan() {
        return Err(Error::IllConditioned(format!(
            "pivot ratio {pivot_ratio:.3e} exceeds 1/eps; the matrix is numerically \
             singular at working precision, use the exact rational factorization"
        )));
    }
    Ok(FloatCholesky { lower, pivot_ratio })
}

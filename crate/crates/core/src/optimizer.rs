//! Maximizing the gain Rayleigh quotient over odd polynomials.
//!
//! For f(s) = sum a_k s^{2k+1} and a symmetric distribution with even
//! moments mu, the gain E(f'^2) / E(f^2) is the quotient of two quadratic
//! forms in a: the numerator matrix is D A D and the denominator matrix is
//! B, with A, B the shift-0/shift-1 moment Hankel matrices and D the odd
//! order diagonal. Whitening by a Cholesky factor of B turns the problem
//! into an ordinary symmetric eigenproblem; the top eigenvalue is the
//! maximal gain and its eigenvector pulls back to the optimal coefficients.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factorization::{
    float_cholesky, ldl_decompose, unit_lower_inverse, FloatCholesky, Strictness,
};
use crate::hankel::{build_a, build_b, order_diagonal, DiagonalMatrix, HankelMatrix};
use crate::moments::{DistributionSpec, MomentSequence};
use crate::poly::{horner, OddPolynomial};
use crate::scalar::{to_f64, Rational};

/// Eigenvalues this close (relatively) to the top one count as a single
/// cluster when reporting multiplicity.
pub const EIGEN_CLUSTER_RTOL: f64 = 1e-9;

/// Largest order M the exact whitening path accepts.
pub const EXACT_WHITENING_MAX_ORDER: usize = 8;

/// Maps a whitened eigenvector back to polynomial coefficients; each
/// whitening path supplies its own closure.
type Recover = Box<dyn Fn(&[f64]) -> Vec<f64>>;

/// Exact gain of a fixed odd polynomial under the given moments:
/// (a D A D a^T) / (a B a^T).
pub fn gain_of(f: &OddPolynomial, moments: &MomentSequence) -> Result<Rational> {
    if f.is_zero() {
        return Err(Error::DegeneratePolynomial(
            "gain of the zero polynomial".into(),
        ));
    }
    let m = f.m();
    let a = build_a(moments, m)?;
    let b = build_b(moments, m)?;
    let coeffs = f.coefficients();

    let mut num = Rational::zero();
    let mut den = Rational::zero();
    for i in 0..m {
        let di = Rational::from_integer((2 * i as u64 + 1).into());
        for j in 0..m {
            let dj = Rational::from_integer((2 * j as u64 + 1).into());
            let prod = &coeffs[i] * &coeffs[j];
            num += &prod * &di * &dj * a.at(i, j);
            den += prod * b.at(i, j);
        }
    }
    if den.is_zero() {
        return Err(Error::DegeneratePolynomial(
            "denominator form vanishes for these coefficients".into(),
        ));
    }
    Ok(num / den)
}

fn whiten(chol: &FloatCholesky, k: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = chol.order();
    // Z = L^{-1} K, column by column.
    let mut z = vec![vec![0.0; n]; n];
    for j in 0..n {
        let col: Vec<f64> = (0..n).map(|i| k[i][j]).collect();
        let y = chol.solve_lower(&col);
        for i in 0..n {
            z[i][j] = y[i];
        }
    }
    // Row i of C solves L c = row i of Z, since C = Z L^{-T}.
    let mut c = vec![vec![0.0; n]; n];
    for (i, row) in z.iter().enumerate() {
        c[i] = chol.solve_lower(row);
    }
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (c[i][j] + c[j][i]);
            c[i][j] = avg;
            c[j][i] = avg;
        }
    }
    c
}

/// Float whitening C = L^{-1} (D A D) L^{-T} with B = L L^T.
///
/// The conjugation by D and A itself are exact; floating point enters only
/// through the Cholesky factor of B. For Gaussian input C approximates
/// diag(1, 3, ..., 2M-1) / s^2.
pub fn whitened_form(
    a: &HankelMatrix,
    b: &HankelMatrix,
    d: &DiagonalMatrix,
) -> Result<Vec<Vec<f64>>> {
    if a.shift() != 0 || b.shift() != 1 {
        return Err(Error::Dimension(
            "expected a shift-0 matrix and a shift-1 matrix".into(),
        ));
    }
    if a.m() != b.m() || d.len() != a.m() {
        return Err(Error::Dimension(
            "whitening operands disagree on order".into(),
        ));
    }
    let chol = float_cholesky(&b.entries().to_f64())?;
    Ok(whiten(&chol, &d.conjugate(a.entries()).to_f64()))
}

/// Eigenpairs of a symmetric matrix, ascending by eigenvalue.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` pairs with `eigenvalues[k]`; orthonormal.
    pub eigenvectors: Vec<Vec<f64>>,
}

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Classic threshold scheme after Numerical Recipes section 11.1: early
/// sweeps skip rotations below a shrinking threshold, later sweeps zero
/// every off-diagonal entry, and rotations accumulate into the eigenvector
/// matrix. Quadratic convergence makes 50 sweeps a generous ceiling for
/// the orders seen here.
pub fn symmetric_eigen(c: &[Vec<f64>]) -> Result<SymmetricEigen> {
    let n = c.len();
    if n == 0 {
        return Err(Error::EmptyInput("eigenproblem with no entries".into()));
    }
    if c.iter().any(|row| row.len() != n) {
        return Err(Error::Dimension("eigenproblem input must be square".into()));
    }

    let mut a: Vec<Vec<f64>> = c.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];

    for sweep in 1..=50 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q].abs();
            }
        }
        if off == 0.0 {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
            let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
            let eigenvectors: Vec<Vec<f64>> = order
                .iter()
                .map(|&k| (0..n).map(|i| v[i][k]).collect())
                .collect();
            return Ok(SymmetricEigen {
                eigenvalues,
                eigenvectors,
            });
        }

        let tresh = if sweep < 4 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };

        for p in 0..n {
            for q in p + 1..n {
                let g = 100.0 * a[p][q].abs();
                if sweep > 4 && d[p].abs() + g == d[p].abs() && d[q].abs() + g == d[q].abs() {
                    a[p][q] = 0.0;
                } else if a[p][q].abs() > tresh {
                    let h = d[q] - d[p];
                    let t = if h.abs() + g == h.abs() {
                        a[p][q] / h
                    } else {
                        let theta = 0.5 * h / a[p][q];
                        let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                        if theta < 0.0 {
                            t = -t;
                        }
                        t
                    };
                    let cos = 1.0 / (1.0 + t * t).sqrt();
                    let sin = t * cos;
                    let tau = sin / (1.0 + cos);
                    let h = t * a[p][q];
                    z[p] -= h;
                    z[q] += h;
                    d[p] -= h;
                    d[q] += h;
                    a[p][q] = 0.0;

                    let rotate = |m: &mut Vec<Vec<f64>>, i: usize, j: usize, k: usize, l: usize| {
                        let g = m[i][j];
                        let h = m[k][l];
                        m[i][j] = g - sin * (h + g * tau);
                        m[k][l] = h + sin * (g - h * tau);
                    };
                    for j in 0..p {
                        rotate(&mut a, j, p, j, q);
                    }
                    for j in p + 1..q {
                        rotate(&mut a, p, j, j, q);
                    }
                    for j in q + 1..n {
                        rotate(&mut a, p, j, q, j);
                    }
                    for j in 0..n {
                        rotate(&mut v, j, p, j, q);
                    }
                }
            }
        }

        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = 0.0;
        }
    }
    Err(Error::IterationLimit(
        "Jacobi eigensolver did not converge in 50 sweeps".into(),
    ))
}

/// Which whitening arithmetic `max_gain_with` uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhiteningPath {
    /// Floating-point Cholesky of B; subject to the pivot-ratio guards.
    Float,
    /// Exact LDL of B; only the final division by sqrt-pivots is floating
    /// point. Limited to M <= `EXACT_WHITENING_MAX_ORDER`.
    ExactLdl,
}

/// Outcome of a gain maximization.
#[derive(Debug, Clone)]
pub struct GainResult {
    /// Largest eigenvalue of the whitened matrix.
    pub gain: f64,
    /// Optimal coefficients, rescaled per `normalized_by_last`.
    pub polynomial: OddPolynomial,
    /// Full whitened spectrum, ascending.
    pub eigenvalues: Vec<f64>,
    /// Unit top eigenvector of the whitened matrix, sign-fixed so its first
    /// significant entry is positive.
    pub whitened_vector: Vec<f64>,
    /// ||C x - gain x||_2 for the returned eigenpair.
    pub residual: f64,
    /// Number of eigenvalues within `EIGEN_CLUSTER_RTOL` of the top.
    pub multiplicity: usize,
    /// True when coefficients are scaled to make the leading one equal 1;
    /// false when that entry was negligible and the largest-magnitude entry
    /// was used instead.
    pub normalized_by_last: bool,
    /// Float-path conditioning warning carried up from the Cholesky factor.
    pub ill_conditioned: bool,
}

/// Maximal gain over odd polynomials of the given odd order; float
/// whitening path.
pub fn max_gain(dist: &DistributionSpec, order: usize) -> Result<GainResult> {
    max_gain_with(dist, order, WhiteningPath::Float)
}

/// Maximal gain with an explicit choice of whitening arithmetic.
///
/// B is certified positive definite by exact LDL before any floating point
/// runs, so a semidefinite moment sequence fails with the exact offending
/// pivot rather than a rounding artifact.
pub fn max_gain_with(
    dist: &DistributionSpec,
    order: usize,
    path: WhiteningPath,
) -> Result<GainResult> {
    if order.is_multiple_of(2) || order == 0 {
        return Err(Error::Dimension(format!(
            "polynomial order must be odd, got {order}"
        )));
    }
    let m = order.div_ceil(2);
    let moments = dist.even_moments(m)?;
    let a = build_a(&moments, m)?;
    let b = build_b(&moments, m)?;
    let d = order_diagonal(m);
    let ldl_b = ldl_decompose(b.entries(), Strictness::Strict)?;
    let k = d.conjugate(a.entries());

    let (c, recover, ill_conditioned): (Vec<Vec<f64>>, Recover, bool) = match path {
        WhiteningPath::Float => {
            let chol = float_cholesky(&b.entries().to_f64())?;
            let c = whiten(&chol, &k.to_f64());
            let warn = chol.is_ill_conditioned();
            (
                c,
                Box::new(move |x: &[f64]| chol.solve_lower_transpose(x)),
                warn,
            )
        }
        WhiteningPath::ExactLdl => {
            if m > EXACT_WHITENING_MAX_ORDER {
                return Err(Error::Dimension(format!(
                    "exact whitening supports M <= {EXACT_WHITENING_MAX_ORDER}, got M = {m}"
                )));
            }
            let linv = unit_lower_inverse(ldl_b.lower())?;
            let w = linv.mul(&k).mul(&linv.transpose());
            let roots: Vec<f64> = ldl_b.pivots().iter().map(|p| to_f64(p).sqrt()).collect();
            let c: Vec<Vec<f64>> = (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| to_f64(w.at(i, j)) / (roots[i] * roots[j]))
                        .collect()
                })
                .collect();
            let linv_f: Vec<Vec<f64>> = linv.to_f64();
            let recover = move |x: &[f64]| -> Vec<f64> {
                // a = x diag(1/sqrt(pivots)) Linv
                (0..x.len())
                    .map(|j| (0..x.len()).map(|i| x[i] / roots[i] * linv_f[i][j]).sum())
                    .collect()
            };
            (c, Box::new(recover), false)
        }
    };

    let eig = symmetric_eigen(&c)?;
    let gain = *eig.eigenvalues.last().expect("nonempty spectrum");
    let mut x = eig.eigenvectors.last().expect("nonempty spectrum").clone();

    let mut residual = 0.0f64;
    for i in 0..m {
        let mut acc = -gain * x[i];
        for j in 0..m {
            acc += c[i][j] * x[j];
        }
        residual += acc * acc;
    }
    let residual = residual.sqrt();

    let cluster_tol = EIGEN_CLUSTER_RTOL * gain.abs().max(f64::MIN_POSITIVE);
    let multiplicity = eig
        .eigenvalues
        .iter()
        .filter(|&&lambda| gain - lambda <= cluster_tol)
        .count();

    let mut raw = recover(&x);
    let amax = raw.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    if amax == 0.0 {
        return Err(Error::DegeneratePolynomial(
            "recovered coefficient vector is zero".into(),
        ));
    }
    let significant = 1e-12 * amax;
    if let Some(first) = raw.iter().find(|v| v.abs() > significant) {
        if *first < 0.0 {
            for entry in raw.iter_mut() {
                *entry = -*entry;
            }
            for entry in x.iter_mut() {
                *entry = -*entry;
            }
        }
    }

    let normalized_by_last = raw[m - 1].abs() >= significant;
    let scale = if normalized_by_last {
        raw[m - 1]
    } else {
        *raw.iter()
            .max_by(|p, q| p.abs().total_cmp(&q.abs()))
            .expect("nonempty coefficients")
    };
    let coeffs: Vec<f64> = raw.iter().map(|v| v / scale).collect();

    Ok(GainResult {
        gain,
        polynomial: OddPolynomial::from_f64(&coeffs)?,
        eigenvalues: eig.eigenvalues,
        whitened_vector: x,
        residual,
        multiplicity,
        normalized_by_last,
        ill_conditioned,
    })
}

/// Monte Carlo estimate of a gain, with its standard error.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub standard_error: f64,
}

/// Seeded Monte Carlo gain estimate under a Gaussian with variance
/// `sigma2`: the ratio of sample means of f'(s)^2 and f(s)^2.
///
/// Normal draws come from Marsaglia's polar method over a counter-based
/// generator, so a (seed, n) pair reproduces bit-identical results. The
/// standard error is the first-order delta-method value for a ratio of
/// correlated means.
pub fn monte_carlo_gain(
    f: &OddPolynomial,
    sigma2: f64,
    n_samples: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if f.is_zero() {
        return Err(Error::DegeneratePolynomial(
            "sampling the zero polynomial".into(),
        ));
    }
    if !(sigma2 > 0.0 && sigma2.is_finite()) {
        return Err(Error::InvalidDistribution(format!(
            "variance must be positive and finite, got {sigma2}"
        )));
    }
    if n_samples < 2 {
        return Err(Error::Dimension(
            "need at least 2 samples for a standard error".into(),
        ));
    }

    let base = f.to_f64_vec();
    let deriv: Vec<f64> = base
        .iter()
        .enumerate()
        .map(|(k, c)| (2 * k + 1) as f64 * c)
        .collect();
    let sigma = sigma2.sqrt();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spare: Option<f64> = None;
    let mut draw = |rng: &mut ChaCha8Rng| -> f64 {
        if let Some(z) = spare.take() {
            return z;
        }
        loop {
            let u: f64 = 2.0 * rng.gen::<f64>() - 1.0;
            let v: f64 = 2.0 * rng.gen::<f64>() - 1.0;
            let r = u * u + v * v;
            if r > 0.0 && r < 1.0 {
                let mult = (-2.0 * r.ln() / r).sqrt();
                spare = Some(v * mult);
                return u * mult;
            }
        }
    };

    let (mut su, mut sv, mut suu, mut svv, mut suv) = (0.0f64, 0.0, 0.0, 0.0, 0.0);
    for _ in 0..n_samples {
        let s = sigma * draw(&mut rng);
        let t = s * s;
        let fp = horner(&deriv, t);
        let fv = s * horner(&base, t);
        let u = fp * fp;
        let v = fv * fv;
        su += u;
        sv += v;
        suu += u * u;
        svv += v * v;
        suv += u * v;
    }

    let n = n_samples as f64;
    let ubar = su / n;
    let vbar = sv / n;
    if vbar <= 0.0 {
        return Err(Error::DegeneratePolynomial(
            "sampled denominator mean is zero".into(),
        ));
    }
    let var_u = (suu - n * ubar * ubar) / (n - 1.0);
    let var_v = (svv - n * vbar * vbar) / (n - 1.0);
    let cov = (suv - n * ubar * vbar) / (n - 1.0);
    let ratio = ubar / vbar;
    let se_sq = (var_u - 2.0 * ratio * cov + ratio * ratio * var_v).max(0.0) / (n * vbar * vbar);

    Ok(MonteCarloEstimate {
        estimate: ratio,
        standard_error: se_sq.sqrt(),
    })
}

//! Exact analysis of the gain Rayleigh quotient for odd polynomial
//! nonlinearities under symmetric input distributions.
//!
//! The library is organized around one pipeline:
//!
//! * [`moments`] produces exact even-moment sequences (Gaussian, uniform,
//!   explicit, or empirical);
//! * [`hankel`] packs them into the shift-0 / shift-1 Hankel matrices A and
//!   B and the diagonal scalings around them;
//! * [`hermite`] supplies packed Hermite coefficient triangles, which are
//!   the exact unit-triangular whitening factors;
//! * [`factorization`] performs square-root-free LDL decompositions, both
//!   by elimination and in Gaussian closed form, and verifies the
//!   diagonalization identities;
//! * [`optimizer`] maximizes the gain by whitening B and solving a small
//!   symmetric eigenproblem, with an exact-arithmetic side channel and a
//!   seeded Monte Carlo cross-check.
//!
//! Everything structural is computed over arbitrary-precision rationals;
//! floating point appears only in the eigensolver, the float Cholesky path
//! (which carries explicit conditioning guards), and sampling.

// kernels iterate over triangular and banded index sets where explicit
// indices mirror the matrix subscripts; iterator rewrites would obscure them
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod factorization;
pub mod hankel;
pub mod hermite;
pub mod matrix;
pub mod moments;
pub mod optimizer;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
pub use factorization::{
    check_gain_identity, check_hermite_diagonalization, closed_form_factors, float_cholesky,
    ldl_decompose, unit_lower_inverse, FloatCholesky, LdlFactorization, Strictness,
};
pub use hankel::{
    build_a, build_b, build_pair, check_determinant_products, check_recurrence,
    check_scaling_split, determinant, order_diagonal, sigma_diagonal, DiagonalMatrix, HankelMatrix,
};
pub use hermite::{
    build_l_a, build_l_b, check_commute, check_orthogonality, hermite_coefficients,
    orthogonality_integral, HermiteCoefficients, HermiteTriangular,
};
pub use matrix::{CheckReport, Mismatch, RatMatrix};
pub use moments::{
    double_factorial, empirical_even_moments, gaussian_even_moments, parse_samples,
    uniform_even_moments, DistributionSpec, MomentSequence,
};
pub use optimizer::{
    gain_of, max_gain, max_gain_with, monte_carlo_gain, symmetric_eigen, whitened_form, GainResult,
    MonteCarloEstimate, SymmetricEigen, WhiteningPath,
};
pub use poly::OddPolynomial;
pub use scalar::{format_rational, parse_rational, Rational};

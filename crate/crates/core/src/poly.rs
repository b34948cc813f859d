//! Odd polynomials in the span of s, s^3, ..., s^{2M-1}.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, from_f64_exact, to_f64, Rational};

/// f(s) = sum_k a_k s^{2k+1}, stored by its coefficient row a of length M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddPolynomial {
    a: Vec<Rational>,
}

impl OddPolynomial {
    pub fn new(a: Vec<Rational>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptyInput("coefficient row".into()));
        }
        Ok(OddPolynomial { a })
    }

    /// Exact conversion from doubles; rejects non-finite entries.
    pub fn from_f64(a: &[f64]) -> Result<Self> {
        OddPolynomial::new(
            a.iter()
                .map(|&x| from_f64_exact(x))
                .collect::<Result<_>>()?,
        )
    }

    /// Number of coefficients M; the polynomial degree is 2M-1.
    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn order(&self) -> usize {
        2 * self.a.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|c| c.is_zero())
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.a.iter().map(to_f64).collect()
    }

    /// f(s) by Horner evaluation in t = s^2, then one multiply by s.
    pub fn eval(&self, s: f64) -> f64 {
        s * horner(&self.to_f64_vec(), s * s)
    }

    /// f'(s) = sum_k (2k+1) a_k s^{2k}, again Horner in s^2.
    pub fn eval_derivative(&self, s: f64) -> f64 {
        let scaled: Vec<f64> = self
            .to_f64_vec()
            .iter()
            .enumerate()
            .map(|(k, c)| (2 * k + 1) as f64 * c)
            .collect();
        horner(&scaled, s * s)
    }
}

/// Horner evaluation of sum_k c_k t^k.
pub(crate) fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

impl std::fmt::Display for OddPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.a.iter().enumerate() {
            if c.is_zero() && self.a.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({}) s^{}", format_rational(c), 2 * k + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn he5() -> OddPolynomial {
        OddPolynomial::new(vec![rat_int(15), rat_int(-10), rat_int(1)]).unwrap()
    }

    #[test]
    fn evaluates_odd_polynomial_and_derivative() {
        let f = he5();
        // He_5(2) = 32 - 80 + 30; He_5'(2) = 80 - 120 + 15.
        assert_eq!(f.eval(2.0), -18.0);
        assert_eq!(f.eval_derivative(2.0), -25.0);
        assert_eq!(f.eval(0.0), 0.0);
        assert_eq!(f.eval_derivative(0.0), 15.0);
        assert_eq!(f.eval(-2.0), 18.0, "odd symmetry");
        assert_eq!(f.eval_derivative(-2.0), -25.0, "even derivative");
    }

    #[test]
    fn shape_accessors() {
        let f = he5();
        assert_eq!(f.m(), 3);
        assert_eq!(f.order(), 5);
        assert!(!f.is_zero());
        assert!(OddPolynomial::new(vec![]).is_err());
        assert!(OddPolynomial::new(vec![rat_int(0)]).unwrap().is_zero());
    }

    #[test]
    fn f64_round_trip() {
        let f = OddPolynomial::from_f64(&[0.5, -2.0]).unwrap();
        assert_eq!(f.coefficients(), &[rat(1, 2), rat_int(-2)]);
        assert!(OddPolynomial::from_f64(&[f64::INFINITY]).is_err());
    }

    #[test]
    fn display_form() {
        assert_eq!(he5().to_string(), "(15) s^1 + (-10) s^3 + (1) s^5");
        let z = OddPolynomial::new(vec![rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(z.to_string(), "0");
    }
}

//! Even moment sequences of symmetric distributions.
//!
//! A sequence of length 2M holds mu_0, mu_2, ..., mu_{4M-2}, exactly the
//! moments consumed by the order-M Hankel constructors. Sources: zero-mean
//! Gaussian, zero-mean uniform, an explicit list, or empirical samples.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

/// Double factorial n!! over big integers, with 0!! = (-1)!! = 1.
pub fn double_factorial(n: i64) -> BigInt {
    assert!(n >= -1, "double factorial of {n}");
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// A symmetric zero-mean distribution, described just well enough to produce
/// even moments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistributionSpec {
    /// Gaussian with variance `sigma2`.
    Gaussian { sigma2: Rational },
    /// Uniform on [-c, c] with c chosen so the variance is `sigma2`.
    Uniform { sigma2: Rational },
    /// Explicit even moments mu_0, mu_2, ... as given.
    Explicit { even_moments: Vec<Rational> },
    /// Point mass on a finite sample set, symmetrized through even powers.
    Empirical { samples: Vec<Rational> },
}

fn require_positive_variance(sigma2: &Rational) -> Result<()> {
    if sigma2.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidDistribution(format!(
            "variance must be positive, got {}",
            format_rational(sigma2)
        )))
    }
}

impl DistributionSpec {
    pub fn gaussian(sigma2: Rational) -> Result<Self> {
        require_positive_variance(&sigma2)?;
        Ok(DistributionSpec::Gaussian { sigma2 })
    }

    pub fn uniform(sigma2: Rational) -> Result<Self> {
        require_positive_variance(&sigma2)?;
        Ok(DistributionSpec::Uniform { sigma2 })
    }

    /// Explicit list; must have even length, lead with mu_0 = 1, and contain
    /// no negative entries (even moments are expectations of squares).
    pub fn explicit(even_moments: Vec<Rational>) -> Result<Self> {
        if even_moments.is_empty() {
            return Err(Error::EmptyInput("explicit moment list".into()));
        }
        if !even_moments.len().is_multiple_of(2) {
            return Err(Error::InvalidDistribution(format!(
                "moment list length {} is odd; expected 2M entries",
                even_moments.len()
            )));
        }
        if !even_moments[0].is_one() {
            return Err(Error::InvalidDistribution(format!(
                "mu_0 must be 1, got {}",
                format_rational(&even_moments[0])
            )));
        }
        if let Some(bad) = even_moments.iter().find(|m| m.is_negative()) {
            return Err(Error::InvalidDistribution(format!(
                "negative even moment {}",
                format_rational(bad)
            )));
        }
        Ok(DistributionSpec::Explicit { even_moments })
    }

    pub fn empirical(samples: Vec<Rational>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput("empirical sample set".into()));
        }
        Ok(DistributionSpec::Empirical { samples })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            DistributionSpec::Gaussian { .. } => "gaussian",
            DistributionSpec::Uniform { .. } => "uniform",
            DistributionSpec::Explicit { .. } => "explicit",
            DistributionSpec::Empirical { .. } => "empirical",
        }
    }

    pub fn sigma2(&self) -> Option<&Rational> {
        match self {
            DistributionSpec::Gaussian { sigma2 } | DistributionSpec::Uniform { sigma2 } => {
                Some(sigma2)
            }
            _ => None,
        }
    }

    /// Largest order M this source can supply, if bounded.
    pub fn max_order(&self) -> Option<usize> {
        match self {
            DistributionSpec::Explicit { even_moments } => Some(even_moments.len() / 2),
            _ => None,
        }
    }

    /// The first 2M even moments of this distribution.
    pub fn even_moments(&self, m: usize) -> Result<MomentSequence> {
        if m == 0 {
            return Err(Error::Dimension("order must be at least 1".into()));
        }
        let mu = match self {
            DistributionSpec::Gaussian { sigma2 } => gaussian_moment_list(m, sigma2),
            DistributionSpec::Uniform { sigma2 } => uniform_moment_list(m, sigma2),
            DistributionSpec::Explicit { even_moments } => {
                if even_moments.len() < 2 * m {
                    return Err(Error::Dimension(format!(
                        "order {m} needs {} moments, list has {}",
                        2 * m,
                        even_moments.len()
                    )));
                }
                even_moments[..2 * m].to_vec()
            }
            DistributionSpec::Empirical { samples } => empirical_moment_list(samples, m),
        };
        Ok(MomentSequence {
            source: self.clone(),
            mu,
        })
    }
}

fn gaussian_moment_list(m: usize, sigma2: &Rational) -> Vec<Rational> {
    // mu_{2k} = (2k-1)!! sigma^{2k}, built incrementally.
    let mut mu = Vec::with_capacity(2 * m);
    let mut odd_ff = Rational::one();
    let mut power = Rational::one();
    for k in 0..2 * m {
        mu.push(&odd_ff * &power);
        odd_ff *= Rational::from_integer(BigInt::from(2 * k as i64 + 1));
        power *= sigma2;
    }
    mu
}

fn uniform_moment_list(m: usize, sigma2: &Rational) -> Vec<Rational> {
    // Uniform on [-c, c] with c^2 = 3 sigma^2: mu_{2k} = c^{2k} / (2k+1).
    let c2 = sigma2 * Rational::from_integer(BigInt::from(3));
    let mut mu = Vec::with_capacity(2 * m);
    let mut power = Rational::one();
    for k in 0..2 * m {
        mu.push(&power / Rational::from_integer(BigInt::from(2 * k as i64 + 1)));
        power *= &c2;
    }
    mu
}

fn empirical_moment_list(samples: &[Rational], m: usize) -> Vec<Rational> {
    let n = Rational::from_integer(BigInt::from(samples.len()));
    let mut powers: Vec<Rational> = vec![Rational::one(); samples.len()];
    let squares: Vec<Rational> = samples.iter().map(|s| s * s).collect();
    let mut mu = Vec::with_capacity(2 * m);
    for _ in 0..2 * m {
        let sum: Rational = powers.iter().sum();
        mu.push(sum / &n);
        for (p, s2) in powers.iter_mut().zip(&squares) {
            *p *= s2;
        }
    }
    mu
}

/// Gaussian even moments mu_0 .. mu_{4M-2} for variance `sigma2`.
pub fn gaussian_even_moments(m: usize, sigma2: &Rational) -> Result<MomentSequence> {
    DistributionSpec::gaussian(sigma2.clone())?.even_moments(m)
}

/// Uniform even moments for the variance-`sigma2` symmetric uniform law.
pub fn uniform_even_moments(m: usize, sigma2: &Rational) -> Result<MomentSequence> {
    DistributionSpec::uniform(sigma2.clone())?.even_moments(m)
}

/// Sample even moments: mu_{2k} = (1/n) sum_i s_i^{2k}.
pub fn empirical_even_moments(samples: &[Rational], m: usize) -> Result<MomentSequence> {
    DistributionSpec::empirical(samples.to_vec())?.even_moments(m)
}

/// The first 2M even moments of a distribution, with their provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSequence {
    source: DistributionSpec,
    mu: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct MomentFile {
    m: usize,
    even_moments: Vec<String>,
}

impl MomentSequence {
    /// Order M; the sequence holds 2M entries.
    pub fn order(&self) -> usize {
        self.mu.len() / 2
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    /// mu_{2k}.
    pub fn mu(&self, k: usize) -> &Rational {
        &self.mu[k]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.mu
    }

    pub fn source(&self) -> &DistributionSpec {
        &self.source
    }

    /// Serializes to the interchange form `{"m": M, "even_moments": [...]}`
    /// with entries as exact rational strings.
    pub fn to_json_string(&self) -> String {
        let file = MomentFile {
            m: self.order(),
            even_moments: self.mu.iter().map(format_rational).collect(),
        };
        serde_json::to_string_pretty(&file).expect("moment serialization")
    }

    /// Parses the interchange form. The result carries an explicit source.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: MomentFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("moment file: {e}")))?;
        let mu = file
            .even_moments
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        if mu.len() != 2 * file.m {
            return Err(Error::Parse(format!(
                "moment file declares m = {} but holds {} entries (expected {})",
                file.m,
                mu.len(),
                2 * file.m
            )));
        }
        DistributionSpec::explicit(mu)?.even_moments(file.m)
    }
}

/// Parses a sample file: one decimal literal per line, blank lines skipped.
pub fn parse_samples(text: &str) -> Result<Vec<Rational>> {
    let mut samples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        samples.push(
            parse_rational(line)
                .map_err(|e| Error::Parse(format!("sample line {}: {e}", lineno + 1)))?,
        );
    }
    if samples.is_empty() {
        return Err(Error::EmptyInput("sample file has no values".into()));
    }
    Ok(samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    #[test]
    fn double_factorial_small_values() {
        let expect: [(i64, i64); 10] = [
            (-1, 1),
            (0, 1),
            (1, 1),
            (2, 2),
            (3, 3),
            (4, 8),
            (5, 15),
            (6, 48),
            (7, 105),
            (9, 945),
        ];
        for (n, v) in expect {
            assert_eq!(double_factorial(n), BigInt::from(v), "n = {n}");
        }
    }

    #[test]
    fn gaussian_unit_variance_sequence() {
        let mu = gaussian_even_moments(3, &rat_int(1)).unwrap();
        let want = [1, 1, 3, 15, 105, 945];
        assert_eq!(mu.len(), 6);
        for (k, w) in want.iter().enumerate() {
            assert_eq!(mu.mu(k), &rat_int(*w), "mu_{}", 2 * k);
        }
    }

    #[test]
    fn gaussian_variance_four() {
        let mu = gaussian_even_moments(2, &rat_int(4)).unwrap();
        assert_eq!(
            mu.entries(),
            &[rat_int(1), rat_int(4), rat_int(48), rat_int(960)]
        );
    }

    #[test]
    fn gaussian_scaling_law() {
        let s2 = rat(9, 49);
        let base = gaussian_even_moments(4, &rat_int(1)).unwrap();
        let scaled = gaussian_even_moments(4, &s2).unwrap();
        let mut power = Rational::one();
        for k in 0..8 {
            assert_eq!(scaled.mu(k), &(base.mu(k) * &power), "k = {k}");
            power *= &s2;
        }
    }

    #[test]
    fn uniform_third_variance_sequence() {
        // Variance 1/3 puts the support at [-1, 1]: mu_{2k} = 1/(2k+1).
        let mu = uniform_even_moments(2, &rat(1, 3)).unwrap();
        assert_eq!(mu.entries(), &[rat_int(1), rat(1, 3), rat(1, 5), rat(1, 7)]);
    }

    #[test]
    fn uniform_variance_matches_request() {
        for s2 in [rat(1, 4), rat_int(4), rat(9, 49)] {
            let mu = uniform_even_moments(1, &s2).unwrap();
            assert_eq!(mu.mu(1), &s2);
        }
    }

    #[test]
    fn empirical_degenerate_and_symmetric_sets() {
        let zeros = empirical_even_moments(&[rat_int(0), rat_int(0)], 2).unwrap();
        assert_eq!(
            zeros.entries(),
            &[rat_int(1), rat_int(0), rat_int(0), rat_int(0)]
        );

        let pm = empirical_even_moments(&[rat_int(1), rat_int(-1)], 2).unwrap();
        assert!(pm.entries().iter().all(|m| m == &rat_int(1)));

        let two = empirical_even_moments(&[rat_int(2)], 2).unwrap();
        assert_eq!(
            two.entries(),
            &[rat_int(1), rat_int(4), rat_int(16), rat_int(64)]
        );
    }

    #[test]
    fn empirical_empty_rejected() {
        assert!(matches!(
            empirical_even_moments(&[], 1),
            Err(Error::EmptyInput(_))
        ));
    }

    #[test]
    fn invalid_variance_rejected() {
        for s2 in [rat_int(0), rat_int(-1)] {
            assert!(matches!(
                gaussian_even_moments(2, &s2),
                Err(Error::InvalidDistribution(_))
            ));
            assert!(matches!(
                uniform_even_moments(2, &s2),
                Err(Error::InvalidDistribution(_))
            ));
        }
    }

    #[test]
    fn explicit_list_validation() {
        assert!(DistributionSpec::explicit(vec![]).is_err());
        assert!(DistributionSpec::explicit(vec![rat_int(1)]).is_err());
        assert!(DistributionSpec::explicit(vec![rat_int(2), rat_int(1)]).is_err());
        assert!(DistributionSpec::explicit(vec![rat_int(1), rat_int(-1)]).is_err());

        let spec = DistributionSpec::explicit(vec![rat_int(1), rat(1, 4)]).unwrap();
        assert_eq!(spec.max_order(), Some(1));
        assert!(spec.even_moments(2).is_err());
    }

    #[test]
    fn moment_file_round_trip() {
        let mu = gaussian_even_moments(2, &rat(1, 4)).unwrap();
        let text = mu.to_json_string();
        let back = MomentSequence::from_json_str(&text).unwrap();
        assert_eq!(back.entries(), mu.entries());
        assert_eq!(back.order(), 2);

        assert!(MomentSequence::from_json_str("{\"m\": 2, \"even_moments\": [\"1\"]}").is_err());
        assert!(MomentSequence::from_json_str("not json").is_err());
    }

    #[test]
    fn sample_file_parsing() {
        let samples = parse_samples("0.5\n\n-1.25\n3\n").unwrap();
        assert_eq!(samples, vec![rat(1, 2), rat(-5, 4), rat_int(3)]);
        assert!(parse_samples("").is_err());
        assert!(parse_samples("abc\n").is_err());
    }
}

//! Acceptance gate: one test per shipped behavioral guarantee, each
//! printing a single pass/fail line (visible with --nocapture or on
//! failure). Tolerances are pinned here as constants; exact-arithmetic
//! claims use zero tolerance by construction.

#![allow(clippy::needless_range_loop)]

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hgain::hermite;
use hgain::scalar::{rat, rat_int, to_f64};
use hgain::{
    build_a, build_b, check_commute, check_determinant_products, check_gain_identity,
    check_hermite_diagonalization, check_orthogonality, check_recurrence, closed_form_factors,
    determinant, gaussian_even_moments, ldl_decompose, max_gain, monte_carlo_gain, order_diagonal,
    uniform_even_moments, whitened_form, DistributionSpec, OddPolynomial, Rational, Strictness,
};

const GRID_M_MAX: usize = 12;
const COMMUTE_M_MAX: usize = 32;
const ORTHOGONALITY_DEGREE_MAX: usize = 15;

const TOL_GOLDEN_GAIN: f64 = 1e-9;
const TOL_GOLDEN_WHITENED: f64 = 1e-9;
const TOL_GOLDEN_COEFF: f64 = 1e-8;
const TOL_SPECTRUM_REL: f64 = 1e-9;
const TOL_COEFF_REL: f64 = 1e-8;
const TOL_QUADRATIC_ORACLE: f64 = 1e-10;

const GOLDEN_TIME_LIMIT: Duration = Duration::from_secs(1);
const GRID_TIME_LIMIT: Duration = Duration::from_secs(10);
const MC_TIME_LIMIT: Duration = Duration::from_secs(5);

const MC_SAMPLES: usize = 1_000_000;
const MC_SEED: u64 = 12345;
const MC_SE_LIMIT: f64 = 0.05;

const FD_STEPS: [f64; 2] = [1e-3, 1e-4];
const FD_TRIALS: usize = 20;
const FD_DECAY_FACTOR: f64 = 0.03;
const FD_SEED: u64 = 7;

fn grid_sigma2() -> [Rational; 4] {
    [rat_int(1), rat_int(4), rat(1, 4), rat(9, 49)]
}

fn report(idx: usize, name: &str, outcome: Result<(), String>) {
    match outcome {
        Ok(()) => println!("acceptance {idx:02} PASS - {name}"),
        Err(msg) => {
            println!("acceptance {idx:02} FAIL - {name}: {msg}");
            panic!("acceptance {idx:02} ({name}) failed: {msg}");
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[test]
fn a01_gaussian_order_five_golden_instance() {
    let run = || -> Result<(), String> {
        let start = Instant::now();
        let sigma2 = rat_int(1);
        let mu = gaussian_even_moments(3, &sigma2).map_err(|e| e.to_string())?;
        let a = build_a(&mu, 3).map_err(|e| e.to_string())?;
        let b = build_b(&mu, 3).map_err(|e| e.to_string())?;

        let want_a = [[1, 1, 3], [1, 3, 15], [3, 15, 105]];
        let want_b = [[1, 3, 15], [3, 15, 105], [15, 105, 945]];
        for i in 0..3 {
            for j in 0..3 {
                ensure(a.at(i, j) == &rat_int(want_a[i][j]), || {
                    format!("A[{i}][{j}] != {}", want_a[i][j])
                })?;
                ensure(b.at(i, j) == &rat_int(want_b[i][j]), || {
                    format!("B[{i}][{j}] != {}", want_b[i][j])
                })?;
            }
        }

        let c = whitened_form(&a, &b, &order_diagonal(3)).map_err(|e| e.to_string())?;
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 2.0 * i as f64 + 1.0 } else { 0.0 };
                ensure((c[i][j] - want).abs() <= TOL_GOLDEN_WHITENED, || {
                    format!("whitened[{i}][{j}] = {} wants {want}", c[i][j])
                })?;
            }
        }

        let dist = DistributionSpec::gaussian(sigma2).map_err(|e| e.to_string())?;
        let r = max_gain(&dist, 5).map_err(|e| e.to_string())?;
        ensure((r.gain - 5.0).abs() <= TOL_GOLDEN_GAIN, || {
            format!("gain = {}", r.gain)
        })?;
        let coeffs = r.polynomial.to_f64_vec();
        for (k, want) in [15.0, -10.0, 1.0].iter().enumerate() {
            ensure((coeffs[k] - want).abs() <= TOL_GOLDEN_COEFF, || {
                format!("a[{k}] = {} wants {want}", coeffs[k])
            })?;
        }
        ensure(r.normalized_by_last, || "normalization flag".into())?;

        let elapsed = start.elapsed();
        ensure(elapsed < GOLDEN_TIME_LIMIT, || {
            format!("took {elapsed:?}, limit {GOLDEN_TIME_LIMIT:?}")
        })
    };
    report(1, "order-5 unit-variance golden instance", run());
}

#[test]
fn a02_whitening_identity_exact_on_grid() {
    let run = || -> Result<(), String> {
        let start = Instant::now();
        for sigma2 in grid_sigma2() {
            for m in 1..=GRID_M_MAX {
                let rep = check_gain_identity(m, &sigma2).map_err(|e| e.to_string())?;
                ensure(rep.holds, || {
                    format!(
                        "M = {m}, sigma2 = {sigma2}: first mismatch {}",
                        rep.mismatch.map(|mm| mm.to_string()).unwrap_or_default()
                    )
                })?;
            }
        }
        let elapsed = start.elapsed();
        ensure(elapsed < GRID_TIME_LIMIT, || {
            format!("took {elapsed:?}, limit {GRID_TIME_LIMIT:?}")
        })
    };
    report(2, "exact whitening identity on the full grid", run());
}

#[test]
fn a03_factorization_diagonals_exact_on_grid() {
    let run = || -> Result<(), String> {
        for sigma2 in grid_sigma2() {
            let mut even_power = Rational::from_integer(1.into()); // sigma^{4k}
            let step = &sigma2 * &sigma2;
            let mut fact_even = Rational::from_integer(1.into()); // (2k)!
            let mut pivots_a_formula = Vec::new();
            let mut pivots_b_formula = Vec::new();
            for k in 0..GRID_M_MAX {
                fact_even *= rat_int((2 * k).max(1) as i64);
                if k > 0 {
                    fact_even *= rat_int(2 * k as i64 - 1);
                }
                let fact_odd = &fact_even * rat_int(2 * k as i64 + 1);
                pivots_a_formula.push(&even_power * &fact_even);
                pivots_b_formula.push(&even_power * &sigma2 * &fact_odd);
                even_power *= &step;
            }

            for m in 1..=GRID_M_MAX {
                let mu = gaussian_even_moments(m, &sigma2).map_err(|e| e.to_string())?;
                let a = build_a(&mu, m).map_err(|e| e.to_string())?;
                let b = build_b(&mu, m).map_err(|e| e.to_string())?;
                let fa =
                    ldl_decompose(a.entries(), Strictness::Strict).map_err(|e| e.to_string())?;
                let fb =
                    ldl_decompose(b.entries(), Strictness::Strict).map_err(|e| e.to_string())?;
                let (ca, cb) = closed_form_factors(m, &sigma2).map_err(|e| e.to_string())?;

                ensure(fa == ca && fb == cb, || {
                    format!("M = {m}, sigma2 = {sigma2}: closed form != elimination")
                })?;
                ensure(
                    fa.pivots() == &pivots_a_formula[..m] && fb.pivots() == &pivots_b_formula[..m],
                    || format!("M = {m}, sigma2 = {sigma2}: pivot formula mismatch"),
                )?;

                let rep = check_hermite_diagonalization(m, &sigma2).map_err(|e| e.to_string())?;
                ensure(rep.holds, || {
                    format!("M = {m}, sigma2 = {sigma2}: conjugated congruence failed")
                })?;
            }
        }
        Ok(())
    };
    report(
        3,
        "factorial pivot diagonals, elimination vs closed form",
        run(),
    );
}

#[test]
fn a04_triangle_intertwine_exact_to_order_32() {
    let run = || -> Result<(), String> {
        for m in 1..=COMMUTE_M_MAX {
            let rep = check_commute(m);
            ensure(rep.holds, || {
                format!(
                    "M = {m}: first mismatch {}",
                    rep.mismatch.map(|mm| mm.to_string()).unwrap_or_default()
                )
            })?;
        }
        Ok(())
    };
    report(4, "odd/even triangle intertwining up to order 32", run());
}

#[test]
fn a05_determinant_products_match_elimination_oracle() {
    let run = || -> Result<(), String> {
        for sigma2 in grid_sigma2() {
            for m in 1..=GRID_M_MAX {
                let rep = check_determinant_products(m, &sigma2).map_err(|e| e.to_string())?;
                ensure(rep.holds, || {
                    format!(
                        "M = {m}, sigma2 = {sigma2}: identity {}",
                        rep.mismatch
                            .as_ref()
                            .map(|mm| mm.row.to_string())
                            .unwrap_or_default()
                    )
                })?;
            }
        }

        let mu = gaussian_even_moments(3, &rat_int(1)).map_err(|e| e.to_string())?;
        let a = build_a(&mu, 3).map_err(|e| e.to_string())?;
        let b = build_b(&mu, 3).map_err(|e| e.to_string())?;
        let det_a = determinant(a.entries());
        let det_b = determinant(b.entries());
        ensure(det_a == rat_int(48), || format!("det A = {det_a}"))?;
        ensure(det_b == rat_int(720), || format!("det B = {det_b}"))?;
        ensure(&det_b / &det_a == rat_int(15), || "ratio != 15".into())?;
        ensure(order_diagonal(3).det() == rat_int(15), || {
            "det D != 15".into()
        })
    };
    report(5, "closed-form determinants vs elimination oracle", run());
}

#[test]
fn a06_moment_recurrence_with_uniform_negative_control() {
    let run = || -> Result<(), String> {
        for sigma2 in grid_sigma2() {
            for m in 1..=GRID_M_MAX {
                let mu = gaussian_even_moments(m, &sigma2).map_err(|e| e.to_string())?;
                let a = build_a(&mu, m).map_err(|e| e.to_string())?;
                let b = build_b(&mu, m).map_err(|e| e.to_string())?;
                let rep = check_recurrence(&a, &b, &sigma2).map_err(|e| e.to_string())?;
                ensure(rep.holds, || {
                    format!("Gaussian M = {m}, sigma2 = {sigma2} failed")
                })?;
            }
        }

        // negative control: any non-Gaussian symmetric law must break the
        // identity once M >= 2; order 1 holds universally
        let s2 = rat(1, 3);
        let mu1 = uniform_even_moments(1, &s2).map_err(|e| e.to_string())?;
        let a1 = build_a(&mu1, 1).map_err(|e| e.to_string())?;
        let b1 = build_b(&mu1, 1).map_err(|e| e.to_string())?;
        ensure(
            check_recurrence(&a1, &b1, &s2)
                .map_err(|e| e.to_string())?
                .holds,
            || "uniform must satisfy the order-1 identity".into(),
        )?;
        for m in 2..=6 {
            let mu = uniform_even_moments(m, &s2).map_err(|e| e.to_string())?;
            let a = build_a(&mu, m).map_err(|e| e.to_string())?;
            let b = build_b(&mu, m).map_err(|e| e.to_string())?;
            let rep = check_recurrence(&a, &b, &s2).map_err(|e| e.to_string())?;
            ensure(!rep.holds, || {
                format!("uniform M = {m} unexpectedly satisfied the identity")
            })?;
            if m == 2 {
                let mm = rep.mismatch.as_ref().ok_or("missing mismatch")?;
                ensure(
                    (mm.row, mm.col) == (0, 1) && mm.left == rat(4, 3) && mm.right == rat(14, 15),
                    || format!("unexpected first mismatch {mm}"),
                )?;
            }
        }
        Ok(())
    };
    report(
        6,
        "moment recurrence, Gaussian grid plus uniform control",
        run(),
    );
}

#[test]
fn a07_orthogonality_table_exact_to_degree_15() {
    let run = || -> Result<(), String> {
        let rep = check_orthogonality(ORTHOGONALITY_DEGREE_MAX);
        ensure(rep.holds, || {
            format!(
                "first mismatch {}",
                rep.mismatch.map(|mm| mm.to_string()).unwrap_or_default()
            )
        })
    };
    report(7, "orthogonality table n! delta up to degree 15", run());
}

#[test]
fn a08_spectrum_law_and_coefficient_scaling() {
    let run = || -> Result<(), String> {
        for sigma2 in [rat_int(1), rat(1, 4)] {
            let inv_sigma2 = 1.0 / to_f64(&sigma2);
            for order in [5usize, 7, 9, 11] {
                let m = order.div_ceil(2);
                let dist = DistributionSpec::gaussian(sigma2.clone()).map_err(|e| e.to_string())?;
                let r = max_gain(&dist, order).map_err(|e| e.to_string())?;

                for (k, lambda) in r.eigenvalues.iter().enumerate() {
                    let want = (2.0 * k as f64 + 1.0) * inv_sigma2;
                    ensure((lambda - want).abs() <= TOL_SPECTRUM_REL * want, || {
                        format!(
                            "order {order}, sigma2 = {sigma2}: eigenvalue {k} = {lambda} wants {want}"
                        )
                    })?;
                }

                let packed = hermite::hermite_coefficients(order, m).map_err(|e| e.to_string())?;
                let coeffs = r.polynomial.to_f64_vec();
                let mut scale = Vec::with_capacity(m);
                let mut p = Rational::from_integer(1.into());
                for _ in 0..m {
                    scale.push(p.clone());
                    p *= &sigma2;
                }
                for k in 0..m {
                    // rescaling law: a_k = beta_k sigma^{2(M-1-k)}
                    let want = to_f64(&packed.packed()[k]) * to_f64(&scale[m - 1 - k]);
                    ensure(
                        (coeffs[k] - want).abs() <= TOL_COEFF_REL * want.abs(),
                        || {
                            format!(
                                "order {order}, sigma2 = {sigma2}: a[{k}] = {} wants {want}",
                                coeffs[k]
                            )
                        },
                    )?;
                }
            }
        }
        Ok(())
    };
    report(8, "whitened spectrum law and coefficient rescaling", run());
}

#[test]
fn a09_uniform_quadratic_eigen_oracle() {
    let run = || -> Result<(), String> {
        let s2 = rat(1, 3);
        let mu = uniform_even_moments(2, &s2).map_err(|e| e.to_string())?;
        let a = build_a(&mu, 2).map_err(|e| e.to_string())?;
        let b = build_b(&mu, 2).map_err(|e| e.to_string())?;
        let d = order_diagonal(2);
        let n = d.conjugate(a.entries());

        // det(N - lambda B) = 0 expanded by hand for the 2x2 case:
        // c2 lambda^2 - c1 lambda + c0 with exact rational coefficients
        let c2 = b.at(0, 0) * b.at(1, 1) - b.at(0, 1) * b.at(0, 1);
        let c1 = n.at(0, 0) * b.at(1, 1) + n.at(1, 1) * b.at(0, 0)
            - rat_int(2) * n.at(0, 1) * b.at(0, 1);
        let c0 = n.at(0, 0) * n.at(1, 1) - n.at(0, 1) * n.at(0, 1);

        let (c2f, c1f, c0f) = (to_f64(&c2), to_f64(&c1), to_f64(&c0));
        let disc = (c1f * c1f - 4.0 * c2f * c0f).sqrt();
        let oracle = (c1f + disc) / (2.0 * c2f);

        let dist = DistributionSpec::uniform(s2).map_err(|e| e.to_string())?;
        let r = max_gain(&dist, 3).map_err(|e| e.to_string())?;
        ensure((r.gain - oracle).abs() <= TOL_QUADRATIC_ORACLE, || {
            format!("gain {} vs quadratic oracle {oracle}", r.gain)
        })
    };
    report(9, "uniform order-3 quadratic eigenvalue oracle", run());
}

#[test]
fn a10_monte_carlo_consistency_at_one_million_samples() {
    let run = || -> Result<(), String> {
        let start = Instant::now();
        let f = OddPolynomial::new(vec![rat_int(15), rat_int(-10), rat_int(1)])
            .map_err(|e| e.to_string())?;
        let est = monte_carlo_gain(&f, 1.0, MC_SAMPLES, MC_SEED).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();

        ensure(
            (est.estimate - 5.0).abs() <= 3.0 * est.standard_error,
            || {
                format!(
                    "estimate {} departs from 5 by more than 3 SE ({})",
                    est.estimate, est.standard_error
                )
            },
        )?;
        ensure(elapsed < MC_TIME_LIMIT, || {
            format!("took {elapsed:?}, limit {MC_TIME_LIMIT:?}")
        })?;
        // The ratio estimator's per-sample variance for these coefficients
        // is ~5.5e4, giving SE ~ 0.23 at 1e6 draws; see the estimator's SE
        // derivation in optimizer::monte_carlo_gain. This bound is kept as
        // stated rather than widened to what the estimator can achieve.
        ensure(est.standard_error < MC_SE_LIMIT, || {
            format!(
                "standard error {} is not below {MC_SE_LIMIT}",
                est.standard_error
            )
        })
    };
    report(
        10,
        "Monte Carlo three-sigma consistency and SE budget",
        run(),
    );
}

#[test]
fn a11_derivative_finite_difference_quadratic_decay() {
    let run = || -> Result<(), String> {
        let mut rng = ChaCha8Rng::seed_from_u64(FD_SEED);
        let mut total_err = [0.0f64; 2];
        for trial in 0..FD_TRIALS {
            let m = rng.gen_range(1..=5usize);
            let coeffs: Vec<i64> = loop {
                let c: Vec<i64> = (0..m).map(|_| rng.gen_range(-9..=9i64)).collect();
                if c.iter().any(|&v| v != 0) {
                    break c;
                }
            };
            let f = OddPolynomial::new(coeffs.iter().map(|&c| rat_int(c)).collect())
                .map_err(|e| e.to_string())?;
            let s: f64 = rng.gen_range(-3.0..=3.0);
            let exact = f.eval_derivative(s);

            // third-derivative magnitude bound at |s|, for a sane absolute
            // scale on the truncation error
            let mut f3_bound = 0.0f64;
            for (k, &c) in coeffs.iter().enumerate() {
                let p = 2 * k + 1;
                if p >= 3 {
                    f3_bound += (c.abs() * (p * (p - 1) * (p - 2)) as i64) as f64
                        * s.abs().powi(p as i32 - 3);
                }
            }

            for (which, h) in FD_STEPS.iter().enumerate() {
                let fd = (f.eval(s + h) - f.eval(s - h)) / (2.0 * h);
                let err = (fd - exact).abs();
                ensure(err <= 1e-6 * (1.0 + f3_bound), || {
                    format!("trial {trial}: error {err} too large for h = {h}")
                })?;
                total_err[which] += err;
            }
        }
        ensure(total_err[0] > 1e-9, || {
            "degenerate trial set: no truncation error observed".into()
        })?;
        ensure(total_err[1] <= FD_DECAY_FACTOR * total_err[0], || {
            format!(
                "aggregate error {} at h = 1e-4 vs {} at h = 1e-3 is not a quadratic decay",
                total_err[1], total_err[0]
            )
        })
    };
    report(
        11,
        "central-difference derivative check with h^2 decay",
        run(),
    );
}

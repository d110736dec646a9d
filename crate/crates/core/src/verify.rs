//! End-to-end invariant suites behind the `verify` command.
//!
//! Every suite draws its cases from a ChaCha stream keyed by the seed and
//! the suite's position, runs them in parallel and reports failures in case
//! order, so a report is a pure function of the configuration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::circulant::{
    eigenvalues, eigenvalues_direct, matvec_direct, right_multiply_shift, two_param_spectrum,
    verify_factorization, Circulant, CirculantOperator, TwoParamCirculant, UnitaryFactor,
};
use crate::error::{Error, Result};
use crate::estimator::{
    brute_force_norm_p, check_duality, check_monotonicity, estimate_norm_p, EstimatorOptions,
};
use crate::norms::{bound_components_with, lambda_max_abs, norm_p, vector_norm, Exponent};

pub const MAX_VERIFY_N: usize = 256;

pub const THM3_EXPONENTS: [f64; 6] = [2.0, 2.5, 3.0, 4.0, 8.0, 16.0];
/// Finite stand-in for `p = inf` in the exactness suite.
pub const INF_PROXY: f64 = 64.0;
pub const SANDWICH_EXPONENTS: [f64; 4] = [2.5, 3.0, 4.0, 8.0];
pub const DUALITY_EXPONENTS: [f64; 3] = [3.0, 4.0, 8.0];
pub const MONOTONICITY_GRID: [f64; 8] = [2.0, 2.5, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0];
pub const BRUTE_A: [f64; 5] = [-3.0, -1.0, 0.0, 1.0, 3.0];
pub const BRUTE_B: [f64; 3] = [0.0, 1.0, 2.0];
pub const BRUTE_P: [f64; 3] = [2.0, 3.0, 4.0];
pub const BRUTE_RESOLUTION: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub seed: u64,
    pub cases: usize,
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_n == 0 || self.max_n > MAX_VERIFY_N {
            return Err(Error::InvalidArgument(format!(
                "max-n must be in 1..={MAX_VERIFY_N}, got {}",
                self.max_n
            )));
        }
        if self.cases == 0 {
            return Err(Error::InvalidArgument("cases must be at least 1".into()));
        }
        Ok(())
    }

    fn estimator(&self) -> EstimatorOptions {
        EstimatorOptions::with_seed(self.seed)
    }
}

/// Closed forms the suites check against; replaceable to confirm that a
/// broken formula is caught.
#[derive(Clone, Copy)]
pub struct Formulas {
    /// `||A||_2 = max_k |lambda_k|` for `A(n, a, b)`.
    pub norm_2: fn(&TwoParamCirculant) -> f64,
}

impl Default for Formulas {
    fn default() -> Self {
        Self {
            norm_2: |c| lambda_max_abs(c).value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    /// One reproducible description per failing case.
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(name: &'static str, outcomes: Vec<std::result::Result<(), String>>) -> Self {
        let total = outcomes.len();
        let failures: Vec<String> = outcomes.into_iter().filter_map(|o| o.err()).collect();
        Self {
            name,
            passed: total - failures.len(),
            total,
            failures,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::ok)
    }
}

pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    run_with(config, &Formulas::default())
}

pub fn run_with(config: &VerifyConfig, formulas: &Formulas) -> Result<VerifyReport> {
    config.validate()?;
    let suites = vec![
        eigen_oracle(config),
        factorization(config),
        spectrum(config),
        fast_matvec(config),
        nonneg_closed_form(config),
        two_norm_closed_form(config, formulas),
        sandwich(config, formulas),
        witness(config, formulas),
        duality(config),
        monotonicity(config),
        brute_force(config),
    ];
    Ok(VerifyReport { suites })
}

fn rng_for(config: &VerifyConfig, suite: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(suite);
    rng
}

fn random_row(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-10.0..=10.0)).collect()
}

fn describe_row(row: &[f64]) -> String {
    let parts: Vec<String> = row.iter().map(|v| v.to_string()).collect();
    format!("first_row=[{}]", parts.join(","))
}

fn describe(c: &TwoParamCirculant) -> String {
    format!("n={} a={} b={}", c.n(), c.a(), c.b())
}

fn tp(n: usize, a: f64, b: f64) -> TwoParamCirculant {
    TwoParamCirculant::new(n, a, b).expect("generated parameters are valid")
}

fn nonneg_case(rng: &mut ChaCha8Rng, max_n: usize) -> TwoParamCirculant {
    tp(
        rng.gen_range(1..=max_n),
        rng.gen_range(0.0..=10.0),
        rng.gen_range(0.0..=5.0),
    )
}

fn negative_case(rng: &mut ChaCha8Rng, max_n: usize) -> TwoParamCirculant {
    tp(
        rng.gen_range(1..=max_n),
        -rng.gen_range(0.01..=10.0),
        rng.gen_range(0.0..=5.0),
    )
}

/// `2 |a| = (n - 2) b` with every quantity exactly representable.
fn boundary_case(rng: &mut ChaCha8Rng, max_n: usize) -> Option<TwoParamCirculant> {
    if max_n < 3 {
        return None;
    }
    let n = rng.gen_range(3..=max_n);
    let b = rng.gen_range(1..=20) as f64 / 4.0;
    Some(tp(n, -(n as f64 - 2.0) * b / 2.0, b))
}

fn any_sign_case(rng: &mut ChaCha8Rng, max_n: usize) -> TwoParamCirculant {
    if rng.gen_bool(0.5) {
        nonneg_case(rng, max_n)
    } else {
        negative_case(rng, max_n)
    }
}

fn rel_close(x: f64, y: f64, tol: f64, scale: f64) -> bool {
    (x - y).abs() <= tol * scale
}

/// `lambda_k` summed directly against the diagonal of `F A F*`.
pub fn eigen_oracle(config: &VerifyConfig) -> SuiteReport {
    let mut rng = rng_for(config, 1);
    let cap = config.max_n.min(64);
    let rows: Vec<Vec<f64>> = (0..config.cases)
        .map(|_| {
            let n = rng.gen_range(1..=cap);
            random_row(&mut rng, n)
        })
        .collect();
    let outcomes = rows
        .par_iter()
        .map(|row| {
            let c = Circulant::new(row.clone()).expect("finite row");
            let n = c.n();
            let f = crate::circulant::dft_matrix(n).expect("small n");
            let diag = conjugated_diagonal(&f, &c);
            let summed = eigenvalues_direct(&c);
            let tol = 1e-9 * n as f64 * c.max_abs_entry();
            let err = summed
                .eigenvalues()
                .iter()
                .zip(&diag)
                .fold(0.0_f64, |m, (x, y)| m.max((x - y).norm()));
            if err <= tol {
                Ok(())
            } else {
                Err(format!(
                    "{}: max |lambda - diag(F A F*)| = {err:e} > {tol:e}",
                    describe_row(row)
                ))
            }
        })
        .collect();
    SuiteReport::collect("eigen_oracle", outcomes)
}

fn conjugated_diagonal(f: &UnitaryFactor, c: &Circulant) -> Vec<num_complex::Complex64> {
    let a = c
        .dense()
        .expect("small n")
        .map(|v| num_complex::Complex64::new(v, 0.0));
    let fa = f.forward() * a;
    let adj = f.adjoint();
    (0..c.n())
        .map(|k| {
            fa.row(k)
                .iter()
                .zip(adj.column(k).iter())
                .map(|(x, y)| x * y)
                .sum()
        })
        .collect()
}

/// Factorization residuals for every `n <= max_n`, plus `P^n = I`.
pub fn factorization(config: &VerifyConfig) -> SuiteReport {
    let mut rng = rng_for(config, 2);
    let rows: Vec<Vec<f64>> = (1..=config.max_n)
        .map(|n| random_row(&mut rng, n))
        .collect();
    let outcomes = rows
        .par_iter()
        .map(|row| {
            let c = Circulant::new(row.clone()).expect("finite row");
            let n = c.n();
            let r = verify_factorization(&c).map_err(|e| e.to_string())?;
            let tol = 1e-10 * (1.0 + c.max_abs_entry()) * n as f64;
            if r.max() > tol {
                return Err(format!(
                    "{}: residuals {r:?} exceed {tol:e}",
                    describe_row(row)
                ));
            }
            let mut power = nalgebra::DMatrix::<f64>::identity(n, n);
            for _ in 0..n {
                power = right_multiply_shift(&power);
            }
            if power != nalgebra::DMatrix::identity(n, n) {
                return Err(format!("n={n}: P^n != I"));
            }
            Ok(())
        })
        .collect();
    SuiteReport::collect("factorization", outcomes)
}

/// Closed-form two-parameter spectrum against the general eigenvalues.
pub fn spectrum(config: &VerifyConfig) -> SuiteReport {
    let mut rng = rng_for(config, 3);
    let cases: Vec<_> = (0..config.cases)
        .map(|_| any_sign_case(&mut rng, config.max_n))
        .collect();
    let outcomes = cases
        .par_iter()
        .map(|c| {
            let closed = two_param_spectrum(c).sorted_magnitudes();
            let general = eigenvalues(&c.to_circulant()).sorted_magnitudes();
            let tol = 1e-10 * (c.a().abs() + c.n() as f64 * c.b()).max(1.0);
            let err = closed
                .iter()
                .zip(&general)
                .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
            if err <= tol {
                Ok(())
            } else {
                Err(format!("{}: magnitude mismatch {err:e}", describe(c)))
            }
        })
        .collect();
    SuiteReport::collect("spectrum", outcomes)
}

/// FFT and direct products against the dense matrix.
pub fn fast_matvec(config: &VerifyConfig) -> SuiteReport {
    let mut rng = rng_for(config, 4);
    let cap = config.max_n.min(64);
    let cases: Vec<(Vec<f64>, Vec<f64>)> = (0..config.cases)
        .map(|_| {
            let n = rng.gen_range(1..=cap);
            (random_row(&mut rng, n), random_row(&mut rng, n))
        })
        .collect();
    let outcomes = cases
        .par_iter()
        .map(|(row, x)| {
            let c = Circulant::new(row.clone()).expect("finite row");
            let dense = c.dense().expect("small n") * nalgebra::DVector::from_column_slice(x);
            let fast = CirculantOperator::fft(&c)
                .apply(x)
                .map_err(|e| e.to_string())?;
            let direct = matvec_direct(&c, x).map_err(|e| e.to_string())?;
            let scale = dense.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
            let ok = dense.iter().zip(&fast).zip(&direct).all(|((d, f), g)| {
                rel_close(*d, *f, 1e-10, scale) && rel_close(*d, *g, 1e-10, scale)
            });
            if ok {
                Ok(())
            } else {
                Err(format!("{} x={x:?}: product mismatch", describe_row(row)))
            }
        })
        .collect();
    SuiteReport::collect("matvec", outcomes)
}

/// `a >= 0`: the estimator reproduces `a + (n - 1) b` for every p.
pub fn nonneg_closed_form(config: &VerifyConfig) -> SuiteReport {
    let mut rng = rng_for(config, 5);
    let cases: Vec<_> = (0..config.cases)
        .map(|_| nonneg_case(&mut rng, config.max_n.min(16)))
        .collect();
    let opts = config.estimator();
    let outcomes = cases
        .par_iter()
        .map(|c| {
            let exact = c.a() + (c.n() as f64 - 1.0) * c.b();
            let m = c.to_circulant();
            for (p, tol) in THM3_EXPONENTS
                .iter()
                .map(|&p| (p, 1e-6))
                .chain([(INF_PROXY, 1e-4)])
            {
                let est = estimate_norm_p(&m, Exponent::new(p).expect("valid"), &opts)
                    .map_err(|e| e.to_string())?;
                if !rel_close(est.value, exact, tol, c.scale()) {
                    return Err(format!(
                        "{} p={p}: estimate {} vs exact {exact}",
                        describe(c),
                        est.value
                    ));
                }
            }
            Ok(())
        })
        .collect();
    SuiteReport::collect("nonneg_closed_form", outcomes)
}

/// `a < 0`, `p = 2`: estimator against the piecewise closed form, boundary
/// cases included.
pub fn two_norm_closed_form(config: &VerifyConfig, formulas: &Formulas) -> SuiteReport {
    let mut rng = rng_for(config, 6);
    let cap = config.max_n.min(32);
    let cases: Vec<_> = (0..config.cases)
        .map(|i| {
            if i % 4 == 3 {
                boundary_case(&mut rng, cap)
            } else {
                None
            }
            .unwrap_or_else(|| negative_case(&mut rng, cap))
        })
        .collect();
    let opts = config.estimator();
    let outcomes = cases
        .par_iter()
        .map(|c| {
            let want = (formulas.norm_2)(c);
            let est = estimate_norm_p(&c.to_circulant(), Exponent::TWO, &opts)
                .map_err(|e| e.to_string())?;
            if rel_close(est.value, want, 1e-7, c.scale()) {
                Ok(())
            } else {
                Err(format!(
                    "{}: estimate {} vs formula {want}",
                    describe(c),
                    est.value
                ))
            }
        })
        .collect();
    SuiteReport::collect("two_norm_closed_form", outcomes)
}

/// `a < 0`: `lower <= estimate <= min(THM4, THM5)` and `THM5 <= THM4`.
pub fn sandwich(config: &VerifyConfig, formulas: &Formulas) -> SuiteReport {
    let mut rng = rng_for(config, 7);
    let cases: Vec<_> = (0..config.cases)
        .map(|_| negative_case(&mut rng, config.max_n.min(16)))
        .collect();
    let opts = config.estimator();
    let outcomes = cases
        .par_iter()
        .map(|c| {
            let m = c.to_circulant();
            let scale = c.scale();
            for p in SANDWICH_EXPONENTS {
                let parts =
                    bound_components_with(c, p, (formulas.norm_2)(c)).map_err(|e| e.to_string())?;
                let est = estimate_norm_p(&m, Exponent::new(p).expect("valid"), &opts)
                    .map_err(|e| e.to_string())?
                    .value;
                // the lower bound is attained by a start vector; allow only rounding
                let ok = parts.lower <= est + 1e-12 * scale
                    && est <= parts.upper() + 1e-8 * scale
                    && parts.thm5 <= parts.thm4 + 1e-12;
                if !ok {
                    return Err(format!(
                        "{} p={p}: lower {} estimate {est} thm4 {} thm5 {}",
                        describe(c),
                        parts.lower,
                        parts.thm4,
                        parts.thm5
                    ));
                }
            }
            Ok(())
        })
        .collect();
    SuiteReport::collect("sandwich", outcomes)
}

/// Both proof vectors attain their ratios, and every `norm_p` witness
/// attains the reported lower bound.
pub fn witness(config: &VerifyConfig, formulas: &Formulas) -> SuiteReport {
    let mut rng = rng_for(config, 8);
    let cases: Vec<(TwoParamCirculant, f64)> = (0..config.cases)
        .map(|i| {
            let c = if i % 4 == 3 {
                boundary_case(&mut rng, config.max_n)
            } else {
                None
            }
            .unwrap_or_else(|| negative_case(&mut rng, config.max_n));
            (c, rng.gen_range(2.0..=16.0))
        })
        .collect();
    let outcomes = cases
        .par_iter()
        .map(|(c, p)| {
            let exp = Exponent::new(*p).expect("valid");
            let ratio = |x: &[f64]| -> f64 {
                let y = matvec_direct(&c.to_circulant(), x).expect("length n");
                vector_norm(&y, exp).expect("nonempty") / vector_norm(x, exp).expect("nonempty")
            };
            let (n, alpha, b) = (c.n() as f64, c.alpha(), c.b());
            let scale = c.scale();
            if c.n() >= 2 {
                let ones = vec![1.0; c.n()];
                let mut pair = vec![0.0; c.n()];
                pair[0] = -1.0;
                pair[1] = 1.0;
                let wide = (-alpha + (n - 1.0) * b).abs();
                if !rel_close(ratio(&ones), wide, 1e-10, scale)
                    || !rel_close(ratio(&pair), alpha + b, 1e-10, scale)
                {
                    return Err(format!(
                        "{} p={p}: proof vector ratio mismatch",
                        describe(c)
                    ));
                }
            }
            let r = norm_p(c, exp).map_err(|e| e.to_string())?;
            let w = r
                .witness
                .as_deref()
                .ok_or_else(|| format!("{}: missing witness", describe(c)))?;
            let claimed = (formulas.norm_2)(c);
            if !rel_close(ratio(w), r.lower(), 1e-10, scale)
                || !rel_close(r.lower(), claimed, 1e-10, scale)
            {
                return Err(format!(
                    "{} p={p}: witness ratio {} vs lower {} vs formula {claimed}",
                    describe(c),
                    ratio(w),
                    r.lower()
                ));
            }
            Ok(())
        })
        .collect();
    SuiteReport::collect("witness", outcomes)
}

/// `||A||_p = ||A||_q` on random `A(n, a, b)`, both signs of `a`.
pub fn duality(config: &VerifyConfig) -> SuiteReport {
    let mut rng = rng_for(config, 9);
    let cases: Vec<_> = (0..config.cases)
        .map(|_| any_sign_case(&mut rng, config.max_n.min(16)))
        .collect();
    let opts = config.estimator();
    let outcomes = cases
        .par_iter()
        .map(|c| {
            for p in DUALITY_EXPONENTS {
                let r = check_duality(&c.to_circulant(), p, &opts).map_err(|e| e.to_string())?;
                if !r.passed {
                    return Err(format!(
                        "{} p={p}: est(p) {} est(q) {}",
                        describe(c),
                        r.estimate_p,
                        r.estimate_q
                    ));
                }
            }
            Ok(())
        })
        .collect();
    SuiteReport::collect("duality", outcomes)
}

/// Estimates are non-decreasing in `p >= 2`.
pub fn monotonicity(config: &VerifyConfig) -> SuiteReport {
    let mut rng = rng_for(config, 10);
    let cases: Vec<_> = (0..config.cases)
        .map(|_| any_sign_case(&mut rng, config.max_n.min(16)))
        .collect();
    let opts = config.estimator();
    let outcomes = cases
        .par_iter()
        .map(|c| {
            let r = check_monotonicity(&c.to_circulant(), &MONOTONICITY_GRID, &opts)
                .map_err(|e| e.to_string())?;
            if r.passed {
                Ok(())
            } else {
                Err(format!(
                    "{}: estimates {:?} decrease at {:?}",
                    describe(c),
                    r.estimates,
                    r.violations
                ))
            }
        })
        .collect();
    SuiteReport::collect("monotonicity", outcomes)
}

/// Exhaustive search against the estimator on a fixed grid, `n <= 3`.
pub fn brute_force(config: &VerifyConfig) -> SuiteReport {
    let mut cases = Vec::new();
    for n in 1..=config.max_n.min(3) {
        for a in BRUTE_A {
            for b in BRUTE_B {
                for p in BRUTE_P {
                    cases.push((tp(n, a, b), p));
                }
            }
        }
    }
    let opts = config.estimator();
    let outcomes = cases
        .par_iter()
        .map(|(c, p)| {
            let m = c.to_circulant();
            let exp = Exponent::new(*p).expect("valid");
            let brute = brute_force_norm_p(&m, exp, BRUTE_RESOLUTION).map_err(|e| e.to_string())?;
            let est = estimate_norm_p(&m, exp, &opts)
                .map_err(|e| e.to_string())?
                .value;
            if rel_close(brute, est, 1e-3, c.scale()) {
                Ok(())
            } else {
                Err(format!(
                    "{} p={p}: brute force {brute} vs estimate {est}",
                    describe(c)
                ))
            }
        })
        .collect();
    SuiteReport::collect("brute_force", outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{classify_regime, Regime};

    fn small() -> VerifyConfig {
        VerifyConfig {
            max_n: 8,
            seed: 3,
            cases: 12,
        }
    }

    #[test]
    fn small_run_passes() {
        let report = run(&small()).unwrap();
        for s in &report.suites {
            assert!(s.ok(), "{}: {:?}", s.name, s.failures);
            assert!(s.total > 0);
        }
    }

    #[test]
    fn rejects_bad_config() {
        for cfg in [
            VerifyConfig {
                max_n: 0,
                seed: 0,
                cases: 1,
            },
            VerifyConfig {
                max_n: 257,
                seed: 0,
                cases: 1,
            },
            VerifyConfig {
                max_n: 4,
                seed: 0,
                cases: 0,
            },
        ] {
            assert!(run(&cfg).is_err());
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(run(&small()).unwrap(), run(&small()).unwrap());
    }

    // Negative control: swapping the two negative-diagonal branches must be caught.
    fn flipped(c: &TwoParamCirculant) -> f64 {
        let n = c.n() as f64;
        if !c.has_negative_diagonal() || c.n() == 1 {
            return lambda_max_abs(c).value;
        }
        match classify_regime(c) {
            Regime::Narrow => -c.alpha() + (n - 1.0) * c.b(),
            _ => c.alpha() + c.b(),
        }
    }

    #[test]
    fn flipped_branch_is_caught() {
        let cfg = VerifyConfig {
            max_n: 16,
            seed: 0,
            cases: 40,
        };
        let report = run_with(&cfg, &Formulas { norm_2: flipped }).unwrap();
        assert!(!report.all_passed());
        let by_name = |n: &str| report.suites.iter().find(|s| s.name == n).unwrap().clone();
        assert!(!by_name("sandwich").ok());
        assert!(!by_name("two_norm_closed_form").ok());
        assert!(by_name("factorization").ok());
    }
}

#[cfg(test)]
mod stress {
    use super::*;

    // ~80 s; run with `cargo test -p circnorm-core -- --ignored`
    #[test]
    #[ignore]
    fn estimator_suites_hold_across_seeds() {
        for seed in 0..20 {
            let cfg = VerifyConfig {
                max_n: 16,
                seed,
                cases: 200,
            };
            for s in [
                duality(&cfg),
                monotonicity(&cfg),
                sandwich(&cfg, &Formulas::default()),
            ] {
                assert!(s.ok(), "seed {seed} {}: {:?}", s.name, s.failures);
            }
        }
    }
}

//! Numerical oracles for induced p-norms, independent of the closed forms.
//!
//! [`estimate_norm_p`] runs a dual power iteration from several starts and
//! keeps the best feasible vector, so its value is always a lower bound on
//! the true norm. [`brute_force_norm_p`] searches the unit sphere directly
//! for `n <= 4`.

mod brute;
mod checks;

pub use brute::brute_force_norm_p;
pub use checks::{check_duality, check_monotonicity, DualityReport, MonotonicityReport};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circulant::{matvec_direct, Circulant, CirculantOperator};
use crate::error::{Error, Result};
use crate::norms::{duality_map, norm_unchecked, normalize, Exponent};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorOptions {
    /// Random starts, in addition to the two deterministic ones.
    pub restarts: usize,
    pub max_iterations: usize,
    /// Stop once the relative change in `||A x||_p` drops below this.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for EstimatorOptions {
    fn default() -> Self {
        Self {
            restarts: 16,
            max_iterations: 10_000,
            tolerance: 1e-12,
            seed: 0,
        }
    }
}

impl EstimatorOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidOptions("restarts must be at least 1"));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidOptions("max_iterations must be at least 1"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidOptions("tolerance must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    /// `||A w||_p` for the returned witness `w`.
    pub value: f64,
    /// Unit p-norm vector attaining `value`.
    pub witness: Vec<f64>,
    /// Iterations taken by the winning start.
    pub iterations_used: usize,
    /// Whether the winning start met the tolerance.
    pub converged: bool,
    /// Number of starts run, deterministic ones included.
    pub restarts_run: usize,
}

struct Run {
    value: f64,
    x: Vec<f64>,
    iterations: usize,
    converged: bool,
}

/// Estimates `||A||_p` from below.
///
/// `p = 1` and `p = inf` are read off exactly (column and row absolute
/// sums). Otherwise the iteration `x <- J_q(A^T J_p(A x))` is run from the
/// all-ones vector, from `[-1, 1, 0, ..., 0]`, from `e_0` and from
/// `opts.restarts` random starts, and the best value wins. Results depend only on the
/// inputs and `opts.seed`.
pub fn estimate_norm_p(
    c: &Circulant,
    p: Exponent,
    opts: &EstimatorOptions,
) -> Result<EstimateReport> {
    opts.validate()?;
    let n = c.n();
    if p.is_one() {
        let mut e = vec![0.0; n];
        e[0] = 1.0;
        return Ok(exact_report(c, e, 1.0));
    }
    if p.is_infinite() {
        let signs = c
            .first_row()
            .iter()
            .map(|&v| if v < 0.0 { -1.0 } else { 1.0 })
            .collect();
        return Ok(exact_report(c, signs, f64::INFINITY));
    }

    let pv = p.value();
    let qv = p.conjugate().value();
    let op = CirculantOperator::new(c);
    let mut starts: Vec<Vec<f64>> = vec![vec![1.0; n]];
    if n >= 2 {
        let mut pair = vec![0.0; n];
        pair[0] = -1.0;
        pair[1] = 1.0;
        starts.push(pair);
        let mut unit = vec![0.0; n];
        unit[0] = 1.0;
        starts.push(unit);
    }
    starts.extend((0..opts.restarts).map(|i| random_start(n, pv < 2.0, opts.seed, i as u64)));
    let total = starts.len();

    let runs: Vec<Run> = starts
        .into_par_iter()
        .map(|x0| power_iteration(&op, x0, pv, qv, opts))
        .collect();
    // max value, ties to the lowest start index
    let (_, best) = runs
        .into_iter()
        .enumerate()
        .reduce(|acc, cur| if cur.1.value > acc.1.value { cur } else { acc })
        .expect("at least one start");

    let mut witness = best.x;
    normalize(&mut witness, pv);
    let value = norm_unchecked(&matvec_direct(c, &witness)?, pv);
    Ok(EstimateReport {
        value,
        witness,
        iterations_used: best.iterations,
        converged: best.converged,
        restarts_run: total,
    })
}

fn exact_report(c: &Circulant, witness: Vec<f64>, p: f64) -> EstimateReport {
    let y = matvec_direct(c, &witness).expect("witness has length n");
    EstimateReport {
        value: norm_unchecked(&y, p),
        witness,
        iterations_used: 0,
        converged: true,
        restarts_run: 0,
    }
}

/// Random start from a stream keyed by `(seed, index)`.
///
/// Magnitudes are uniform on `(0, 1]`. A fraction `f ~ U(0, 1)` drawn per
/// start sets either the probability of a negative sign (`p >= 2`, where
/// maximizers are sign patterns) or the probability that an entry is kept
/// at all (`p < 2`, where maximizers are a few spikes). The law is
/// symmetric under `x -> -x` and covers every sign count and support size.
fn random_start(n: usize, sparse: bool, seed: u64, index: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let f: f64 = rng.gen();
    let mut x: Vec<f64> = (0..n)
        .map(|_| {
            let mag = 1.0 - rng.gen::<f64>();
            let hit = rng.gen::<f64>() < f;
            match (sparse, hit) {
                (true, true) => mag * if rng.gen::<bool>() { 1.0 } else { -1.0 },
                (true, false) => 0.0,
                (false, true) => -mag,
                (false, false) => mag,
            }
        })
        .collect();
    if x.iter().all(|&v| v == 0.0) {
        x[rng.gen_range(0..n)] = 1.0;
    }
    x
}

fn power_iteration(
    op: &CirculantOperator,
    mut x: Vec<f64>,
    p: f64,
    q: f64,
    opts: &EstimatorOptions,
) -> Run {
    let n = op.n();
    if !normalize(&mut x, p) {
        x = vec![1.0; n];
        normalize(&mut x, p);
    }
    let mut y = vec![0.0; n];
    let mut z = vec![0.0; n];
    op.apply_into(&x, &mut y).expect("length n");
    let mut value = norm_unchecked(&y, p);
    let mut best = Run {
        value,
        x: x.clone(),
        iterations: 0,
        converged: false,
    };

    for it in 1..=opts.max_iterations {
        best.iterations = it;
        let dual = duality_map(&y, p);
        op.apply_transpose_into(&dual, &mut z).expect("length n");
        let mut next = duality_map(&z, q);
        if !normalize(&mut next, p) {
            // A^T J(Ax) = 0 only if A x = 0 or x is already stationary
            best.converged = true;
            break;
        }
        op.apply_into(&next, &mut y).expect("length n");
        let next_value = norm_unchecked(&y, p);
        if next_value > best.value {
            best.value = next_value;
            best.x.copy_from_slice(&next);
        }
        let change = (next_value - value).abs();
        if change <= opts.tolerance * next_value.max(f64::MIN_POSITIVE) {
            best.converged = true;
            break;
        }
        value = next_value;
    }
    best
}

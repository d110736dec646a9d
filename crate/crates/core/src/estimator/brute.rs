use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circulant::{matvec_direct, Circulant};
use crate::error::{Error, Result};
use crate::norms::{norm_unchecked, Exponent};

const MAX_BRUTE_N: usize = 4;
const REFINE_STARTS: usize = 8;
const REFINE_MAX_EVALS: usize = 20_000;
const REFINE_MIN_STEP: f64 = 1e-10;

/// Best `||A x||_p / ||x||_p` found by exhaustive search, for `n <= 4`.
///
/// `n = 2` scans `resolution` angles of the half circle and `n = 3` a
/// `sqrt(resolution)`-per-axis polar grid of the sphere; `n = 4` draws
/// `resolution` random directions. The best few candidates are then
/// polished by a compass search. Every value returned is attained by a
/// concrete vector, so it never exceeds the true norm.
pub fn brute_force_norm_p(c: &Circulant, p: Exponent, resolution: usize) -> Result<f64> {
    let n = c.n();
    if n > MAX_BRUTE_N {
        return Err(Error::BruteForceTooLarge(n));
    }
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    let p = p.value();
    let ratio = |x: &[f64]| -> f64 {
        let d = norm_unchecked(x, p);
        if d == 0.0 {
            return 0.0;
        }
        norm_unchecked(&matvec_direct(c, x).expect("length n"), p) / d
    };
    if n == 1 {
        return Ok(ratio(&[1.0]));
    }

    let (candidates, spacing) = match n {
        2 => {
            let step = PI / resolution as f64;
            let pts = (0..resolution).map(|i| {
                let t = i as f64 * step;
                vec![t.cos(), t.sin()]
            });
            (pts.collect::<Vec<_>>(), step)
        }
        3 => {
            let g = (resolution as f64).sqrt().ceil().max(2.0) as usize;
            let (dt, dp) = (PI / (g - 1) as f64, 2.0 * PI / g as f64);
            let mut pts = Vec::with_capacity(g * g);
            for i in 0..g {
                let theta = i as f64 * dt;
                for j in 0..g {
                    let phi = j as f64 * dp;
                    pts.push(vec![
                        theta.sin() * phi.cos(),
                        theta.sin() * phi.sin(),
                        theta.cos(),
                    ]);
                }
            }
            (pts, dt)
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let pts = (0..resolution)
                .map(|_| {
                    (0..n)
                        .map(|_| rng.gen_range(-1.0..=1.0))
                        .collect::<Vec<f64>>()
                })
                .collect();
            (pts, 0.25)
        }
    };

    let mut scored: Vec<(f64, Vec<f64>)> = candidates.into_iter().map(|x| (ratio(&x), x)).collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    let best = scored
        .into_iter()
        .take(REFINE_STARTS)
        .map(|(v, x)| compass_search(&ratio, x, v, spacing))
        .fold(0.0_f64, f64::max);
    Ok(best)
}

/// Coordinate pattern search that only ever accepts improvements.
fn compass_search(f: &impl Fn(&[f64]) -> f64, mut x: Vec<f64>, mut fx: f64, mut step: f64) -> f64 {
    let n = x.len();
    let mut evals = 0;
    while step > REFINE_MIN_STEP && evals < REFINE_MAX_EVALS {
        let mut improved = false;
        for i in 0..n {
            for s in [1.0, -1.0] {
                let old = x[i];
                x[i] = old + s * step;
                let v = f(&x);
                evals += 1;
                if v > fx {
                    fx = v;
                    improved = true;
                } else {
                    x[i] = old;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    fx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::make_two_param;

    fn e(p: f64) -> Exponent {
        Exponent::new(p).unwrap()
    }

    #[test]
    fn one_by_one() {
        let c = Circulant::new(vec![-2.0]).unwrap();
        for p in [1.0, 3.0, f64::INFINITY] {
            assert_eq!(brute_force_norm_p(&c, e(p), 7).unwrap(), 2.0);
        }
    }

    #[test]
    fn finds_two_by_two_eigenvector() {
        let c = make_two_param(2, -1.0, 1.0).unwrap().to_circulant();
        let v = brute_force_norm_p(&c, e(3.0), 10_000).unwrap();
        assert!((v - 2.0).abs() < 1e-4, "{v}");
        assert!(v <= 2.0 + 1e-12);
    }

    #[test]
    fn three_by_three_in_sandwich() {
        let c = make_two_param(3, -2.0, 1.0).unwrap().to_circulant();
        let v = brute_force_norm_p(&c, e(4.0), 10_000).unwrap();
        assert!(v >= 3.0 - 1e-9 && v <= 12f64.sqrt() + 1e-6, "{v}");
    }

    #[test]
    fn four_by_four_sampling() {
        let c = make_two_param(4, 1.0, 0.5).unwrap().to_circulant();
        let v = brute_force_norm_p(&c, e(3.0), 2_000).unwrap();
        assert!((v - 2.5).abs() < 1e-6, "{v}");
    }

    #[test]
    fn rejects_large_n() {
        let c = Circulant::identity(5).unwrap();
        assert_eq!(
            brute_force_norm_p(&c, e(2.0), 10),
            Err(Error::BruteForceTooLarge(5))
        );
    }
}

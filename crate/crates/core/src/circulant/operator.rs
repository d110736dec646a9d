use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::spectrum::eigenvalues_fft;
use super::Circulant;
use crate::error::{Error, Result};

/// Below this size the direct product beats two FFTs.
const DIRECT_MATVEC_LIMIT: usize = 32;

/// `A x` by direct `O(n^2)` summation over the first row.
pub fn matvec_direct(c: &Circulant, x: &[f64]) -> Result<Vec<f64>> {
    check_len(c.n(), x.len())?;
    let mut out = vec![0.0; c.n()];
    direct_into(c.first_row(), x, &mut out);
    Ok(out)
}

/// `A x` via `F* (Lambda (F x))` in `O(n log n)` for every `n`.
pub fn matvec(c: &Circulant, x: &[f64]) -> Result<Vec<f64>> {
    CirculantOperator::fft(c).apply(x)
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

// (A x)_r = sum_m c[m] x[(r + m) mod n]
fn direct_into(row: &[f64], x: &[f64], out: &mut [f64]) {
    let n = row.len();
    for (r, o) in out.iter_mut().enumerate() {
        let (head, tail) = x.split_at(r);
        let s1: f64 = row[..n - r].iter().zip(tail).map(|(c, v)| c * v).sum();
        let s2: f64 = row[n - r..].iter().zip(head).map(|(c, v)| c * v).sum();
        *o = s1 + s2;
    }
}

/// A circulant prepared for repeated products with itself and its transpose.
#[derive(Clone)]
pub struct CirculantOperator {
    matrix: Circulant,
    transpose: Circulant,
    fast: Option<FastPath>,
}

#[derive(Clone)]
struct FastPath {
    spectrum: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for CirculantOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CirculantOperator")
            .field("n", &self.matrix.n())
            .field("fast", &self.fast.is_some())
            .finish()
    }
}

impl CirculantOperator {
    /// Picks the direct path for small `n` and the FFT path otherwise.
    pub fn new(c: &Circulant) -> Self {
        if c.n() <= DIRECT_MATVEC_LIMIT {
            Self::direct(c)
        } else {
            Self::fft(c)
        }
    }

    pub fn direct(c: &Circulant) -> Self {
        Self {
            matrix: c.clone(),
            transpose: c.transpose(),
            fast: None,
        }
    }

    pub fn fft(c: &Circulant) -> Self {
        let n = c.n();
        let mut planner = FftPlanner::new();
        let fast = FastPath {
            spectrum: eigenvalues_fft(c).eigenvalues().to_vec(),
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        };
        Self {
            matrix: c.clone(),
            transpose: c.transpose(),
            fast: Some(fast),
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &Circulant {
        &self.matrix
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.n()];
        self.apply_into(x, &mut out)?;
        Ok(out)
    }

    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        self.product(x, out, false)
    }

    /// `A^T x`.
    pub fn apply_transpose_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        self.product(x, out, true)
    }

    fn product(&self, x: &[f64], out: &mut [f64], transposed: bool) -> Result<()> {
        let n = self.n();
        check_len(n, x.len())?;
        check_len(n, out.len())?;
        match &self.fast {
            None => {
                let m = if transposed {
                    &self.transpose
                } else {
                    &self.matrix
                };
                direct_into(m.first_row(), x, out);
            }
            Some(fast) => {
                let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                fast.forward.process(&mut buf);
                for (z, l) in buf.iter_mut().zip(&fast.spectrum) {
                    // A^T = F* conj(Lambda) F for real A
                    *z *= if transposed { l.conj() } else { *l };
                }
                fast.inverse.process(&mut buf);
                let scale = 1.0 / n as f64;
                for (o, z) in out.iter_mut().zip(&buf) {
                    *o = z.re * scale;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::make_two_param;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let c = make_two_param(3, 1.0, 1.0).unwrap().to_circulant();
        assert_eq!(
            matvec_direct(&c, &[1.0, 1.0, 1.0]).unwrap(),
            vec![3.0, 3.0, 3.0]
        );
        let c = make_two_param(3, -2.0, 1.0).unwrap().to_circulant();
        assert_eq!(
            matvec_direct(&c, &[-1.0, 1.0, 0.0]).unwrap(),
            vec![3.0, -3.0, 0.0]
        );
        let y = matvec(&c, &[-1.0, 1.0, 0.0]).unwrap();
        for (u, v) in y.iter().zip([3.0, -3.0, 0.0]) {
            assert!((u - v).abs() < 1e-12);
        }
        let id = Circulant::identity(3).unwrap();
        let x = [0.5, -2.0, 7.25];
        assert_eq!(matvec_direct(&id, &x).unwrap(), x.to_vec());
    }

    #[test]
    fn dimension_mismatch() {
        let c = Circulant::identity(3).unwrap();
        assert_eq!(
            matvec(&c, &[1.0]),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 1
            })
        );
        assert!(matvec_direct(&c, &[1.0, 2.0, 3.0, 4.0]).is_err());
    }

    fn dense_product(c: &Circulant, x: &[f64], transposed: bool) -> Vec<f64> {
        let mut d = c.dense().unwrap();
        if transposed {
            d = d.transpose();
        }
        (d * nalgebra::DVector::from_column_slice(x))
            .iter()
            .copied()
            .collect()
    }

    proptest! {
        #[test]
        fn both_paths_match_dense(
            (row, x) in (1usize..=64).prop_flat_map(|n| (
                prop::collection::vec(-10.0f64..10.0, n),
                prop::collection::vec(-10.0f64..10.0, n),
            )),
            transposed in any::<bool>(),
        ) {
            let c = Circulant::new(row).unwrap();
            let want = dense_product(&c, &x, transposed);
            let scale = want.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
            for op in [CirculantOperator::direct(&c), CirculantOperator::fft(&c)] {
                let mut got = vec![0.0; c.n()];
                if transposed {
                    op.apply_transpose_into(&x, &mut got).unwrap();
                } else {
                    op.apply_into(&x, &mut got).unwrap();
                }
                for (g, w) in got.iter().zip(&want) {
                    prop_assert!((g - w).abs() <= 1e-10 * scale);
                }
            }
        }
    }
}

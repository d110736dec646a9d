use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::spectrum::eigenvalues;
use super::{right_multiply_shift, shift_matrix, Circulant, DENSE_LIMIT};
use crate::error::{Error, Result};

/// `w^m` with `w = exp(2 pi i / n)`; the exponent is reduced mod `n` first
/// so large `j k` products keep full accuracy.
#[inline]
pub(crate) fn root_of_unity(n: usize, m: usize) -> Complex64 {
    let r = m % n;
    Complex64::from_polar(1.0, TAU * r as f64 / n as f64)
}

/// The unitary DFT matrix `F`, `F[j][k] = w^{-jk} / sqrt(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryFactor {
    n: usize,
    entries: DMatrix<Complex64>,
}

impl UnitaryFactor {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries of `F`.
    pub fn forward(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Entries of `F*`, `F*[j][k] = w^{jk} / sqrt(n)`.
    pub fn adjoint(&self) -> DMatrix<Complex64> {
        self.entries.adjoint()
    }

    /// `max |F F* - I|` over all entries.
    pub fn unitarity_residual(&self) -> f64 {
        let prod = &self.entries * self.entries.adjoint();
        let eye = DMatrix::<Complex64>::identity(self.n, self.n);
        max_abs_diff(&prod, &eye)
    }

    /// `F x` for a real vector.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<Complex64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|k| (0..self.n).map(|j| self.entries[(k, j)] * x[j]).sum())
            .collect())
    }
}

pub fn dft_matrix(n: usize) -> Result<UnitaryFactor> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: DENSE_LIMIT,
        });
    }
    let s = 1.0 / (n as f64).sqrt();
    let entries = DMatrix::from_fn(n, n, |j, k| root_of_unity(n, (n - (j * k) % n) % n) * s);
    Ok(UnitaryFactor { n, entries })
}

/// Max-entry residuals of the three factorization identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizationResiduals {
    /// `|P - F* Omega F|_max`
    pub shift: f64,
    /// `|A - sum_j c_j P^j|_max`
    pub shift_sum: f64,
    /// `|A - F* Lambda F|_max`
    pub spectral: f64,
}

impl FactorizationResiduals {
    pub fn max(&self) -> f64 {
        self.shift.max(self.shift_sum).max(self.spectral)
    }
}

pub fn verify_factorization(c: &Circulant) -> Result<FactorizationResiduals> {
    let n = c.n();
    let a = c.dense()?;
    let f = dft_matrix(n)?;
    let fwd = f.forward();
    let adj = f.adjoint();

    // F* D F for a diagonal D: scale the columns of F* then multiply.
    let conjugate_diag = |d: &[Complex64]| -> DMatrix<Complex64> {
        let mut left = adj.clone();
        for (k, mut col) in left.column_iter_mut().enumerate() {
            col *= d[k];
        }
        left * fwd
    };

    let omega: Vec<Complex64> = (0..n).map(|k| root_of_unity(n, k)).collect();
    let p = shift_matrix(n)?;
    let shift = max_abs_diff(&conjugate_diag(&omega), &p.map(|v| Complex64::new(v, 0.0)));

    let mut power = DMatrix::<f64>::identity(n, n);
    let mut sum = DMatrix::<f64>::zeros(n, n);
    for &coef in c.first_row() {
        sum += &power * coef;
        power = right_multiply_shift(&power);
    }
    let shift_sum = (&a - &sum).amax();

    let lambda = eigenvalues(c);
    let spectral = max_abs_diff(
        &conjugate_diag(lambda.eigenvalues()),
        &a.map(|v| Complex64::new(v, 0.0)),
    );

    Ok(FactorizationResiduals {
        shift,
        shift_sum,
        spectral,
    })
}

pub(crate) fn max_abs_diff(x: &DMatrix<Complex64>, y: &DMatrix<Complex64>) -> f64 {
    x.iter()
        .zip(y.iter())
        .fold(0.0_f64, |m, (u, v)| m.max((u - v).norm()))
}

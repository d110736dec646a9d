//! Circulant matrices, their DFT diagonalization and fast products.
//!
//! A circulant is stored by its first row `c`; row `r` of the dense matrix
//! is `c` cyclically shifted right by `r`, so entry `(r, j)` is
//! `c[(j - r) mod n]`.

mod dft;
mod operator;
mod spectrum;

pub use dft::{dft_matrix, verify_factorization, FactorizationResiduals, UnitaryFactor};
pub use operator::{matvec, matvec_direct, CirculantOperator};
pub use spectrum::{
    eigenvalues, eigenvalues_direct, eigenvalues_fft, two_param_spectrum, Spectrum,
};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest dimension for which dense `n x n` matrices are materialized.
pub const DENSE_LIMIT: usize = 4096;

/// General real circulant matrix, represented by its first row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circulant {
    first_row: Vec<f64>,
}

impl Circulant {
    pub fn new(first_row: Vec<f64>) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if first_row.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("first row"));
        }
        Ok(Self { first_row })
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut row = vec![0.0; n];
        row[0] = 1.0;
        Ok(Self { first_row: row })
    }

    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    /// Entry `(r, j)` of the dense matrix.
    #[inline]
    pub fn entry(&self, r: usize, j: usize) -> f64 {
        let n = self.n();
        self.first_row[(j + n - r % n) % n]
    }

    /// The transpose, itself circulant with first row `c[(n - m) mod n]`.
    pub fn transpose(&self) -> Self {
        let n = self.n();
        let first_row = (0..n).map(|m| self.first_row[(n - m) % n]).collect();
        Self { first_row }
    }

    /// True when the matrix equals its transpose exactly.
    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (1..n).all(|m| self.first_row[m] == self.first_row[n - m])
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.first_row.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Dense expansion; refuses `n > DENSE_LIMIT`.
    pub fn dense(&self) -> Result<DMatrix<f64>> {
        let n = self.n();
        if n > DENSE_LIMIT {
            return Err(Error::TooLarge {
                n,
                limit: DENSE_LIMIT,
            });
        }
        Ok(DMatrix::from_fn(n, n, |r, j| self.entry(r, j)))
    }
}

/// The family `A(n, a, b)`: diagonal `a` (any sign), off-diagonal `b >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoParamCirculant {
    n: usize,
    a: f64,
    b: f64,
}

impl TwoParamCirculant {
    pub fn new(n: usize, a: f64, b: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if !a.is_finite() {
            return Err(Error::NonFinite("a"));
        }
        if !b.is_finite() {
            return Err(Error::NonFinite("b"));
        }
        if b < 0.0 {
            return Err(Error::NegativeOffDiagonal(b));
        }
        Ok(Self { n, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `|a|`, the non-negative parameter of the `A(n, -alpha, b)` form.
    pub fn alpha(&self) -> f64 {
        self.a.abs()
    }

    pub fn has_negative_diagonal(&self) -> bool {
        self.a < 0.0
    }

    /// Comparison scale used for relative tolerances: `1 + |a| + n b`.
    pub fn scale(&self) -> f64 {
        1.0 + self.a.abs() + self.n as f64 * self.b
    }

    pub fn to_circulant(&self) -> Circulant {
        let mut first_row = vec![self.b; self.n];
        first_row[0] = self.a;
        Circulant { first_row }
    }
}

impl From<TwoParamCirculant> for Circulant {
    fn from(c: TwoParamCirculant) -> Self {
        c.to_circulant()
    }
}

/// Shorthand for [`TwoParamCirculant::new`].
pub fn make_two_param(n: usize, a: f64, b: f64) -> Result<TwoParamCirculant> {
    TwoParamCirculant::new(n, a, b)
}

/// Cyclic shift `P`: ones on the superdiagonal and at `(n - 1, 0)`.
pub fn shift_matrix(n: usize) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: DENSE_LIMIT,
        });
    }
    Ok(DMatrix::from_fn(n, n, |r, j| {
        if j == (r + 1) % n {
            1.0
        } else {
            0.0
        }
    }))
}

/// `m * P` for the cyclic shift `P`, i.e. column `j` of the result is
/// column `j - 1` of `m`.
pub fn right_multiply_shift(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.ncols();
    DMatrix::from_fn(m.nrows(), n, |r, j| m[(r, (j + n - 1) % n)])
}

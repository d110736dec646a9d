//! Induced p-norms, spectra and certified bounds for circulant matrices.
//!
//! The crate is centred on the two-parameter family `A(n, a, b)` (diagonal
//! `a`, every off-diagonal entry `b >= 0`) but the representation, spectrum
//! and estimator layers work for any real circulant.
//!
//! * [`circulant`] holds the matrix types, DFT factors, the fast matvec and
//!   the factorization residual checks.
//! * [`norms`] holds the closed forms, bounds and witness vectors.
//! * [`estimator`] holds the numerical oracles used to cross-check them.
//! * [`verify`] and [`sweep`] drive the checks end to end.

pub mod circulant;
pub mod error;
pub mod estimator;
pub mod format;
pub mod norms;
pub mod sweep;
pub mod verify;

pub use circulant::{Circulant, CirculantOperator, Spectrum, TwoParamCirculant, UnitaryFactor};
pub use error::{Error, Result};
pub use estimator::{EstimateReport, EstimatorOptions};
pub use norms::{Certificate, Exponent, NormResult, NormValue, Regime};

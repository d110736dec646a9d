use serde::Serialize;

use super::{estimate_norm_p, EstimatorOptions};
use crate::circulant::Circulant;
use crate::error::{Error, Result};
use crate::norms::Exponent;

/// Allowed decrease between consecutive estimates, times the matrix scale.
pub const MONOTONICITY_SLACK: f64 = 5e-7;
/// Allowed `|est(p) - est(q)|`, times the matrix scale.
pub const DUALITY_TOLERANCE: f64 = 1e-5;

fn scale(c: &Circulant) -> f64 {
    1.0 + c.first_row().iter().map(|v| v.abs()).sum::<f64>()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub passed: bool,
    /// `(p, estimate)` in grid order.
    pub estimates: Vec<(f64, f64)>,
    /// Indices `i` where `est(p_{i+1}) < est(p_i) - slack`.
    pub violations: Vec<usize>,
    pub slack: f64,
}

/// Checks that estimates of `||A||_p` do not decrease along `p_grid`.
pub fn check_monotonicity(
    c: &Circulant,
    p_grid: &[f64],
    opts: &EstimatorOptions,
) -> Result<MonotonicityReport> {
    if p_grid.iter().any(|&p| p.is_nan() || p < 2.0) {
        return Err(Error::InvalidArgument(
            "monotonicity grid must satisfy p >= 2".into(),
        ));
    }
    if p_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument(
            "monotonicity grid must be ascending".into(),
        ));
    }
    let slack = MONOTONICITY_SLACK * scale(c);
    let estimates = p_grid
        .iter()
        .map(|&p| Ok((p, estimate_norm_p(c, Exponent::new(p)?, opts)?.value)))
        .collect::<Result<Vec<_>>>()?;
    let violations: Vec<usize> = estimates
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1].1 < w[0].1 - slack)
        .map(|(i, _)| i)
        .collect();
    Ok(MonotonicityReport {
        passed: violations.is_empty(),
        estimates,
        violations,
        slack,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityReport {
    pub passed: bool,
    pub p: f64,
    pub q: f64,
    pub estimate_p: f64,
    pub estimate_q: f64,
    pub tolerance: f64,
}

/// Checks `||A||_p = ||A||_q` numerically for a symmetric circulant.
pub fn check_duality(c: &Circulant, p: f64, opts: &EstimatorOptions) -> Result<DualityReport> {
    if !c.is_symmetric() {
        return Err(Error::InvalidArgument(
            "duality check needs a symmetric circulant".into(),
        ));
    }
    if !(p > 2.0 && p.is_finite()) {
        return Err(Error::ExponentOutOfRange(p, "(2, inf)"));
    }
    let pe = Exponent::new(p)?;
    let qe = pe.conjugate();
    let estimate_p = estimate_norm_p(c, pe, opts)?.value;
    let estimate_q = estimate_norm_p(c, qe, opts)?.value;
    let tolerance = DUALITY_TOLERANCE * scale(c);
    Ok(DualityReport {
        passed: (estimate_p - estimate_q).abs() <= tolerance,
        p,
        q: qe.value(),
        estimate_p,
        estimate_q,
        tolerance,
    })
}

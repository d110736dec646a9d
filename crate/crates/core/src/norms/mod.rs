//! Closed-form induced p-norms of `A(n, a, b)` and certified intervals
//! where no closed form is known.

mod bounds;
mod closed_form;
mod exponent;
mod vector;

pub use bounds::{
    bound_components, bound_components_with, bounds_p, witness_vector, BoundComponents,
};
pub use closed_form::{
    classify_regime, exact_norm_2, exact_norm_p_nonneg, general_nonneg_circulant_norm,
    lambda_max_abs, norm_1_inf, LambdaMax, LemmaBranch,
};
pub use exponent::Exponent;
pub use vector::vector_norm;
pub(crate) use vector::{duality_map, norm_unchecked, normalize};

use std::fmt;

use serde::Serialize;

use crate::circulant::TwoParamCirculant;
use crate::error::Result;

/// Which branch of the negative-diagonal case applies, decided by
/// comparing `2|a|` with `(n - 2) b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    /// `2|a| < (n - 2) b`: the all-ones direction dominates.
    Wide,
    /// `2|a| > (n - 2) b`.
    Narrow,
    /// `2|a| == (n - 2) b` exactly; both branch formulas agree.
    Boundary,
}

impl Regime {
    /// Boundary cases carry the wide-branch label.
    pub fn label(self) -> Regime {
        match self {
            Regime::Boundary => Regime::Wide,
            r => r,
        }
    }
}

/// The statement that certifies a value or bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Certificate {
    /// Row/column sums, and the `1 x 1` case.
    #[serde(rename = "INSPECTION")]
    Inspection,
    #[serde(rename = "LEMMA1_CASE1")]
    Lemma1Case1,
    #[serde(rename = "LEMMA1_CASE2_WIDE")]
    Lemma1Case2Wide,
    #[serde(rename = "LEMMA1_CASE2_NARROW")]
    Lemma1Case2Narrow,
    #[serde(rename = "THM2_CASE1")]
    Thm2Case1,
    #[serde(rename = "THM2_CASE2")]
    Thm2Case2,
    #[serde(rename = "THM3")]
    Thm3,
    /// `n^{1/2 - 1/p} ||A||_2` upper bound and the witness lower bounds.
    #[serde(rename = "THM4")]
    Thm4,
    /// `||A||_2^{2/p} ||A||_inf^{1 - 2/p}` upper bound.
    #[serde(rename = "THM5")]
    Thm5,
    /// Row sum of a circulant with non-negative entries.
    #[serde(rename = "REMARK_NONNEG")]
    RemarkNonneg,
}

impl Certificate {
    pub fn name(self) -> &'static str {
        match self {
            Certificate::Inspection => "INSPECTION",
            Certificate::Lemma1Case1 => "LEMMA1_CASE1",
            Certificate::Lemma1Case2Wide => "LEMMA1_CASE2_WIDE",
            Certificate::Lemma1Case2Narrow => "LEMMA1_CASE2_NARROW",
            Certificate::Thm2Case1 => "THM2_CASE1",
            Certificate::Thm2Case2 => "THM2_CASE2",
            Certificate::Thm3 => "THM3",
            Certificate::Thm4 => "THM4",
            Certificate::Thm5 => "THM5",
            Certificate::RemarkNonneg => "REMARK_NONNEG",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NormValue {
    Exact { value: f64 },
    Interval { lower: f64, upper: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormResult {
    #[serde(flatten)]
    pub value: NormValue,
    /// The statement that fixes the reported value, or the upper bound
    /// that won for intervals.
    pub certificate: Certificate,
    /// Every statement used, in the order applied.
    pub chain: Vec<Certificate>,
    /// Attains the exact value, or the lower bound of an interval.
    pub witness: Option<Vec<f64>>,
    /// Exponent the formulas were evaluated at; conjugates `< 2` are
    /// reflected to their partner `>= 2`.
    pub evaluated_at: Exponent,
}

impl NormResult {
    pub(crate) fn exact(
        value: f64,
        certificate: Certificate,
        chain: Vec<Certificate>,
        witness: Vec<f64>,
        at: Exponent,
    ) -> Self {
        Self {
            value: NormValue::Exact { value },
            certificate,
            chain,
            witness: Some(witness),
            evaluated_at: at,
        }
    }

    pub fn lower(&self) -> f64 {
        match self.value {
            NormValue::Exact { value } => value,
            NormValue::Interval { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> f64 {
        match self.value {
            NormValue::Exact { value } => value,
            NormValue::Interval { upper, .. } => upper,
        }
    }

    pub fn exact_value(&self) -> Option<f64> {
        match self.value {
            NormValue::Exact { value } => Some(value),
            NormValue::Interval { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.value, NormValue::Exact { .. })
    }
}

/// Induced p-norm of `A(n, a, b)`: exact where a closed form exists,
/// otherwise a certified interval.
///
/// Routing: `n = 1` and `p` in `{1, inf}` are read off by inspection,
/// `a >= 0` is exact for every `p`, `a < 0` is exact at `p = 2`, and the
/// remaining exponents are reflected to `max(p, q)` and bounded.
pub fn norm_p(c: &TwoParamCirculant, p: Exponent) -> Result<NormResult> {
    let at = p.at_least_two();
    if c.n() == 1 {
        return Ok(NormResult::exact(
            c.a().abs(),
            Certificate::Inspection,
            vec![Certificate::Inspection],
            vec![1.0],
            at,
        ));
    }
    if p.is_one() || p.is_infinite() {
        let witness = if p.is_one() {
            unit_vector(c.n())
        } else {
            sign_row_vector(c)
        };
        return Ok(NormResult::exact(
            norm_1_inf(c),
            Certificate::Inspection,
            vec![Certificate::Inspection],
            witness,
            at,
        ));
    }
    if !c.has_negative_diagonal() {
        return exact_norm_p_nonneg(c, p);
    }
    if at.value() == 2.0 {
        return Ok(exact_norm_2(c));
    }
    bounds_p(c, at.value())
}

fn unit_vector(n: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[0] = 1.0;
    e
}

// Signs of row 0, so (A x)_0 is the absolute row sum.
fn sign_row_vector(c: &TwoParamCirculant) -> Vec<f64> {
    let mut x = vec![1.0; c.n()];
    if c.has_negative_diagonal() {
        x[0] = -1.0;
    }
    x
}

//! Tables of bounds and estimates over a geometric grid of exponents.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circulant::TwoParamCirculant;
use crate::error::{Error, Result};
use crate::estimator::{estimate_norm_p, EstimatorOptions};
use crate::format::{fmt_g15, round_g15};
use crate::norms::{bound_components, norm_p, Exponent};

/// Column order of the CSV header and the JSON object keys.
pub const SWEEP_COLUMNS: [&str; 11] = [
    "n",
    "a",
    "b",
    "p",
    "lower",
    "upper_thm4",
    "upper_thm5",
    "upper_combined",
    "estimate",
    "gap_ratio",
    "certificate",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub p: f64,
    pub lower: f64,
    pub upper_thm4: f64,
    pub upper_thm5: f64,
    pub upper_combined: f64,
    pub estimate: f64,
    pub gap_ratio: f64,
    pub certificate: String,
}

impl SweepRow {
    fn rounded(&self) -> Self {
        Self {
            a: round_g15(self.a),
            b: round_g15(self.b),
            p: round_g15(self.p),
            lower: round_g15(self.lower),
            upper_thm4: round_g15(self.upper_thm4),
            upper_thm5: round_g15(self.upper_thm5),
            upper_combined: round_g15(self.upper_combined),
            estimate: round_g15(self.estimate),
            gap_ratio: round_g15(self.gap_ratio),
            ..self.clone()
        }
    }

    fn fields(&self) -> Vec<String> {
        let mut out = vec![self.n.to_string()];
        out.extend(
            [
                self.a,
                self.b,
                self.p,
                self.lower,
                self.upper_thm4,
                self.upper_thm5,
                self.upper_combined,
                self.estimate,
                self.gap_ratio,
            ]
            .iter()
            .map(|&v| fmt_g15(v)),
        );
        out.push(self.certificate.clone());
        out
    }
}

/// `steps` exponents from `p_min` to `p_max`, equally spaced in `log p`.
pub fn geometric_grid(p_min: f64, p_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(p_min >= 2.0 && p_min.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "p-min must be a finite value >= 2, got {p_min}"
        )));
    }
    if !(p_max >= p_min && p_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "p-max must be finite and >= p-min, got {p_max}"
        )));
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("p-steps must be at least 1".into()));
    }
    if steps == 1 {
        return Ok(vec![p_min]);
    }
    let ratio = p_max / p_min;
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| match i {
            0 => p_min,
            i if i == steps - 1 => p_max,
            i => p_min * ratio.powf(i as f64 / last),
        })
        .collect())
}

pub fn sweep(
    c: &TwoParamCirculant,
    p_min: f64,
    p_max: f64,
    steps: usize,
    opts: &EstimatorOptions,
) -> Result<Vec<SweepRow>> {
    opts.validate()?;
    let grid = geometric_grid(p_min, p_max, steps)?;
    let matrix = c.to_circulant();
    grid.into_par_iter()
        .map(|p| {
            let exponent = Exponent::new(p)?;
            let result = norm_p(c, exponent)?;
            let parts = bound_components(c, p)?;
            let estimate = estimate_norm_p(&matrix, exponent, opts)?.value;
            let lower = result.lower();
            let upper_combined = result.upper();
            Ok(SweepRow {
                n: c.n(),
                a: c.a(),
                b: c.b(),
                p,
                lower,
                upper_thm4: parts.thm4,
                upper_thm5: parts.thm5,
                upper_combined,
                estimate,
                gap_ratio: if lower == 0.0 {
                    1.0
                } else {
                    upper_combined / lower
                },
                certificate: result.certificate.name().to_string(),
            })
        })
        .collect()
}

pub fn to_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    w.write_record(SWEEP_COLUMNS).map_err(io)?;
    for row in rows {
        w.write_record(row.fields()).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn from_csv(text: &str) -> Result<Vec<SweepRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<Vec<SweepRow>, _>>()
        .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))
}

/// JSON array; numbers are rounded to 15 significant digits like the CSV.
pub fn to_json(rows: &[SweepRow]) -> Result<String> {
    let rounded: Vec<SweepRow> = rows.iter().map(SweepRow::rounded).collect();
    serde_json::to_string_pretty(&rounded).map_err(|e| Error::InvalidArgument(format!("json: {e}")))
}

use super::closed_form::{classify_regime, lambda_max_abs, norm_1_inf};
use super::{Certificate, Exponent, NormResult, NormValue, Regime};
use crate::circulant::TwoParamCirculant;
use crate::error::{Error, Result};

/// The individual bounds on `||A||_p` for a finite `p >= 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundComponents {
    /// `||A||_2`, a lower bound for every `p >= 2`.
    pub lower: f64,
    /// `n^{1/2 - 1/p} ||A||_2`.
    pub thm4: f64,
    /// `||A||_2^{2/p} ||A||_inf^{1 - 2/p}`.
    pub thm5: f64,
}

impl BoundComponents {
    /// Smaller of the two bounds, never below `lower`: when `||A||_2 = ||A||_inf`
    /// (e.g. `n = 2`) the THM5 product can round one ulp under it.
    pub fn upper(&self) -> f64 {
        self.thm4.min(self.thm5).max(self.lower)
    }

    /// The bound that attains [`upper`](Self::upper); ties go to THM5.
    pub fn winner(&self) -> Certificate {
        if self.thm5 <= self.thm4 {
            Certificate::Thm5
        } else {
            Certificate::Thm4
        }
    }

    pub fn gap_ratio(&self) -> f64 {
        if self.lower == 0.0 {
            1.0
        } else {
            self.upper() / self.lower
        }
    }
}

/// Bounds for either sign of `a`, with `||A||_2` taken from the closed form.
pub fn bound_components(c: &TwoParamCirculant, p: f64) -> Result<BoundComponents> {
    bound_components_with(c, p, lambda_max_abs(c).value)
}

/// Same as [`bound_components`] but with a caller-supplied `||A||_2`.
pub fn bound_components_with(
    c: &TwoParamCirculant,
    p: f64,
    norm_2: f64,
) -> Result<BoundComponents> {
    if !(p >= 2.0 && p.is_finite()) {
        return Err(Error::ExponentOutOfRange(p, "[2, inf)"));
    }
    let n = c.n() as f64;
    let norm_inf = norm_1_inf(c);
    let thm4 = n.powf(0.5 - 1.0 / p) * norm_2;
    let thm5 = norm_2.powf(2.0 / p) * norm_inf.powf(1.0 - 2.0 / p);
    Ok(BoundComponents {
        lower: norm_2,
        thm4,
        thm5,
    })
}

/// Certified interval for `A(n, a, b)`, `a < 0`, `2 <= p < inf`.
///
/// The lower end is `||A||_2`, attained by [`witness_vector`]; the upper end
/// is the smaller of the two interpolation bounds. At `p = 2` the interval
/// collapses and the result is exact.
pub fn bounds_p(c: &TwoParamCirculant, p: f64) -> Result<NormResult> {
    if !c.has_negative_diagonal() {
        return Err(Error::NonNegativeDiagonal(c.a()));
    }
    let at = Exponent::new(p).map_err(|_| Error::ExponentOutOfRange(p, "[2, inf)"))?;
    let parts = bound_components(c, p)?;
    let witness = witness_vector(c)?;
    let lemma = match classify_regime(c).label() {
        Regime::Narrow => Certificate::Lemma1Case2Narrow,
        _ => Certificate::Lemma1Case2Wide,
    };
    if p == 2.0 {
        return Ok(NormResult::exact(
            parts.lower,
            Certificate::Thm2Case2,
            vec![lemma, Certificate::Thm2Case2],
            witness,
            at,
        ));
    }
    let winner = parts.winner();
    Ok(NormResult {
        value: NormValue::Interval {
            lower: parts.lower,
            upper: parts.upper(),
        },
        certificate: winner,
        chain: vec![lemma, Certificate::Thm2Case2, Certificate::Thm4, winner],
        witness: Some(witness),
        evaluated_at: at,
    })
}

/// Vector attaining `||A||_2` in every p-norm for `a < 0`: all ones in the
/// wide regime, `[-1, 1, 0, ..., 0]` otherwise (including the boundary).
pub fn witness_vector(c: &TwoParamCirculant) -> Result<Vec<f64>> {
    if !c.has_negative_diagonal() {
        return Err(Error::NonNegativeDiagonal(c.a()));
    }
    let n = c.n();
    if n == 1 {
        return Ok(vec![1.0]);
    }
    Ok(match classify_regime(c) {
        Regime::Wide => vec![1.0; n],
        Regime::Narrow | Regime::Boundary => {
            let mut x = vec![0.0; n];
            x[0] = -1.0;
            x[1] = 1.0;
            x
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::{make_two_param, matvec_direct};
    use crate::norms::vector_norm;
    use proptest::prelude::*;

    fn tp(n: usize, a: f64, b: f64) -> TwoParamCirculant {
        make_two_param(n, a, b).unwrap()
    }

    #[test]
    fn upper_never_rounds_below_lower() {
        let c = tp(2, -3.587039088582575, 2.7262057067937993);
        let r = bounds_p(&c, 11.994168848633443).unwrap();
        assert!(r.lower() <= r.upper());
    }

    fn ratio(c: &TwoParamCirculant, x: &[f64], p: f64) -> f64 {
        let p = Exponent::new(p).unwrap();
        let y = matvec_direct(&c.to_circulant(), x).unwrap();
        vector_norm(&y, p).unwrap() / vector_norm(x, p).unwrap()
    }

    #[test]
    fn interval_examples() {
        let c = tp(3, -2.0, 1.0);
        let r = bounds_p(&c, 2.0).unwrap();
        assert_eq!((r.lower(), r.upper()), (3.0, 3.0));

        let parts = bound_components(&c, 4.0).unwrap();
        assert_eq!(parts.lower, 3.0);
        // 3^{1/4} * 3 and sqrt(3) * sqrt(4)
        assert!((parts.thm4 - 3f64.powf(0.25) * 3.0).abs() < 1e-12);
        assert!((parts.thm4 - 3.948222038857477).abs() < 1e-12);
        assert!((parts.thm5 - 12f64.sqrt()).abs() < 1e-12);
        let r = bounds_p(&c, 4.0).unwrap();
        assert_eq!(r.certificate, Certificate::Thm5);
        assert!((r.upper() - 3.4641016151377544).abs() < 1e-12);
    }

    #[test]
    fn thm5_tends_to_inf_norm() {
        let c = tp(4, -1.0, 1.0);
        let far = bound_components(&c, 1e9).unwrap();
        assert!((far.thm5 - 4.0).abs() < 1e-6);
        assert!(bound_components(&c, f64::INFINITY).is_err());
    }

    #[test]
    fn rejects_wrong_domain() {
        assert_eq!(
            bounds_p(&tp(3, 1.0, 1.0), 3.0),
            Err(Error::NonNegativeDiagonal(1.0))
        );
        assert!(bounds_p(&tp(3, -1.0, 1.0), 1.5).is_err());
        assert!(witness_vector(&tp(3, 0.0, 1.0)).is_err());
    }

    #[test]
    fn witness_examples() {
        let c = tp(6, -1.0, 1.0);
        let w = witness_vector(&c).unwrap();
        assert_eq!(w, vec![1.0; 6]);
        assert!((ratio(&c, &w, 3.0) - 4.0).abs() < 1e-12);

        let c = tp(3, -2.0, 1.0);
        let w = witness_vector(&c).unwrap();
        assert_eq!(w, vec![-1.0, 1.0, 0.0]);
        assert!((ratio(&c, &w, 3.0) - 3.0).abs() < 1e-12);

        let c = tp(4, -1.0, 1.0);
        let w = witness_vector(&c).unwrap();
        assert_eq!(w, vec![-1.0, 1.0, 0.0, 0.0]);
        assert!((ratio(&c, &w, 5.0) - 2.0).abs() < 1e-12);

        assert_eq!(witness_vector(&tp(1, -3.0, 2.0)).unwrap(), vec![1.0]);
    }

    fn negative_case() -> impl Strategy<Value = (TwoParamCirculant, f64)> {
        (1usize..=32, 0.01f64..10.0, 0.0f64..5.0, 2.0f64..40.0)
            .prop_map(|(n, alpha, b, p)| (tp(n, -alpha, b), p))
    }

    proptest! {
        #[test]
        fn thm5_never_exceeds_thm4((c, p) in negative_case()) {
            let parts = bound_components(&c, p).unwrap();
            prop_assert!(parts.thm5 <= parts.thm4 + 1e-12 * c.scale());
            prop_assert!(parts.lower <= parts.upper() + 1e-12 * c.scale());
            prop_assert!(parts.gap_ratio() >= 1.0 - 1e-12);
        }

        #[test]
        fn both_witnesses_reach_their_ratios((c, p) in negative_case()) {
            prop_assume!(c.n() >= 2);
            let n = c.n() as f64;
            let (alpha, b) = (c.alpha(), c.b());
            let ones = vec![1.0; c.n()];
            let mut pair = vec![0.0; c.n()];
            pair[0] = -1.0;
            pair[1] = 1.0;
            let wide = (-alpha + (n - 1.0) * b).abs();
            let narrow = alpha + b;
            prop_assert!((ratio(&c, &ones, p) - wide).abs() <= 1e-10 * c.scale());
            prop_assert!((ratio(&c, &pair, p) - narrow).abs() <= 1e-10 * c.scale());
            let r = bounds_p(&c, p).unwrap();
            let w = r.witness.as_ref().unwrap();
            prop_assert!((ratio(&c, w, p) - r.lower()).abs() <= 1e-10 * c.scale());
        }
    }
}

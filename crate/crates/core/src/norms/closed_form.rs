use super::{Certificate, Exponent, NormResult, Regime};
use crate::circulant::{Circulant, TwoParamCirculant};
use crate::error::{Error, Result};

/// `||A||_1 = ||A||_inf = |a| + (n - 1) b`.
pub fn norm_1_inf(c: &TwoParamCirculant) -> f64 {
    c.a().abs() + (c.n() as f64 - 1.0) * c.b()
}

/// Regime of `A(n, -alpha, b)`, `alpha = |a|`.
pub fn classify_regime(c: &TwoParamCirculant) -> Regime {
    let lhs = 2.0 * c.alpha();
    let rhs = (c.n() as f64 - 2.0) * c.b();
    if lhs < rhs {
        Regime::Wide
    } else if lhs > rhs {
        Regime::Narrow
    } else {
        Regime::Boundary
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaBranch {
    /// `a >= 0`: the value is `a + (n - 1) b`.
    NonNegative,
    /// `a < 0`, split by regime.
    Negative(Regime),
}

/// `max_k |lambda_k|` together with the branch that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaMax {
    pub value: f64,
    pub branch: LemmaBranch,
}

impl LambdaMax {
    pub fn regime(&self) -> Option<Regime> {
        match self.branch {
            LemmaBranch::NonNegative => None,
            LemmaBranch::Negative(r) => Some(r),
        }
    }

    fn lemma_certificate(&self) -> Certificate {
        match self.branch {
            LemmaBranch::NonNegative => Certificate::Lemma1Case1,
            LemmaBranch::Negative(r) => match r.label() {
                Regime::Narrow => Certificate::Lemma1Case2Narrow,
                _ => Certificate::Lemma1Case2Wide,
            },
        }
    }
}

/// Largest eigenvalue magnitude of `A(n, a, b)` in closed form.
///
/// With `alpha = |a|` and `a < 0` this is `-alpha + (n - 1) b` when
/// `2 alpha <= (n - 2) b` and `alpha + b` otherwise. A `1 x 1` matrix is
/// just `|a|`.
pub fn lambda_max_abs(c: &TwoParamCirculant) -> LambdaMax {
    let n = c.n() as f64;
    if !c.has_negative_diagonal() {
        return LambdaMax {
            value: c.a() + (n - 1.0) * c.b(),
            branch: LemmaBranch::NonNegative,
        };
    }
    let alpha = c.alpha();
    if c.n() == 1 {
        return LambdaMax {
            value: alpha,
            branch: LemmaBranch::Negative(Regime::Narrow),
        };
    }
    let regime = classify_regime(c);
    let value = match regime {
        Regime::Wide | Regime::Boundary => -alpha + (n - 1.0) * c.b(),
        Regime::Narrow => alpha + c.b(),
    };
    LambdaMax {
        value,
        branch: LemmaBranch::Negative(regime),
    }
}

/// `||A||_2 = max |lambda_k|`, exact for either sign of `a`.
pub fn exact_norm_2(c: &TwoParamCirculant) -> NormResult {
    let lam = lambda_max_abs(c);
    let (cert, witness) = match lam.branch {
        LemmaBranch::NonNegative => (Certificate::Thm2Case1, vec![1.0; c.n()]),
        LemmaBranch::Negative(_) => (
            Certificate::Thm2Case2,
            super::witness_vector(c).expect("negative diagonal checked above"),
        ),
    };
    NormResult::exact(
        lam.value,
        cert,
        vec![lam.lemma_certificate(), cert],
        witness,
        Exponent::TWO,
    )
}

/// `||A||_p = a + (n - 1) b` for `a >= 0` and every `p`, attained by the
/// all-ones vector.
pub fn exact_norm_p_nonneg(c: &TwoParamCirculant, p: Exponent) -> Result<NormResult> {
    if c.has_negative_diagonal() {
        return Err(Error::NegativeDiagonal(c.a()));
    }
    let value = c.a() + (c.n() as f64 - 1.0) * c.b();
    let at = p.at_least_two();
    let (cert, chain) = if p.is_one() || p.is_infinite() || c.n() == 1 {
        (Certificate::Inspection, vec![Certificate::Inspection])
    } else if at.value() == 2.0 {
        (
            Certificate::Thm2Case1,
            vec![Certificate::Lemma1Case1, Certificate::Thm2Case1],
        )
    } else {
        (
            Certificate::Thm3,
            vec![
                Certificate::Lemma1Case1,
                Certificate::Thm2Case1,
                Certificate::Thm3,
            ],
        )
    };
    Ok(NormResult::exact(value, cert, chain, vec![1.0; c.n()], at))
}

/// `||A||_p = sum_j c_j` for a circulant with non-negative entries.
pub fn general_nonneg_circulant_norm(c: &Circulant, p: Exponent) -> Result<NormResult> {
    if let Some((index, &value)) = c.first_row().iter().enumerate().find(|(_, v)| **v < 0.0) {
        return Err(Error::NegativeEntry { index, value });
    }
    let sum = c.first_row().iter().sum();
    Ok(NormResult::exact(
        sum,
        Certificate::RemarkNonneg,
        vec![Certificate::RemarkNonneg],
        vec![1.0; c.n()],
        p.at_least_two(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::{eigenvalues, make_two_param};
    use proptest::prelude::*;

    fn tp(n: usize, a: f64, b: f64) -> TwoParamCirculant {
        make_two_param(n, a, b).unwrap()
    }

    #[test]
    fn inspection_values() {
        assert_eq!(norm_1_inf(&tp(3, 1.0, 1.0)), 3.0);
        assert_eq!(norm_1_inf(&tp(3, -2.0, 1.0)), 4.0);
        assert_eq!(norm_1_inf(&tp(1, -7.0, 0.0)), 7.0);
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_max_abs(&tp(3, 1.0, 1.0));
        assert_eq!((l.value, l.branch), (3.0, LemmaBranch::NonNegative));

        let l = lambda_max_abs(&tp(4, -1.0, 1.0));
        assert_eq!(l.value, 2.0);
        assert_eq!(l.regime(), Some(Regime::Boundary));
        assert_eq!(l.lemma_certificate(), Certificate::Lemma1Case2Wide);

        let l = lambda_max_abs(&tp(3, -2.0, 1.0));
        assert_eq!(l.value, 3.0);
        assert_eq!(l.regime(), Some(Regime::Narrow));
    }

    #[test]
    fn two_by_two_regimes() {
        // (n - 2) b = 0, so a < 0 is always narrow
        assert_eq!(classify_regime(&tp(2, -0.5, 3.0)), Regime::Narrow);
        assert_eq!(lambda_max_abs(&tp(2, -0.5, 3.0)).value, 3.5);
        assert_eq!(classify_regime(&tp(2, 0.0, 3.0)), Regime::Boundary);
    }

    #[test]
    fn exact_two_norm_examples() {
        let r = exact_norm_2(&tp(5, 2.0, 1.0));
        assert_eq!(
            (r.exact_value(), r.certificate),
            (Some(6.0), Certificate::Thm2Case1)
        );
        let r = exact_norm_2(&tp(3, -2.0, 1.0));
        assert_eq!(
            (r.exact_value(), r.certificate),
            (Some(3.0), Certificate::Thm2Case2)
        );
        assert_eq!(exact_norm_2(&tp(4, -1.0, 1.0)).exact_value(), Some(2.0));
    }

    #[test]
    fn nonneg_examples() {
        let four = Exponent::new(4.0).unwrap();
        assert_eq!(
            exact_norm_p_nonneg(&tp(3, 1.0, 1.0), four)
                .unwrap()
                .exact_value(),
            Some(3.0)
        );
        assert_eq!(
            exact_norm_p_nonneg(&tp(6, 0.0, 2.0), Exponent::TWO)
                .unwrap()
                .exact_value(),
            Some(10.0)
        );
        let r = exact_norm_p_nonneg(&tp(4, 3.0, 0.0), Exponent::new(7.0).unwrap()).unwrap();
        assert_eq!(r.exact_value(), Some(3.0));
        assert_eq!(r.certificate, Certificate::Thm3);
        assert_eq!(
            exact_norm_p_nonneg(&tp(3, -1.0, 1.0), four),
            Err(Error::NegativeDiagonal(-1.0))
        );
    }

    #[test]
    fn general_nonneg_examples() {
        let three = Exponent::new(3.0).unwrap();
        let r = general_nonneg_circulant_norm(&Circulant::new(vec![1.0, 2.0, 3.0]).unwrap(), three)
            .unwrap();
        assert_eq!(r.exact_value(), Some(6.0));
        let r = general_nonneg_circulant_norm(
            &Circulant::new(vec![0.0; 5]).unwrap(),
            Exponent::INFINITY,
        )
        .unwrap();
        assert_eq!(r.exact_value(), Some(0.0));
        let r = general_nonneg_circulant_norm(&Circulant::new(vec![4.0]).unwrap(), three).unwrap();
        assert_eq!(r.exact_value(), Some(4.0));
        let err = general_nonneg_circulant_norm(&Circulant::new(vec![1.0, -2.0]).unwrap(), three);
        assert_eq!(
            err,
            Err(Error::NegativeEntry {
                index: 1,
                value: -2.0
            })
        );
    }

    #[test]
    fn boundary_branches_agree_exactly() {
        // integer arithmetic: 2 alpha = (n - 2) b  =>  -alpha + (n-1) b == alpha + b
        for n in 3i64..40 {
            for b in 0i64..12 {
                let twice_alpha = (n - 2) * b;
                // alpha = twice_alpha / 2; compare 2x both sides to stay integral
                assert_eq!(-twice_alpha + 2 * (n - 1) * b, twice_alpha + 2 * b);
            }
        }
        for n in 3..40usize {
            for b in [0.25, 0.5, 1.0, 1.75, 3.0] {
                let alpha = (n as f64 - 2.0) * b / 2.0;
                let c = tp(n, -alpha, b);
                if alpha == 0.0 {
                    continue;
                }
                assert_eq!(classify_regime(&c), Regime::Boundary);
                let wide = -alpha + (n as f64 - 1.0) * b;
                let narrow = alpha + b;
                assert!((wide - narrow).abs() < 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn two_norm_equals_spectral_radius(n in 1usize..48, a in -10.0f64..10.0, b in 0.0f64..5.0) {
            let c = tp(n, a, b);
            let exact = exact_norm_2(&c).exact_value().unwrap();
            let radius = eigenvalues(&c.to_circulant()).max_abs();
            prop_assert!((exact - radius).abs() <= 1e-12 * c.scale());
        }
    }
}

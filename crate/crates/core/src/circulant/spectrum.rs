use num_complex::Complex64;
use rustfft::FftPlanner;

use super::dft::root_of_unity;
use super::{Circulant, TwoParamCirculant};

/// Above this size [`eigenvalues`] switches from direct summation to an FFT.
pub const DIRECT_EIGEN_LIMIT: usize = 64;

/// Eigenvalues `lambda_0 .. lambda_{n-1}` of a circulant, in DFT order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<Complex64>,
    max_abs: f64,
}

impl Spectrum {
    pub fn new(eigenvalues: Vec<Complex64>) -> Self {
        let max_abs = eigenvalues.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
        Self {
            eigenvalues,
            max_abs,
        }
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs
    }

    /// Eigenvalue magnitudes sorted ascending.
    pub fn sorted_magnitudes(&self) -> Vec<f64> {
        let mut m: Vec<f64> = self.eigenvalues.iter().map(|z| z.norm()).collect();
        m.sort_by(f64::total_cmp);
        m
    }

    pub fn max_imag_abs(&self) -> f64 {
        self.eigenvalues
            .iter()
            .fold(0.0_f64, |m, z| m.max(z.im.abs()))
    }
}

/// `lambda_k = sum_j c_j w^{jk}` with `w = exp(2 pi i / n)`, summed directly.
pub fn eigenvalues_direct(c: &Circulant) -> Spectrum {
    let n = c.n();
    let row = c.first_row();
    let eig = (0..n)
        .map(|k| {
            row.iter()
                .enumerate()
                .map(|(j, &a)| root_of_unity(n, j * k) * a)
                .sum()
        })
        .collect();
    Spectrum::new(eig)
}

/// Same sum evaluated as an unnormalized inverse FFT of the first row.
pub fn eigenvalues_fft(c: &Circulant) -> Spectrum {
    let mut buf: Vec<Complex64> = c
        .first_row()
        .iter()
        .map(|&a| Complex64::new(a, 0.0))
        .collect();
    FftPlanner::new()
        .plan_fft_inverse(buf.len())
        .process(&mut buf);
    Spectrum::new(buf)
}

pub fn eigenvalues(c: &Circulant) -> Spectrum {
    if c.n() <= DIRECT_EIGEN_LIMIT {
        eigenvalues_direct(c)
    } else {
        eigenvalues_fft(c)
    }
}

/// Closed form for `A(n, a, b)`: `lambda_0 = a + (n-1) b`, `lambda_k = a - b`.
pub fn two_param_spectrum(c: &TwoParamCirculant) -> Spectrum {
    let n = c.n();
    let (a, b) = (c.a(), c.b());
    let mut eig = vec![Complex64::new(a - b, 0.0); n];
    eig[0] = Complex64::new(a + (n as f64 - 1.0) * b, 0.0);
    Spectrum::new(eig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::make_two_param;
    use proptest::prelude::*;

    fn assert_spectrum(s: &Spectrum, expected: &[f64]) {
        assert_eq!(s.eigenvalues().len(), expected.len());
        for (z, &e) in s.eigenvalues().iter().zip(expected) {
            assert!((z.re - e).abs() < 1e-12 && z.im.abs() < 1e-12, "{z} vs {e}");
        }
    }

    #[test]
    fn direct_examples() {
        assert_spectrum(&eigenvalues(&Circulant::new(vec![5.0]).unwrap()), &[5.0]);
        let s = eigenvalues(&make_two_param(3, 1.0, 1.0).unwrap().to_circulant());
        assert_spectrum(&s, &[3.0, 0.0, 0.0]);
        assert!((s.max_abs() - 3.0).abs() < 1e-12);
        let s = eigenvalues(&make_two_param(4, 2.0, 1.0).unwrap().to_circulant());
        assert_spectrum(&s, &[5.0, 1.0, 1.0, 1.0]);
        assert!((s.max_abs() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        assert_spectrum(
            &two_param_spectrum(&make_two_param(3, 1.0, 1.0).unwrap()),
            &[3.0, 0.0, 0.0],
        );
        let s = two_param_spectrum(&make_two_param(3, -2.0, 1.0).unwrap());
        assert_spectrum(&s, &[0.0, -3.0, -3.0]);
        assert_eq!(s.max_abs(), 3.0);
        let s = two_param_spectrum(&make_two_param(4, -1.0, 1.0).unwrap());
        assert_spectrum(&s, &[2.0, -2.0, -2.0, -2.0]);
        assert_eq!(s.max_abs(), 2.0);
        assert_eq!(
            two_param_spectrum(&make_two_param(1, -4.0, 3.0).unwrap()).max_abs(),
            4.0
        );
    }

    #[test]
    fn general_row_has_complex_pair() {
        // [1,2,3]: lambda_1 = 1 + 2w + 3w^2 = -1.5 - (sqrt(3)/2) i
        let s = eigenvalues_direct(&Circulant::new(vec![1.0, 2.0, 3.0]).unwrap());
        let l1 = s.eigenvalues()[1];
        assert!((l1.re + 1.5).abs() < 1e-12);
        assert!((l1.im + 3f64.sqrt() / 2.0).abs() < 1e-12);
        assert!((s.eigenvalues()[0].re - 6.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn fft_matches_direct(row in prop::collection::vec(-10.0f64..10.0, 1..=96)) {
            let c = Circulant::new(row).unwrap();
            let d = eigenvalues_direct(&c);
            let f = eigenvalues_fft(&c);
            let tol = 1e-10 * c.n() as f64 * (1.0 + c.max_abs_entry());
            for (x, y) in d.eigenvalues().iter().zip(f.eigenvalues()) {
                prop_assert!((x - y).norm() < tol);
            }
        }

        #[test]
        fn closed_form_magnitudes_match(n in 1usize..40, a in -10.0f64..10.0, b in 0.0f64..5.0) {
            let c = make_two_param(n, a, b).unwrap();
            let closed = two_param_spectrum(&c).sorted_magnitudes();
            let summed = eigenvalues(&c.to_circulant()).sorted_magnitudes();
            let tol = 1e-10 * (a.abs() + n as f64 * b).max(1.0);
            for (x, y) in closed.iter().zip(&summed) {
                prop_assert!((x - y).abs() < tol);
            }
        }

        #[test]
        fn symmetric_rows_have_real_spectrum(v in prop::collection::vec(-10.0f64..10.0, 1..40)) {
            let n = v.len();
            let row = (0..n).map(|m| v[m.min(n - m)]).collect();
            let c = Circulant::new(row).unwrap();
            prop_assert!(c.is_symmetric());
            prop_assert!(eigenvalues(&c).max_imag_abs() < 1e-10 * n as f64 * (1.0 + c.max_abs_entry()));
        }
    }
}

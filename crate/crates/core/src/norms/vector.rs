use super::Exponent;
use crate::error::{Error, Result};

/// `||y||_p`; `p = inf` gives the largest absolute entry.
pub fn vector_norm(y: &[f64], p: Exponent) -> Result<f64> {
    if y.is_empty() {
        return Err(Error::EmptyVector);
    }
    Ok(norm_unchecked(y, p.value()))
}

// Scaled by the largest entry so large p neither overflows nor underflows.
pub(crate) fn norm_unchecked(y: &[f64], p: f64) -> f64 {
    let m = y.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if m == 0.0 || p.is_infinite() {
        return m;
    }
    if p == 1.0 {
        return y.iter().map(|v| v.abs()).sum();
    }
    if p == 2.0 {
        return m * y.iter().map(|v| (v / m) * (v / m)).sum::<f64>().sqrt();
    }
    m * y
        .iter()
        .map(|v| (v.abs() / m).powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

/// `sign(v_i) |v_i|^{p-1}`, scaled by `max |v|` first. Only the direction
/// of the result is meaningful.
pub(crate) fn duality_map(v: &[f64], p: f64) -> Vec<f64> {
    let m = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if m == 0.0 {
        return vec![0.0; v.len()];
    }
    v.iter()
        .map(|&x| {
            let t = x.abs() / m;
            let mag = if p == 2.0 { t } else { t.powf(p - 1.0) };
            if x == 0.0 {
                0.0
            } else {
                mag.copysign(x)
            }
        })
        .collect()
}

/// Rescales `v` in place to unit p-norm; returns false for the zero vector.
pub(crate) fn normalize(v: &mut [f64], p: f64) -> bool {
    let s = norm_unchecked(v, p);
    if s == 0.0 || !s.is_finite() {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= s);
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(p: f64) -> Exponent {
        Exponent::new(p).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(vector_norm(&[3.0, -4.0], e(2.0)).unwrap(), 5.0);
        assert_eq!(
            vector_norm(&[1.0, 1.0, 1.0], Exponent::INFINITY).unwrap(),
            1.0
        );
        let v = vector_norm(&[-1.0, 1.0], e(4.0)).unwrap();
        assert!((v - 2f64.powf(0.25)).abs() < 1e-15);
        assert_eq!(vector_norm(&[], e(2.0)), Err(Error::EmptyVector));
    }

    #[test]
    fn large_p_does_not_overflow() {
        let v = vector_norm(&[1e200, -1e200], e(64.0)).unwrap();
        assert!((v / 1e200 - 2f64.powf(1.0 / 64.0)).abs() < 1e-14);
    }

    #[test]
    fn duality_pairing() {
        // <J_p(v) / ||v||_p^{p-1}, v> = ||v||_p and the dual vector has unit q-norm
        let v = [0.3, -1.2, 2.0, 0.0];
        for p in [1.5, 2.0, 3.0, 7.0] {
            let mut j = duality_map(&v, p);
            let q = p / (p - 1.0);
            assert!(normalize(&mut j, q));
            let pairing: f64 = j.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!((pairing - norm_unchecked(&v, p)).abs() < 1e-12, "p={p}");
        }
    }
}

//! Polynomial roots by companion-matrix eigenvalues with Newton polishing.

use nalgebra::{Complex, DMatrix};

use crate::error::{invalid, Result};
use crate::linalg;

const POLISH_STEPS: usize = 3;

/// Roots of `c[0] x^d + c[1] x^(d-1) + ... + c[d]`. Leading zeros lower the
/// degree.
pub fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex<f64>>> {
    let start = coeffs
        .iter()
        .position(|&c| c != 0.0)
        .ok_or_else(|| invalid("zero polynomial has no roots"))?;
    let c = &coeffs[start..];
    let d = c.len() - 1;
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut companion = DMatrix::zeros(d, d);
    for j in 0..d {
        companion[(0, j)] = -c[j + 1] / c[0];
    }
    for i in 1..d {
        companion[(i, i - 1)] = 1.0;
    }
    let mut roots = linalg::eigenvalues(&companion)?;
    for r in &mut roots {
        *r = polish(c, *r);
    }
    Ok(roots)
}

fn horner(c: &[f64], x: Complex<f64>) -> (Complex<f64>, Complex<f64>) {
    let mut p = Complex::new(0.0, 0.0);
    let mut dp = Complex::new(0.0, 0.0);
    for &ci in c {
        dp = dp * x + p;
        p = p * x + ci;
    }
    (p, dp)
}

fn polish(c: &[f64], mut x: Complex<f64>) -> Complex<f64> {
    for _ in 0..POLISH_STEPS {
        let (p, dp) = horner(c, x);
        if dp.norm() == 0.0 {
            break;
        }
        let next = x - p / dp;
        // keep the step only if it does not make things worse
        if horner(c, next).0.norm() <= p.norm() {
            x = next;
        } else {
            break;
        }
    }
    x
}

/// `|p(x)|` relative to the largest single term `|c_i x^(d-i)|`.
pub fn relative_residual(coeffs: &[f64], x: Complex<f64>) -> f64 {
    let d = coeffs.len() - 1;
    let max_term = coeffs
        .iter()
        .enumerate()
        .map(|(i, &c)| c.abs() * x.norm().powi((d - i) as i32))
        .fold(0.0, f64::max);
    let p = horner(coeffs, x).0.norm();
    if max_term == 0.0 {
        p
    } else {
        p / max_term
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn quadratic_with_complex_roots() {
        let mut r = polynomial_roots(&[1.0, 0.0, 1.0]).unwrap();
        r.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((r[0] - Complex::new(0.0, -1.0)).norm() < 1e-15);
        assert!((r[1] - Complex::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn leading_zero_drops_degree() {
        let r = polynomial_roots(&[0.0, 2.0, -4.0]).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].re - 2.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn recovers_known_real_roots(roots in proptest::collection::vec(-10.0f64..10.0, 1..6)) {
            // expand prod (x - r)
            let mut c = vec![1.0];
            for &r in &roots {
                let mut next = vec![0.0; c.len() + 1];
                for (i, &ci) in c.iter().enumerate() {
                    next[i] += ci;
                    next[i + 1] -= ci * r;
                }
                c = next;
            }
            for x in polynomial_roots(&c).unwrap() {
                prop_assert!(relative_residual(&c, x) < 1e-8);
            }
        }
    }
}

//! Gauss-Lobatto-Legendre nodes and weights on [-1, 1].

use crate::error::{invalid, Error, Result};

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// GLL rule with `n` points, nodes ascending from -1 to 1.
///
/// Exact for polynomials of degree up to `2n - 3`.
#[derive(Debug, Clone, PartialEq)]
pub struct GllRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GllRule {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!(
                "GLL rule needs at least 2 points, got {n}"
            )));
        }
        let m = n - 1; // Legendre degree
        let mut nodes = vec![0.0; n];
        nodes[0] = -1.0;
        nodes[m] = 1.0;

        // Interior nodes are the roots of P'_m. Solve the left half from
        // Chebyshev-Gauss-Lobatto guesses and mirror the rest, which keeps
        // the rule exactly symmetric.
        for k in 1..=(m - 1) / 2 {
            let mut x = -(std::f64::consts::PI * k as f64 / m as f64).cos();
            let mut converged = false;
            for _ in 0..NEWTON_MAX_ITER {
                let (_, d1, d2) = legendre_with_derivatives(m, x);
                let dx = d1 / d2;
                x -= dx;
                if dx.abs() <= NEWTON_TOL {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::NoConvergence {
                    what: "GLL Newton iteration",
                    iterations: NEWTON_MAX_ITER,
                });
            }
            nodes[k] = x;
            nodes[m - k] = -x;
        }
        if m.is_multiple_of(2) {
            nodes[m / 2] = 0.0;
        }

        let scale = 2.0 / (n * m) as f64;
        let mut weights: Vec<f64> = nodes
            .iter()
            .map(|&x| {
                let p = legendre_with_derivatives(m, x).0;
                scale / (p * p)
            })
            .collect();
        for k in 0..n / 2 {
            let w = 0.5 * (weights[k] + weights[m - k]);
            weights[k] = w;
            weights[m - k] = w;
        }

        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// `(P_m(x), P'_m(x), P''_m(x))` by the three-term recurrence.
pub fn legendre_with_derivatives(m: usize, x: f64) -> (f64, f64, f64) {
    if m == 0 {
        return (1.0, 0.0, 0.0);
    }
    // P_{k+1} = ((2k+1) x P_k - k P_{k-1}) / (k+1)
    // P'_{k+1} = P'_{k-1} + (2k+1) P_k, and likewise one order up.
    let (mut p0, mut p1) = (1.0, x);
    let (mut d0, mut d1) = (0.0, 1.0);
    let (mut s0, mut s1) = (0.0, 0.0);
    for k in 1..m {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        let d2 = d0 + (2.0 * kf + 1.0) * p1;
        let s2 = s0 + (2.0 * kf + 1.0) * d1;
        (p0, p1) = (p1, p2);
        (d0, d1) = (d1, d2);
        (s0, s1) = (s1, s2);
    }
    (p1, d1, s1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn interior_nodes_are_legendre_derivative_roots() {
        for n in 3..=40 {
            let r = GllRule::new(n).unwrap();
            for &x in &r.nodes()[1..n - 1] {
                let (_, dp, d2) = legendre_with_derivatives(n - 1, x);
                // near the ends P'' reaches ~n^4/8, so rounding x alone costs |P''| ulp
                let floor = d2.abs() * 2.0 * f64::EPSILON * x.abs();
                assert!(dp.abs() <= 1e-12 + floor, "n={n} x={x}: {dp:e}");
                let lo = legendre_with_derivatives(n - 1, x - 2.0 * f64::EPSILON * x.abs()).1;
                let hi = legendre_with_derivatives(n - 1, x + 2.0 * f64::EPSILON * x.abs()).1;
                assert!(
                    lo * hi <= 0.0 || dp.abs() <= 1e-12,
                    "n={n} x={x}: root not bracketed"
                );
            }
        }
    }

    #[test]
    fn three_point_rule() {
        let r = GllRule::new(3).unwrap();
        assert_eq!(r.nodes(), &[-1.0, 0.0, 1.0]);
        let w = r.weights();
        assert!((w[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((w[1] - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn five_point_rule_closed_form() {
        let r = GllRule::new(5).unwrap();
        let a = (3.0f64 / 7.0).sqrt();
        let expect = [-1.0, -a, 0.0, a, 1.0];
        for (x, e) in r.nodes().iter().zip(expect) {
            assert!((x - e).abs() < 1e-15);
        }
        let ew = [0.1, 49.0 / 90.0, 32.0 / 45.0, 49.0 / 90.0, 0.1];
        for (w, e) in r.weights().iter().zip(ew) {
            assert!((w - e).abs() < 1e-15);
        }
    }

    #[test]
    fn eleven_point_nodes_match_reference() {
        // Nodes of the 11-point rule, to the digits usually tabulated.
        let r = GllRule::new(11).unwrap();
        let expect = [
            0.934001430408059,
            0.784483473663144,
            0.565235326996205,
            0.295758135586939,
        ];
        for (k, e) in expect.iter().enumerate() {
            assert!((r.nodes()[10 - k - 1] - e).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_single_point() {
        assert!(matches!(GllRule::new(1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn large_rules_converge() {
        for n in [41, 64, 100] {
            let r = GllRule::new(n).unwrap();
            assert!((r.weights().iter().sum::<f64>() - 2.0).abs() < 1e-13);
        }
    }

    proptest! {
        #[test]
        fn exact_up_to_degree_2n_minus_3(n in 2usize..=41, frac in 0.0f64..=1.0) {
            let r = GllRule::new(n).unwrap();
            let deg = ((2 * n - 3) as f64 * frac).round() as i32;
            let approx = r.integrate(|x| x.powi(deg));
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            prop_assert!((approx - exact).abs() < 1e-12, "n={n} deg={deg} err={}", approx - exact);
        }

        #[test]
        fn symmetric_and_positive(n in 2usize..=41) {
            let r = GllRule::new(n).unwrap();
            for k in 0..n {
                prop_assert_eq!(r.nodes()[k], -r.nodes()[n - 1 - k]);
                prop_assert_eq!(r.weights()[k], r.weights()[n - 1 - k]);
                prop_assert!(r.weights()[k] > 0.0);
            }
            prop_assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
        }
    }
}

//! Hermite basis interpolating nodal values plus the first three derivatives
//! at both ends, and its derivative matrices at the nodes.
//!
//! The `N + 6` basis functions follow [`DofLayout`](crate::DofLayout) order.
//! Interior nodal functions are `L_j(x) s(x)^3` with `s` the normalized
//! product of the end factors. End functions are `L_j(x) r(x)^3 p(x)`, where
//! `r` vanishes at the opposite end and the cubic `p` fixes the value and the
//! first three derivatives at their own end.

use nalgebra::DMatrix;

use crate::dof::{End, Quantity};
use crate::error::{invalid, Result};
use crate::gll::GllRule;
use crate::lagrange::DqMatrices;
use crate::taylor::Jet;

#[derive(Debug, Clone)]
pub struct HermiteBasis {
    nodes: Vec<f64>,
    /// Taylor coefficients of each end cubic about its own node, indexed by
    /// end, then by deflection/slope/curvature. The monomial form has large,
    /// nearly cancelling coefficients once N grows, so it is only used for
    /// reporting.
    cubics: [[[f64; 4]; 3]; 2],
}

impl HermiteBasis {
    pub fn new(nodes: &[f64]) -> Result<Self> {
        let n = nodes.len();
        if n < 4 {
            return Err(invalid(format!(
                "Hermite basis needs at least 4 nodes, got {n}"
            )));
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("nodes must be strictly increasing"));
        }
        let mut basis = Self {
            nodes: nodes.to_vec(),
            cubics: [[[0.0; 4]; 3]; 2],
        };
        let factorial = [1.0, 1.0, 2.0, 6.0];
        for (side, (j, opp)) in [(0, n - 1), (n - 1, 0)].into_iter().enumerate() {
            let xj = nodes[j];
            let xo = nodes[opp];
            let r = basis.lagrange_jet(j, xj) * Jet::linear(xj, xo, 1.0 / (xj - xo)).powi(3);
            // cubic = (x - xj)^m / m! / r, truncated after the cubic term
            for m in 0..3 {
                let mut t = [0.0; 4];
                for p in 0..4 {
                    let target = if p == m { 1.0 / factorial[m] } else { 0.0 };
                    let acc: f64 = (0..p).map(|q| r.0[p - q] * t[q]).sum();
                    t[p] = (target - acc) / r.0[0];
                }
                basis.cubics[side][m] = t;
            }
        }
        Ok(basis)
    }

    pub fn from_rule(rule: &GllRule) -> Result<Self> {
        Self::new(rule.nodes())
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Number of basis functions, `N + 6`.
    pub fn len(&self) -> usize {
        self.nodes.len() + 6
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Monomial coefficients `[a, b, c, d]` of the cubic multiplier
    /// `a x^3 + b x^2 + c x + d` of an end function, from the closed forms.
    /// `None` for the third-derivative functions, which carry a fixed
    /// `(x - x_j)^3 / 6` factor instead.
    pub fn end_cubic(&self, end: End, q: Quantity) -> Option<[f64; 4]> {
        if q == Quantity::ThirdDerivative {
            return None;
        }
        let n = self.nodes.len();
        let (j, opp) = match end {
            End::Left => (0, n - 1),
            End::Right => (n - 1, 0),
        };
        let dq = DqMatrices::new(&self.nodes);
        let xj = self.nodes[j];
        let c = end_cubics(
            xj,
            xj - self.nodes[opp],
            dq.first[(j, j)],
            dq.second[(j, j)],
            dq.third[(j, j)],
        );
        Some(c[q.order()])
    }

    fn lagrange_jet(&self, j: usize, x: f64) -> Jet {
        let xj = self.nodes[j];
        self.nodes
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .fold(Jet::constant(1.0), |acc, (_, &xk)| {
                acc * Jet::linear(x, xk, 1.0 / (xj - xk))
            })
    }

    pub(crate) fn jet(&self, j: usize, x: f64) -> Jet {
        let n = self.nodes.len();
        let first = self.nodes[0];
        let last = self.nodes[n - 1];
        if j > 0 && j < n - 1 {
            let xj = self.nodes[j];
            let s =
                Jet::linear(x, first, 1.0 / (xj - first)) * Jet::linear(x, last, 1.0 / (xj - last));
            return self.lagrange_jet(j, x) * s.powi(3);
        }
        let (end, q) = if j == 0 {
            (End::Left, Quantity::Deflection)
        } else if j == n - 1 {
            (End::Right, Quantity::Deflection)
        } else {
            let k = j - n;
            let end = if k.is_multiple_of(2) {
                End::Left
            } else {
                End::Right
            };
            (end, Quantity::ALL[k / 2 + 1])
        };
        let (node, opp) = match end {
            End::Left => (0, n - 1),
            End::Right => (n - 1, 0),
        };
        let xj = self.nodes[node];
        let xo = self.nodes[opp];
        let base = self.lagrange_jet(node, x) * Jet::linear(x, xo, 1.0 / (xj - xo)).powi(3);
        let t = Jet::linear(x, xj, 1.0);
        let tail = match q {
            Quantity::ThirdDerivative => (1.0 / 6.0) * t.powi(3),
            _ => {
                let [c0, c1, c2, c3] = self.cubics[(end == End::Right) as usize][q.order()];
                Jet::constant(c0) + c1 * t + c2 * t.powi(2) + c3 * t.powi(3)
            }
        };
        base * tail
    }

    /// `order`-th derivative (0..=4) of basis function `j` at `x`.
    pub fn eval(&self, j: usize, x: f64, order: usize) -> f64 {
        self.jet(j, x).derivative(order)
    }

    /// `order`-th derivative of the interpolant with extended DOF vector `dofs`.
    pub fn interpolate(&self, dofs: &[f64], x: f64, order: usize) -> f64 {
        dofs.iter()
            .enumerate()
            .map(|(j, &u)| u * self.eval(j, x, order))
            .sum()
    }

    /// `G[i][j] = d^order Gamma_j / dxi^order` at node `i`, shape `N x (N+6)`.
    pub fn derivative_matrix(&self, order: usize) -> DMatrix<f64> {
        self.derivative_matrices()[order - 1].clone()
    }

    /// First through fourth derivative matrices in one pass.
    pub fn derivative_matrices(&self) -> [DMatrix<f64>; 4] {
        let n = self.nodes.len();
        let mut out: [DMatrix<f64>; 4] = std::array::from_fn(|_| DMatrix::zeros(n, n + 6));
        for (i, &x) in self.nodes.iter().enumerate() {
            for j in 0..n + 6 {
                let jet = self.jet(j, x);
                for (k, m) in out.iter_mut().enumerate() {
                    m[(i, j)] = jet.derivative(k + 1);
                }
            }
        }
        out
    }
}

/// Closed-form cubics for one end. `h = x_j - x_opp`; `l1..l3` are the first
/// three derivatives of the end node's Lagrange polynomial at that node.
fn end_cubics(xj: f64, h: f64, l1: f64, l2: f64, l3: f64) -> [[f64; 4]; 3] {
    let x2 = xj * xj;
    let x3 = x2 * xj;

    let a1 = 1.5 / h * (l2 - 2.0 * l1 * l1) - 10.0 / h.powi(3) - 6.0 * l1 / (h * h) - l3 / 6.0
        + l1 * l2
        - l1.powi(3);
    let b1 = 3.0 * l1 / h + 6.0 / (h * h) - l2 / 2.0 + l1 * l1 - 3.0 * a1 * xj;
    let c1 = -3.0 / h - l1 - 3.0 * a1 * x2 - 2.0 * b1 * xj;
    let d1 = 1.0 - a1 * x3 - b1 * x2 - c1 * xj;

    let a2 = 6.0 / (h * h) + 3.0 * l1 / h - l2 / 2.0 + l1 * l1;
    let b2 = -3.0 / h - 3.0 * a2 * xj - l1;
    let c2 = 1.0 - 3.0 * a2 * x2 - 2.0 * b2 * xj;
    let d2 = -a2 * x3 - b2 * x2 - c2 * xj;

    let a3 = -1.5 / h - l1 / 2.0;
    let b3 = 0.5 - 3.0 * a3 * xj;
    let c3 = -3.0 * a3 * x2 - 2.0 * b3 * xj;
    let d3 = -a3 * x3 - b3 * x2 - c3 * xj;

    [[a1, b1, c1, d1], [a2, b2, c2, d2], [a3, b3, c3, d3]]
}

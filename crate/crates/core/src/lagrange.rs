//! Lagrange differential-quadrature matrices and their boundary-augmented form.

use nalgebra::DMatrix;

use crate::dof::DofLayout;
use crate::gll::GllRule;

/// First through fourth derivative DQ matrices on a node set.
///
/// `first` maps nodal values of an interpolant to its nodal slopes; the higher
/// orders are powers of it (`second = A·A`, `third = B·A`, `fourth = B·B`).
#[derive(Debug, Clone)]
pub struct DqMatrices {
    pub first: DMatrix<f64>,
    pub second: DMatrix<f64>,
    pub third: DMatrix<f64>,
    pub fourth: DMatrix<f64>,
}

impl DqMatrices {
    pub fn new(nodes: &[f64]) -> Self {
        let first = first_derivative_matrix(nodes);
        let second = &first * &first;
        let third = &second * &first;
        let fourth = &second * &second;
        Self {
            first,
            second,
            third,
            fourth,
        }
    }

    pub fn from_rule(rule: &GllRule) -> Self {
        Self::new(rule.nodes())
    }

    pub fn order(&self, k: usize) -> &DMatrix<f64> {
        match k {
            1 => &self.first,
            2 => &self.second,
            3 => &self.third,
            4 => &self.fourth,
            _ => panic!("derivative order {k} out of range 1..=4"),
        }
    }
}

/// First-derivative weights `A_ij = L_j'(xi_i)`.
///
/// Off-diagonal entries use the product formula; each diagonal is the
/// negative row sum, which makes constants differentiate to exactly zero.
pub fn first_derivative_matrix(nodes: &[f64]) -> DMatrix<f64> {
    let n = nodes.len();
    // c_i = prod_{k != i} (x_i - x_k)
    let c: Vec<f64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&k| k != i)
                .map(|k| nodes[i] - nodes[k])
                .product()
        })
        .collect();
    let mut a = DMatrix::zeros(n, n);
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            if i != j {
                let v = c[i] / (c[j] * (nodes[i] - nodes[j]));
                a[(i, j)] = v;
                row_sum += v;
            }
        }
        a[(i, i)] = -row_sum;
    }
    a
}

/// How the boundary rows (nodes 1 and N) of the higher-order matrices are
/// rebuilt when the end derivatives become independent DOFs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryRowRule {
    /// Each boundary row differentiates the next-lower derivative field, whose
    /// end values are the appended DOFs: `C̄_i = Σ_int A_ik B_kj + A_i1 w''_1 + A_iN w''_N`
    /// and `D̄_i = Σ_int A_ik C_kj + A_i1 w'''_1 + A_iN w'''_N`.
    /// Exact on polynomials of degree `N-1`.
    #[default]
    Composed,
    /// Interior sums `Σ_int B_ik A_kj` and `Σ_int B_ik B_kj`, paired with the
    /// same boundary columns. Not consistent with the DOFs it multiplies; kept
    /// for comparison only.
    AsPrinted,
}

/// DQ matrices acting on the extended vector (shape `N x (N+6)`).
///
/// Interior rows equal the plain DQ rows padded with zeros. Boundary rows
/// drop the end-node contributions of the lower-order field and take the
/// corresponding derivative DOFs instead.
#[derive(Debug, Clone)]
pub struct ModifiedDq {
    pub first: DMatrix<f64>,
    pub second: DMatrix<f64>,
    pub third: DMatrix<f64>,
    pub fourth: DMatrix<f64>,
    pub layout: DofLayout,
    pub rule: BoundaryRowRule,
}

impl ModifiedDq {
    pub fn new(dq: &DqMatrices, rule: BoundaryRowRule) -> Self {
        let n = dq.first.nrows();
        let layout = DofLayout::new(n);
        let pad = |m: &DMatrix<f64>| {
            let mut out = DMatrix::zeros(n, n + 6);
            out.view_mut((0, 0), (n, n)).copy_from(m);
            out
        };
        let a = &dq.first;
        let first = pad(a);
        let mut second = pad(&dq.second);
        let mut third = pad(&dq.third);
        let mut fourth = pad(&dq.fourth);

        let interior = 1..n - 1;
        for i in [0, n - 1] {
            for j in 0..n {
                let (mut s2, mut s3, mut s4) = (0.0, 0.0, 0.0);
                for k in interior.clone() {
                    s2 += a[(i, k)] * a[(k, j)];
                    match rule {
                        BoundaryRowRule::Composed => {
                            s3 += a[(i, k)] * dq.second[(k, j)];
                            s4 += a[(i, k)] * dq.third[(k, j)];
                        }
                        BoundaryRowRule::AsPrinted => {
                            s3 += dq.second[(i, k)] * a[(k, j)];
                            s4 += dq.second[(i, k)] * dq.second[(k, j)];
                        }
                    }
                }
                second[(i, j)] = s2;
                third[(i, j)] = s3;
                fourth[(i, j)] = s4;
            }
            for (m, col) in [(&mut second, n), (&mut third, n + 2), (&mut fourth, n + 4)] {
                m[(i, col)] = a[(i, 0)];
                m[(i, col + 1)] = a[(i, n - 1)];
            }
        }

        Self {
            first,
            second,
            third,
            fourth,
            layout,
            rule,
        }
    }

    pub fn order(&self, k: usize) -> &DMatrix<f64> {
        match k {
            1 => &self.first,
            2 => &self.second,
            3 => &self.third,
            4 => &self.fourth,
            _ => panic!("derivative order {k} out of range 1..=4"),
        }
    }
}

/// Barycentric Lagrange interpolation through `(nodes, values)`.
pub fn interpolate(nodes: &[f64], values: &[f64], x: f64) -> f64 {
    let n = nodes.len();
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..n {
        let d = x - nodes[j];
        if d == 0.0 {
            return values[j];
        }
        let w: f64 = 1.0
            / (0..n)
                .filter(|&k| k != j)
                .map(|k| nodes[j] - nodes[k])
                .product::<f64>();
        num += w / d * values[j];
        den += w / d;
    }
    num / den
}

//! Dense kernels on top of nalgebra: LU solves, symmetric-definite
//! generalized eigenproblems, general eigenvalues and SVD-based range tools.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

use crate::error::{invalid, Error, Result};

const SCHUR_MAX_ITER: usize = 10_000;

pub fn lu_solve(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    if !a.is_square() || a.nrows() != b.len() {
        return Err(invalid(format!(
            "lu_solve: {}x{} matrix with rhs of length {}",
            a.nrows(),
            a.ncols(),
            b.len()
        )));
    }
    a.clone().lu().solve(b).ok_or(Error::RankDeficient {
        nullity: nullity_estimate(a),
    })
}

fn nullity_estimate(a: &DMatrix<f64>) -> usize {
    let s = a.clone().singular_values();
    let max = s.max();
    s.iter().filter(|&&v| v <= 1e-12 * max).count().max(1)
}

/// Eigenpairs of `A x = lambda B x` for symmetric `A` and symmetric
/// positive-definite `B`, ascending. Eigenvectors are `B`-orthonormal.
pub fn symmetric_generalized_eigen(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
) -> Result<(Vec<f64>, DMatrix<f64>)> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(invalid(
            "generalized eigenproblem needs two square matrices of equal size",
        ));
    }
    let chol = b.clone().cholesky().ok_or(Error::NotPositiveDefinite)?;
    let l = chol.l();
    // C = L^-1 A L^-T
    let y = l
        .solve_lower_triangular(a)
        .ok_or(Error::NotPositiveDefinite)?;
    let c = l
        .solve_lower_triangular(&y.transpose())
        .ok_or(Error::NotPositiveDefinite)?;
    let c = 0.5 * (&c + c.transpose());
    let eig = SymmetricEigen::new(c);
    let mut order: Vec<usize> = (0..a.nrows()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let lt = l.transpose();
    let mut vectors = DMatrix::zeros(a.nrows(), a.nrows());
    for (col, &i) in order.iter().enumerate() {
        let x = lt
            .solve_upper_triangular(&eig.eigenvectors.column(i).into_owned())
            .ok_or(Error::NotPositiveDefinite)?;
        vectors.set_column(col, &x);
    }
    Ok((values, vectors))
}

/// Eigenvalues of a general real square matrix.
pub fn eigenvalues(a: &DMatrix<f64>) -> Result<Vec<Complex<f64>>> {
    if !a.is_square() {
        return Err(invalid("eigenvalues of a non-square matrix"));
    }
    let schur = nalgebra::Schur::try_new(a.clone(), f64::EPSILON, SCHUR_MAX_ITER).ok_or(
        Error::NoConvergence {
            what: "Schur decomposition",
            iterations: SCHUR_MAX_ITER,
        },
    )?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// Thin SVD with singular values sorted descending.
#[derive(Debug, Clone)]
pub struct SortedSvd {
    pub u: DMatrix<f64>,
    pub singular_values: Vec<f64>,
    pub v: DMatrix<f64>,
}

impl SortedSvd {
    pub fn new(a: &DMatrix<f64>) -> Self {
        let (r, c) = a.shape();
        let k = r.min(c);
        if k == 0 {
            return Self {
                u: DMatrix::zeros(r, 0),
                singular_values: Vec::new(),
                v: DMatrix::zeros(c, 0),
            };
        }
        let svd = a.clone().svd(true, true);
        let u = svd.u.expect("requested U");
        let vt = svd.v_t.expect("requested V^T");
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
        let mut su = DMatrix::zeros(r, k);
        let mut sv = DMatrix::zeros(c, k);
        let mut s = Vec::with_capacity(k);
        for (col, &i) in order.iter().enumerate() {
            su.set_column(col, &u.column(i));
            sv.set_column(col, &vt.row(i).transpose());
            s.push(svd.singular_values[i]);
        }
        Self {
            u: su,
            singular_values: s,
            v: sv,
        }
    }

    /// Count of singular values above `rel_tol * sigma_max`.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let max = self.singular_values.first().copied().unwrap_or(0.0);
        self.singular_values
            .iter()
            .filter(|&&s| s > rel_tol * max)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_pencil() {
        let a = DMatrix::<f64>::identity(4, 4);
        let (vals, _) = symmetric_generalized_eigen(&a, &a).unwrap();
        assert!(vals.iter().all(|v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn diagonal_pencil() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 3.0]));
        let b = DMatrix::identity(2, 2);
        let (vals, _) = symmetric_generalized_eigen(&a, &b).unwrap();
        assert!((vals[0] - 2.0).abs() < 1e-14 && (vals[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn random_spd_pencil_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 20;
        let r1 = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        let r2 = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        let a = &r1 + r1.transpose();
        let b = &r2 * r2.transpose() + DMatrix::identity(n, n) * n as f64;
        let (vals, vecs) = symmetric_generalized_eigen(&a, &b).unwrap();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        for (k, &lam) in vals.iter().enumerate() {
            let x = vecs.column(k);
            let res = (&a * x - lam * (&b * x)).norm();
            assert!(res <= 1e-8 * a.norm() * x.norm(), "k={k} res={res}");
        }
        let mt = vecs.transpose() * &b * &vecs;
        assert!((mt - DMatrix::identity(n, n)).amax() < 1e-10);
    }

    #[test]
    fn indefinite_mass_rejected() {
        let a = DMatrix::identity(2, 2);
        let b = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert_eq!(
            symmetric_generalized_eigen(&a, &b).unwrap_err(),
            Error::NotPositiveDefinite
        );
    }

    #[test]
    fn lu_singular_and_regular() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        let b = DVector::from_vec(vec![1.0, 1.0]);
        assert!(matches!(
            lu_solve(&a, &b),
            Err(Error::RankDeficient { nullity: 1 })
        ));
        let a = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 3.0]);
        let x = lu_solve(&a, &b).unwrap();
        assert!((&a * x - b).norm() < 1e-15);
    }

    #[test]
    fn rotation_eigenvalues_are_complex() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let mut ev = eigenvalues(&a).unwrap();
        ev.sort_by(|x, y| x.im.total_cmp(&y.im));
        assert!((ev[0].im + 1.0).abs() < 1e-14 && (ev[1].im - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sorted_svd_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = DMatrix::from_fn(9, 5, |_, _| rng.gen_range(-1.0..1.0));
        let s = SortedSvd::new(&a);
        assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
        let sig = DMatrix::from_diagonal(&DVector::from_vec(s.singular_values.clone()));
        assert!((&s.u * sig * s.v.transpose() - &a).amax() < 1e-13);
        assert_eq!(s.rank(1e-12), 5);
    }
}

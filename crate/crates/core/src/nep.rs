//! Holomorphic matrix functions ω ↦ T(ω) with a linear-solve contract.
//!
//! The eigenvalue search only ever sees this interface, which keeps it
//! independent of the finite element specifics. Solves are direct sparse LU
//! factorizations with an a-posteriori residual check; indicator values depend
//! silently on solve quality, so the residual is always computed.

use faer::prelude::*;
use faer::sparse::SparseColMat;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default relative residual bound. Indicator magnitudes near the decision
/// threshold must not be polluted by solver noise.
pub const DEFAULT_SOLVE_TOL: f64 = 1e-10;

/// A matrix-valued function of a complex frequency, holomorphic on admissible
/// disks, evaluated deterministically.
pub trait HolomorphicMatrixFn: Sync {
    fn dim(&self) -> usize;

    /// T(ω) as a sparse matrix. The sparsity pattern must not depend on ω.
    fn evaluate(&self, omega: Complex64) -> Result<SparseColMat<usize, Complex64>>;

    /// True iff the closed disk stays clear of the function's singularities
    /// (by the implementor's pole guard). Entire functions return true.
    fn disk_is_admissible(&self, center: Complex64, radius: f64) -> bool {
        let _ = (center, radius);
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionFlag {
    Ok,
    IllConditioned,
}

/// Solution of T(ω) x = g together with the a-posteriori residual ‖T(ω)x − g‖₂.
#[derive(Debug, Clone)]
pub struct LinearSolveReport {
    pub solution: Vec<Complex64>,
    pub residual_norm: f64,
    pub condition_flag: ConditionFlag,
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// ‖T x − g‖₂ by a direct CSC walk.
fn residual_norm(
    mat: &SparseColMat<usize, Complex64>,
    x: &[Complex64],
    rhs: &[Complex64],
) -> f64 {
    let sym = mat.symbolic();
    let col_ptr = sym.col_ptr();
    let row_idx = sym.row_idx();
    let val = mat.val();
    let mut r: Vec<Complex64> = rhs.iter().map(|&g| -g).collect();
    for col in 0..sym.ncols() {
        let xc = x[col];
        for idx in col_ptr[col]..col_ptr[col + 1] {
            r[row_idx[idx]] += val[idx] * xc;
        }
    }
    norm2(&r)
}

/// Solves T(ω) x = rhs by sparse LU with partial pivoting.
///
/// Returns [`Error::SingularSystem`] when the factorization breaks down or
/// produces non-finite values (ω is numerically an eigenvalue). Otherwise the
/// report carries `IllConditioned` whenever the relative residual exceeds
/// `solve_tol`.
pub fn solve(
    f: &dyn HolomorphicMatrixFn,
    omega: Complex64,
    rhs: &[Complex64],
    solve_tol: f64,
) -> Result<LinearSolveReport> {
    let n = f.dim();
    debug_assert_eq!(rhs.len(), n);
    debug_assert!(rhs.iter().all(|z| z.is_finite()));

    let mat = f.evaluate(omega)?;
    let lu = mat
        .sp_lu()
        .map_err(|_| Error::SingularSystem { omega })?;
    let mut x = Mat::<Complex64>::zeros(n, 1);
    for (i, &g) in rhs.iter().enumerate() {
        x[(i, 0)] = g;
    }
    lu.solve_in_place(x.as_mut());
    let solution: Vec<Complex64> = (0..n).map(|i| x[(i, 0)]).collect();
    if solution.iter().any(|z| !z.is_finite()) {
        return Err(Error::SingularSystem { omega });
    }

    let residual = residual_norm(&mat, &solution, rhs);
    let flag = if residual <= solve_tol * norm2(rhs) {
        ConditionFlag::Ok
    } else {
        ConditionFlag::IllConditioned
    };
    Ok(LinearSolveReport {
        solution,
        residual_norm: residual,
        condition_flag: flag,
    })
}

/// Matrix polynomial T(ω) = Σ_p ω^p C_p with dense coefficient matrices.
///
/// Handy as a test function for the eigenvalue search and as the scalar demo
/// T(ω) = ω − λ₀. The sparse pattern is kept structurally full so it cannot
/// change with ω.
#[derive(Debug, Clone)]
pub struct DensePolynomialFn {
    dim: usize,
    /// `coeffs[p]` is the row-major dense matrix multiplying ω^p.
    coeffs: Vec<Vec<Complex64>>,
}

impl DensePolynomialFn {
    pub fn new(dim: usize, coeffs: Vec<Vec<Complex64>>) -> Self {
        assert!(!coeffs.is_empty());
        assert!(coeffs.iter().all(|c| c.len() == dim * dim));
        Self { dim, coeffs }
    }

    /// The scalar function ω ↦ ω − λ₀.
    pub fn scalar_shift(lambda: Complex64) -> Self {
        Self::new(1, vec![vec![-lambda], vec![Complex64::new(1.0, 0.0)]])
    }

    /// T(ω) = ω² I − diag(d).
    pub fn quadratic_diag(d: &[Complex64]) -> Self {
        let n = d.len();
        let mut c0 = vec![Complex64::ZERO; n * n];
        let mut c2 = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            c0[i * n + i] = -d[i];
            c2[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Self::new(n, vec![c0, vec![Complex64::ZERO; n * n], c2])
    }

    pub fn coefficients(&self) -> &[Vec<Complex64>] {
        &self.coeffs
    }
}

impl HolomorphicMatrixFn for DensePolynomialFn {
    fn dim(&self) -> usize {
        self.dim
    }

    fn evaluate(&self, omega: Complex64) -> Result<SparseColMat<usize, Complex64>> {
        let n = self.dim;
        let mut dense = vec![Complex64::ZERO; n * n];
        let mut power = Complex64::new(1.0, 0.0);
        for coeff in &self.coeffs {
            for (d, &c) in dense.iter_mut().zip(coeff) {
                *d += power * c;
            }
            power *= omega;
        }
        let mut col_ptr = Vec::with_capacity(n + 1);
        let mut row_idx = Vec::with_capacity(n * n);
        let mut val = Vec::with_capacity(n * n);
        col_ptr.push(0);
        for col in 0..n {
            for row in 0..n {
                row_idx.push(row);
                val.push(dense[row * n + col]);
            }
            col_ptr.push(row_idx.len());
        }
        let symbolic =
            faer::sparse::SymbolicSparseColMat::new_checked(n, n, col_ptr, None, row_idx);
        Ok(SparseColMat::new(symbolic, val))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn scalar_solve() {
        let f = DensePolynomialFn::scalar_shift(c(3.0, 0.0));
        let report = solve(&f, c(5.0, 0.0), &[c(1.0, 0.0)], DEFAULT_SOLVE_TOL).unwrap();
        assert_eq!(report.solution, vec![c(0.5, 0.0)]);
        assert_eq!(report.residual_norm, 0.0);
        assert_eq!(report.condition_flag, ConditionFlag::Ok);
    }

    #[test]
    fn diagonal_solve() {
        // T(w) = diag(w - 1, w - 2) at w = 0
        let f = DensePolynomialFn::new(
            2,
            vec![
                vec![c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-2.0, 0.0)],
                vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            ],
        );
        let report = solve(&f, c(0.0, 0.0), &[c(1.0, 0.0), c(1.0, 0.0)], 1e-10).unwrap();
        assert!((report.solution[0] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((report.solution[1] - c(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn exact_eigenvalue_detected() {
        let f = DensePolynomialFn::new(
            2,
            vec![
                vec![c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-2.0, 0.0)],
                vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            ],
        );
        let outcome = solve(&f, c(1.0, 0.0), &[c(1.0, 0.0), c(1.0, 0.0)], 1e-10);
        match outcome {
            Err(Error::SingularSystem { .. }) => {}
            Ok(report) => assert_eq!(report.condition_flag, ConditionFlag::IllConditioned),
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn solve_is_linear_in_rhs() {
        let f = DensePolynomialFn::new(
            2,
            vec![
                vec![c(2.0, 1.0), c(0.3, 0.0), c(-0.2, 0.4), c(1.5, -0.5)],
                vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            ],
        );
        let omega = c(0.3, -0.8);
        let g = [c(0.7, 0.1), c(-0.4, 0.9)];
        let alpha = c(2.5, -1.25);
        let scaled: Vec<Complex64> = g.iter().map(|&z| alpha * z).collect();
        let x = solve(&f, omega, &g, 1e-10).unwrap().solution;
        let y = solve(&f, omega, &scaled, 1e-10).unwrap().solution;
        for (xi, yi) in x.iter().zip(&y) {
            assert!((alpha * xi - yi).norm() < 1e-9 * yi.norm().max(1.0));
        }
    }

    #[test]
    fn residual_guarantee_on_ok_solves() {
        let f = DensePolynomialFn::new(
            3,
            vec![
                (0..9).map(|i| c(1.0 + i as f64, -(i as f64) / 3.0)).collect(),
                (0..9)
                    .map(|i| if i % 4 == 0 { c(1.0, 0.0) } else { c(0.1, 0.2) })
                    .collect(),
            ],
        );
        let rhs = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.5)];
        let report = solve(&f, c(0.7, 0.2), &rhs, 1e-10).unwrap();
        if report.condition_flag == ConditionFlag::Ok {
            assert!(report.residual_norm <= 1e-10 * norm2(&rhs));
        }
    }
}

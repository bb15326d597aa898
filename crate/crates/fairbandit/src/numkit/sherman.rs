//! Incrementally maintained inverse of a ridge-regularized covariance matrix.

use super::linalg::{dot, Matrix};

/// Holds A⁻¹ for A = λI + Σ x_s x_sᵀ, updated one rank-one term at a time
/// via the Sherman–Morrison identity instead of re-inverting the d×d matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseCovariance {
    a_inv: Matrix,
    lambda: f64,
}

impl InverseCovariance {
    /// A = λI, so A⁻¹ = (1/λ)I.
    pub fn new(d: usize, lambda: f64) -> Self {
        assert!(lambda > 0.0, "ridge lambda must be positive, got {lambda}");
        let mut a_inv = Matrix::identity(d);
        for i in 0..d {
            a_inv.set(i, i, 1.0 / lambda);
        }
        InverseCovariance { a_inv, lambda }
    }

    pub fn dim(&self) -> usize {
        self.a_inv.rows()
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn a_inv(&self) -> &Matrix {
        &self.a_inv
    }

    /// xᵀ A⁻¹ x.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        dot(x, &self.a_inv.mat_vec(x))
    }

    /// A⁻¹ v.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        self.a_inv.mat_vec(v)
    }

    /// Replace A⁻¹ with (A + xxᵀ)⁻¹ = A⁻¹ − (A⁻¹x xᵀA⁻¹)/(1 + xᵀA⁻¹x).
    ///
    /// Panics when the denominator drops to ≤ 1e-12; for an SPD A it is
    /// ≥ 1, so that signals state corruption.
    pub fn update(&mut self, x: &[f64]) {
        let u = self.a_inv.mat_vec(x);
        let denom = 1.0 + dot(x, &u);
        assert!(
            denom > 1e-12,
            "sherman-morrison denominator {denom} <= 1e-12: inverse covariance is corrupt"
        );
        self.a_inv.add_outer(&u, &u, -1.0 / denom);
    }

    /// Rebuild from scratch for testing/debugging: invert λI + Σ xxᵀ directly.
    pub fn direct_from_updates(d: usize, lambda: f64, xs: &[Vec<f64>]) -> Option<Matrix> {
        let mut a = Matrix::identity(d);
        for i in 0..d {
            a.set(i, i, lambda);
        }
        for x in xs {
            a.add_outer(x, x, 1.0);
        }
        a.inverse()
    }
}

use nalgebra::{DMatrix, DVector};

use super::SupportFunction;
use crate::error::{GeomError, Result};
use crate::functionals::unit_ball_volume;

/// `{x : (x − c)ᵀ M⁻¹ (x − c) ≤ 1}` with `M` symmetric positive definite.
#[derive(Clone, Debug, PartialEq)]
pub struct Ellipsoid {
    center: DVector<f64>,
    shape: DMatrix<f64>,
}

impl Ellipsoid {
    pub fn new(center: DVector<f64>, shape: DMatrix<f64>) -> Result<Self> {
        let n = center.len();
        if shape.shape() != (n, n) {
            return Err(GeomError::DimensionMismatch { expected: n, got: shape.nrows() });
        }
        let asym = (&shape - shape.transpose()).amax();
        if asym > 1e-12 * shape.amax().max(1.0) {
            return Err(GeomError::InvalidInput(format!("shape matrix is not symmetric ({asym:e})")));
        }
        let shape = (&shape + shape.transpose()) * 0.5;
        let min_eig = shape.clone().symmetric_eigen().eigenvalues.min();
        if !(min_eig > 0.0) {
            return Err(GeomError::InvalidInput("shape matrix is not positive definite".into()));
        }
        Ok(Self { center, shape })
    }

    pub fn unit_ball(n: usize) -> Self {
        Self { center: DVector::zeros(n), shape: DMatrix::identity(n, n) }
    }

    /// `{c + L u : ‖u‖ ≤ 1}`, i.e. `M = L Lᵀ`.
    pub fn from_map(center: DVector<f64>, l: &DMatrix<f64>) -> Result<Self> {
        Self::new(center, l * l.transpose())
    }

    pub fn center(&self) -> &DVector<f64> {
        &self.center
    }

    pub fn shape(&self) -> &DMatrix<f64> {
        &self.shape
    }

    /// `|B₂ⁿ| · √det M`.
    pub fn volume(&self) -> f64 {
        unit_ball_volume(self.center.len()) * self.shape.determinant().max(0.0).sqrt()
    }

    pub fn contains(&self, x: &DVector<f64>, tol: f64) -> bool {
        let d = x - &self.center;
        match self.shape.clone().cholesky() {
            Some(ch) => d.dot(&ch.solve(&d)) <= 1.0 + tol,
            None => false,
        }
    }
}

impl SupportFunction for Ellipsoid {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn support(&self, x: &[f64]) -> f64 {
        let v = DVector::from_column_slice(x);
        self.center.dot(&v) + v.dot(&(&self.shape * &v)).max(0.0).sqrt()
    }
}

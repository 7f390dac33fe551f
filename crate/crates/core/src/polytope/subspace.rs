use nalgebra::{DMatrix, DVector};

use crate::error::{GeomError, Result};

/// An affine subspace `{p + Q y : y ∈ ℝᵏ}` of `ℝⁿ` with column-orthonormal
/// `Q` and offset `p ⟂ range(Q)`, so `‖p‖` is the distance to the origin and
/// `p` is the point of the subspace closest to the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    basis: DMatrix<f64>,
    offset: DVector<f64>,
}

const ORTHO_TOL: f64 = 1e-12;

impl Subspace {
    pub fn new(basis: DMatrix<f64>, offset: DVector<f64>) -> Result<Self> {
        let (n, k) = basis.shape();
        if offset.len() != n {
            return Err(GeomError::DimensionMismatch { expected: n, got: offset.len() });
        }
        if k == 0 || k > n {
            return Err(GeomError::InvalidInput(format!("subspace dimension {k} not in 1..={n}")));
        }
        let gram_err = (basis.transpose() * &basis - DMatrix::identity(k, k)).amax();
        if gram_err > ORTHO_TOL {
            return Err(GeomError::InvalidInput(format!("basis is not orthonormal (error {gram_err:e})")));
        }
        let leak = (basis.transpose() * &offset).amax();
        if leak > ORTHO_TOL * offset.norm().max(1.0) {
            return Err(GeomError::InvalidInput(format!("offset not orthogonal to the basis (error {leak:e})")));
        }
        Ok(Self { basis, offset })
    }

    /// Linear subspace spanned by the orthonormal columns of `basis`.
    pub fn linear(basis: DMatrix<f64>) -> Result<Self> {
        let n = basis.nrows();
        Self::new(basis, DVector::zeros(n))
    }

    /// Orthonormalizes an arbitrary spanning set, then projects the offset
    /// onto the orthogonal complement.
    pub fn from_spanning(vectors: &[DVector<f64>], through: &DVector<f64>) -> Result<Self> {
        let n = through.len();
        let q = crate::linalg::orthonormal_basis(vectors.iter(), 1e-12);
        if q.is_empty() {
            return Err(GeomError::InvalidInput("spanning set is zero".into()));
        }
        let basis = crate::linalg::columns(&q, n);
        let offset = through - &basis * (basis.transpose() * through);
        Self::new(basis, offset)
    }

    pub fn full(n: usize) -> Self {
        Self { basis: DMatrix::identity(n, n), offset: DVector::zeros(n) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn offset(&self) -> &DVector<f64> {
        &self.offset
    }

    pub fn distance(&self) -> f64 {
        self.offset.norm()
    }

    pub fn is_linear(&self) -> bool {
        self.offset.amax() == 0.0
    }

    /// Intrinsic coordinates `Qᵀ x` of the orthogonal projection of `x`.
    pub fn coordinates(&self, x: &DVector<f64>) -> DVector<f64> {
        self.basis.transpose() * x
    }

    /// The point `p + Q y`.
    pub fn embed(&self, y: &DVector<f64>) -> DVector<f64> {
        &self.offset + &self.basis * y
    }

    /// Orthogonal projection `P_F x` onto the linear part, in ambient coordinates.
    pub fn project_vector(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.basis * (self.basis.transpose() * x)
    }
}

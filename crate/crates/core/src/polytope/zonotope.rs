use nalgebra::{DMatrix, DVector};

use super::{Subspace, SupportFunction};
use crate::error::{GeomError, Result};
use crate::linalg::Combinations;

/// Generator limit for the determinant expansion of the volume.
pub const MAX_ZONOTOPE_GENERATORS: usize = 24;

/// Minkowski sum `Σᵢ [−gᵢ, gᵢ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Zonotope {
    dim: usize,
    generators: Vec<DVector<f64>>,
}

impl Zonotope {
    pub fn new(dim: usize, generators: Vec<DVector<f64>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return Err(GeomError::DimensionMismatch { expected: dim, got: g.len() });
        }
        Ok(Self { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[DVector<f64>] {
        &self.generators
    }

    /// Generators mapped to intrinsic coordinates of a linear subspace; the
    /// result is `P_F Z` as a zonotope of `ℝᵏ`.
    pub fn project(&self, f: &Subspace) -> Result<Self> {
        if f.ambient_dim() != self.dim {
            return Err(GeomError::DimensionMismatch { expected: self.dim, got: f.ambient_dim() });
        }
        let gens = self.generators.iter().map(|g| f.coordinates(g)).collect();
        Self::new(f.dim(), gens)
    }

    /// `2ⁿ Σ_{|S| = n} |det(g_S)|`.
    pub fn volume(&self) -> Result<f64> {
        let count = self.generators.len();
        if count > MAX_ZONOTOPE_GENERATORS {
            return Err(GeomError::TooManyGenerators { count, limit: MAX_ZONOTOPE_GENERATORS });
        }
        let n = self.dim;
        let mut sum = 0.0;
        let mut m = DMatrix::zeros(n, n);
        for subset in Combinations::new(count, n) {
            for (c, &i) in subset.iter().enumerate() {
                m.set_column(c, &self.generators[i]);
            }
            sum += m.determinant().abs();
        }
        Ok(2f64.powi(n as i32) * sum)
    }
}

impl SupportFunction for Zonotope {
    fn dim(&self) -> usize {
        self.dim
    }

    fn support(&self, x: &[f64]) -> f64 {
        self.generators.iter().map(|g| super::hpoly::dot(g.as_slice(), x).abs()).sum()
    }
}

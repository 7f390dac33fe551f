use nalgebra::DVector;

use super::SupportFunction;
use crate::error::Result;

/// Vertex representation `conv{v₁, …, v_N}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<DVector<f64>>,
}

impl VPolytope {
    /// Convex hull of `points`, reduced to its extreme points. The points must
    /// affinely span the space.
    pub fn new(points: Vec<DVector<f64>>) -> Result<Self> {
        let dd = super::describe_v(&points)?;
        Ok(Self { dim: dd.dim(), vertices: dd.vertices })
    }

    /// Trusts the caller that `vertices` is already a minimal vertex set.
    pub(crate) fn from_vertices_unchecked(dim: usize, vertices: Vec<DVector<f64>>) -> Self {
        Self { dim, vertices }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[DVector<f64>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self { dim: self.dim, vertices: self.vertices.iter().map(|v| v * lambda).collect() }
    }

    pub fn centroid(&self) -> DVector<f64> {
        let mut c = DVector::zeros(self.dim);
        for v in &self.vertices {
            c += v;
        }
        c / self.vertices.len().max(1) as f64
    }
}

impl SupportFunction for VPolytope {
    fn dim(&self) -> usize {
        self.dim
    }

    fn support(&self, x: &[f64]) -> f64 {
        self.vertices.iter().map(|v| super::hpoly::dot(v.as_slice(), x)).fold(f64::NEG_INFINITY, f64::max)
    }
}

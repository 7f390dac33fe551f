//! John, Löwner and minimal-surface-area positions, and the decompositions
//! of the identity that certify them.

mod decomposition;
mod minsurf;
mod mvee;
mod mvie;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

pub use decomposition::{
    contact_points, default_contact_tol, fit_john_decomposition, lift_decomposition, restrict_decomposition,
    restrict_lifted, DecompositionFile, JohnDecomposition, LiftedDecomposition, RestrictedDecomposition,
};
pub use minsurf::{isotropy_residual, min_surface_area_position, min_surface_area_position_traced, MinSurfaceResult};
pub use mvee::{min_enclosing_ellipsoid, min_enclosing_ellipsoid_traced, to_lowner_position};
pub use mvie::{max_inscribed_ellipsoid, max_inscribed_ellipsoid_traced, to_john_position, InscribedEllipsoid};

/// One solver iteration, as passed to a trace sink.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceRecord {
    pub solver: &'static str,
    pub iteration: usize,
    pub objective: f64,
    pub residual: f64,
}

/// `x ↦ A x + t`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMap {
    pub linear: DMatrix<f64>,
    pub shift: DVector<f64>,
}

impl AffineMap {
    pub fn identity(n: usize) -> Self {
        Self { linear: DMatrix::identity(n, n), shift: DVector::zeros(n) }
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.linear * x + &self.shift
    }
}

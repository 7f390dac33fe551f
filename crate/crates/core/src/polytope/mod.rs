//! Exact polytope geometry in small dimension.
//!
//! Bodies are held either by facets ([`HPolytope`], unit normals with the scale
//! carried by the offsets) or by vertices ([`VPolytope`]). Conversions go
//! through a double-description enumeration that also records the
//! vertex–facet incidences; volumes and facet areas are computed from those
//! incidences by recursive triangulation.

mod ellipsoid;
mod enumerate;
mod hpoly;
pub mod io;
mod ops;
mod subspace;
mod surface;
mod volume;
mod vpoly;
mod zonotope;

pub use ellipsoid::Ellipsoid;
pub use enumerate::{describe_h, describe_v, facet_enumerate, vertex_enumerate, DoubleDescription};
pub use hpoly::HPolytope;
pub(crate) use ops::section_described;
pub use ops::{polar_h, polar_v, project, section};
pub use subspace::Subspace;
pub(crate) use surface::projection_body_from;
pub use surface::{projection_body, surface_measure, FacetMeasure, SurfaceMeasure};
pub use volume::{volume_dd, volume_h, volume_v};
pub use vpoly::VPolytope;
pub use zonotope::{Zonotope, MAX_ZONOTOPE_GENERATORS};

/// Largest ambient dimension accepted by the enumeration routines.
pub const MAX_DIM: usize = 9;
/// Largest facet (or vertex) count accepted by the enumeration routines.
pub const MAX_FACETS: usize = 64;
/// Absolute tolerance for merging duplicate vertices.
pub const MERGE_TOL: f64 = 1e-9;
/// Tolerance on the unit length of stored normals.
pub const UNIT_TOL: f64 = 1e-12;

/// Anything with a support function `h(x) = sup ⟨x, y⟩`.
pub trait SupportFunction {
    fn dim(&self) -> usize;
    fn support(&self, x: &[f64]) -> f64;
}

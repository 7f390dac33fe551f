use nalgebra::DVector;

use super::{describe_h, describe_v, DoubleDescription, HPolytope, Subspace, VPolytope};
use crate::error::{GeomError, Result};

/// Tolerance below which a projected normal counts as zero.
const FLAT_TOL: f64 = 1e-12;

/// `P ∩ F` in the intrinsic coordinates `x = p + Q y` of `F`.
///
/// Inequalities whose normal is orthogonal to `F` are dropped after checking
/// they hold on `F`; the result is certified to have nonempty interior in
/// `ℝᵏ`.
pub fn section(p: &HPolytope, f: &Subspace) -> Result<HPolytope> {
    Ok(section_described(p, f)?.h)
}

pub(crate) fn section_described(p: &HPolytope, f: &Subspace) -> Result<DoubleDescription> {
    let raw = section_unchecked(p, f)?;
    let dd = match describe_h(&raw) {
        Ok(dd) => dd,
        Err(GeomError::EmptyInterior) | Err(GeomError::Unbounded) => return Err(GeomError::EmptySection),
        Err(e) => return Err(e),
    };
    if dd.affine_dim() < f.dim() {
        return Err(GeomError::EmptySection);
    }
    Ok(dd)
}

fn section_unchecked(p: &HPolytope, f: &Subspace) -> Result<HPolytope> {
    if f.ambient_dim() != p.dim() {
        return Err(GeomError::DimensionMismatch { expected: p.dim(), got: f.ambient_dim() });
    }
    let mut normals = Vec::with_capacity(p.len());
    let mut offsets = Vec::with_capacity(p.len());
    for (a, &b) in p.normals().iter().zip(p.offsets()) {
        let na = f.coordinates(a);
        let nb = b - a.dot(f.offset());
        let norm = na.norm();
        if norm <= FLAT_TOL {
            if nb < -1e-9 {
                return Err(GeomError::EmptySection);
            }
            continue;
        }
        normals.push(na / norm);
        offsets.push(nb / norm);
    }
    if normals.len() <= f.dim() {
        return Err(GeomError::EmptySection);
    }
    Ok(HPolytope::from_unit_unchecked(f.dim(), normals, offsets))
}

/// `P_F(P)` in intrinsic coordinates of the linear subspace `F`, reduced to
/// its extreme points.
pub fn project(p: &VPolytope, f: &Subspace) -> Result<VPolytope> {
    if f.ambient_dim() != p.dim() {
        return Err(GeomError::DimensionMismatch { expected: p.dim(), got: f.ambient_dim() });
    }
    if !f.is_linear() {
        return Err(GeomError::InvalidInput("projection requires a linear subspace".into()));
    }
    let pts: Vec<DVector<f64>> = p.vertices().iter().map(|v| f.coordinates(v)).collect();
    VPolytope::new(pts)
}

/// `P° = conv{aⱼ / bⱼ}` for a body with the origin in its interior.
pub fn polar_h(p: &HPolytope) -> Result<VPolytope> {
    if !p.origin_interior() {
        return Err(GeomError::OriginNotInterior);
    }
    let pts: Vec<DVector<f64>> = p.normals().iter().zip(p.offsets()).map(|(a, &b)| a / b).collect();
    VPolytope::new(pts)
}

/// `P° = {x : ⟨vᵢ, x⟩ ≤ 1}` for a hull containing the origin in its interior.
pub fn polar_v(p: &VPolytope) -> Result<HPolytope> {
    let dd = describe_v(p.vertices())?;
    if !dd.h.origin_interior() {
        return Err(GeomError::OriginNotInterior);
    }
    let mut normals = Vec::with_capacity(dd.vertices.len());
    let mut offsets = Vec::with_capacity(dd.vertices.len());
    for v in &dd.vertices {
        let n = v.norm();
        normals.push(v / n);
        offsets.push(1.0 / n);
    }
    Ok(HPolytope::from_unit_unchecked(p.dim(), normals, offsets))
}

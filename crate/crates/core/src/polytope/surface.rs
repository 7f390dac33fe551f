use nalgebra::{DMatrix, DVector};

use super::volume::FaceLattice;
use super::{describe_h, HPolytope, Zonotope};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct FacetMeasure {
    pub normal: DVector<f64>,
    pub offset: f64,
    pub area: f64,
}

/// The surface area measure `Σ |Fⱼ| δ_{uⱼ}` of a polytope.
#[derive(Clone, Debug)]
pub struct SurfaceMeasure {
    pub dim: usize,
    /// Facets with positive `(n−1)`-volume, in inequality order.
    pub facets: Vec<FacetMeasure>,
    /// Total surface area `∂(K)`.
    pub total: f64,
    /// `|K|`, computed from the same face lattice.
    pub volume: f64,
}

impl SurfaceMeasure {
    /// `Σ |Fⱼ| uⱼ`, zero for closed polytopes.
    pub fn closure(&self) -> DVector<f64> {
        self.facets.iter().fold(DVector::zeros(self.dim), |acc, f| acc + &f.normal * f.area)
    }

    /// `(n / ∂K) Σ |Fⱼ| uⱼ ⊗ uⱼ`.
    pub fn isotropy_matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for f in &self.facets {
            m += &f.normal * f.normal.transpose() * f.area;
        }
        m * (self.dim as f64 / self.total)
    }
}

/// Facet areas by recursive triangulation inside each facet hyperplane.
pub fn surface_measure(p: &HPolytope) -> Result<SurfaceMeasure> {
    let dd = describe_h(p)?;
    let mut lattice = FaceLattice::new(&dd);
    let volume = lattice.volume();
    let mut facets = Vec::new();
    for j in 0..p.len() {
        let area = lattice.facet_area(j);
        if area > 0.0 {
            facets.push(FacetMeasure { normal: p.normals()[j].clone(), offset: p.offsets()[j], area });
        }
    }
    let total = facets.iter().map(|f| f.area).sum();
    Ok(SurfaceMeasure { dim: p.dim(), facets, total, volume })
}

/// `ΠK` as a zonotope: support `½ Σ |Fⱼ| |⟨x, uⱼ⟩|`. Antipodal facet pairs are
/// merged into a single generator `|Fⱼ| uⱼ`; unpaired facets contribute
/// `½ |Fⱼ| uⱼ`.
pub fn projection_body(p: &HPolytope) -> Result<Zonotope> {
    let sm = surface_measure(p)?;
    projection_body_from(&sm)
}

pub(crate) fn projection_body_from(sm: &SurfaceMeasure) -> Result<Zonotope> {
    let mut used = vec![false; sm.facets.len()];
    let mut gens = Vec::with_capacity(sm.facets.len());
    for i in 0..sm.facets.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let fi = &sm.facets[i];
        let partner = (i + 1..sm.facets.len()).find(|&j| {
            !used[j]
                && (&sm.facets[j].normal + &fi.normal).amax() <= 1e-9
                && (sm.facets[j].area - fi.area).abs() <= 1e-9 * fi.area.max(1.0)
        });
        match partner {
            Some(j) => {
                used[j] = true;
                gens.push(&fi.normal * fi.area);
            }
            None => gens.push(&fi.normal * (0.5 * fi.area)),
        }
    }
    Zonotope::new(sm.dim, gens)
}

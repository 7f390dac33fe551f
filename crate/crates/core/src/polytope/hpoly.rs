use nalgebra::{DMatrix, DVector};

use super::{SupportFunction, MAX_DIM, UNIT_TOL};
use crate::error::{GeomError, Result};
use crate::nnls::nnls;

/// Facet representation `{x : ⟨aⱼ, x⟩ ≤ bⱼ}` with unit normals `aⱼ`.
#[derive(Clone, Debug, PartialEq)]
pub struct HPolytope {
    dim: usize,
    normals: Vec<DVector<f64>>,
    offsets: Vec<f64>,
    symmetric: bool,
}

impl HPolytope {
    /// Builds a body from arbitrary nonzero normals, rescaling each inequality
    /// so the normal has unit length. Fails with [`GeomError::Unbounded`] if the
    /// normals do not positively span the space.
    pub fn new(normals: Vec<DVector<f64>>, offsets: Vec<f64>) -> Result<Self> {
        let p = Self::normalized(normals, offsets)?;
        if !positively_spans(&p.normals, p.dim) {
            return Err(GeomError::Unbounded);
        }
        Ok(p)
    }

    fn normalized(normals: Vec<DVector<f64>>, offsets: Vec<f64>) -> Result<Self> {
        if normals.len() != offsets.len() {
            return Err(GeomError::InvalidInput(format!("{} normals but {} offsets", normals.len(), offsets.len())));
        }
        let Some(first) = normals.first() else {
            return Err(GeomError::Unbounded);
        };
        let dim = first.len();
        if dim == 0 {
            return Err(GeomError::InvalidInput("dimension must be at least 1".into()));
        }
        let mut ns = Vec::with_capacity(normals.len());
        let mut bs = Vec::with_capacity(normals.len());
        for (a, b) in normals.into_iter().zip(offsets) {
            if a.len() != dim {
                return Err(GeomError::DimensionMismatch { expected: dim, got: a.len() });
            }
            let norm = a.norm();
            if !(norm > 0.0) || !b.is_finite() || !norm.is_finite() {
                return Err(GeomError::InvalidInput("zero or non-finite facet normal".into()));
            }
            // already-unit normals are kept bit for bit so files round-trip
            if (norm - 1.0).abs() <= UNIT_TOL {
                ns.push(a);
                bs.push(b);
            } else {
                ns.push(a / norm);
                bs.push(b / norm);
            }
        }
        Ok(Self::from_unit_unchecked(dim, ns, bs))
    }

    /// Assembles a body whose normals are already unit length and whose
    /// boundedness is known (for instance an image or section of a bounded
    /// body).
    pub(crate) fn from_unit_unchecked(dim: usize, normals: Vec<DVector<f64>>, offsets: Vec<f64>) -> Self {
        debug_assert!(normals.iter().all(|a| (a.norm() - 1.0).abs() < 1e-9));
        let symmetric = detect_symmetric(&normals, &offsets);
        Self { dim, normals, offsets, symmetric }
    }

    /// `[-1, 1]ⁿ`.
    pub fn cube(n: usize) -> Self {
        Self::scaled_cube(n, 1.0)
    }

    /// `[-a, a]ⁿ`.
    pub fn scaled_cube(n: usize, a: f64) -> Self {
        let mut normals = Vec::with_capacity(2 * n);
        for i in 0..n {
            for s in [1.0, -1.0] {
                let mut e = DVector::zeros(n);
                e[i] = s;
                normals.push(e);
            }
        }
        Self::from_unit_unchecked(n, normals, vec![a; 2 * n])
    }

    /// Axis-parallel box `∏ [lo_i, hi_i]`.
    pub fn axis_box(lo: &[f64], hi: &[f64]) -> Self {
        let n = lo.len();
        let mut normals = Vec::with_capacity(2 * n);
        let mut offsets = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut e = DVector::zeros(n);
            e[i] = 1.0;
            normals.push(e.clone());
            offsets.push(hi[i]);
            normals.push(-e);
            offsets.push(-lo[i]);
        }
        Self::from_unit_unchecked(n, normals, offsets)
    }

    /// `B₁ⁿ = {x : ‖x‖₁ ≤ 1}`, one facet per sign pattern.
    pub fn cross_polytope(n: usize) -> Self {
        let count = 1usize << n;
        let scale = 1.0 / (n as f64).sqrt();
        let mut normals = Vec::with_capacity(count);
        for mask in 0..count {
            normals.push(DVector::from_fn(n, |i, _| if mask >> i & 1 == 1 { -scale } else { scale }));
        }
        Self::from_unit_unchecked(n, normals, vec![scale; count])
    }

    /// Regular simplex `Sₙ` with inradius 1 centred at the origin: facet normals
    /// form a regular simplex on the sphere and every offset is 1.
    pub fn regular_simplex(n: usize) -> Self {
        Self::from_unit_unchecked(n, simplex_directions(n), vec![1.0; n + 1])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[DVector<f64>] {
        &self.normals
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// Normals and offsets come in antipodal pairs `(a, b) ↔ (−a, b)`.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Every offset is at least `1e-9`, i.e. the origin is an interior point.
    pub fn origin_interior(&self) -> bool {
        self.offsets.iter().all(|&b| b >= 1e-9)
    }

    pub fn contains(&self, x: &DVector<f64>, tol: f64) -> bool {
        self.normals.iter().zip(&self.offsets).all(|(a, &b)| a.dot(x) <= b + tol)
    }

    /// Minkowski gauge `‖x‖_P = maxⱼ ⟨aⱼ, x⟩ / bⱼ` (clamped at 0).
    pub fn gauge(&self, x: &DVector<f64>) -> Result<f64> {
        if !self.origin_interior() {
            return Err(GeomError::OriginNotInterior);
        }
        Ok(self.gauge_unchecked(x.as_slice()))
    }

    pub(crate) fn gauge_unchecked(&self, x: &[f64]) -> f64 {
        self.normals.iter().zip(&self.offsets).map(|(a, &b)| dot(a.as_slice(), x) / b).fold(0.0, f64::max)
    }

    /// Support function, evaluated as the largest `⟨x, v⟩` over the vertices.
    pub fn support_value(&self, x: &DVector<f64>) -> Result<f64> {
        let v = super::vertex_enumerate(self)?;
        Ok(v.support(x.as_slice()))
    }

    /// Image `{T x + t : x ∈ P}` under an invertible affine map.
    pub fn affine_image(&self, t: &DMatrix<f64>, shift: &DVector<f64>) -> Result<Self> {
        let inv = t.clone().try_inverse().ok_or_else(|| GeomError::InvalidInput("singular linear map".into()))?;
        let inv_t = inv.transpose();
        let mut normals = Vec::with_capacity(self.len());
        let mut offsets = Vec::with_capacity(self.len());
        for (a, &b) in self.normals.iter().zip(&self.offsets) {
            // ⟨a, T⁻¹(y − t)⟩ ≤ b  ⇔  ⟨T⁻ᵀa, y⟩ ≤ b + ⟨T⁻ᵀa, t⟩
            let na = &inv_t * a;
            let nb = b + na.dot(shift);
            let norm = na.norm();
            normals.push(na / norm);
            offsets.push(nb / norm);
        }
        Ok(Self::from_unit_unchecked(self.dim, normals, offsets))
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self::from_unit_unchecked(self.dim, self.normals.clone(), self.offsets.iter().map(|b| b * lambda).collect())
    }

    pub fn translated(&self, shift: &DVector<f64>) -> Self {
        let offsets = self.normals.iter().zip(&self.offsets).map(|(a, b)| b + a.dot(shift)).collect();
        Self::from_unit_unchecked(self.dim, self.normals.clone(), offsets)
    }

    /// Guard shared by all enumeration-based operations.
    pub(crate) fn check_guards(&self) -> Result<()> {
        if self.dim > MAX_DIM || self.len() > super::MAX_FACETS {
            return Err(GeomError::TooLarge(format!(
                "n = {} (max {}), m = {} (max {})",
                self.dim,
                MAX_DIM,
                self.len(),
                super::MAX_FACETS
            )));
        }
        Ok(())
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Positive spanning test: every `±eᵢ` must lie in the cone generated by the
/// normals (nonnegative least squares with zero residual).
pub(crate) fn positively_spans(normals: &[DVector<f64>], dim: usize) -> bool {
    if normals.len() <= dim {
        return false;
    }
    let a = crate::linalg::columns(normals, dim);
    (0..dim).all(|i| {
        [1.0, -1.0].iter().all(|&s| {
            let mut e = DVector::zeros(dim);
            e[i] = s;
            nnls(&a, &e, 1e-12).residual <= 1e-9
        })
    })
}

fn detect_symmetric(normals: &[DVector<f64>], offsets: &[f64]) -> bool {
    if normals.len() % 2 == 1 {
        return false;
    }
    normals.iter().zip(offsets).all(|(a, &b)| {
        normals
            .iter()
            .zip(offsets)
            .any(|(c, &d)| (a + c).amax() <= UNIT_TOL * 10.0 && (b - d).abs() <= 1e-12 * b.abs().max(1.0))
    })
}

/// `n + 1` unit vectors in `ℝⁿ` with pairwise inner products `−1/n`.
pub(crate) fn simplex_directions(n: usize) -> Vec<DVector<f64>> {
    // Centered standard basis of ℝⁿ⁺¹, expressed in an orthonormal basis of
    // the hyperplane Σ xᵢ = 0 (Helmert rows).
    let np1 = n + 1;
    let helmert: Vec<DVector<f64>> = (1..np1)
        .map(|r| {
            let c = 1.0 / ((r * (r + 1)) as f64).sqrt();
            DVector::from_fn(np1, |i, _| match i.cmp(&r) {
                std::cmp::Ordering::Less => c,
                std::cmp::Ordering::Equal => -(r as f64) * c,
                std::cmp::Ordering::Greater => 0.0,
            })
        })
        .collect();
    (0..np1)
        .map(|i| {
            let mut e = DVector::from_element(np1, -1.0 / np1 as f64);
            e[i] += 1.0;
            let coords = DVector::from_fn(n, |r, _| helmert[r].dot(&e));
            let norm = coords.norm();
            coords / norm
        })
        .collect()
}

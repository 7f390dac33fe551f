use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::nnls::nnls;
use crate::polytope::{HPolytope, Subspace};

/// Weights below this are treated as zero and dropped.
const WEIGHT_FLOOR: f64 = 1e-10;
/// Accepted residual of the fitted identity.
const FIT_TOL: f64 = 1e-7;

/// Unit vectors `uⱼ` and weights `cⱼ > 0` with `Σ cⱼ uⱼ ⊗ uⱼ = Iₙ` and
/// `Σ cⱼ uⱼ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct JohnDecomposition {
    pub dim: usize,
    pub contacts: Vec<DVector<f64>>,
    pub weights: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub contacts: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

fn frame_residual(dim: usize, vs: &[DVector<f64>], ws: &[f64]) -> f64 {
    let mut m = DMatrix::<f64>::identity(dim, dim);
    for (v, &w) in vs.iter().zip(ws) {
        m.ger(-w, v, v, 1.0);
    }
    m.norm()
}

fn weighted_sum(dim: usize, vs: &[DVector<f64>], ws: &[f64]) -> DVector<f64> {
    vs.iter().zip(ws).fold(DVector::zeros(dim), |acc, (v, &w)| acc + v * w)
}

impl JohnDecomposition {
    /// `‖Iₙ − Σ cⱼ uⱼ ⊗ uⱼ‖_F`.
    pub fn identity_residual(&self) -> f64 {
        frame_residual(self.dim, &self.contacts, &self.weights)
    }

    /// `‖Σ cⱼ uⱼ‖₂`.
    pub fn balance_residual(&self) -> f64 {
        weighted_sum(self.dim, &self.contacts, &self.weights).norm()
    }

    /// `|Σ cⱼ − n|`.
    pub fn trace_residual(&self) -> f64 {
        (self.weights.iter().sum::<f64>() - self.dim as f64).abs()
    }

    pub fn max_weight(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }

    /// Checks all four defining properties.
    pub fn is_valid(&self, tol: f64) -> bool {
        self.identity_residual() <= tol
            && self.balance_residual() <= tol
            && self.trace_residual() <= tol
            && self.weights.iter().all(|&c| c > 0.0 && c <= 1.0 + 1e-9)
    }

    pub fn to_file(&self) -> DecompositionFile {
        DecompositionFile {
            contacts: self.contacts.iter().map(|u| u.as_slice().to_vec()).collect(),
            weights: self.weights.clone(),
        }
    }

    pub fn from_file(f: &DecompositionFile) -> Result<Self> {
        let dim = f.contacts.first().map_or(0, |u| u.len());
        if f.contacts.len() != f.weights.len() || f.contacts.iter().any(|u| u.len() != dim) {
            return Err(GeomError::InvalidInput("malformed decomposition".into()));
        }
        Ok(Self {
            dim,
            contacts: f.contacts.iter().map(|u| DVector::from_column_slice(u)).collect(),
            weights: f.weights.clone(),
        })
    }
}

/// Default contact tolerance `1e-5 · maxⱼ bⱼ`.
pub fn default_contact_tol(p: &HPolytope) -> f64 {
    1e-5 * p.offsets().iter().copied().fold(0.0, f64::max)
}

/// Facet normals of a body in John position whose facets touch the unit
/// sphere, i.e. `bⱼ ≤ 1 + tol`.
pub fn contact_points(p: &HPolytope, tol: f64) -> Result<Vec<DVector<f64>>> {
    let min_b = p.offsets().iter().copied().fold(f64::INFINITY, f64::min);
    if min_b < 1.0 - tol {
        return Err(GeomError::NotInJohnPosition(format!("facet at distance {min_b} cuts the unit ball")));
    }
    let contacts: Vec<_> =
        p.normals().iter().zip(p.offsets()).filter(|(_, &b)| b <= 1.0 + tol).map(|(a, _)| a.clone()).collect();
    if contacts.len() < p.dim() {
        return Err(GeomError::NotInJohnPosition(format!(
            "{} contact points in dimension {}",
            contacts.len(),
            p.dim()
        )));
    }
    Ok(contacts)
}

/// Upper-triangular entries of `u ⊗ u`, off-diagonal ones scaled by `√2` so
/// that Euclidean norms match Frobenius norms.
fn sym_entries(u: &DVector<f64>) -> impl Iterator<Item = f64> + '_ {
    let n = u.len();
    (0..n).flat_map(move |i| {
        (i..n).map(move |j| if i == j { u[i] * u[i] } else { std::f64::consts::SQRT_2 * u[i] * u[j] })
    })
}

fn identity_entries(n: usize) -> impl Iterator<Item = f64> {
    (0..n).flat_map(move |i| (i..n).map(move |j| if i == j { 1.0 } else { 0.0 }))
}

fn antipodal_pairs(contacts: &[DVector<f64>]) -> Option<Vec<(usize, usize)>> {
    let mut used = vec![false; contacts.len()];
    let mut pairs = Vec::new();
    for i in 0..contacts.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let j = (0..contacts.len()).find(|&j| !used[j] && (&contacts[j] + &contacts[i]).amax() < 1e-9)?;
        used[j] = true;
        pairs.push((i, j));
    }
    Some(pairs)
}

/// Nonnegative weights realising the decomposition of the identity on the
/// given contact vectors. With `symmetric`, weights are fitted on antipodal
/// pairs and split evenly, so `Σ cⱼ uⱼ = 0` holds exactly.
pub fn fit_john_decomposition(contacts: &[DVector<f64>], symmetric: bool) -> Result<JohnDecomposition> {
    let Some(first) = contacts.first() else {
        return Err(GeomError::InfeasibleDecomposition { residual: f64::INFINITY });
    };
    let n = first.len();
    let contacts: Vec<DVector<f64>> = contacts.iter().map(|u| u / u.norm()).collect();
    let pairs = if symmetric { antipodal_pairs(&contacts) } else { None };

    let (raw, residual) = if let Some(pairs) = &pairs {
        let rows = n * (n + 1) / 2;
        let a = DMatrix::from_fn(rows, pairs.len(), |r, c| sym_entries(&contacts[pairs[c].0]).nth(r).unwrap());
        let b = DVector::from_iterator(rows, identity_entries(n));
        let sol = nnls(&a, &b, 1e-12);
        let mut w = vec![0.0; contacts.len()];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            w[i] = 0.5 * sol.x[k];
            w[j] = 0.5 * sol.x[k];
        }
        (w, sol.residual)
    } else {
        let rows = n * (n + 1) / 2 + n;
        let mut a = DMatrix::zeros(rows, contacts.len());
        for (c, u) in contacts.iter().enumerate() {
            for (r, v) in sym_entries(u).chain(u.iter().copied()).enumerate() {
                a[(r, c)] = v;
            }
        }
        let b = DVector::from_iterator(rows, identity_entries(n).chain(std::iter::repeat_n(0.0, n)));
        let sol = nnls(&a, &b, 1e-12);
        (sol.x.as_slice().to_vec(), sol.residual)
    };
    if !(residual <= FIT_TOL) {
        return Err(GeomError::InfeasibleDecomposition { residual });
    }
    let (cs, ws): (Vec<_>, Vec<_>) = contacts.into_iter().zip(raw).filter(|(_, w)| *w >= WEIGHT_FLOOR).unzip();
    Ok(JohnDecomposition { dim: n, contacts: cs, weights: ws })
}

/// `vⱼ = √(n/(n+1)) (−uⱼ, 1/√n) ∈ Sⁿ` with weights `δⱼ = (n+1) cⱼ / n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedDecomposition {
    /// Ambient dimension `n + 1`.
    pub dim: usize,
    pub vectors: Vec<DVector<f64>>,
    pub weights: Vec<f64>,
}

impl LiftedDecomposition {
    pub fn identity_residual(&self) -> f64 {
        frame_residual(self.dim, &self.vectors, &self.weights)
    }

    /// `‖Σ δⱼ vⱼ − (0, √(n+1))‖₂`.
    pub fn balance_residual(&self) -> f64 {
        let mut s = weighted_sum(self.dim, &self.vectors, &self.weights);
        s[self.dim - 1] -= (self.dim as f64).sqrt();
        s.norm()
    }

    pub fn trace_residual(&self) -> f64 {
        (self.weights.iter().sum::<f64>() - self.dim as f64).abs()
    }
}

pub fn lift_decomposition(d: &JohnDecomposition) -> LiftedDecomposition {
    let n = d.dim as f64;
    let scale = (n / (n + 1.0)).sqrt();
    let last = 1.0 / (n + 1.0).sqrt();
    let vectors = d
        .contacts
        .iter()
        .map(|u| {
            let mut v = u * -scale;
            v = v.insert_row(d.dim, last);
            v
        })
        .collect();
    let weights = d.weights.iter().map(|c| (n + 1.0) * c / n).collect();
    LiftedDecomposition { dim: d.dim + 1, vectors, weights }
}

/// A decomposition restricted to a subspace `E`: for every `j` with
/// `P_E xⱼ ≠ 0`, the unit vector `P_E xⱼ / ‖P_E xⱼ‖` (in coordinates of `E`)
/// with weight `ωⱼ ‖P_E xⱼ‖²`.
#[derive(Clone, Debug)]
pub struct RestrictedDecomposition {
    pub subspace: Subspace,
    /// Indices into the unrestricted decomposition.
    pub indices: Vec<usize>,
    pub vectors: Vec<DVector<f64>>,
    pub weights: Vec<f64>,
    /// `‖P_E xⱼ‖²`.
    pub norms_sq: Vec<f64>,
    /// `1 / ‖P_E xⱼ‖`.
    pub scalars: Vec<f64>,
    /// `Σ ωⱼ ‖P_E xⱼ‖ / √(dim E)`.
    pub d1: f64,
}

impl RestrictedDecomposition {
    fn build(subspace: Subspace, xs: &[DVector<f64>], ws: &[f64]) -> Self {
        let e = subspace.dim();
        let (mut indices, mut vectors, mut weights, mut norms_sq, mut scalars) =
            (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let mut first_moment = 0.0;
        for (j, (x, &w)) in xs.iter().zip(ws).enumerate() {
            let y = subspace.coordinates(x);
            let nsq = y.norm_squared();
            if nsq <= 1e-24 {
                continue;
            }
            let norm = nsq.sqrt();
            indices.push(j);
            vectors.push(y / norm);
            weights.push(w * nsq);
            norms_sq.push(nsq);
            scalars.push(1.0 / norm);
            first_moment += w * norm;
        }
        Self { subspace, indices, vectors, weights, norms_sq, scalars, d1: first_moment / (e as f64).sqrt() }
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn identity_residual(&self) -> f64 {
        frame_residual(self.dim(), &self.vectors, &self.weights)
    }

    pub fn trace_residual(&self) -> f64 {
        (self.weights.iter().sum::<f64>() - self.dim() as f64).abs()
    }
}

/// Restriction of `Σ cⱼ uⱼ ⊗ uⱼ = Iₙ` to a linear subspace `F`.
pub fn restrict_decomposition(d: &JohnDecomposition, f: &Subspace) -> Result<RestrictedDecomposition> {
    if f.ambient_dim() != d.dim {
        return Err(GeomError::DimensionMismatch { expected: d.dim, got: f.ambient_dim() });
    }
    if !f.is_linear() {
        return Err(GeomError::InvalidInput("restriction needs a linear subspace".into()));
    }
    Ok(RestrictedDecomposition::build(f.clone(), &d.contacts, &d.weights))
}

/// Restriction of the lifted decomposition to `H = span{(x, √n) : x ∈ F}`,
/// which is `F × ℝ` when `F` is linear.
pub fn restrict_lifted(l: &LiftedDecomposition, f: &Subspace) -> Result<RestrictedDecomposition> {
    let n = l.dim - 1;
    if f.ambient_dim() != n {
        return Err(GeomError::DimensionMismatch { expected: n, got: f.ambient_dim() });
    }
    let k = f.dim();
    let mut basis = DMatrix::zeros(n + 1, k + 1);
    basis.view_mut((0, 0), (n, k)).copy_from(f.basis());
    let p = f.offset();
    let norm = (p.norm_squared() + n as f64).sqrt();
    for i in 0..n {
        basis[(i, k)] = p[i] / norm;
    }
    basis[(n, k)] = (n as f64).sqrt() / norm;
    let h = Subspace::linear(basis)?;
    Ok(RestrictedDecomposition::build(h, &l.vectors, &l.weights))
}

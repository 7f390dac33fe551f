//! Vertex and facet enumeration by the double-description method.
//!
//! An H-polytope `{x : ⟨aⱼ, x⟩ ≤ bⱼ}` is homogenized to the cone
//! `{(x, t) : bⱼ t − ⟨aⱼ, x⟩ ≥ 0, t ≥ 0}`; its extreme rays with `t > 0` are the
//! vertices. Constraints are added one at a time and new rays are formed from
//! combinatorially adjacent pairs, so degenerate vertices (more than `n` tight
//! facets) need no special handling. Zero sets are kept as `u128` bitmasks,
//! which is what bounds the facet count at 64 (+1 for `t ≥ 0`).

use nalgebra::{DMatrix, DVector};

use super::{HPolytope, VPolytope, MAX_DIM, MAX_FACETS, MERGE_TOL};
use crate::error::{GeomError, Result};
use crate::linalg::{affine_basis, orthonormal_basis};

const SIGN_EPS: f64 = 1e-10;

/// Both representations of a full-dimensional polytope together with the
/// vertex–facet incidences.
#[derive(Clone, Debug)]
pub struct DoubleDescription {
    pub h: HPolytope,
    /// Vertices sorted lexicographically.
    pub vertices: Vec<DVector<f64>>,
    /// For each inequality of `h`, the indices of the vertices it is tight at.
    pub facet_vertices: Vec<Vec<usize>>,
}

impl DoubleDescription {
    pub fn dim(&self) -> usize {
        self.h.dim()
    }

    /// Affine dimension of the vertex set.
    pub fn affine_dim(&self) -> usize {
        affine_basis(self.vertices.iter(), 1e-10).len()
    }
}

/// All vertices of a bounded H-polytope.
pub fn vertex_enumerate(p: &HPolytope) -> Result<VPolytope> {
    let dd = describe_h(p)?;
    Ok(VPolytope::from_vertices_unchecked(p.dim(), dd.vertices))
}

/// Minimal facet description of `conv(V)`.
pub fn facet_enumerate(v: &VPolytope) -> Result<HPolytope> {
    Ok(describe_v(v.vertices())?.h)
}

/// Vertex enumeration keeping incidences. Fails with
/// [`GeomError::EmptyInterior`] when the inequalities have no solution.
pub fn describe_h(p: &HPolytope) -> Result<DoubleDescription> {
    p.check_guards()?;
    let raw = enumerate_raw(p.dim(), p.normals(), p.offsets())?;
    if raw.is_empty() {
        return Err(GeomError::EmptyInterior);
    }
    let m = p.len();
    let mut facet_vertices = vec![Vec::new(); m];
    let mut vertices = Vec::with_capacity(raw.len());
    for (i, (x, zeros)) in raw.into_iter().enumerate() {
        for (j, fv) in facet_vertices.iter_mut().enumerate() {
            if zeros >> j & 1 == 1 {
                fv.push(i);
            }
        }
        vertices.push(x);
    }
    Ok(DoubleDescription { h: p.clone(), vertices, facet_vertices })
}

/// Convex hull of a point set: facets, extreme points and incidences.
pub fn describe_v(points: &[DVector<f64>]) -> Result<DoubleDescription> {
    let Some(first) = points.first() else {
        return Err(GeomError::DegenerateDim { affine_dim: 0, dim: 1 });
    };
    let n = first.len();
    if n > MAX_DIM || points.len() > MAX_FACETS {
        return Err(GeomError::TooLarge(format!(
            "n = {n} (max {MAX_DIM}), {} points (max {MAX_FACETS})",
            points.len()
        )));
    }
    let points = merge_points(points);
    let affine_dim = affine_basis(points.iter(), 1e-10).len();
    if affine_dim < n {
        return Err(GeomError::DegenerateDim { affine_dim, dim: n });
    }
    let centroid = points.iter().fold(DVector::zeros(n), |acc, p| acc + p) / points.len() as f64;
    // Facets of conv(V) are the vertices of the polar {y : ⟨v − c, y⟩ ≤ 1}.
    let rows: Vec<DVector<f64>> = points.iter().map(|p| p - &centroid).collect();
    let ones = vec![1.0; rows.len()];
    let polar_vertices = enumerate_raw(n, &rows, &ones)?;

    let mut normals = Vec::with_capacity(polar_vertices.len());
    let mut offsets = Vec::with_capacity(polar_vertices.len());
    let mut incidence = Vec::with_capacity(polar_vertices.len());
    for (y, zeros) in &polar_vertices {
        let norm = y.norm();
        let a = y / norm;
        offsets.push(a.dot(&centroid) + 1.0 / norm);
        normals.push(a);
        incidence.push(*zeros);
    }

    // A point is extreme iff the normals of the facets through it span ℝⁿ.
    let extreme: Vec<usize> = (0..points.len())
        .filter(|&i| {
            let through: Vec<&DVector<f64>> =
                normals.iter().zip(&incidence).filter(|(_, z)| *z >> i & 1 == 1).map(|(a, _)| a).collect();
            orthonormal_basis(through, 1e-9).len() == n
        })
        .collect();
    let mut order = extreme.clone();
    order.sort_by(|&i, &j| lex_cmp(&points[i], &points[j]));
    let mut new_index = vec![usize::MAX; points.len()];
    for (k, &i) in order.iter().enumerate() {
        new_index[i] = k;
    }
    let vertices: Vec<DVector<f64>> = order.iter().map(|&i| points[i].clone()).collect();
    let facet_vertices = incidence
        .iter()
        .map(|z| {
            let mut vs: Vec<usize> = (0..points.len())
                .filter(|&i| z >> i & 1 == 1 && new_index[i] != usize::MAX)
                .map(|i| new_index[i])
                .collect();
            vs.sort_unstable();
            vs
        })
        .collect();
    let h = HPolytope::from_unit_unchecked(n, normals, offsets);
    Ok(DoubleDescription { h, vertices, facet_vertices })
}

fn lex_cmp(a: &DVector<f64>, b: &DVector<f64>) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}

fn merge_points(points: &[DVector<f64>]) -> Vec<DVector<f64>> {
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| (q - p).amax() <= MERGE_TOL) {
            out.push(p.clone());
        }
    }
    out
}

/// Vertices (sorted lexicographically, duplicates merged) of
/// `{x : ⟨aⱼ, x⟩ ≤ bⱼ}` with bit `j` of the mask set when inequality `j` is
/// tight. Normals need not be unit length.
fn enumerate_raw(n: usize, normals: &[DVector<f64>], offsets: &[f64]) -> Result<Vec<(DVector<f64>, u128)>> {
    let m = normals.len();
    // Row 0 is t ≥ 0; row j + 1 is bⱼ t − ⟨aⱼ, x⟩ ≥ 0.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
    let mut t_row = vec![0.0; n + 1];
    t_row[n] = 1.0;
    rows.push(t_row);
    for (a, &b) in normals.iter().zip(offsets) {
        let mut r: Vec<f64> = a.iter().map(|x| -x).collect();
        r.push(b);
        let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        rows.push(r.into_iter().map(|x| x / norm).collect());
    }
    let rays = cone_rays(&rows)?;

    let mut verts: Vec<(DVector<f64>, u128)> = Vec::with_capacity(rays.len());
    for ray in rays {
        let t = ray.v[n];
        if t <= 1e-12 {
            return Err(GeomError::Unbounded);
        }
        let x = DVector::from_fn(n, |i, _| ray.v[i] / t);
        let zeros = ray.zeros >> 1;
        let x = polish(&x, zeros, normals, offsets);
        let mut zeros = zeros;
        for (j, (a, &b)) in normals.iter().zip(offsets).enumerate() {
            let scale = a.norm();
            if (b - a.dot(&x)).abs() <= MERGE_TOL * scale.max(b.abs()).max(1.0) {
                zeros |= 1 << j;
            }
        }
        match verts.iter_mut().find(|(y, _)| (y - &x).amax() <= MERGE_TOL) {
            Some(entry) => entry.1 |= zeros,
            None => verts.push((x, zeros)),
        }
    }
    verts.sort_by(|a, b| lex_cmp(&a.0, &b.0));
    Ok(verts)
}

/// Least-squares refinement of a vertex on its tight inequalities.
fn polish(x: &DVector<f64>, zeros: u128, normals: &[DVector<f64>], offsets: &[f64]) -> DVector<f64> {
    let n = x.len();
    let tight: Vec<usize> = (0..normals.len()).filter(|&j| zeros >> j & 1 == 1).collect();
    if tight.len() < n {
        return x.clone();
    }
    let a = DMatrix::from_fn(tight.len(), n, |r, c| normals[tight[r]][c]);
    let b = DVector::from_fn(tight.len(), |r, _| offsets[tight[r]]);
    let svd = a.svd(true, true);
    if svd.rank(1e-10 * svd.singular_values.max()) < n {
        return x.clone();
    }
    match svd.solve(&b, 1e-14) {
        Ok(y) if (&y - x).amax() <= 1e-6 * x.amax().max(1.0) => y,
        _ => x.clone(),
    }
}

struct Ray {
    v: Vec<f64>,
    zeros: u128,
}

fn dotv(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Extreme rays of the pointed cone `{y : ⟨rᵢ, y⟩ ≥ 0}`.
fn cone_rays(rows: &[Vec<f64>]) -> Result<Vec<Ray>> {
    let d = rows[0].len();
    if rows.len() > 128 {
        return Err(GeomError::TooLarge(format!("{} constraints", rows.len())));
    }
    // Initial basis: greedily pick d independent rows, starting with row 0.
    let mut basis_rows: Vec<usize> = Vec::with_capacity(d);
    let mut ortho: Vec<Vec<f64>> = Vec::with_capacity(d);
    for (i, r) in rows.iter().enumerate() {
        let mut q = r.clone();
        for _ in 0..2 {
            for o in &ortho {
                let c = dotv(o, &q);
                q.iter_mut().zip(o).for_each(|(x, y)| *x -= c * y);
            }
        }
        let qn = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if qn > 1e-9 {
            ortho.push(q.into_iter().map(|x| x / qn).collect());
            basis_rows.push(i);
            if basis_rows.len() == d {
                break;
            }
        }
    }
    if basis_rows.len() < d {
        return Err(GeomError::Unbounded);
    }
    let b = DMatrix::from_fn(d, d, |r, c| rows[basis_rows[r]][c]);
    let inv = b.try_inverse().ok_or(GeomError::Unbounded)?;
    let all_basis: u128 = basis_rows.iter().fold(0, |acc, &i| acc | 1 << i);
    let mut rays: Vec<Ray> = (0..d)
        .map(|c| {
            let col: Vec<f64> = inv.column(c).iter().copied().collect();
            let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
            Ray { v: col.into_iter().map(|x| x / norm).collect(), zeros: all_basis & !(1 << basis_rows[c]) }
        })
        .collect();

    for (h, row) in rows.iter().enumerate() {
        if all_basis >> h & 1 == 1 {
            continue;
        }
        let s: Vec<f64> = rays.iter().map(|r| dotv(row, &r.v)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| s[i] > SIGN_EPS).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| s[i] < -SIGN_EPS).collect();
        if minus.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if s[i].abs() <= SIGN_EPS {
                    r.zeros |= 1 << h;
                }
            }
            continue;
        }
        let mut created: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let common = rays[p].zeros & rays[q].zeros;
                if (common.count_ones() as usize) + 2 < d {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(i, r)| i == p || i == q || r.zeros & common != common);
                if !adjacent {
                    continue;
                }
                let (sp, sq) = (s[p], s[q]);
                let mut v: Vec<f64> = rays[q].v.iter().zip(&rays[p].v).map(|(yq, yp)| sp * yq - sq * yp).collect();
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                v.iter_mut().for_each(|x| *x /= norm);
                created.push(Ray { v, zeros: common | 1 << h });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if s[i] > SIGN_EPS {
                next.push(r);
            } else if s[i] >= -SIGN_EPS {
                r.zeros |= 1 << h;
                next.push(r);
            }
        }
        next.extend(created);
        rays = next;
    }
    Ok(rays)
}

//! Volumes by recursive triangulation over the face lattice.
//!
//! A `d`-face with vertex set `V` is coned from its lowest-index vertex `v₀`
//! over every `(d−1)`-subface not containing `v₀`:
//! `vol_d(F) = Σ dist(v₀, aff G) · vol_{d−1}(G) / d`. Subfaces are the
//! intersections of `F` with the global facets that have affine dimension
//! `d − 1`. Lowest-index anchoring over lexicographically sorted vertices makes
//! the triangulation reproducible.

use std::collections::{HashMap, HashSet};

use nalgebra::DVector;

use super::{describe_h, describe_v, DoubleDescription, HPolytope, VPolytope};
use crate::error::Result;
use crate::linalg::{affine_basis, distance_to_affine};

// Incidence admits vertices within MERGE_TOL of a facet, so rank tests must sit
// well above it.
const RANK_TOL: f64 = 1e-7;

pub fn volume_h(p: &HPolytope) -> Result<f64> {
    Ok(FaceLattice::new(&describe_h(p)?).volume())
}

pub fn volume_v(p: &VPolytope) -> Result<f64> {
    Ok(FaceLattice::new(&describe_v(p.vertices())?).volume())
}

/// Volume of an already enumerated body.
pub fn volume_dd(dd: &DoubleDescription) -> f64 {
    FaceLattice::new(dd).volume()
}

pub(crate) struct FaceLattice<'a> {
    dim: usize,
    vertices: &'a [DVector<f64>],
    facets: Vec<&'a [usize]>,
    memo: HashMap<Vec<usize>, f64>,
}

impl<'a> FaceLattice<'a> {
    pub(crate) fn new(dd: &'a DoubleDescription) -> Self {
        Self {
            dim: dd.dim(),
            vertices: &dd.vertices,
            facets: dd.facet_vertices.iter().map(|f| f.as_slice()).collect(),
            memo: HashMap::new(),
        }
    }

    /// Full-dimensional volume; zero for flat vertex sets.
    pub(crate) fn volume(&mut self) -> f64 {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        if affine_basis(all.iter().map(|&i| &self.vertices[i]), RANK_TOL).len() < self.dim {
            return 0.0;
        }
        self.face_volume(&all, self.dim)
    }

    /// `(n−1)`-volume of facet `j` (zero if it is not a true facet).
    pub(crate) fn facet_area(&mut self, j: usize) -> f64 {
        let verts = self.facets[j].to_vec();
        if verts.len() < self.dim
            || affine_basis(verts.iter().map(|&i| &self.vertices[i]), RANK_TOL).len() != self.dim - 1
        {
            return 0.0;
        }
        self.face_volume(&verts, self.dim - 1)
    }

    fn face_volume(&mut self, verts: &[usize], d: usize) -> f64 {
        match d {
            0 => return 1.0,
            1 => {
                let a = &self.vertices[verts[0]];
                return verts.iter().map(|&i| (&self.vertices[i] - a).norm()).fold(0.0, f64::max);
            }
            _ => {}
        }
        if let Some(&v) = self.memo.get(verts) {
            return v;
        }
        let anchor = verts[0];
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut total = 0.0;
        for f in 0..self.facets.len() {
            let sub: Vec<usize> = verts.iter().copied().filter(|i| self.facets[f].binary_search(i).is_ok()).collect();
            if sub.len() < d || sub.len() == verts.len() || sub[0] == anchor || seen.contains(&sub) {
                continue;
            }
            let basis = affine_basis(sub.iter().map(|&i| &self.vertices[i]), RANK_TOL);
            if basis.len() != d - 1 {
                continue;
            }
            let height = distance_to_affine(&self.vertices[anchor], &self.vertices[sub[0]], &basis);
            let vol = self.face_volume(&sub, d - 1);
            total += height * vol / d as f64;
            seen.insert(sub);
        }
        self.memo.insert(verts.to_vec(), total);
        total
    }
}

use nalgebra::DVector;

use super::distance::project_onto_polytope;
use super::estimate::McEstimate;
use super::rng::sample_moments;
use crate::error::Result;
use crate::polytope::{describe_h, describe_v, volume_dd, DoubleDescription, HPolytope, VPolytope};

/// Distance by which the sampling box exceeds the bounding box of the body.
pub const WILLS_MARGIN: f64 = 3.0;

/// Wills functional `𝒲(P) = ∫ e^{−π d(x, P)²} dx`.
///
/// The volume of `P` is computed exactly and only the exterior part of the
/// integral is sampled, uniformly in the bounding box inflated by
/// [`WILLS_MARGIN`]. The neglected tail is reported as `bias_bound`.
pub fn wills_mc(p: &HPolytope, samples: usize, seed: u64) -> Result<McEstimate> {
    Ok(wills_dd(&describe_h(p)?, samples, seed))
}

/// [`wills_mc`] for a convex hull. Hulls may have more facets than the
/// vertex enumeration accepts.
pub fn wills_mc_v(p: &VPolytope, samples: usize, seed: u64) -> Result<McEstimate> {
    Ok(wills_dd(&describe_v(p.vertices())?, samples, seed))
}

fn wills_dd(dd: &DoubleDescription, samples: usize, seed: u64) -> McEstimate {
    let p = &dd.h;
    let vol = volume_dd(dd);
    let n = p.dim();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for v in &dd.vertices {
        for i in 0..n {
            lo[i] = lo[i].min(v[i] - WILLS_MARGIN);
            hi[i] = hi[i].max(v[i] + WILLS_MARGIN);
        }
    }
    let box_measure: f64 = lo.iter().zip(&hi).map(|(a, b)| b - a).product();
    let m = sample_moments(samples, seed, |s| {
        let x = DVector::from_fn(n, |i, _| lo[i] + (hi[i] - lo[i]) * s.uniform());
        let outside = p.normals().iter().zip(p.offsets()).any(|(a, &b)| a.dot(&x) > b);
        if !outside {
            return 0.0;
        }
        match project_onto_polytope(p, &x) {
            Ok((_, d)) => (-std::f64::consts::PI * d * d).exp(),
            Err(_) => f64::NAN,
        }
    });
    let mut est = McEstimate::from_moments(&m, box_measure, vol, seed);
    est.bias_bound = (-9.0 * std::f64::consts::PI).exp() * box_measure;
    est
}

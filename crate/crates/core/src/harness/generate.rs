use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::functionals::Stream;
use crate::polytope::{HPolytope, Subspace};

const ATTEMPTS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BodyClass {
    Symmetric,
    General,
    Cube,
    Simplex,
    CrossPolytope,
}

impl BodyClass {
    pub fn name(self) -> &'static str {
        match self {
            BodyClass::Symmetric => "symmetric",
            BodyClass::General => "general",
            BodyClass::Cube => "cube",
            BodyClass::Simplex => "simplex",
            BodyClass::CrossPolytope => "cross-polytope",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "symmetric" => BodyClass::Symmetric,
            "general" => BodyClass::General,
            "cube" => BodyClass::Cube,
            "simplex" => BodyClass::Simplex,
            "cross-polytope" | "cross" => BodyClass::CrossPolytope,
            _ => return None,
        })
    }

    pub fn is_symmetric(self) -> bool {
        matches!(self, BodyClass::Symmetric | BodyClass::Cube | BodyClass::CrossPolytope)
    }
}

/// SplitMix64 finaliser, used to derive independent seeds.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn unit_vector(s: &mut Stream, n: usize) -> DVector<f64> {
    loop {
        let g = DVector::from_fn(n, |_, _| s.gaussian());
        let norm = g.norm();
        if norm > 1e-12 {
            return g / norm;
        }
    }
}

/// A random or named body. Random classes draw `m` unit normals with unit
/// offsets (in antipodal pairs for `Symmetric`, so `m` is rounded down to
/// even); `General` bodies are then translated by a random interior point so
/// the origin stays inside.
pub fn gen_body(class: BodyClass, n: usize, m: usize, seed: u64) -> Result<HPolytope> {
    match class {
        BodyClass::Cube => return Ok(HPolytope::cube(n)),
        BodyClass::Simplex => return Ok(HPolytope::regular_simplex(n)),
        BodyClass::CrossPolytope => return Ok(HPolytope::cross_polytope(n)),
        _ => {}
    }
    let mut s = Stream::new(seed, 0);
    for _ in 0..ATTEMPTS {
        let normals: Vec<DVector<f64>> = if class == BodyClass::Symmetric {
            (0..m / 2)
                .flat_map(|_| {
                    let u = unit_vector(&mut s, n);
                    [u.clone(), -u]
                })
                .collect()
        } else {
            (0..m).map(|_| unit_vector(&mut s, n)).collect()
        };
        let count = normals.len();
        let Ok(p) = HPolytope::new(normals, vec![1.0; count]) else { continue };
        if class == BodyClass::Symmetric {
            return Ok(p);
        }
        // move a random interior point to the origin
        let theta = unit_vector(&mut s, n);
        let exit = p
            .normals()
            .iter()
            .map(|a| a.dot(&theta))
            .filter(|&c| c > 1e-12)
            .map(|c| 1.0 / c)
            .fold(f64::INFINITY, f64::min);
        let x0 = theta * (0.8 * s.uniform() * exit);
        return Ok(p.translated(&(-x0)));
    }
    Err(GeomError::GenerationFailed(ATTEMPTS))
}

/// Haar-distributed `k`-subspace (QR of a Gaussian matrix), translated by `d`
/// in a random direction orthogonal to it.
pub fn sample_subspace(n: usize, k: usize, d: f64, seed: u64) -> Result<Subspace> {
    if !(1 <= k && k <= n) || !(d >= 0.0) {
        return Err(GeomError::InvalidInput(format!("need 1 ≤ k ≤ n and d ≥ 0, got n={n}, k={k}, d={d}")));
    }
    if k == n {
        return Ok(Subspace::full(n));
    }
    let mut s = Stream::new(seed, 1);
    loop {
        let g = DMatrix::from_fn(n, k, |_, _| s.gaussian());
        let qr = g.qr();
        let r = qr.r();
        if (0..k).any(|i| r[(i, i)].abs() < 1e-8) {
            continue;
        }
        // fix signs so the distribution is exactly Haar
        let mut q = qr.q();
        for j in 0..k {
            if r[(j, j)] < 0.0 {
                q.column_mut(j).neg_mut();
            }
        }
        let mut offset = DVector::zeros(n);
        if d > 0.0 {
            let mut v = DVector::from_fn(n, |_, _| s.gaussian());
            v -= &q * (q.transpose() * &v);
            v -= &q * (q.transpose() * &v);
            let norm = v.norm();
            if norm < 1e-8 {
                continue;
            }
            offset = v * (d / norm);
        }
        return Subspace::new(q, offset);
    }
}

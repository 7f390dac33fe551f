use super::constants::unit_ball_volume;
use super::estimate::McEstimate;
use super::rng::sample_moments;
use crate::polytope::SupportFunction;

/// `w(K) = ∫ h_K dσ` over `N` uniformly distributed directions.
pub fn mean_width_mc<K: SupportFunction + Sync + ?Sized>(body: &K, samples: usize, seed: u64) -> McEstimate {
    let n = body.dim();
    let m = sample_moments(samples, seed, |s| {
        let mut g = vec![0.0; n];
        loop {
            s.fill_gaussian(&mut g);
            let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 0.0 {
                g.iter_mut().for_each(|x| *x /= norm);
                return body.support(&g);
            }
        }
    });
    McEstimate::from_moments(&m, 1.0, 0.0, seed)
}

/// `E h_K(G)` for a standard Gaussian vector `G`; equals `c_n · w(K)`.
pub fn gaussian_support_mc<K: SupportFunction + Sync + ?Sized>(body: &K, samples: usize, seed: u64) -> McEstimate {
    let n = body.dim();
    let m = sample_moments(samples, seed, |s| {
        let mut g = vec![0.0; n];
        s.fill_gaussian(&mut g);
        body.support(&g)
    });
    McEstimate::from_moments(&m, 1.0, 0.0, seed)
}

/// `|K°| = |B₂ᵏ| ∫ h_K(θ)^{−k} dσ(θ)` for a body with the origin in its
/// interior, sampling directions uniformly.
pub fn polar_volume_mc<K: SupportFunction + Sync + ?Sized>(body: &K, samples: usize, seed: u64) -> McEstimate {
    let n = body.dim();
    let m = sample_moments(samples, seed, |s| {
        let mut g = vec![0.0; n];
        loop {
            s.fill_gaussian(&mut g);
            let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 0.0 {
                g.iter_mut().for_each(|x| *x /= norm);
                return body.support(&g).powi(-(n as i32));
            }
        }
    });
    McEstimate::from_moments(&m, unit_ball_volume(n), 0.0, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::gaussian_width_constant;
    use crate::polytope::{vertex_enumerate, Ellipsoid, HPolytope};

    #[test]
    fn ball_has_unit_width() {
        let e = mean_width_mc(&Ellipsoid::unit_ball(4), 1000, 1);
        assert!((e.value - 1.0).abs() < 1e-12);
        assert!(e.std_error < 1e-12);
    }

    #[test]
    fn segment_width() {
        let seg = vertex_enumerate(&HPolytope::cube(1)).unwrap();
        let e = mean_width_mc(&seg, 100, 1);
        assert_eq!(e.value, 1.0);
    }

    #[test]
    fn square_width() {
        let sq = vertex_enumerate(&HPolytope::cube(2)).unwrap();
        let e = mean_width_mc(&sq, 200_000, 5);
        assert!((e.value - 4.0 / std::f64::consts::PI).abs() < 3.0 * e.std_error);
    }

    #[test]
    fn dilation_scales_width() {
        let sq = vertex_enumerate(&HPolytope::cube(2)).unwrap();
        let a = mean_width_mc(&sq, 100_000, 9);
        let b = mean_width_mc(&sq.scaled(2.0), 100_000, 10);
        assert!((b.value - 2.0 * a.value).abs() < 3.0 * (b.std_error + 2.0 * a.std_error));
    }

    #[test]
    fn gaussian_over_spherical_average() {
        let sq = vertex_enumerate(&HPolytope::cube(2)).unwrap();
        let g = gaussian_support_mc(&sq, 400_000, 2);
        let c = gaussian_width_constant(2);
        let w = 4.0 / std::f64::consts::PI;
        assert!((g.value / w - c).abs() < 3.0 * g.std_error / w);
    }

    #[test]
    fn same_seed_same_bits() {
        let sq = vertex_enumerate(&HPolytope::cube(3)).unwrap();
        let a = mean_width_mc(&sq, 10_000, 77);
        let b = mean_width_mc(&sq, 10_000, 77);
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }

    #[test]
    fn polar_of_cross_polytope_is_cube() {
        let oct = crate::polytope::polar_h(&HPolytope::cube(3)).unwrap();
        let e = polar_volume_mc(&oct, 200_000, 4);
        assert!((e.value - 8.0).abs() < 3.0 * e.std_error);
        // square: polar is the diamond of area 2
        let sq = vertex_enumerate(&HPolytope::cube(2)).unwrap();
        let e = polar_volume_mc(&sq, 200_000, 5);
        assert!((e.value - 2.0).abs() < 3.0 * e.std_error);
    }
}

use super::estimate::McEstimate;
use super::rng::{sample_moments, sample_moments_vec};
use crate::error::{GeomError, Result};
use crate::polytope::HPolytope;

/// `γ_k(tP)`: the fraction of standard Gaussian samples with `‖g‖_P ≤ t`.
pub fn gaussian_measure_mc(p: &HPolytope, t: f64, samples: usize, seed: u64) -> Result<McEstimate> {
    Ok(gaussian_measure_grid_mc(p, &[t], samples, seed)?.remove(0))
}

/// `γ_k(tP)` for every `t` in `ts`, from one shared sample.
pub fn gaussian_measure_grid_mc(p: &HPolytope, ts: &[f64], samples: usize, seed: u64) -> Result<Vec<McEstimate>> {
    if !p.origin_interior() {
        return Err(GeomError::OriginNotInterior);
    }
    let n = p.dim();
    let ms = sample_moments_vec(samples, seed, ts.len(), |s, out| {
        let mut g = [0.0; 16];
        let g = if n <= 16 { &mut g[..n] } else { unreachable!("dimension guard") };
        s.fill_gaussian(g);
        let r = p.gauge_unchecked(g);
        for (o, &t) in out.iter_mut().zip(ts) {
            *o = if r <= t { 1.0 } else { 0.0 };
        }
    });
    Ok(ms
        .iter()
        .map(|m| {
            let q = m.mean;
            // Laplace-smoothed proportion for the error, so that a sample
            // falling entirely inside (or outside) does not claim zero error
            let n = m.count as f64;
            let qs = (q * n + 1.0) / (n + 2.0);
            McEstimate {
                value: q,
                std_error: (qs * (1.0 - qs) / n.max(1.0)).sqrt(),
                samples: m.count,
                seed,
                bias_bound: 0.0,
            }
        })
        .collect())
}

/// `∫ exp(−‖x‖²/4π − ‖x‖_{λP}) dx` over the span of `P`, by importance
/// sampling from the centred Gaussian with covariance `2π I`.
pub fn polar_wills_integral_mc(p: &HPolytope, lambda: f64, samples: usize, seed: u64) -> Result<McEstimate> {
    if !p.origin_interior() {
        return Err(GeomError::OriginNotInterior);
    }
    if !(lambda > 0.0) {
        return Err(GeomError::InvalidInput(format!("scale must be positive, got {lambda}")));
    }
    let n = p.dim();
    let tau = std::f64::consts::TAU;
    let sd = tau.sqrt();
    let m = sample_moments(samples, seed, |s| {
        let mut g = [0.0; 16];
        let g = &mut g[..n];
        s.fill_gaussian(g);
        (-sd * p.gauge_unchecked(g) / lambda).exp()
    });
    Ok(McEstimate::from_moments(&m, tau.powi(n as i32), 0.0, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use libm::erf;

    #[test]
    fn unit_interval() {
        let e = gaussian_measure_mc(&HPolytope::cube(1), 1.0, 400_000, 1).unwrap();
        assert!((e.value - erf(0.5f64.sqrt())).abs() < 3.0 * e.std_error);
        assert!((erf(0.5f64.sqrt()) - 0.682_689_492_137_086).abs() < 1e-12, "{}", erf(0.5f64.sqrt()));
    }

    #[test]
    fn extreme_scales() {
        let c = HPolytope::cube(2);
        assert_eq!(gaussian_measure_mc(&c, 0.0, 10_000, 1).unwrap().value, 0.0);
        assert_eq!(gaussian_measure_mc(&c, 1e3, 10_000, 1).unwrap().value, 1.0);
    }

    #[test]
    fn grid_is_monotone() {
        let ts: Vec<f64> = (0..20).map(|i| 0.2 * i as f64).collect();
        let e = gaussian_measure_grid_mc(&HPolytope::regular_simplex(3), &ts, 50_000, 4).unwrap();
        assert!(e.windows(2).all(|w| w[0].value <= w[1].value));
    }

    #[test]
    fn cube_measure_is_product() {
        let e = gaussian_measure_mc(&HPolytope::cube(3), 0.8, 400_000, 2).unwrap();
        let exact = erf(0.8 / 2f64.sqrt()).powi(3);
        assert!((e.value - exact).abs() < 3.0 * e.std_error);
    }

    /// `∫ exp(−x²/4π − |x|/λ) dx` on the line by Simpson's rule.
    fn line_oracle(lambda: f64) -> f64 {
        let (a, n) = (60.0, 200_000);
        let h = a / n as f64;
        let f = |x: f64| (-x * x / (4.0 * std::f64::consts::PI) - x / lambda).exp();
        let mut s = f(0.0) + f(a);
        for i in 1..n {
            s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        2.0 * s * h / 3.0
    }

    #[test]
    fn interval_matches_quadrature() {
        for lambda in [0.5, 1.0, 3.0] {
            let e = polar_wills_integral_mc(&HPolytope::cube(1), lambda, 400_000, 7).unwrap();
            assert!((e.value - line_oracle(lambda)).abs() < 3.0 * e.std_error, "{lambda}: {e:?}");
        }
    }

    #[test]
    fn small_scale_limit_is_factorial_volume() {
        // λ⁻ᵏ ∫ e^{−‖x‖_{λP}} dx = k! |P| and the Gaussian factor → 1 as λ → 0
        let lambda: f64 = 0.1;
        let e = polar_wills_integral_mc(&HPolytope::cube(2), lambda, 4_000_000, 3).unwrap();
        let ratio = e.value / lambda.powi(2);
        assert!((ratio / 8.0 - 1.0).abs() < 0.02, "{ratio}");
    }

    #[test]
    fn dilation_is_scale_parameter() {
        let p = HPolytope::regular_simplex(2);
        let a = polar_wills_integral_mc(&p.scaled(1.7), 1.0, 20_000, 9).unwrap();
        let b = polar_wills_integral_mc(&p, 1.7, 20_000, 9).unwrap();
        assert!((a.value - b.value).abs() < 1e-12 * a.value);
    }

    #[test]
    fn layer_cake_identity() {
        // ∫ = (2π)^k ∫₀^∞ e^{−t} γ_k((tλ/√(2π)) P) dt
        let p = HPolytope::regular_simplex(2);
        let lambda = 0.8;
        let ts: Vec<f64> = (0..=400).map(|i| i as f64 * 0.05).collect();
        let scales: Vec<f64> = ts.iter().map(|t| t * lambda / std::f64::consts::TAU.sqrt()).collect();
        let g = gaussian_measure_grid_mc(&p, &scales, 400_000, 5).unwrap();
        let h = 0.05;
        let mut s = 0.0;
        for (i, (t, e)) in ts.iter().zip(&g).enumerate() {
            let w = if i == 0 || i == ts.len() - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            s += w * (-t).exp() * e.value;
        }
        let layer = std::f64::consts::TAU.powi(2) * s * h / 3.0;
        let direct = polar_wills_integral_mc(&p, lambda, 400_000, 6).unwrap();
        assert!((layer / direct.value - 1.0).abs() < 0.01, "{layer} vs {}", direct.value);
    }
}

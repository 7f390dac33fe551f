use libm::erf;

use crate::error::{GeomError, Result};
use crate::linalg::{binomial, factorial};

/// `|B₂ⁿ| = π^{n/2} / Γ(n/2 + 1)`, by the two-step recursion in `n`.
pub fn unit_ball_volume(n: usize) -> f64 {
    let mut v = if n.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut d = if n.is_multiple_of(2) { 0 } else { 1 };
    while d < n {
        d += 2;
        v *= 2.0 * std::f64::consts::PI / d as f64;
    }
    v
}

/// `cₙ = √2 Γ((n+1)/2) / Γ(n/2)`, the ratio `E‖G‖ / 1` between Gaussian and
/// spherical averages of a 1-homogeneous function.
///
/// Uses `c₁ = √(2/π)` and `cₙ cₙ₊₁ = n`.
pub fn gaussian_width_constant(n: usize) -> f64 {
    assert!(n >= 1);
    let mut c = (2.0 / std::f64::consts::PI).sqrt();
    for m in 1..n {
        c = m as f64 / c;
    }
    c
}

/// `|B₁ᵏ| = 2ᵏ / k!`.
pub fn cross_polytope_volume(k: usize) -> f64 {
    2f64.powi(k as i32) / factorial(k)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimplexConstants {
    pub k: usize,
    /// `|Δ_k| = √(k+1) / k!` for the simplex with vertices `e₁, …, e_{k+1}`.
    pub vol_delta: f64,
    pub inradius: f64,
    pub circumradius: f64,
    /// `|S_k|^{1/k}` where `S_k` has inradius 1.
    pub vol_s_pow: f64,
    /// `|S̃_k|^{1/k}` where `S̃_k` has circumradius 1.
    pub vol_s_tilde_pow: f64,
}

pub fn simplex_constants(k: usize) -> SimplexConstants {
    assert!(k >= 1);
    let kf = k as f64;
    let fact_root = factorial(k).powf(1.0 / kf);
    SimplexConstants {
        k,
        vol_delta: (kf + 1.0).sqrt() / factorial(k),
        inradius: 1.0 / (kf * (kf + 1.0)).sqrt(),
        circumradius: (kf / (kf + 1.0)).sqrt(),
        vol_s_pow: (kf * (kf + 1.0).powf(1.0 + 1.0 / kf)).sqrt() / fact_root,
        vol_s_tilde_pow: ((kf + 1.0).powf(1.0 + 1.0 / kf) / kf).sqrt() / fact_root,
    }
}

/// Coefficient expressing the `i`-th quermassintegral relative to a
/// `k`-dimensional subspace through the ambient `(n−k+i)`-th one.
pub fn quermass_conversion(n: usize, k: usize, i: usize) -> Result<f64> {
    if !(i <= k && k <= n) {
        return Err(GeomError::IndexOutOfRange(format!("need i ≤ k ≤ n, got i={i}, k={k}, n={n}")));
    }
    let j = n - k + i;
    Ok(binomial(n, j) / binomial(k, i) * unit_ball_volume(i) / unit_ball_volume(j))
}

/// `Vᵢ = C(n, i) / |B₂^{n−i}| · W_{n−i}`; returns the coefficient.
pub fn intrinsic_coefficient(n: usize, i: usize) -> Result<f64> {
    if i > n {
        return Err(GeomError::IndexOutOfRange(format!("need i ≤ n, got i={i}, n={n}")));
    }
    Ok(binomial(n, i) / unit_ball_volume(n - i))
}

fn std_normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + erf(x / std::f64::consts::SQRT_2))
}

/// Composite Simpson rule on `[a, b]` with `2 · half` panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, half: usize) -> f64 {
    let n = 2 * half;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// `E max(G₁, …, G_m)` for iid standard normals.
pub fn expected_max_gaussian(m: usize) -> f64 {
    assert!(m >= 1);
    let m = m as i32;
    let upper = simpson(|t| 1.0 - std_normal_cdf(t).powi(m), 0.0, 12.0, 6000);
    let lower = simpson(|t| std_normal_cdf(t).powi(m), -40.0, 0.0, 20000);
    upper - lower
}

/// `w(B∞ᵏ) = E‖G‖₁ / c_k`.
pub fn width_cube(k: usize) -> f64 {
    k as f64 * (2.0 / std::f64::consts::PI).sqrt() / gaussian_width_constant(k)
}

/// `w(B₁ᵏ) = E‖G‖∞ / c_k`.
pub fn width_cross_polytope(k: usize) -> f64 {
    let k_i = k as i32;
    let e = simpson(|t| 1.0 - erf(t / std::f64::consts::SQRT_2).powi(k_i), 0.0, 12.0, 6000);
    e / gaussian_width_constant(k)
}

/// `w(Δ_k)` for the simplex with `k+1` orthonormal vertices.
pub fn width_simplex(k: usize) -> f64 {
    expected_max_gaussian(k + 1) / gaussian_width_constant(k)
}

/// `∫_{ℝᵏ} exp(−‖x‖²/4π − ‖x‖_{μB∞ᵏ}) dx`.
///
/// Equals `(2π)ᵏ E exp(−√(2π)‖G‖∞/μ)`; integrating by parts against the law
/// `P(‖G‖∞ ≤ s) = erf(s/√2)ᵏ` leaves a one-dimensional integral.
pub fn cube_polar_wills_integral(k: usize, mu: f64) -> f64 {
    assert!(k >= 1 && mu > 0.0);
    let tau = std::f64::consts::TAU;
    let scale = mu / tau.sqrt() / std::f64::consts::SQRT_2;
    let k_i = k as i32;
    let e = simpson(|t| (-t).exp() * erf(t * scale).powi(k_i), 0.0, 60.0, 30000);
    tau.powi(k_i) * e
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ball_volumes() {
        assert_eq!(unit_ball_volume(0), 1.0);
        assert_eq!(unit_ball_volume(1), 2.0);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-15);
        for n in 0..12 {
            let gamma = libm::tgamma(n as f64 / 2.0 + 1.0);
            assert!((unit_ball_volume(n) - PI.powf(n as f64 / 2.0) / gamma).abs() < 1e-13);
        }
    }

    #[test]
    fn width_constant() {
        assert!((gaussian_width_constant(1) - 0.797_884_560_802_865_4).abs() < 1e-15);
        assert!((gaussian_width_constant(2) - (PI / 2.0).sqrt()).abs() < 1e-15);
        let c64 = gaussian_width_constant(64);
        assert!((c64 / 8.0 - 1.0).abs() < 0.02);
        for n in 1..20 {
            let g = libm::lgamma;
            let exact = 2f64.sqrt() * (g((n as f64 + 1.0) / 2.0) - g(n as f64 / 2.0)).exp();
            assert!((gaussian_width_constant(n) - exact).abs() < 1e-12 * exact);
        }
    }

    #[test]
    fn simplex_values() {
        let s2 = simplex_constants(2);
        assert!((s2.vol_delta - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((s2.vol_s_pow.powi(2) - 3.0 * 3f64.sqrt()).abs() < 1e-12);
        let s1 = simplex_constants(1);
        assert!((s1.inradius - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((s1.circumradius - 0.5f64.sqrt()).abs() < 1e-15);
        for k in 1..10 {
            let s = simplex_constants(k);
            let kf = k as f64;
            assert!((s.vol_s_pow - (kf * (kf + 1.0)).sqrt() * s.vol_delta.powf(1.0 / kf)).abs() < 1e-12);
            let r = ((kf + 1.0) / kf).sqrt();
            assert!((s.vol_s_tilde_pow - r * s.vol_delta.powf(1.0 / kf)).abs() < 1e-12);
        }
    }

    #[test]
    fn quermass_indices() {
        for n in 1..6 {
            assert_eq!(quermass_conversion(n, n, n).unwrap(), 1.0);
            assert_eq!(intrinsic_coefficient(n, n).unwrap(), 1.0);
        }
        assert!(quermass_conversion(2, 3, 1).is_err());
        assert!(intrinsic_coefficient(2, 3).is_err());
    }

    #[test]
    fn intrinsic_volumes_of_square_expand_wills() {
        // quermassintegrals of [−a,a]²: W₀ = 4a², W₁ = ∂/2 = 4a, W₂ = π
        let a: f64 = 0.7;
        let w = [4.0 * a * a, 4.0 * a, PI];
        let v: Vec<f64> = (0..=2).map(|i| intrinsic_coefficient(2, i).unwrap() * w[2 - i]).collect();
        let lambda: f64 = 1.3;
        let series: f64 = v.iter().enumerate().map(|(i, vi)| lambda.powi(i as i32) * vi).sum();
        assert!((series - (1.0 + 2.0 * a * lambda).powi(2)).abs() < 1e-12);
    }

    #[test]
    fn gaussian_maxima() {
        assert!(expected_max_gaussian(1).abs() < 1e-12);
        assert!((expected_max_gaussian(2) - 1.0 / PI.sqrt()).abs() < 1e-10);
        assert!((expected_max_gaussian(3) - 1.5 / PI.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn model_widths() {
        // segment [−1,1]: width 1 under the half-width normalization
        assert!((width_cube(1) - 1.0).abs() < 1e-14);
        assert!((width_cross_polytope(1) - 1.0).abs() < 1e-10);
        // square: perimeter / 2π
        assert!((width_cube(2) - 4.0 / PI).abs() < 1e-14);
        // B₁² is a square of side √2
        assert!((width_cross_polytope(2) - 2f64.sqrt() * 2.0 / PI).abs() < 1e-10);
        // Δ₁ is a segment of length √2
        assert!((width_simplex(1) - 0.5f64.sqrt()).abs() < 1e-10);
        // Δ₂ is an equilateral triangle of side √2
        assert!((width_simplex(2) - 3.0 * 2f64.sqrt() / (2.0 * PI)).abs() < 1e-10);
    }

    #[test]
    fn cube_polar_integral() {
        // k = 1: 2∫₀^∞ exp(−x²/4π − x/μ) dx in closed form via erfc
        let mu = 0.7;
        let a = 1.0 / mu;
        let pi = PI;
        let closed = 2.0 * pi * (pi * a * a).exp() * libm::erfc(pi.sqrt() * a);
        assert!((cube_polar_wills_integral(1, mu) - closed).abs() < 1e-9 * closed);
        // large μ tends to the Gaussian integral (4π²)^{k/2}
        let big = cube_polar_wills_integral(2, 1e6);
        assert!((big - 4.0 * pi * pi).abs() < 1e-3 * big);
    }
}

//! Lawson–Hanson active-set solver for nonnegative least squares.

use nalgebra::{DMatrix, DVector};

#[derive(Clone, Debug)]
pub struct NnlsSolution {
    pub x: DVector<f64>,
    /// Euclidean norm of `A x - b`.
    pub residual: f64,
    pub iterations: usize,
}

/// Minimize `‖A x − b‖₂` subject to `x ≥ 0`.
///
/// `kkt_tol` bounds the positive part of the dual vector `Aᵀ(b − Ax)` on the
/// active (zero) set at termination.
pub fn nnls(a: &DMatrix<f64>, b: &DVector<f64>, kkt_tol: f64) -> NnlsSolution {
    let ncols = a.ncols();
    let mut x = DVector::zeros(ncols);
    let mut passive = vec![false; ncols];
    let max_outer = 3 * ncols.max(1) + 10;
    let mut iterations = 0;

    for _ in 0..max_outer {
        let w = a.transpose() * (b - a * &x);
        let candidate = (0..ncols).filter(|&j| !passive[j]).max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = candidate else { break };
        if w[j] <= kkt_tol {
            break;
        }
        passive[j] = true;

        // Inner loop: keep the unconstrained passive-set solution feasible.
        loop {
            iterations += 1;
            let idx: Vec<usize> = (0..ncols).filter(|&i| passive[i]).collect();
            let s_p = passive_lstsq(a, b, &idx);
            if s_p.iter().all(|&v| v > 0.0) {
                x.fill(0.0);
                for (k, &i) in idx.iter().enumerate() {
                    x[i] = s_p[k];
                }
                break;
            }
            let mut alpha = f64::INFINITY;
            for (k, &i) in idx.iter().enumerate() {
                if s_p[k] <= 0.0 {
                    let denom = x[i] - s_p[k];
                    if denom > 0.0 {
                        alpha = alpha.min(x[i] / denom);
                    } else {
                        alpha = 0.0;
                    }
                }
            }
            let alpha = if alpha.is_finite() { alpha } else { 0.0 };
            for (k, &i) in idx.iter().enumerate() {
                x[i] += alpha * (s_p[k] - x[i]);
                if x[i] <= 1e-15 {
                    x[i] = 0.0;
                    passive[i] = false;
                }
            }
            if iterations > 50 * (ncols + 1) {
                break;
            }
        }
    }
    let residual = (a * &x - b).norm();
    NnlsSolution { x, residual, iterations }
}

fn passive_lstsq(a: &DMatrix<f64>, b: &DVector<f64>, idx: &[usize]) -> DVector<f64> {
    let sub = a.select_columns(idx);
    let svd = sub.svd(true, true);
    let eps = 1e-13 * svd.singular_values.max().max(1e-300);
    svd.solve(b, eps).unwrap_or_else(|_| DVector::zeros(idx.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_nonnegative_solution() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        let b = DVector::from_vec(vec![1.0, 2.0, 3.0]);
        let s = nnls(&a, &b, 1e-12);
        assert!((s.x[0] - 1.0).abs() < 1e-12 && (s.x[1] - 2.0).abs() < 1e-12);
        assert!(s.residual < 1e-12);
    }

    #[test]
    fn clamps_negative_direction() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        let b = DVector::from_vec(vec![-1.0, 2.0]);
        let s = nnls(&a, &b, 1e-12);
        assert_eq!(s.x[0], 0.0);
        assert!((s.x[1] - 2.0).abs() < 1e-12);
        assert!((s.residual - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kkt_conditions_hold_on_random_problems() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = DMatrix::from_fn(6, 9, |_, _| rng.random_range(-1.0..1.0));
            let b = DVector::from_fn(6, |_, _| rng.random_range(-1.0..1.0));
            let s = nnls(&a, &b, 1e-12);
            let w = a.transpose() * (&b - &a * &s.x);
            for j in 0..9 {
                assert!(s.x[j] >= 0.0);
                assert!(w[j] <= 1e-9, "dual {j} = {}", w[j]);
                if s.x[j] > 0.0 {
                    assert!(w[j].abs() < 1e-9);
                }
            }
        }
    }
}

use nalgebra::{DMatrix, DVector};

use crate::error::{GeomError, Result};
use crate::polytope::HPolytope;

/// Euclidean projection of `x` onto `P` and the distance `d(x, P)`.
///
/// Dual active-set method of Goldfarb and Idnani specialised to the identity
/// Hessian: starting from the unconstrained minimiser `x`, the most violated
/// inequality is added at each stage and blocking multipliers are dropped.
pub fn project_onto_polytope(p: &HPolytope, x: &DVector<f64>) -> Result<(DVector<f64>, f64)> {
    let n = p.dim();
    let normals = p.normals();
    let offsets = p.offsets();
    let tol = 1e-12 * (1.0 + x.amax());
    let mut y = x.clone();
    let mut active: Vec<usize> = Vec::with_capacity(n);
    let mut u: Vec<f64> = Vec::with_capacity(n);
    let limit = 10 * (p.len() + n) + 50;
    let mut iters = 0;

    loop {
        let (viol, cp) = normals
            .iter()
            .zip(offsets)
            .enumerate()
            .map(|(j, (a, &b))| (a.dot(&y) - b, j))
            .fold((f64::NEG_INFINITY, 0), |best, c| if c.0 > best.0 { c } else { best });
        if viol <= tol {
            break;
        }
        let ap = &normals[cp];
        let mut up = 0.0;
        loop {
            iters += 1;
            if iters > limit {
                return Err(GeomError::NotConverged { iterations: iters, residual: viol });
            }
            let q = active.len();
            let (z, r) = if q == 0 {
                (ap.clone(), DVector::zeros(0))
            } else {
                let nm = DMatrix::from_fn(n, q, |i, c| normals[active[c]][i]);
                let gram = nm.transpose() * &nm;
                let rhs = nm.transpose() * ap;
                let r = gram.clone().cholesky().map(|ch| ch.solve(&rhs)).unwrap_or_else(|| {
                    gram.pseudo_inverse(1e-14).map(|pi| pi * &rhs).unwrap_or_else(|_| DVector::zeros(q))
                });
                (ap - &nm * &r, r)
            };
            let mut t1 = f64::INFINITY;
            let mut block = usize::MAX;
            for (i, &ri) in r.iter().enumerate() {
                if ri > 1e-14 {
                    let t = u[i] / ri;
                    if t < t1 {
                        t1 = t;
                        block = i;
                    }
                }
            }
            let zz = z.norm_squared();
            let t2 = if zz > 1e-20 { (ap.dot(&y) - offsets[cp]) / zz } else { f64::INFINITY };
            if t1.is_infinite() && t2.is_infinite() {
                return Err(GeomError::EmptyInterior);
            }
            let t = t1.min(t2);
            if zz > 1e-20 {
                y -= &z * t;
            }
            for (ui, ri) in u.iter_mut().zip(r.iter()) {
                *ui -= t * ri;
            }
            up += t;
            if t2 <= t1 {
                active.push(cp);
                u.push(up);
                break;
            }
            active.remove(block);
            u.remove(block);
        }
    }
    let d = (&y - x).norm();
    Ok((y, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn v(x: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(x)
    }

    #[test]
    fn square_distances() {
        let sq = HPolytope::cube(2);
        let (y, d) = project_onto_polytope(&sq, &v(&[2.0, 0.0])).unwrap();
        assert!((d - 1.0).abs() < 1e-15 && (y - v(&[1.0, 0.0])).amax() < 1e-15);
        let (y, d) = project_onto_polytope(&sq, &v(&[2.0, 2.0])).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-14 && (y - v(&[1.0, 1.0])).amax() < 1e-14);
        let (_, d) = project_onto_polytope(&sq, &v(&[0.3, -0.9])).unwrap();
        assert_eq!(d, 0.0);
    }

    /// Brute force: the projection lies on some face; try every subset of at
    /// most `n` constraints as equalities and keep the nearest feasible point.
    fn oracle(p: &HPolytope, x: &DVector<f64>) -> f64 {
        let n = p.dim();
        if p.contains(x, 0.0) {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        for size in 1..=n {
            for s in crate::linalg::Combinations::new(p.len(), size) {
                let a = DMatrix::from_fn(size, n, |r, c| p.normals()[s[r]][c]);
                let b = DVector::from_fn(size, |r, _| p.offsets()[s[r]]);
                // y = x − Aᵀμ with A y = b
                let gram = &a * a.transpose();
                let Some(inv) = gram.try_inverse() else { continue };
                let mu = inv * (&a * x - b);
                let y = x - a.transpose() * mu;
                if p.contains(&y, 1e-9) {
                    best = best.min((y - x).norm());
                }
            }
        }
        best
    }

    #[test]
    fn matches_face_enumeration() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let mut checked = 0;
        while checked < 200 {
            let n = rng.random_range(2..=4);
            let m = rng.random_range(n + 1..=3 * n);
            let normals: Vec<_> = (0..m).map(|_| DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0))).collect();
            let offsets: Vec<_> = (0..m).map(|_| rng.random_range(0.2..1.0)).collect();
            let Ok(p) = HPolytope::new(normals, offsets) else { continue };
            let x = DVector::from_fn(n, |_, _| rng.random_range(-3.0..3.0));
            let (y, d) = project_onto_polytope(&p, &x).unwrap();
            assert!(p.contains(&y, 1e-10));
            assert!((d - oracle(&p, &x)).abs() < 1e-9, "{d} vs {}", oracle(&p, &x));
            checked += 1;
        }
    }

    #[test]
    fn infeasible_pair() {
        // x ≤ −1 and −x ≤ −1 describe the empty set
        let p = HPolytope::from_unit_unchecked(1, vec![v(&[1.0]), v(&[-1.0])], vec![-1.0, -1.0]);
        assert!(matches!(project_onto_polytope(&p, &v(&[0.0])), Err(GeomError::EmptyInterior)));
    }
}

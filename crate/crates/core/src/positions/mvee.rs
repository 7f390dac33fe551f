//! Minimal-volume enclosing ellipsoid by Khachiyan's barycentric coordinate
//! ascent with Wolfe–Atwood away steps.

use nalgebra::{DMatrix, DVector};

use super::{AffineMap, TraceRecord};
use crate::error::{GeomError, Result};
use crate::linalg::affine_basis;
use crate::polytope::{Ellipsoid, VPolytope};

const EPS: f64 = 1e-12;
const MAX_ITERS: usize = 200_000;

pub fn min_enclosing_ellipsoid(p: &VPolytope) -> Result<Ellipsoid> {
    min_enclosing_ellipsoid_traced(p, &mut |_| {})
}

pub fn min_enclosing_ellipsoid_traced(p: &VPolytope, trace: &mut dyn FnMut(TraceRecord)) -> Result<Ellipsoid> {
    let n = p.dim();
    let pts = p.vertices();
    let rank = affine_basis(pts.iter(), 1e-10).len();
    if rank < n {
        return Err(GeomError::DegenerateDim { affine_dim: rank, dim: n });
    }
    let m = pts.len();
    let d = (n + 1) as f64;
    let lifted: Vec<DVector<f64>> = pts.iter().map(|x| x.clone().insert_row(n, 1.0)).collect();
    let mut u = vec![1.0 / m as f64; m];
    let mut iter = 0;
    loop {
        let mut x = DMatrix::zeros(n + 1, n + 1);
        for (q, &w) in lifted.iter().zip(&u) {
            x.ger(w, q, q, 1.0);
        }
        let ch = x.cholesky().ok_or(GeomError::DegenerateDim { affine_dim: rank, dim: n })?;
        let kappa: Vec<f64> = lifted.iter().map(|q| q.dot(&ch.solve(q))).collect();
        let (jmax, &kmax) = kappa.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        let (jmin, &kmin) =
            kappa.iter().enumerate().filter(|(i, _)| u[*i] > 0.0).min_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        let up = kmax / d - 1.0;
        let down = 1.0 - kmin / d;
        iter += 1;
        trace(TraceRecord {
            solver: "mvee",
            iteration: iter,
            objective: ch.determinant().ln(),
            residual: up.max(down),
        });
        if up <= EPS && down <= EPS {
            break;
        }
        if iter >= MAX_ITERS {
            return Err(GeomError::NotConverged { iterations: iter, residual: up.max(down) });
        }
        if up >= down {
            let beta = (kmax - d) / (d * (kmax - 1.0));
            u.iter_mut().for_each(|w| *w *= 1.0 - beta);
            u[jmax] += beta;
        } else {
            // away step, capped so the weight does not go negative
            let beta = ((kmin - d) / (d * (kmin - 1.0))).max(-u[jmin] / (1.0 - u[jmin]));
            u.iter_mut().for_each(|w| *w *= 1.0 - beta);
            u[jmin] += beta;
            if u[jmin] < 1e-300 {
                u[jmin] = 0.0;
            }
        }
    }
    let c = pts.iter().zip(&u).fold(DVector::zeros(n), |acc, (x, &w)| acc + x * w);
    let mut cov = DMatrix::zeros(n, n);
    for (x, &w) in pts.iter().zip(&u) {
        let y = x - &c;
        cov.ger(w, &y, &y, 1.0);
    }
    let mut shape = cov * n as f64;
    shape = (&shape + shape.transpose()) * 0.5;
    // scale up by the worst violation so every point is contained
    let ch = shape.clone().cholesky().ok_or(GeomError::DegenerateDim { affine_dim: rank, dim: n })?;
    let worst = pts.iter().map(|x| {
        let y = x - &c;
        y.dot(&ch.solve(&y))
    });
    let worst = worst.fold(1.0, f64::max);
    Ellipsoid::new(c, shape * worst)
}

/// Moves the hull of `P` so that its enclosing ellipsoid is the unit ball.
pub fn to_lowner_position(p: &VPolytope) -> Result<(VPolytope, AffineMap)> {
    let e = min_enclosing_ellipsoid(p)?;
    let l = e.shape().clone().cholesky().expect("positive definite shape").l();
    let inv = l.try_inverse().expect("invertible factor");
    let shift = -(&inv * e.center());
    let map = AffineMap { linear: inv, shift };
    let pts = p.vertices().iter().map(|x| map.apply(x)).collect();
    Ok((VPolytope::new(pts)?, map))
}

//! Minimal surface area position by Newton's method.
//!
//! For symmetric traceless `X` the map `T = exp(−X/2)` sends a facet with
//! area `a` and normal `u` to one with area `a √(uᵀ eˣ u)`. The total surface
//! area is geodesically convex in `X`, so damped Newton steps taken at the
//! current body (where `X = 0`) converge quadratically to the isotropic
//! position.

use nalgebra::{DMatrix, DVector};

use super::{to_john_position, TraceRecord};
use crate::error::{GeomError, Result};
use crate::polytope::{surface_measure, HPolytope, SurfaceMeasure};

/// Residual at which the iteration is considered converged.
const TOL: f64 = 1e-6;
/// Residual the iteration keeps improving towards while steps succeed.
const TARGET: f64 = 1e-10;
const MAX_ITERS: usize = 100;

#[derive(Clone, Debug)]
pub struct MinSurfaceResult {
    pub body: HPolytope,
    /// Accumulated map in `SL(n)` taking the input to `body`.
    pub map: DMatrix<f64>,
    pub surface: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// `‖Iₙ − (n/∂K) Σ |Fⱼ| uⱼ ⊗ uⱼ‖_F`.
pub fn isotropy_residual(p: &HPolytope) -> Result<f64> {
    Ok(residual(&surface_measure(p)?))
}

fn residual(sm: &SurfaceMeasure) -> f64 {
    let n = sm.dim;
    (DMatrix::identity(n, n) - sm.isotropy_matrix()).norm()
}

pub fn min_surface_area_position(p: &HPolytope) -> Result<MinSurfaceResult> {
    min_surface_area_position_traced(p, &mut |_| {})
}

/// Symmetric matrix with coordinates `x` in the basis `eᵢeᵢᵀ`,
/// `eᵢeⱼᵀ + eⱼeᵢᵀ` (`i < j`).
fn sym_from(n: usize, x: &[f64]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    let mut p = 0;
    for i in 0..n {
        for j in i..n {
            m[(i, j)] = x[p];
            m[(j, i)] = x[p];
            p += 1;
        }
    }
    m
}

/// Newton direction for `Σ aⱼ √(uⱼᵀ eˣ uⱼ) / ∂` subject to `tr X = 0`, and
/// the directional derivative along it.
fn newton_direction(sm: &SurfaceMeasure) -> Option<(DMatrix<f64>, f64)> {
    let n = sm.dim;
    let dim = n * (n + 1) / 2;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut grad = DVector::zeros(dim);
    let mut hess = DMatrix::zeros(dim, dim);
    let mut s = DMatrix::zeros(n, n);
    for f in &sm.facets {
        let a = f.area / sm.total;
        let u = &f.normal;
        s += u * u.transpose() * a;
        let w = DVector::from_iterator(
            dim,
            pairs.iter().map(|&(i, j)| if i == j { u[i] * u[i] } else { 2.0 * u[i] * u[j] }),
        );
        grad += &w * (0.5 * a);
        hess -= &w * w.transpose() * (0.25 * a);
    }
    // ¼ tr((EₚE_q + E_qEₚ) S)
    let basis: Vec<DMatrix<f64>> = (0..dim)
        .map(|p| {
            let mut e = vec![0.0; dim];
            e[p] = 1.0;
            sym_from(n, &e)
        })
        .collect();
    for p in 0..dim {
        for q in p..dim {
            let v = 0.25 * ((&basis[p] * &basis[q] + &basis[q] * &basis[p]) * &s).trace();
            hess[(p, q)] += v;
            if p != q {
                hess[(q, p)] += v;
            }
        }
    }
    // KKT system with the trace constraint
    let mut kkt = DMatrix::zeros(dim + 1, dim + 1);
    kkt.view_mut((0, 0), (dim, dim)).copy_from(&hess);
    let mut rhs = DVector::zeros(dim + 1);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        if i == j {
            kkt[(p, dim)] = 1.0;
            kkt[(dim, p)] = 1.0;
        }
        rhs[p] = -grad[p];
    }
    let sol = kkt.lu().solve(&rhs)?;
    let x: Vec<f64> = sol.iter().take(dim).copied().collect();
    let slope = grad.iter().zip(&x).map(|(g, x)| g * x).sum();
    Some((sym_from(n, &x), slope))
}

/// `exp(−X/2)` for symmetric `X`.
fn step_map(x: &DMatrix<f64>, t: f64) -> DMatrix<f64> {
    let eig = x.clone().symmetric_eigen();
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| (-0.5 * t * l).exp()));
    &eig.eigenvectors * d * eig.eigenvectors.transpose()
}

/// The stepped body, unless the step degenerates. A volume change or an open
/// surface measure means the enumeration lost track of the body, so such
/// steps are refused too.
fn try_step(body: &HPolytope, step: &DMatrix<f64>, volume: f64) -> Option<(HPolytope, SurfaceMeasure)> {
    let next = body.affine_image(step, &DVector::zeros(body.dim())).ok()?;
    let sm = surface_measure(&next).ok()?;
    let closed = sm.closure().norm() <= 1e-8 * sm.total;
    (closed && (sm.volume - volume).abs() <= 1e-7 * volume).then_some((next, sm))
}

fn normalized(sm: &SurfaceMeasure, volume: f64) -> f64 {
    let n = sm.dim as f64;
    sm.total * (volume / sm.volume).powf((n - 1.0) / n)
}

fn unimodular(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows() as f64;
    m / m.determinant().abs().powf(1.0 / n)
}

pub fn min_surface_area_position_traced(p: &HPolytope, trace: &mut dyn FnMut(TraceRecord)) -> Result<MinSurfaceResult> {
    let n = p.dim();
    // start from the linear part of the John map: the enumeration is only
    // reliable on reasonably round bodies
    let mut map = unimodular(&to_john_position(p)?.1.linear);
    let mut body = p.affine_image(&map, &DVector::zeros(n))?;
    let mut sm = surface_measure(&body)?;
    let volume = sm.volume;
    let mut res = residual(&sm);
    for it in 0..=MAX_ITERS {
        trace(TraceRecord { solver: "minsurf", iteration: it, objective: sm.total, residual: res });
        let done = |body, map: &DMatrix<f64>, sm: &SurfaceMeasure| MinSurfaceResult {
            body,
            map: unimodular(map),
            surface: sm.total,
            residual: res,
            iterations: it,
        };
        if res <= TARGET || it == MAX_ITERS {
            if res <= TOL {
                return Ok(done(body, &map, &sm));
            }
            return Err(GeomError::NotConverged { iterations: it, residual: res });
        }
        let stalled =
            || if res <= TOL { Ok(()) } else { Err(GeomError::NotConverged { iterations: it, residual: res }) };
        let Some((x, slope)) = newton_direction(&sm) else {
            stalled()?;
            return Ok(done(body, &map, &sm));
        };
        let mut t = 1.0;
        loop {
            let step = step_map(&x, t);
            if let Some((next, next_sm)) = try_step(&body, &step, volume) {
                let next_res = residual(&next_sm);
                // compare ∂K / |K|^{(n−1)/n}: the enumeration moves the volume
                // by ~1e-10, which swamps the decrease near the optimum
                let (now, total) = (normalized(&sm, volume), normalized(&next_sm, volume));
                let armijo = total <= now * (1.0 + 1e-4 * t * slope);
                let flat = total <= now * (1.0 + 1e-9) && next_res < res;
                if armijo || flat {
                    body = next;
                    sm = next_sm;
                    res = next_res;
                    map = step * map;
                    break;
                }
            }
            t *= 0.5;
            if t < 1e-10 {
                stalled()?;
                return Ok(done(body, &map, &sm));
            }
        }
    }
    unreachable!()
}

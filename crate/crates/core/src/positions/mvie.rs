//! Maximal-volume inscribed ellipsoid by a log-barrier method.
//!
//! Variables are the centre `c` and a lower-triangular `L` with positive
//! diagonal; the ellipsoid is `{c + L x : ‖x‖ ≤ 1}` and it lies in
//! `{⟨aⱼ, ·⟩ ≤ bⱼ}` iff `sⱼ = bⱼ − ⟨aⱼ, c⟩ − ‖Lᵀaⱼ‖ ≥ 0`. Newton's method
//! minimises `−t log det L − Σ log sⱼ` for increasing `t` until the
//! duality gap `m / t` falls below [`GAP`]. Symmetric bodies are solved with
//! `c = 0` fixed.

use nalgebra::{DMatrix, DVector};

use super::{AffineMap, TraceRecord};
use crate::error::{GeomError, Result};
use crate::polytope::{vertex_enumerate, Ellipsoid, HPolytope};

const GAP: f64 = 1e-11;
const MU: f64 = 8.0;
const MAX_NEWTON: usize = 400;

#[derive(Clone, Debug)]
pub struct InscribedEllipsoid {
    pub center: DVector<f64>,
    /// Lower-triangular factor: the ellipsoid is `c + L B₂ⁿ`.
    pub factor: DMatrix<f64>,
    /// Final barrier duality gap in `log det L`.
    pub gap: f64,
    pub newton_steps: usize,
}

impl InscribedEllipsoid {
    pub fn ellipsoid(&self) -> Ellipsoid {
        let shape = &self.factor * self.factor.transpose();
        Ellipsoid::new(self.center.clone(), (&shape + shape.transpose()) * 0.5).expect("positive definite factor")
    }
}

pub fn max_inscribed_ellipsoid(p: &HPolytope) -> Result<Ellipsoid> {
    Ok(max_inscribed_ellipsoid_traced(p, &mut |_| {})?.ellipsoid())
}

struct Problem<'a> {
    n: usize,
    p: &'a HPolytope,
    free_center: bool,
    /// `(row, col)` of each lower-triangular variable.
    tri: Vec<(usize, usize)>,
}

impl Problem<'_> {
    fn nvars(&self) -> usize {
        self.tri.len() + if self.free_center { self.n } else { 0 }
    }

    fn offset(&self) -> usize {
        if self.free_center {
            self.n
        } else {
            0
        }
    }

    fn unpack(&self, z: &DVector<f64>) -> (DVector<f64>, DMatrix<f64>) {
        let c = if self.free_center { z.rows(0, self.n).into_owned() } else { DVector::zeros(self.n) };
        let mut l = DMatrix::zeros(self.n, self.n);
        for (k, &(r, col)) in self.tri.iter().enumerate() {
            l[(r, col)] = z[self.offset() + k];
        }
        (c, l)
    }

    fn slacks(&self, z: &DVector<f64>) -> Option<Vec<f64>> {
        let (c, l) = self.unpack(z);
        if (0..self.n).any(|i| l[(i, i)] <= 0.0) {
            return None;
        }
        let s: Vec<f64> = self
            .p
            .normals()
            .iter()
            .zip(self.p.offsets())
            .map(|(a, &b)| b - a.dot(&c) - (l.transpose() * a).norm())
            .collect();
        s.iter().all(|&x| x > 0.0).then_some(s)
    }

    fn value(&self, z: &DVector<f64>, t: f64) -> Option<f64> {
        let s = self.slacks(z)?;
        let (_, l) = self.unpack(z);
        let logdet: f64 = (0..self.n).map(|i| l[(i, i)].ln()).sum();
        Some(-t * logdet - s.iter().map(|x| x.ln()).sum::<f64>())
    }

    /// Gradient and Hessian of the barrier objective.
    fn derivatives(&self, z: &DVector<f64>, t: f64) -> (DVector<f64>, DMatrix<f64>) {
        let nv = self.nvars();
        let off = self.offset();
        let (c, l) = self.unpack(z);
        let mut g = DVector::zeros(nv);
        let mut h = DMatrix::zeros(nv, nv);
        for (k, &(r, col)) in self.tri.iter().enumerate() {
            if r == col {
                let d = l[(r, r)];
                g[off + k] -= t / d;
                h[(off + k, off + k)] += t / (d * d);
            }
        }
        let mut ds = DVector::zeros(nv);
        for (a, &b) in self.p.normals().iter().zip(self.p.offsets()) {
            let rv = l.transpose() * a;
            let rho = rv.norm();
            let s = b - a.dot(&c) - rho;
            ds.fill(0.0);
            if self.free_center {
                ds.rows_mut(0, self.n).copy_from(&(-a));
            }
            for (k, &(p, q)) in self.tri.iter().enumerate() {
                ds[off + k] = -a[p] * rv[q] / rho;
            }
            // −log s: gradient −∇s/s, Hessian ∇s∇sᵀ/s² + ∇²ρ/s
            g.axpy(-1.0 / s, &ds, 1.0);
            h.ger(1.0 / (s * s), &ds, &ds, 1.0);
            let rhat = &rv / rho;
            for (k1, &(p1, q1)) in self.tri.iter().enumerate() {
                for (k2, &(p2, q2)) in self.tri.iter().enumerate().skip(k1) {
                    let proj = if q1 == q2 { 1.0 } else { 0.0 } - rhat[q1] * rhat[q2];
                    let v = a[p1] * a[p2] * proj / (rho * s);
                    h[(off + k1, off + k2)] += v;
                    if k1 != k2 {
                        h[(off + k2, off + k1)] += v;
                    }
                }
            }
        }
        (g, h)
    }
}

fn newton_direction(g: &DVector<f64>, h: &DMatrix<f64>) -> DVector<f64> {
    let mut reg = 0.0;
    let scale = h.diagonal().amax().max(1e-300);
    loop {
        let mut hr = h.clone();
        for i in 0..hr.nrows() {
            hr[(i, i)] += reg;
        }
        if let Some(ch) = hr.cholesky() {
            return -ch.solve(g);
        }
        reg = if reg == 0.0 { 1e-14 * scale } else { reg * 100.0 };
    }
}

/// Solves the inscribed-ellipsoid problem, reporting every Newton step.
pub fn max_inscribed_ellipsoid_traced(p: &HPolytope, trace: &mut dyn FnMut(TraceRecord)) -> Result<InscribedEllipsoid> {
    let n = p.dim();
    let verts = match vertex_enumerate(p) {
        Ok(v) => v,
        Err(GeomError::EmptyInterior) => return Err(GeomError::EmptyInterior),
        Err(e) => return Err(e),
    };
    let free_center = !(p.is_symmetric() && p.origin_interior());
    let c0 = if free_center { verts.centroid() } else { DVector::zeros(n) };
    let min_slack = p.normals().iter().zip(p.offsets()).map(|(a, &b)| b - a.dot(&c0)).fold(f64::INFINITY, f64::min);
    if !(min_slack > 1e-12) {
        return Err(GeomError::EmptyInterior);
    }
    let tri: Vec<(usize, usize)> = (0..n).flat_map(|r| (0..=r).map(move |c| (r, c))).collect();
    let prob = Problem { n, p, free_center, tri };
    let mut z = DVector::zeros(prob.nvars());
    if free_center {
        z.rows_mut(0, n).copy_from(&c0);
    }
    for (k, &(r, c)) in prob.tri.iter().enumerate() {
        if r == c {
            z[prob.offset() + k] = 0.5 * min_slack;
        }
    }

    let m = p.len() as f64;
    let mut t = 1.0;
    let mut steps = 0;
    loop {
        let mut inner = 0;
        loop {
            let (g, h) = prob.derivatives(&z, t);
            let dz = newton_direction(&g, &h);
            let decrement = -g.dot(&dz);
            steps += 1;
            inner += 1;
            let f0 = prob.value(&z, t).expect("iterate stays feasible");
            trace(TraceRecord {
                solver: "mvie",
                iteration: steps,
                objective: f0 / t,
                residual: decrement.max(0.0).sqrt(),
            });
            if decrement <= 1e-14 || inner > MAX_NEWTON {
                break;
            }
            let mut alpha = 1.0;
            let mut accepted = false;
            while alpha > 1e-12 {
                let trial = &z + &dz * alpha;
                if let Some(f1) = prob.value(&trial, t) {
                    if f1 <= f0 - 0.25 * alpha * decrement || (decrement < 1e-9 && f1 <= f0 + 1e-12 * f0.abs()) {
                        z = trial;
                        accepted = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        if steps > 20 * MAX_NEWTON {
            return Err(GeomError::NotConverged { iterations: steps, residual: m / t });
        }
        if m / t <= GAP {
            break;
        }
        t *= MU;
    }
    let (center, factor) = prob.unpack(&z);
    Ok(InscribedEllipsoid { center, factor, gap: m / t, newton_steps: steps })
}

/// Moves `P` so that its maximal inscribed ellipsoid is the unit ball.
/// Returns the moved body and the map applied to `P`.
pub fn to_john_position(p: &HPolytope) -> Result<(HPolytope, AffineMap)> {
    let e = max_inscribed_ellipsoid_traced(p, &mut |_| {})?;
    let inv = e
        .factor
        .clone()
        .try_inverse()
        .ok_or(GeomError::NotConverged { iterations: e.newton_steps, residual: f64::NAN })?;
    let shift = -(&inv * &e.center);
    let body = p.affine_image(&inv, &shift)?;
    Ok((body, AffineMap { linear: inv, shift }))
}

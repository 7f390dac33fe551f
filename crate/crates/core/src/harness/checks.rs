//! The inequality checkers. Each returns rows `lhs ≤ rhs`; lower bounds are
//! stored with the bound on the left.

use libm::erf;
use nalgebra::{DMatrix, DVector};

use super::config::{CheckId, GAUSS_GRID};
use super::context::Prepared;
use super::mix_seed;
use super::report::Claim;
use super::sample_subspace;
use crate::error::GeomError;
use crate::functionals::{
    cross_polytope_volume, cube_polar_wills_integral, gaussian_measure_grid_mc, mean_width_mc, polar_volume_mc,
    polar_wills_integral_mc, simplex_constants, width_cross_polytope, width_cube, width_simplex, wills_mc, wills_mc_v,
    McEstimate, Stream,
};
use crate::linalg::factorial;
use crate::polytope::{
    polar_h, project, projection_body_from, section_described, vertex_enumerate, volume_dd, volume_v, HPolytope,
    Subspace, VPolytope,
};
use crate::positions::{lift_decomposition, restrict_lifted};

/// Relative tolerance of the simplex-face equality.
pub const SIMPLEX_FACE_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub lambda: Option<f64>,
    pub lhs: f64,
    pub lhs_err: f64,
    pub rhs: f64,
    pub rhs_err: f64,
    pub claim: Claim,
    pub ratio: Option<f64>,
}

impl Row {
    fn bound(lhs: Value, rhs: Value) -> Self {
        Self { lambda: None, lhs: lhs.0, lhs_err: lhs.1, rhs: rhs.0, rhs_err: rhs.1, claim: Claim::Bound, ratio: None }
    }

    fn at(mut self, lambda: f64) -> Self {
        self.lambda = Some(lambda);
        self
    }
}

/// Value and standard error (plus any truncation bias).
#[derive(Clone, Copy, Debug)]
struct Value(f64, f64);

fn exact(v: f64) -> Value {
    Value(v, 0.0)
}

impl From<McEstimate> for Value {
    fn from(e: McEstimate) -> Self {
        Value(e.value, e.std_error + e.bias_bound)
    }
}

/// Why a trial produced no comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct Skip(pub String);

impl From<GeomError> for Skip {
    fn from(e: GeomError) -> Self {
        Skip(e.to_string())
    }
}

pub type Eval = std::result::Result<Vec<Row>, Skip>;

/// Per-trial parameters.
#[derive(Clone, Debug)]
pub struct TrialInput<'a> {
    pub n: usize,
    pub k: usize,
    pub d: f64,
    pub lambdas: &'a [f64],
    pub samples: usize,
    pub seed: u64,
}

impl TrialInput<'_> {
    fn mc_seed(&self, salt: u64) -> u64 {
        mix_seed(self.seed, 16 + salt)
    }
}

/// Whether `(n, k)` is meaningful for the checker in a sweep.
pub fn admissible(id: CheckId, n: usize, k: usize) -> bool {
    match id {
        CheckId::SharpCube => n.is_multiple_of(k),
        CheckId::T3a => k >= 2,
        _ => true,
    }
}

/// The subspace a trial is evaluated on, and its distance to the origin.
pub fn trial_subspace(id: CheckId, body: &Prepared, t: &TrialInput) -> std::result::Result<Subspace, Skip> {
    let seed = mix_seed(t.seed, 1);
    match id {
        CheckId::SharpCube => cube_diagonal_subspace(t.n, t.k, seed),
        CheckId::SharpSimplex => {
            let Prepared::John { body, .. } = body else { unreachable!("simplex face needs a John body") };
            simplex_face_subspace(body, t.k, seed)
        }
        _ => Ok(sample_subspace(t.n, t.k, if id.uses_distance() { t.d } else { 0.0 }, seed)?),
    }
}

/// `span{f₁, …, f_k}` with `fᵢ` the normalized signed sum of the `i`-th block
/// of `n/k` coordinates, after a random signed permutation.
pub fn cube_diagonal_subspace(n: usize, k: usize, seed: u64) -> std::result::Result<Subspace, Skip> {
    if !n.is_multiple_of(k) {
        return Err(Skip(format!("k = {k} does not divide n = {n}")));
    }
    let mut s = Stream::new(seed, 2);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (s.next_u64() % (i as u64 + 1)) as usize;
        perm.swap(i, j);
    }
    let block = n / k;
    let scale = 1.0 / (block as f64).sqrt();
    let mut q = DMatrix::zeros(n, k);
    for (pos, &coord) in perm.iter().enumerate() {
        let sign = if s.next_u64() & 1 == 0 { 1.0 } else { -1.0 };
        q[(coord, pos / block)] = sign * scale;
    }
    Ok(Subspace::linear(q)?)
}

/// Affine hull of a random `k`-face of a simplex.
pub fn simplex_face_subspace(simplex: &HPolytope, k: usize, seed: u64) -> std::result::Result<Subspace, Skip> {
    let verts = vertex_enumerate(simplex)?;
    let mut idx: Vec<usize> = (0..verts.len()).collect();
    let mut s = Stream::new(seed, 3);
    for i in (1..idx.len()).rev() {
        let j = (s.next_u64() % (i as u64 + 1)) as usize;
        idx.swap(i, j);
    }
    let face: Vec<&DVector<f64>> = idx[..=k].iter().map(|&i| &verts.vertices()[i]).collect();
    let spans: Vec<DVector<f64>> = face[1..].iter().map(|v| *v - face[0]).collect();
    Ok(Subspace::from_spanning(&spans, face[0])?)
}

/// Distance from the origin to the affine hull of a `k`-face of `S_n`.
pub fn simplex_face_distance(n: usize, k: usize) -> f64 {
    let (n, k) = (n as f64, k as f64);
    (n * (n - k) / (k + 1.0)).sqrt()
}

struct Section {
    body: HPolytope,
    vertices: Vec<DVector<f64>>,
    volume: f64,
}

impl Section {
    fn new(p: &HPolytope, f: &Subspace) -> std::result::Result<Self, Skip> {
        let dd = section_described(p, f)?;
        let volume = volume_dd(&dd);
        Ok(Self { body: dd.h, vertices: dd.vertices, volume })
    }

    fn root_volume(&self) -> f64 {
        self.volume.powf(1.0 / self.body.dim() as f64)
    }

    fn hull(&self) -> VPolytope {
        VPolytope::from_vertices_unchecked(self.body.dim(), self.vertices.clone())
    }
}

fn ratio(n: usize, k: usize) -> f64 {
    (n as f64 / k as f64).sqrt()
}

/// Affine-section bound on `|K ∩ F|^{1/k}` at distance `d`.
pub fn affine_section_bound(n: usize, k: usize, d: f64) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    let e = 1.0 + 1.0 / kf;
    (nf * (nf + 1.0).powf(e) / (kf * (kf + 1.0).powf(e))).sqrt()
        * (nf / (nf + d * d)).powf(1.0 / (2.0 * kf))
        * simplex_constants(k).vol_s_pow
}

/// Linear-section bound on `|K ∩ F|^{1/k}` for general bodies.
pub fn linear_section_bound(n: usize, k: usize) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    (kf + 1.0).powf(-(nf - kf) / (2.0 * kf * (nf + 1.0)))
        * (nf * (nf + 1.0) / (kf * (kf + 1.0))).sqrt()
        * simplex_constants(k).vol_s_pow
}

fn cross_root(k: usize) -> f64 {
    cross_polytope_volume(k).powf(1.0 / k as f64)
}

pub fn evaluate(id: CheckId, body: &Prepared, f: &Subspace, t: &TrialInput) -> Eval {
    use CheckId::*;
    let (n, k, samples) = (t.n, t.k, t.samples);
    match (id, body) {
        (T1a | T1b | T1c | SharpCube | SharpSimplex, Prepared::John { body, .. }) => {
            let s = Section::new(body, f)?;
            let lhs = exact(s.root_volume());
            Ok(vec![match id {
                T1a => Row::bound(lhs, exact(linear_section_bound(n, k))),
                T1b => Row::bound(lhs, exact(ratio(n, k) * 2.0)),
                T1c => Row::bound(lhs, exact(affine_section_bound(n, k, f.distance()))),
                SharpCube => {
                    Row { claim: Claim::Equal(super::report::EXACT_TOL), ..Row::bound(lhs, exact(ratio(n, k) * 2.0)) }
                }
                _ => Row {
                    claim: Claim::Equal(SIMPLEX_FACE_TOL),
                    ..Row::bound(lhs, exact(affine_section_bound(n, k, simplex_face_distance(n, k))))
                },
            }])
        }
        (T3a | T3b, Prepared::John { body, .. }) => {
            let s = Section::new(body, f)?;
            let w: Value = mean_width_mc(&s.hull(), samples, t.mc_seed(0)).into();
            if id == T3b {
                return Ok(vec![Row::bound(w, exact(ratio(n, k) * width_cube(k)))]);
            }
            if k < 2 {
                return Err(Skip("ratio undefined for k = 1".into()));
            }
            let (nf, kf) = (n as f64, k as f64);
            let ks = (kf * (kf + 1.0)).sqrt() * width_simplex(k);
            let scale = (nf * nf.ln() / (kf * kf.ln())).sqrt() * ks;
            Ok(vec![Row { claim: Claim::Info, ratio: Some(w.0 / scale), ..Row::bound(w, exact(scale)) }])
        }
        (T5, Prepared::John { body, .. }) => {
            let s = Section::new(body, f)?;
            t.lambdas
                .iter()
                .enumerate()
                .map(|(i, &l)| {
                    let lhs: Value = wills_mc(&s.body.scaled(l), samples, t.mc_seed(i as u64))?.into();
                    let rhs = (1.0 + 2.0 * l * ratio(n, k)).powi(k as i32);
                    Ok(Row::bound(lhs, exact(rhs)).at(l))
                })
                .collect()
        }
        (T7a | T7b, Prepared::John { body, .. }) => {
            let s = Section::new(body, f)?;
            if !s.body.origin_interior() {
                return Err(Skip("closest point of F is not in the relative interior of the section".into()));
            }
            let (nf, kf, d) = (n as f64, k as f64, f.distance());
            let sk = HPolytope::regular_simplex(k);
            t.lambdas
                .iter()
                .enumerate()
                .map(|(i, &l)| {
                    let lhs: Value = polar_wills_integral_mc(&s.body, l, samples, t.mc_seed(i as u64))?.into();
                    let rhs = if id == T7a {
                        let mu = l * (nf * (nf + 1.0) / (kf * (kf + 1.0))).sqrt();
                        let factor = (nf + 1.0) / (kf + 1.0) * (nf / (nf + d * d)).sqrt();
                        let e = polar_wills_integral_mc(&sk, mu, samples, t.mc_seed(100 + i as u64))?;
                        Value(factor * e.value, factor * e.std_error)
                    } else {
                        exact(cube_polar_wills_integral(k, l * ratio(n, k)))
                    };
                    Ok(Row::bound(lhs, rhs).at(l))
                })
                .collect()
        }
        (G1, Prepared::John { body, .. }) => {
            let s = Section::new(body, f)?;
            let est = gaussian_measure_grid_mc(&s.body, &GAUSS_GRID, samples, t.mc_seed(0))?;
            Ok(GAUSS_GRID
                .iter()
                .zip(est)
                .map(|(&g, e)| {
                    let rhs = erf(g * ratio(n, k) / std::f64::consts::SQRT_2).powi(k as i32);
                    Row::bound(e.into(), exact(rhs)).at(g)
                })
                .collect())
        }
        (L32, Prepared::John { decomposition, .. }) => {
            let Some(dec) = decomposition else { return Err(Skip("no certified decomposition".into())) };
            let r = restrict_lifted(&lift_decomposition(dec), f)?;
            if r.indices.len() != dec.contacts.len() {
                return Err(Skip(format!("{} lifted vectors vanish on H", dec.contacts.len() - r.indices.len())));
            }
            let lo = r.norms_sq.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = r.norms_sq.iter().copied().fold(0.0, f64::max);
            Ok(vec![Row::bound(exact(1.0 / (n as f64 + 1.0)), exact(lo)), Row::bound(exact(hi), exact(1.0))])
        }
        (T2a | T2b | T4a | T4b | T6, Prepared::Lowner { body }) => {
            let p = project(body, f)?;
            let scale = (k as f64 / n as f64).sqrt();
            Ok(vec![match id {
                T2a => Row::bound(
                    exact(scale * simplex_constants(k).vol_s_tilde_pow),
                    exact(volume_v(&p)?.powf(1.0 / k as f64)),
                ),
                T2b => Row::bound(exact(scale * cross_root(k)), exact(volume_v(&p)?.powf(1.0 / k as f64))),
                T4a => {
                    let kf = k as f64;
                    let tilde = ((kf + 1.0) / kf).sqrt() * width_simplex(k);
                    Row::bound(exact(scale * tilde), mean_width_mc(&p, samples, t.mc_seed(0)).into())
                }
                T4b => {
                    Row::bound(exact(scale * width_cross_polytope(k)), mean_width_mc(&p, samples, t.mc_seed(0)).into())
                }
                _ => {
                    Row::bound(exact((k as f64).powf(-(k as f64) / 2.0)), wills_mc_v(&p, samples, t.mc_seed(0))?.into())
                }
            }])
        }
        (T8a | T8b, Prepared::Minsurf { surface, .. }) => {
            let z = projection_body_from(surface)?.project(f)?;
            let per = surface.total / n as f64;
            Ok(vec![if id == T8a {
                let rhs = 4f64.powi(k as i32) / factorial(k) / per.powi(k as i32);
                Row::bound(polar_volume_mc(&z, samples, t.mc_seed(0)).into(), exact(rhs))
            } else {
                Row::bound(exact(per.powi(k as i32)), exact(z.volume()?))
            }])
        }
        (T8i | T8ii | T8iii | T8iv | T8v, Prepared::Minsurf { body, surface }) => {
            let a = (n * n) as f64 * surface.volume / (k as f64 * surface.total);
            let s = Section::new(body, f)?;
            Ok(match id {
                T8i => vec![Row::bound(
                    wills_mc(&s.body, samples, t.mc_seed(0))?.into(),
                    exact((1.0 + 2.0 * a).powi(k as i32)),
                )],
                T8ii => vec![Row::bound(exact(s.root_volume()), exact(2.0 * a))],
                T8iii => {
                    vec![Row::bound(mean_width_mc(&s.hull(), samples, t.mc_seed(0)).into(), exact(a * width_cube(k)))]
                }
                T8iv => {
                    let polar = polar_h(&s.body)?;
                    vec![Row::bound(exact(cross_root(k) / a), exact(volume_v(&polar)?.powf(1.0 / k as f64)))]
                }
                _ => {
                    let polar = polar_h(&s.body)?;
                    vec![Row::bound(
                        exact(width_cross_polytope(k) / a),
                        mean_width_mc(&polar, samples, t.mc_seed(0)).into(),
                    )]
                }
            })
        }
        _ => Err(Skip(format!("{id} cannot run on this body position"))),
    }
}

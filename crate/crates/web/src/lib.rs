//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every binding returns a JSON string. The `*_json` functions hold the logic
//! and are what the native tests call; the exported wrappers only turn errors
//! into JS exceptions.

use nalgebra::{DMatrix, DVector};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use johnsections::harness::{affine_section_bound, gen_body, run_experiment, BodyClass, CheckId, ExperimentConfig};
use johnsections::polytope::{section, vertex_enumerate, HPolytope, Subspace};
use johnsections::positions::{contact_points, default_contact_tol, fit_john_decomposition, to_john_position};

type Res = Result<String, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn class(name: &str) -> Result<BodyClass, String> {
    BodyClass::parse(name).ok_or_else(|| format!("unknown body class {name:?}"))
}

fn polygon(class_name: &str, facets: usize, seed: u64) -> Result<HPolytope, String> {
    gen_body(class(class_name)?, 2, facets.clamp(3, 64), seed).map_err(err)
}

/// Vertices in counter-clockwise order.
fn outline(p: &HPolytope) -> Result<Vec<[f64; 2]>, String> {
    let v = vertex_enumerate(p).map_err(err)?;
    let pts: Vec<[f64; 2]> = v.vertices().iter().map(|x| [x[0], x[1]]).collect();
    let c = pts.iter().fold([0.0, 0.0], |a, p| [a[0] + p[0], a[1] + p[1]]);
    let c = [c[0] / pts.len() as f64, c[1] / pts.len() as f64];
    let mut pts = pts;
    pts.sort_by(|a, b| {
        let ta = (a[1] - c[1]).atan2(a[0] - c[0]);
        let tb = (b[1] - c[1]).atan2(b[0] - c[0]);
        ta.total_cmp(&tb)
    });
    Ok(pts)
}

/// A random polygon before and after moving it to John's position, with the
/// contact points and weights of the decomposition of the identity.
pub fn john_json(class_name: &str, facets: usize, seed: u64) -> Res {
    let p = polygon(class_name, facets, seed)?;
    let (j, _) = to_john_position(&p).map_err(err)?;
    let contacts = contact_points(&j, default_contact_tol(&j)).map_err(err)?;
    let dec = fit_john_decomposition(&contacts, j.is_symmetric()).map_err(err)?;
    let file = dec.to_file();
    let v: Value = json!({
        "original": outline(&p)?,
        "john": outline(&j)?,
        "decomposition": file,
        "identity_residual": dec.identity_residual(),
    });
    Ok(v.to_string())
}

/// The chord of the John-positioned polygon cut by the line with unit normal
/// at `angle` (radians) and distance `offset` from the origin, together with
/// the upper bound on its length for that distance.
pub fn chord_json(class_name: &str, facets: usize, seed: u64, angle: f64, offset: f64) -> Res {
    let p = polygon(class_name, facets, seed)?;
    let (j, _) = to_john_position(&p).map_err(err)?;
    let (s, c) = angle.sin_cos();
    let dir = DMatrix::from_column_slice(2, 1, &[-s, c]);
    let f = Subspace::new(dir, DVector::from_vec(vec![offset * c, offset * s])).map_err(err)?;
    let bound = affine_section_bound(2, 1, offset.abs());
    let v = match section(&j, &f) {
        Ok(chord) => {
            let ends = vertex_enumerate(&chord).map_err(err)?;
            let ends: Vec<[f64; 2]> = ends.vertices().iter().map(|y| f.embed(y)).map(|x| [x[0], x[1]]).collect();
            let length = match ends.as_slice() {
                [a, b] => (a[0] - b[0]).hypot(a[1] - b[1]),
                _ => 0.0,
            };
            json!({ "endpoints": ends, "length": length, "bound": bound })
        }
        // the line misses the polygon
        Err(_) => json!({ "endpoints": [], "length": 0.0, "bound": bound }),
    };
    Ok(v.to_string())
}

/// Runs one checker and returns its counts and the worst relative margin.
pub fn check_json(theorem: &str, n: usize, k: usize, trials: usize, samples: usize, seed: u64) -> Res {
    let id: CheckId = theorem.parse().map_err(err)?;
    let mut config = ExperimentConfig::new(id, n, k);
    config.trials = trials.min(200);
    config.mc_samples = samples.min(100_000);
    config.seed = seed;
    let r = run_experiment(&config).map_err(err)?;
    let worst = r
        .records
        .iter()
        .filter(|t| t.margin.is_finite())
        .map(|t| t.margin / t.rhs.abs().max(1e-300))
        .fold(f64::INFINITY, f64::min);
    let v = json!({
        "theorem": id.name(),
        "n": n,
        "k": k,
        "trials": r.trials,
        "passed": r.passed,
        "failed": r.failed,
        "skipped": r.skipped,
        "informational": r.informational,
        "equalities": r.equalities,
        "worst_relative_margin": if worst.is_finite() { Some(worst) } else { None },
    });
    Ok(v.to_string())
}

fn js(r: Res) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn john(class_name: &str, facets: usize, seed: u32) -> Result<String, JsValue> {
    js(john_json(class_name, facets, seed as u64))
}

#[wasm_bindgen]
pub fn chord(class_name: &str, facets: usize, seed: u32, angle: f64, offset: f64) -> Result<String, JsValue> {
    js(chord_json(class_name, facets, seed as u64, angle, offset))
}

#[wasm_bindgen]
pub fn check(theorem: &str, n: usize, k: usize, trials: usize, samples: usize, seed: u32) -> Result<String, JsValue> {
    js(check_json(theorem, n, k, trials, samples, seed as u64))
}

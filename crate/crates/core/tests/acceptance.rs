//! Acceptance run: prints one `PASS`/`FAIL` line per criterion and exits
//! non-zero if any failed.
//!
//! Criterion 7 runs the full regression sweep (several minutes in release
//! mode on one core).

use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};

use johnsections::functionals::{mean_width_mc, wills_mc};
use johnsections::harness::{
    affine_section_bound, cube_diagonal_subspace, report_to_json, run_all, run_experiment, simplex_face_distance,
    simplex_face_subspace, CheckId, CheckReport, ExperimentConfig,
};
use johnsections::polytope::{projection_body, section, surface_measure, vertex_enumerate, volume_h, HPolytope};
use johnsections::positions::{
    contact_points, default_contact_tol, fit_john_decomposition, isotropy_residual, max_inscribed_ellipsoid,
    min_surface_area_position, to_john_position,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn john_certification() -> Outcome {
    let start = Instant::now();
    let mut worst_m = 0.0f64;
    let mut worst_dec = 0.0f64;
    for n in 2..=6 {
        let bodies = [
            (HPolytope::cube(n), 1.0),
            (HPolytope::regular_simplex(n), 1.0),
            (HPolytope::cross_polytope(n), 1.0 / n as f64),
        ];
        for (body, r2) in bodies {
            let e = max_inscribed_ellipsoid(&body).map_err(|e| e.to_string())?;
            let target = DMatrix::<f64>::identity(n, n) * r2;
            worst_m = worst_m.max((e.shape() - target).norm() + e.center().norm());
            let (j, _) = to_john_position(&body).map_err(|e| e.to_string())?;
            let contacts = contact_points(&j, default_contact_tol(&j)).map_err(|e| e.to_string())?;
            let dec = fit_john_decomposition(&contacts, j.is_symmetric()).map_err(|e| e.to_string())?;
            if !dec.is_valid(1e-7) {
                return Err(format!("n={n}: decomposition invalid"));
            }
            worst_dec = worst_dec.max(dec.identity_residual()).max(dec.balance_residual()).max(dec.trace_residual());
        }
    }
    let t = start.elapsed();
    ensure(
        worst_m <= 1e-5 && t < Duration::from_secs(10),
        format!("max |M - M*| {worst_m:.1e}, max decomposition residual {worst_dec:.1e}, {t:.2?}"),
    )
}

fn cube_sharpness() -> Outcome {
    let mut worst = 0.0f64;
    for n in [2usize, 4, 6] {
        for k in (1..n).filter(|k| n % k == 0) {
            let f = cube_diagonal_subspace(n, k, 7).map_err(|s| s.0)?;
            let s = section(&HPolytope::cube(n), &f).map_err(|e| e.to_string())?;
            let v = volume_h(&s).map_err(|e| e.to_string())?.powf(1.0 / k as f64);
            worst = worst.max((v - 2.0 * (n as f64 / k as f64).sqrt()).abs());
        }
    }
    ensure(worst <= 1e-9, format!("max deviation {worst:.1e}"))
}

fn simplex_sharpness() -> Outcome {
    let mut worst = 0.0f64;
    for (n, k) in [(3usize, 1usize), (3, 2), (4, 2)] {
        let simplex = HPolytope::regular_simplex(n);
        let f = simplex_face_subspace(&simplex, k, 3).map_err(|s| s.0)?;
        let d = simplex_face_distance(n, k);
        if (f.distance() - d).abs() > 1e-9 {
            return Err(format!("({n},{k}): face plane at distance {} not {d}", f.distance()));
        }
        let s = section(&simplex, &f).map_err(|e| e.to_string())?;
        let v = volume_h(&s).map_err(|e| e.to_string())?.powf(1.0 / k as f64);
        let bound = affine_section_bound(n, k, d);
        worst = worst.max((v - bound).abs() / bound);
    }
    ensure(worst <= 1e-8, format!("max relative deviation {worst:.1e}"))
}

fn closed_forms() -> Outcome {
    let square = HPolytope::cube(2);
    let start = Instant::now();
    let w = wills_mc(&square, 1_000_000, 1).map_err(|e| e.to_string())?;
    let tw = start.elapsed();
    let start = Instant::now();
    let m = mean_width_mc(&vertex_enumerate(&square).map_err(|e| e.to_string())?, 1_000_000, 2);
    let tm = start.elapsed();
    let zw = (w.value - 9.0).abs() / w.std_error;
    let zm = (m.value - 4.0 / std::f64::consts::PI).abs() / m.std_error;
    ensure(
        zw <= 3.0 && zm <= 3.0 && tw < Duration::from_secs(5) && tm < Duration::from_secs(5),
        format!("wills {:.5} ({zw:.2} se, {tw:.2?}), mean width {:.5} ({zm:.2} se, {tm:.2?})", w.value, m.value),
    )
}

fn projection_body_equality() -> Outcome {
    let mut msg = Vec::new();
    for n in [2usize, 3] {
        let cube = HPolytope::cube(n);
        let pi = projection_body(&cube).map_err(|e| e.to_string())?.volume().map_err(|e| e.to_string())?;
        let sm = surface_measure(&cube).map_err(|e| e.to_string())?;
        let expected = 2f64.powi((n * n) as i32);
        let rhs = (sm.total / n as f64).powi(n as i32);
        if (pi - expected).abs() > 1e-9 * expected || (rhs - expected).abs() > 1e-9 * expected {
            return Err(format!("n={n}: |Pi K| {pi}, (surface/n)^n {rhs}, expected {expected}"));
        }
        msg.push(format!("n={n}: {pi}"));
    }
    Ok(msg.join(", "))
}

fn min_surface() -> Outcome {
    let t = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 0.5]));
    let body = HPolytope::cube(2).affine_image(&t, &DVector::zeros(2)).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let r = min_surface_area_position(&body).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let res = isotropy_residual(&r.body).map_err(|e| e.to_string())?;
    ensure(
        res <= 1e-6 && (r.surface - 8.0).abs() <= 1e-6 && elapsed < Duration::from_secs(1),
        format!("residual {res:.1e}, surface {:.9}, {elapsed:.2?}", r.surface),
    )
}

fn regression(reports: &[CheckReport], elapsed: Duration) -> Outcome {
    let covered = CheckId::ALL.iter().all(|id| reports.iter().any(|r| r.theorem == *id));
    let failed: usize = reports.iter().map(|r| r.failed).sum();
    let skipped: usize = reports.iter().map(|r| r.skipped).sum();
    let trials: usize = reports.iter().map(|r| r.trials).sum();
    ensure(
        covered && failed == 0 && elapsed <= Duration::from_secs(15 * 60),
        format!("{} checkers, {trials} trials, {failed} failed, {skipped} skipped, {elapsed:.0?}", reports.len()),
    )
}

fn proof_level(reports: &[CheckReport]) -> Outcome {
    let mut msg = Vec::new();
    for id in [CheckId::L32, CheckId::G1] {
        let r = reports.iter().find(|r| r.theorem == id).ok_or(format!("{id} missing"))?;
        if r.failed > 0 || r.passed == 0 {
            return Err(format!("{id}: {} passed, {} failed", r.passed, r.failed));
        }
        msg.push(format!("{id}: {} passed, {} skipped", r.passed, r.skipped));
    }
    Ok(msg.join(", "))
}

fn determinism() -> Outcome {
    for id in [CheckId::T2a, CheckId::T7a, CheckId::G1] {
        let mut c = ExperimentConfig::new(id, 4, 2);
        c.trials = 6;
        c.mc_samples = 20_000;
        c.seed = 11;
        let a = report_to_json(&run_experiment(&c).map_err(|e| e.to_string())?);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(|e| e.to_string())?;
        let b = pool.install(|| run_experiment(&c)).map_err(|e| e.to_string())?;
        if a != report_to_json(&b) {
            return Err(format!("{id}: reports differ"));
        }
    }
    Ok("T2a, T7a, G1 reports identical across runs".into())
}

fn main() {
    let start = Instant::now();
    let suite = run_all(6, 200, 100_000, 0);
    let suite_time = start.elapsed();
    let (regress, proofs) = match &suite {
        Ok(reports) => (regression(reports, suite_time), proof_level(reports)),
        Err(e) => (Err(e.to_string()), Err(e.to_string())),
    };

    let results = [
        ("1 John certification", john_certification()),
        ("2 cube sharpness", cube_sharpness()),
        ("3 simplex sharpness", simplex_sharpness()),
        ("4 closed forms", closed_forms()),
        ("5 projection body equality", projection_body_equality()),
        ("6 minimal surface position", min_surface()),
        ("7 regression suite", regress),
        ("8 contact-vector and Gaussian properties", proofs),
        ("9 determinism", determinism()),
    ];
    let mut ok = true;
    for (name, r) in &results {
        match r {
            Ok(m) => println!("PASS  {name}: {m}"),
            Err(m) => {
                ok = false;
                println!("FAIL  {name}: {m}");
            }
        }
    }
    if !ok {
        std::process::exit(1);
    }
}

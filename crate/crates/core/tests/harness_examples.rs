use std::f64::consts::SQRT_2;

use nalgebra::DMatrix;

use johnsections::harness::{
    cube_diagonal_subspace, evaluate, prepare, reports_to_csv, run_experiment, BodyClass, CheckId, Claim,
    ExperimentConfig, Position, TrialInput, Verdict, CSV_HEADER,
};
use johnsections::polytope::{HPolytope, Subspace};

fn input(n: usize, k: usize, lambdas: &[f64]) -> TrialInput<'_> {
    TrialInput { n, k, d: 0.0, lambdas, samples: 200_000, seed: 5 }
}

fn diagonal_line() -> Subspace {
    Subspace::linear(DMatrix::from_column_slice(2, 1, &[SQRT_2 / 2.0, SQRT_2 / 2.0])).unwrap()
}

#[test]
fn square_diagonal_meets_the_symmetric_bound() {
    let body = prepare(Position::John, BodyClass::Cube, &HPolytope::cube(2)).unwrap();
    let rows = evaluate(CheckId::T1b, &body, &diagonal_line(), &input(2, 1, &[])).unwrap();
    assert_eq!(rows.len(), 1);
    let r = &rows[0];
    // the diagonal of [-1, 1]^2 has length 2√2 and the bound is 2√(n/k)
    assert!((r.lhs - 2.0 * SQRT_2).abs() < 1e-12);
    assert!((r.rhs - 2.0 * SQRT_2).abs() < 1e-12);
}

#[test]
fn square_diagonal_wills_bound() {
    let body = prepare(Position::John, BodyClass::Cube, &HPolytope::cube(2)).unwrap();
    let rows = evaluate(CheckId::T5, &body, &diagonal_line(), &input(2, 1, &[1.0])).unwrap();
    let r = &rows[0];
    // Wills functional of a segment of length L is 1 + L
    let expected = 1.0 + 2.0 * SQRT_2;
    assert!((r.rhs - expected).abs() < 1e-12);
    assert!((r.lhs - expected).abs() <= 3.0 * r.lhs_err + 1e-9, "{r:?}");
}

#[test]
fn cube_section_volume_bound_in_surface_position() {
    let body = prepare(Position::Minsurf, BodyClass::Cube, &HPolytope::cube(3)).unwrap();
    let f = Subspace::linear(DMatrix::from_column_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0])).unwrap();
    let rows = evaluate(CheckId::T8ii, &body, &f, &input(3, 2, &[])).unwrap();
    // a = n²|K| / (k ∂K) = 9·8 / (2·24) = 3/2 and the bound is 2a
    assert!((rows[0].rhs - 3.0).abs() < 1e-12);
    // the coordinate square has area 4
    assert!((rows[0].lhs - 2.0).abs() < 1e-12);
}

#[test]
fn cube_diagonal_sections_are_equality_cases() {
    for (n, k) in [(2, 1), (4, 2), (6, 3), (6, 2)] {
        let body = prepare(Position::John, BodyClass::Cube, &HPolytope::cube(n)).unwrap();
        let f = cube_diagonal_subspace(n, k, 9).unwrap();
        let rows = evaluate(CheckId::SharpCube, &body, &f, &input(n, k, &[])).unwrap();
        let want = 2.0 * (n as f64 / k as f64).sqrt();
        assert!(matches!(rows[0].claim, Claim::Equal(_)));
        assert!((rows[0].lhs - want).abs() < 1e-9, "n={n} k={k}: {}", rows[0].lhs);
    }
}

#[test]
fn affine_bound_decreases_with_distance() {
    let rhs = |d: f64| {
        let mut c = ExperimentConfig::new(CheckId::T1c, 4, 2);
        c.trials = 1;
        c.d = Some(d);
        let r = run_experiment(&c).unwrap();
        r.records[0].rhs
    };
    let values: Vec<f64> = [0.0, 0.25, 0.5, 0.75].into_iter().map(rhs).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
}

#[test]
fn sweep_reports_are_deterministic() {
    let mut c = ExperimentConfig::sweep(CheckId::T3b, 4);
    c.trials = 8;
    c.mc_samples = 10_000;
    let a = johnsections::harness::report_to_json(&run_experiment(&c).unwrap());
    let b = johnsections::harness::report_to_json(&run_experiment(&c).unwrap());
    assert_eq!(a, b);
}

#[test]
fn empty_report_list_gives_header_only_csv() {
    let csv = reports_to_csv(&[]).unwrap();
    assert_eq!(csv.trim_end(), CSV_HEADER.join(","));
    assert_eq!(CSV_HEADER.join(","), "theorem,n,k,d,lambda,trial,lhs,lhs_err,rhs,rhs_err,margin,verdict,seed");
}

#[test]
fn csv_has_one_row_per_comparison() {
    let mut c = ExperimentConfig::new(CheckId::T5, 3, 2);
    c.trials = 3;
    c.mc_samples = 5_000;
    let r = run_experiment(&c).unwrap();
    let csv = reports_to_csv(std::slice::from_ref(&r)).unwrap();
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), r.records.len());
    // three trials, three default scales each
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|row| &row[0] == "T5" && &row[11] != "fail"));
}

#[test]
fn skipped_trials_are_counted() {
    // T7a asks for the section to contain the origin of the simplex in its
    // relative interior; far sections of a simplex cannot
    let mut c = ExperimentConfig::new(CheckId::T7a, 3, 1);
    c.class = BodyClass::Simplex;
    c.d = Some(5.0);
    c.trials = 4;
    c.mc_samples = 2_000;
    let r = run_experiment(&c).unwrap();
    assert_eq!(r.skipped, 4);
    assert!(r.records.iter().all(|t| t.verdict == Verdict::Skipped && t.lhs.is_nan()));
    assert!(r.ok());
}

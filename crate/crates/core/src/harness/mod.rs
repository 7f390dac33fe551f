//! Random bodies and subspaces, the inequality checkers, and reports.
//!
//! Each trial derives its seed from the configuration seed and the trial
//! index, so reports do not depend on scheduling.

mod checks;
mod config;
mod context;
mod generate;
mod report;
mod run;

pub use checks::{
    admissible, affine_section_bound, cube_diagonal_subspace, evaluate, linear_section_bound, simplex_face_distance,
    simplex_face_subspace, trial_subspace, Eval, Row, Skip, TrialInput, SIMPLEX_FACE_TOL,
};
pub use config::{CheckId, ExperimentConfig, Position, DEFAULT_DISTANCE, DEFAULT_LAMBDAS, GAUSS_GRID};
pub use context::{facet_count, prepare, BodyCache, Prepared};
pub use generate::{gen_body, mix_seed, sample_subspace, BodyClass};
pub use report::{
    config_hash, emit_report, emit_reports, judge, report_to_json, reports_to_csv, slack, CheckReport, Claim, Format,
    TrialRecord, Verdict, CSV_HEADER, EXACT_TOL,
};
pub use run::{run_all, run_experiment, run_with_cache, sweep_pairs};

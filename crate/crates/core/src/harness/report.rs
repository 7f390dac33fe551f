use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::{CheckId, ExperimentConfig};
use crate::error::{GeomError, Result};

/// Relative tolerance for exact comparisons.
pub const EXACT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Measured value without a decidable bound.
    Info,
    Skipped,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Info => "info",
            Verdict::Skipped => "skipped",
        }
    }
}

/// One compared pair. Every row states a claim `lhs ≤ rhs`; lower bounds are
/// stored with the bound on the left.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub theorem: CheckId,
    pub n: usize,
    pub k: usize,
    pub d: f64,
    pub lambda: Option<f64>,
    pub trial: usize,
    pub lhs: f64,
    pub lhs_err: f64,
    pub rhs: f64,
    pub rhs_err: f64,
    pub margin: f64,
    pub verdict: Verdict,
    pub seed: u64,
    /// Both sides exact and equal within [`EXACT_TOL`].
    pub equality: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// How a row is judged.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Claim {
    /// `lhs ≤ rhs` up to three combined standard errors.
    Bound,
    /// `|lhs − rhs| ≤ tol · max(1, |rhs|)`.
    Equal(f64),
    Info,
}

/// Allowed excess of `lhs` over `rhs`.
pub fn slack(rhs: f64, lhs_err: f64, rhs_err: f64) -> f64 {
    3.0 * (lhs_err + rhs_err) + EXACT_TOL * rhs.abs().max(1.0)
}

pub fn judge(claim: Claim, lhs: f64, lhs_err: f64, rhs: f64, rhs_err: f64) -> (Verdict, bool) {
    let exact = lhs_err == 0.0 && rhs_err == 0.0;
    let close = |tol: f64| (lhs - rhs).abs() <= tol * rhs.abs().max(1.0);
    match claim {
        Claim::Bound => {
            let ok = lhs <= rhs + slack(rhs, lhs_err, rhs_err);
            (if ok { Verdict::Pass } else { Verdict::Fail }, exact && close(EXACT_TOL))
        }
        Claim::Equal(tol) => {
            let ok = close(tol);
            (if ok { Verdict::Pass } else { Verdict::Fail }, ok)
        }
        Claim::Info => (Verdict::Info, false),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theorem: CheckId,
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub seed: u64,
    pub trials: usize,
    /// Per-trial outcome counts: a trial fails if any of its rows fails.
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub informational: usize,
    pub pass_rate: f64,
    pub equalities: usize,
    pub records: Vec<TrialRecord>,
}

impl CheckReport {
    /// Assembles a report from records in any order.
    pub fn new(config: ExperimentConfig, mut records: Vec<TrialRecord>) -> Self {
        records.sort_by_key(|r| r.trial);
        let (mut passed, mut failed, mut skipped, mut informational) = (0, 0, 0, 0);
        let mut i = 0;
        while i < records.len() {
            let t = records[i].trial;
            let mut j = i;
            while j < records.len() && records[j].trial == t {
                j += 1;
            }
            let group = &records[i..j];
            let has = |v: Verdict| group.iter().any(|r| r.verdict == v);
            if has(Verdict::Fail) {
                failed += 1;
            } else if has(Verdict::Pass) {
                passed += 1;
            } else if has(Verdict::Info) {
                informational += 1;
            } else {
                skipped += 1;
            }
            i = j;
        }
        let decided = passed + failed;
        Self {
            theorem: config.theorem,
            config_hash: config_hash(&config),
            seed: config.seed,
            trials: passed + failed + skipped + informational,
            passed,
            failed,
            skipped,
            informational,
            pass_rate: if decided == 0 { 1.0 } else { passed as f64 / decided as f64 },
            equalities: records.iter().filter(|r| r.equality).count(),
            config,
            records,
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// First 16 hex digits of the SHA-256 of the canonical JSON config.
pub fn config_hash(config: &ExperimentConfig) -> String {
    let json = serde_json::to_string(config).expect("config serializes");
    let digest = Sha256::digest(json.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// From a file extension, defaulting to JSON.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

pub const CSV_HEADER: [&str; 13] =
    ["theorem", "n", "k", "d", "lambda", "trial", "lhs", "lhs_err", "rhs", "rhs_err", "margin", "verdict", "seed"];

pub fn reports_to_csv(reports: &[CheckReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in reports.iter().flat_map(|r| &r.records) {
        w.write_record([
            r.theorem.name().to_string(),
            r.n.to_string(),
            r.k.to_string(),
            r.d.to_string(),
            r.lambda.map(|l| l.to_string()).unwrap_or_default(),
            r.trial.to_string(),
            r.lhs.to_string(),
            r.lhs_err.to_string(),
            r.rhs.to_string(),
            r.rhs_err.to_string(),
            r.margin.to_string(),
            r.verdict.name().to_string(),
            r.seed.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| GeomError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn report_to_json(report: &CheckReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn emit_report(report: &CheckReport, path: impl AsRef<Path>, format: Format) -> Result<()> {
    emit_reports(std::slice::from_ref(report), path, format)
}

/// Several reports in one file: CSV rows are concatenated, JSON is an array.
pub fn emit_reports(reports: &[CheckReport], path: impl AsRef<Path>, format: Format) -> Result<()> {
    let text = match format {
        Format::Csv => reports_to_csv(reports)?,
        Format::Json if reports.len() == 1 => report_to_json(&reports[0]),
        Format::Json => serde_json::to_string_pretty(reports)?,
    };
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(trial: usize, verdict: Verdict) -> TrialRecord {
        TrialRecord {
            theorem: CheckId::T1a,
            n: 3,
            k: 2,
            d: 0.0,
            lambda: None,
            trial,
            lhs: 1.0,
            lhs_err: 0.0,
            rhs: 2.0,
            rhs_err: 0.0,
            margin: 1.0,
            verdict,
            seed: 7,
            equality: false,
            ratio: None,
            note: None,
        }
    }

    #[test]
    fn judging() {
        assert_eq!(judge(Claim::Bound, 1.0, 0.0, 1.0, 0.0), (Verdict::Pass, true));
        assert_eq!(judge(Claim::Bound, 1.0 + 1e-8, 0.0, 1.0, 0.0).0, Verdict::Fail);
        assert_eq!(judge(Claim::Bound, 1.25, 0.1, 1.0, 0.0), (Verdict::Pass, false));
        assert_eq!(judge(Claim::Bound, 1.35, 0.1, 1.0, 0.0).0, Verdict::Fail);
        assert_eq!(judge(Claim::Equal(1e-9), 0.5, 0.0, 1.0, 0.0).0, Verdict::Fail);
        assert_eq!(judge(Claim::Info, 5.0, 0.0, 1.0, 0.0).0, Verdict::Info);
    }

    #[test]
    fn counts_by_trial() {
        let config = ExperimentConfig::new(CheckId::T1a, 3, 2);
        let recs = vec![
            record(2, Verdict::Pass),
            record(0, Verdict::Pass),
            record(0, Verdict::Fail),
            record(1, Verdict::Skipped),
            record(3, Verdict::Info),
        ];
        let r = CheckReport::new(config, recs);
        assert_eq!((r.passed, r.failed, r.skipped, r.informational, r.trials), (1, 1, 1, 1, 4));
        assert_eq!(r.records.iter().map(|x| x.trial).collect::<Vec<_>>(), vec![0, 0, 1, 2, 3]);
        assert!(!r.ok());
    }

    #[test]
    fn empty_report_writes_header_only() {
        let r = CheckReport::new(ExperimentConfig::new(CheckId::T5, 2, 1), Vec::new());
        assert_eq!(reports_to_csv(&[r]).unwrap(), CSV_HEADER.join(",") + "\n");
    }

    #[test]
    fn hash_tracks_config() {
        let a = ExperimentConfig::new(CheckId::T1a, 3, 2);
        let mut b = a.clone();
        assert_eq!(config_hash(&a), config_hash(&b));
        b.seed = 1;
        assert_ne!(config_hash(&a), config_hash(&b));
        assert_eq!(config_hash(&a).len(), 16);
    }
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::BodyClass;
use crate::error::{GeomError, Result};

/// Checker catalogue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    T1a,
    T1b,
    T1c,
    T2a,
    T2b,
    T3a,
    T3b,
    T4a,
    T4b,
    T5,
    T6,
    T7a,
    T7b,
    T8a,
    T8b,
    T8i,
    T8ii,
    T8iii,
    T8iv,
    T8v,
    G1,
    L32,
    SharpCube,
    SharpSimplex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    John,
    Lowner,
    Minsurf,
}

impl CheckId {
    pub const ALL: [CheckId; 24] = [
        CheckId::T1a,
        CheckId::T1b,
        CheckId::T1c,
        CheckId::T2a,
        CheckId::T2b,
        CheckId::T3a,
        CheckId::T3b,
        CheckId::T4a,
        CheckId::T4b,
        CheckId::T5,
        CheckId::T6,
        CheckId::T7a,
        CheckId::T7b,
        CheckId::T8a,
        CheckId::T8b,
        CheckId::T8i,
        CheckId::T8ii,
        CheckId::T8iii,
        CheckId::T8iv,
        CheckId::T8v,
        CheckId::G1,
        CheckId::L32,
        CheckId::SharpCube,
        CheckId::SharpSimplex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::T1a => "T1a",
            CheckId::T1b => "T1b",
            CheckId::T1c => "T1c",
            CheckId::T2a => "T2a",
            CheckId::T2b => "T2b",
            CheckId::T3a => "T3a",
            CheckId::T3b => "T3b",
            CheckId::T4a => "T4a",
            CheckId::T4b => "T4b",
            CheckId::T5 => "T5",
            CheckId::T6 => "T6",
            CheckId::T7a => "T7a",
            CheckId::T7b => "T7b",
            CheckId::T8a => "T8a",
            CheckId::T8b => "T8b",
            CheckId::T8i => "T8i",
            CheckId::T8ii => "T8ii",
            CheckId::T8iii => "T8iii",
            CheckId::T8iv => "T8iv",
            CheckId::T8v => "T8v",
            CheckId::G1 => "G1",
            CheckId::L32 => "L32",
            CheckId::SharpCube => "SHARP-cube",
            CheckId::SharpSimplex => "SHARP-simplex",
        }
    }

    /// The position the body is put in before checking.
    pub fn position(self) -> Position {
        use CheckId::*;
        match self {
            T2a | T2b | T4a | T4b | T6 => Position::Lowner,
            T8a | T8b | T8i | T8ii | T8iii | T8iv | T8v => Position::Minsurf,
            _ => Position::John,
        }
    }

    /// The statement only covers centrally symmetric bodies.
    pub fn requires_symmetric(self) -> bool {
        use CheckId::*;
        matches!(self, T1b | T2b | T3b | T4b | T5 | T6 | T7b | T8i | T8ii | T8iii | T8iv | T8v | G1)
    }

    pub fn default_class(self) -> BodyClass {
        match self {
            CheckId::SharpCube => BodyClass::Cube,
            CheckId::SharpSimplex => BodyClass::Simplex,
            c if c.requires_symmetric() => BodyClass::Symmetric,
            _ => BodyClass::General,
        }
    }

    /// Checkers that read the affine distance `d`.
    pub fn uses_distance(self) -> bool {
        matches!(self, CheckId::T1c | CheckId::T7a)
    }

    pub fn uses_lambda(self) -> bool {
        matches!(self, CheckId::T5 | CheckId::T7a | CheckId::T7b)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| GeomError::InvalidInput(format!("unknown checker {s:?}")))
    }
}

impl Serialize for CheckId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for CheckId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub const DEFAULT_LAMBDAS: [f64; 3] = [0.5, 1.0, 2.0];
pub const DEFAULT_DISTANCE: f64 = 0.5;
/// Scales `t` at which the Gaussian comparison is evaluated.
pub const GAUSS_GRID: [f64; 6] = [0.25, 0.5, 1.0, 1.5, 2.0, 3.0];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub theorem: CheckId,
    pub n: usize,
    pub k: usize,
    pub class: BodyClass,
    pub position: Position,
    pub trials: usize,
    pub mc_samples: usize,
    pub seed: u64,
    #[serde(default)]
    pub d: Option<f64>,
    #[serde(default)]
    pub lambda_grid: Option<Vec<f64>>,
    /// Cycle trials through every `(n', k')` with `2 ≤ n' ≤ n`,
    /// `1 ≤ k' < n'` and `k' ≤ k`.
    #[serde(default)]
    pub sweep: bool,
}

impl ExperimentConfig {
    /// A configuration with the checker's default body class and position.
    pub fn new(theorem: CheckId, n: usize, k: usize) -> Self {
        Self {
            theorem,
            n,
            k,
            class: theorem.default_class(),
            position: theorem.position(),
            trials: 20,
            mc_samples: 100_000,
            seed: 0,
            d: None,
            lambda_grid: None,
            sweep: false,
        }
    }

    /// The default regression sweep for one checker.
    pub fn sweep(theorem: CheckId, max_n: usize) -> Self {
        Self { sweep: true, ..Self::new(theorem, max_n, max_n.saturating_sub(1).max(1)) }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1 <= self.k && self.k <= self.n && self.n <= 8) {
            return Err(GeomError::InvalidInput(format!("need 1 ≤ k ≤ n ≤ 8, got n={}, k={}", self.n, self.k)));
        }
        if self.trials == 0 {
            return Err(GeomError::InvalidInput("trials must be at least 1".into()));
        }
        if let Some(d) = self.d {
            if !(d >= 0.0) {
                return Err(GeomError::InvalidInput(format!("distance must be nonnegative, got {d}")));
            }
        }
        if let Some(grid) = &self.lambda_grid {
            if grid.is_empty() || grid.iter().any(|&l| !(l > 0.0)) {
                return Err(GeomError::InvalidInput("scales must be positive".into()));
            }
        }
        if self.theorem.requires_symmetric() && !self.class.is_symmetric() {
            return Err(GeomError::InvalidInput(format!(
                "{} needs a symmetric body class, got {}",
                self.theorem,
                self.class.name()
            )));
        }
        if self.position != self.theorem.position() {
            return Err(GeomError::InvalidInput(format!("{} is stated for another position", self.theorem)));
        }
        Ok(())
    }

    pub fn distance(&self) -> f64 {
        if self.theorem.uses_distance() {
            self.d.unwrap_or(DEFAULT_DISTANCE)
        } else {
            0.0
        }
    }

    pub fn lambdas(&self) -> Vec<f64> {
        self.lambda_grid.clone().unwrap_or_else(|| DEFAULT_LAMBDAS.to_vec())
    }
}

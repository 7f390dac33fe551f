use serde::{Deserialize, Serialize};

use super::rng::Moments;

/// A Monte Carlo estimate with its standard error. `bias_bound` bounds any
/// deterministic truncation error of the estimator (zero when unbiased).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
    pub bias_bound: f64,
}

impl McEstimate {
    pub fn exact(value: f64) -> Self {
        Self { value, std_error: 0.0, samples: 0, seed: 0, bias_bound: 0.0 }
    }

    pub(crate) fn from_moments(m: &Moments, scale: f64, shift: f64, seed: u64) -> Self {
        Self {
            value: shift + scale * m.mean,
            std_error: scale.abs() * m.std_error(),
            samples: m.count,
            seed,
            bias_bound: 0.0,
        }
    }
}

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Geometric cooling schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnealParams {
    /// Starting temperature; `None` calibrates it so that about 80% of
    /// sampled uphill moves would be accepted.
    pub initial_temp: Option<f64>,
    pub cooling_rate: f64,
    /// Moves per temperature; `None` means `50 n`.
    pub steps_per_temp: Option<usize>,
    pub min_temp: f64,
    pub seed: u64,
}

impl Default for AnnealParams {
    fn default() -> Self {
        Self {
            initial_temp: None,
            cooling_rate: 0.95,
            steps_per_temp: None,
            min_temp: 1e-3,
            seed: 0,
        }
    }
}

impl AnnealParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.cooling_rate > 0.0 && self.cooling_rate < 1.0) {
            return Err(Error::invalid(format!("cooling rate must lie in (0, 1), got {}", self.cooling_rate)));
        }
        if self.steps_per_temp == Some(0) {
            return Err(Error::invalid("steps per temperature must be at least 1"));
        }
        if !(self.min_temp > 0.0) {
            return Err(Error::invalid("minimum temperature must be positive"));
        }
        if let Some(t) = self.initial_temp {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::invalid("initial temperature must be positive"));
            }
        }
        Ok(())
    }

    pub(crate) fn steps(&self, n: usize) -> usize {
        self.steps_per_temp.unwrap_or(50 * n).max(1)
    }
}

pub(crate) const CALIBRATION_SAMPLES: usize = 200;
const TARGET_ACCEPTANCE: f64 = 0.8;

/// Temperature at which the mean sampled uphill move is accepted with
/// probability 0.8.
pub(crate) fn calibrate(uphill: &[f64]) -> f64 {
    let ups: Vec<f64> = uphill.iter().copied().filter(|&d| d > 0.0).collect();
    if ups.is_empty() {
        return 1.0;
    }
    let mean = ups.iter().sum::<f64>() / ups.len() as f64;
    -mean / TARGET_ACCEPTANCE.ln()
}

pub(crate) fn accept(delta: f64, temp: f64, rng: &mut ChaCha8Rng) -> bool {
    delta <= 0.0 || rng.gen::<f64>() < (-delta / temp).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(AnnealParams::default().validate().is_ok());
        assert!(AnnealParams { cooling_rate: 1.0, ..Default::default() }.validate().is_err());
        assert!(AnnealParams { steps_per_temp: Some(0), ..Default::default() }.validate().is_err());
    }

    #[test]
    fn calibrated_temperature_accepts_mean_move_at_80_percent() {
        let t = calibrate(&[1.0, 3.0, -2.0, 0.0]);
        assert!(((-2.0 / t).exp() - 0.8).abs() < 1e-12);
    }
}

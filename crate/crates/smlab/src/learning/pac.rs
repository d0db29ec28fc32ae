//! Seeded PAC-learning experiments: draw `m = ceil(C (VC_upper + ln(1/delta)) /
//! epsilon)` labeled samples per trial, run the ERM learner, and estimate the
//! true loss on a fresh test set. Trials are independent and parallelizable;
//! trial `t` derives its generator from `seed + t`.

use super::vc::vc_upper_window;
use super::{contains, erm_learn, Sample};
use crate::core::{Pattern, Text};
use crate::report::{csv_document, fmt_f64};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// How sample strings are drawn.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DistributionSpec {
    /// Uniform over `Sigma^n`.
    Uniform,
    /// Uniform, but with probability `rate` the target pattern is planted at a
    /// uniform position.
    Planted { rate: f64 },
}

#[derive(Clone, Debug)]
pub struct PacConfig {
    pub n: usize,
    pub k: usize,
    pub alphabet_size: u8,
    pub epsilon: f64,
    pub delta: f64,
    pub trials: u64,
    pub seed: u64,
    /// The constant C in the sample-count rule; 4 unless overridden.
    pub sample_constant: f64,
    pub test_samples: usize,
}

impl PacConfig {
    pub fn new(n: usize, k: usize, alphabet_size: u8, epsilon: f64, delta: f64, trials: u64, seed: u64) -> Self {
        Self {
            n,
            k,
            alphabet_size,
            epsilon,
            delta,
            trials,
            seed,
            sample_constant: 4.0,
            test_samples: 10_000,
        }
    }

    /// `m = ceil(C * (VC_upper + ln(1/delta)) / epsilon)`.
    pub fn sample_count(&self) -> usize {
        let vc = vc_upper_window(self.n, self.k, self.alphabet_size) as f64;
        (self.sample_constant * (vc + (1.0 / self.delta).ln()) / self.epsilon).ceil() as usize
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PacTrialRow {
    pub trial: u64,
    pub m_samples: usize,
    pub empirical_loss: f64,
    pub test_loss: f64,
    pub success: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PacReport {
    pub target: String,
    pub n: usize,
    pub k: usize,
    pub alphabet_size: u8,
    pub epsilon: f64,
    pub delta: f64,
    pub m_samples: usize,
    pub seed: u64,
    pub rows: Vec<PacTrialRow>,
    pub success_fraction: f64,
}

impl PacReport {
    pub fn to_csv(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.trial.to_string(),
                    r.m_samples.to_string(),
                    fmt_f64(r.empirical_loss),
                    fmt_f64(r.test_loss),
                    (r.success as u8).to_string(),
                ]
            })
            .collect();
        csv_document(&["trial", "m_samples", "empirical_loss", "test_loss", "success"], &rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

fn draw_string(rng: &mut ChaCha8Rng, n: usize, sigma: u8, dist: &DistributionSpec, target: &Pattern) -> Text {
    let mut symbols: Vec<u8> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
    if let DistributionSpec::Planted { rate } = dist {
        if target.len() <= n && rng.gen::<f64>() < *rate {
            let pos = rng.gen_range(0..=n - target.len());
            symbols[pos..pos + target.len()].copy_from_slice(target.symbols());
        }
    }
    Text::new(symbols, sigma).expect("drawn symbols are in range")
}

/// Run the experiment; the report carries one row per trial and the fraction
/// of trials whose test loss was within epsilon.
pub fn pac_experiment(target: &Pattern, dist: &DistributionSpec, cfg: &PacConfig) -> Result<PacReport> {
    if target.alphabet_size() != cfg.alphabet_size {
        return Err(Error::InvalidInput("target alphabet does not match the experiment".into()));
    }
    if target.len() > cfg.k {
        return Err(Error::InvalidInput(format!(
            "target length {} exceeds the class bound k={}",
            target.len(),
            cfg.k
        )));
    }
    if !(0.0..1.0).contains(&cfg.epsilon) || cfg.epsilon <= 0.0 {
        return Err(Error::Parameter("epsilon must be in (0, 1)".into()));
    }
    if !(0.0..1.0).contains(&cfg.delta) || cfg.delta <= 0.0 {
        return Err(Error::Parameter("delta must be in (0, 1)".into()));
    }
    if let DistributionSpec::Planted { rate } = dist {
        if !(0.0..=1.0).contains(rate) {
            return Err(Error::Parameter("plant rate must be in [0, 1]".into()));
        }
    }
    let m = cfg.sample_count();
    let rows: Vec<PacTrialRow> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| -> Result<PacTrialRow> {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(trial));
            let samples: Vec<Sample> = (0..m)
                .map(|_| {
                    let string = draw_string(&mut rng, cfg.n, cfg.alphabet_size, dist, target);
                    let label = contains(&string, target)?;
                    Ok(Sample { string, label })
                })
                .collect::<Result<_>>()?;
            let learned = erm_learn(&samples, cfg.k, cfg.alphabet_size)?;
            let mut empirical_miss = 0usize;
            for s in &samples {
                if contains(&s.string, &learned)? != s.label {
                    empirical_miss += 1;
                }
            }
            let mut test_miss = 0usize;
            for _ in 0..cfg.test_samples {
                let string = draw_string(&mut rng, cfg.n, cfg.alphabet_size, dist, target);
                if contains(&string, &learned)? != contains(&string, target)? {
                    test_miss += 1;
                }
            }
            let test_loss = test_miss as f64 / cfg.test_samples as f64;
            Ok(PacTrialRow {
                trial,
                m_samples: m,
                empirical_loss: empirical_miss as f64 / m as f64,
                test_loss,
                success: test_loss <= cfg.epsilon,
            })
        })
        .collect::<Result<_>>()?;
    let success_fraction = rows.iter().filter(|r| r.success).count() as f64 / cfg.trials.max(1) as f64;
    Ok(PacReport {
        target: target.to_string(),
        n: cfg.n,
        k: cfg.k,
        alphabet_size: cfg.alphabet_size,
        epsilon: cfg.epsilon,
        delta: cfg.delta,
        m_samples: m,
        seed: cfg.seed,
        rows,
        success_fraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_count_formula() {
        let cfg = PacConfig::new(100, 4, 2, 0.1, 0.1, 1, 0);
        // VC_upper = min(4, floor(log2 100 + 0.5 log2 log2 100 + 2)) = 4.
        let m = cfg.sample_count();
        assert_eq!(m, (4.0_f64 * (4.0 + (10.0_f64).ln()) / 0.1).ceil() as usize);
    }

    #[test]
    fn realizable_uniform_succeeds() {
        let target = Pattern::from_digit_str("0110", 2).unwrap();
        let mut cfg = PacConfig::new(60, 4, 2, 0.1, 0.1, 20, 7);
        cfg.test_samples = 2_000;
        let report = pac_experiment(&target, &DistributionSpec::Uniform, &cfg).unwrap();
        assert!(report.success_fraction >= 0.9, "fraction {}", report.success_fraction);
    }

    #[test]
    fn never_occurring_pattern_is_trivially_learnable() {
        // Pattern of length n: occurrence probability 2^-12 under the uniform
        // draw with plant rate 0, so the all-negative labeling dominates.
        let target = Pattern::new(vec![1; 12], 2).unwrap();
        let mut cfg = PacConfig::new(12, 12, 2, 0.1, 0.1, 10, 3);
        cfg.test_samples = 1_000;
        let report = pac_experiment(&target, &DistributionSpec::Planted { rate: 0.0 }, &cfg).unwrap();
        assert_eq!(report.success_fraction, 1.0);
    }

    #[test]
    fn loose_epsilon_always_succeeds() {
        let target = Pattern::from_digit_str("01", 2).unwrap();
        let mut cfg = PacConfig::new(20, 2, 2, 0.5, 0.2, 10, 11);
        cfg.test_samples = 500;
        let report = pac_experiment(&target, &DistributionSpec::Uniform, &cfg).unwrap();
        assert_eq!(report.success_fraction, 1.0);
    }

    #[test]
    fn planted_distribution_biases_labels() {
        let target = Pattern::from_digit_str("110011", 2).unwrap();
        let mut cfg = PacConfig::new(16, 6, 2, 0.15, 0.1, 8, 9);
        cfg.test_samples = 1_000;
        let report = pac_experiment(&target, &DistributionSpec::Planted { rate: 0.5 }, &cfg).unwrap();
        assert!(report.success_fraction >= 0.75, "fraction {}", report.success_fraction);
    }

    #[test]
    fn deterministic_given_seed() {
        let target = Pattern::from_digit_str("101", 2).unwrap();
        let mut cfg = PacConfig::new(24, 3, 2, 0.2, 0.2, 5, 21);
        cfg.test_samples = 300;
        let a = pac_experiment(&target, &DistributionSpec::Uniform, &cfg).unwrap();
        let b = pac_experiment(&target, &DistributionSpec::Uniform, &cfg).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
    }

    #[test]
    fn parameter_errors() {
        let target = Pattern::from_digit_str("1", 2).unwrap();
        let cfg = PacConfig::new(8, 1, 2, 0.0, 0.1, 1, 0);
        assert!(pac_experiment(&target, &DistributionSpec::Uniform, &cfg).is_err());
        let cfg = PacConfig::new(8, 1, 2, 0.1, 0.1, 1, 0);
        assert!(pac_experiment(&target, &DistributionSpec::Planted { rate: 1.5 }, &cfg).is_err());
        let long = Pattern::from_digit_str("11", 2).unwrap();
        assert!(pac_experiment(&long, &DistributionSpec::Uniform, &cfg).is_err());
    }
}

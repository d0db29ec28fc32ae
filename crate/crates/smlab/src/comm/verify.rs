//! Protocol verification harness: run a protocol over exhaustive or Monte-Carlo
//! input spaces against the oracle, collecting error counts and cost statistics.

use super::equality::EqMode;
use super::{
    protocol_fixed_pattern, protocol_large_k, protocol_small_k, ubpp_period_finding, ubpp_sm_large,
    Bipartition, CommInstance, RandomSource,
};
use crate::core::{period_orders, sm_oracle, Pattern, Text};
use crate::report::{csv_document, fmt_f64};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProtocolId {
    FixedPattern,
    SmallK,
    LargeK,
    UbppPeriod,
    UbppSm,
}

impl ProtocolId {
    pub fn name(self) -> &'static str {
        match self {
            ProtocolId::FixedPattern => "fixed-pattern",
            ProtocolId::SmallK => "small-k",
            ProtocolId::LargeK => "large-k",
            ProtocolId::UbppPeriod => "ubpp-period",
            ProtocolId::UbppSm => "ubpp-sm",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    MonteCarlo,
}

impl VerifyMode {
    pub fn name(self) -> &'static str {
        match self {
            VerifyMode::Exhaustive => "exhaustive",
            VerifyMode::MonteCarlo => "monte-carlo",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub protocol: ProtocolId,
    pub n: usize,
    pub k: usize,
    /// Interval length for the large-k protocol; defaults to ceil(sqrt(n)).
    pub b: Option<usize>,
    pub mode: VerifyMode,
    /// Monte-Carlo trial count; ignored in exhaustive mode.
    pub trials: u64,
    pub seed: u64,
    pub eq_mode: EqMode,
    /// Size of the bipartition pool (canonical and interleaved are always
    /// included); runs cycle through the pool.
    pub bipartition_samples: usize,
}

impl VerifyConfig {
    pub fn new(protocol: ProtocolId, n: usize, k: usize) -> Self {
        Self {
            protocol,
            n,
            k,
            b: None,
            mode: VerifyMode::Exhaustive,
            trials: 0,
            seed: 42,
            eq_mode: EqMode::Exact,
            bipartition_samples: 50,
        }
    }
}

/// One row of the cost-and-error table.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyRow {
    pub n: usize,
    pub k: usize,
    pub protocol: String,
    pub mode: String,
    pub trials: u64,
    pub errors: u64,
    pub max_bits: u64,
    pub mean_bits: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn error_free(&self) -> bool {
        self.rows.iter().all(|r| r.errors == 0)
    }

    pub fn to_csv(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.k.to_string(),
                    r.protocol.clone(),
                    r.mode.clone(),
                    r.trials.to_string(),
                    r.errors.to_string(),
                    r.max_bits.to_string(),
                    fmt_f64(r.mean_bits),
                    r.seed.to_string(),
                ]
            })
            .collect();
        csv_document(
            &["n", "k", "protocol", "mode", "trials", "errors", "max_bits", "mean_bits", "seed"],
            &rows,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Per-run outcome folded into the row statistics.
struct RunStat {
    error: bool,
    bits: u64,
}

fn bipartition_pool(cfg: &VerifyConfig, total: usize) -> Vec<Bipartition> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xb1b1);
    let mut pool = vec![Bipartition::interleaved(total, 0)];
    if cfg.k > 0 && cfg.k <= total {
        pool.push(Bipartition::canonical(total - cfg.k, cfg.k));
    }
    while pool.len() < cfg.bipartition_samples.max(1) {
        pool.push(Bipartition::random(total, &mut rng));
    }
    pool
}

fn execute(cfg: &VerifyConfig, x: Text, y: Option<Pattern>, bip: &Bipartition, seed: u64) -> Result<RunStat> {
    let rng = RandomSource::new(seed);
    match cfg.protocol {
        ProtocolId::UbppPeriod => {
            let out = ubpp_period_finding(&x, bip, &rng, cfg.eq_mode)?;
            let expected = period_orders(&x)?.primitive_order();
            let error = match expected {
                Some(ell) => out.accepted != vec![ell],
                None => !out.accepted.is_empty(),
            };
            Ok(RunStat { error, bits: out.run.total_cost() })
        }
        ProtocolId::UbppSm => {
            let y = y.expect("pattern present for SM protocols");
            let expected = usize::from(sm_oracle(&x, &y)?);
            let inst = CommInstance::new(x, y, bip.clone())?;
            let out = ubpp_sm_large(&inst, &rng, cfg.eq_mode, false)?;
            Ok(RunStat { error: out.accepted.len() != expected, bits: out.run.total_cost() })
        }
        _ => {
            let y = y.expect("pattern present for SM protocols");
            let expected = sm_oracle(&x, &y)?;
            let inst = CommInstance::new(x, y, bip.clone())?;
            let run = match cfg.protocol {
                ProtocolId::FixedPattern => protocol_fixed_pattern(&inst, &rng)?,
                ProtocolId::SmallK => protocol_small_k(&inst, &rng)?,
                ProtocolId::LargeK => protocol_large_k(&inst, cfg.b, cfg.eq_mode, &rng)?.run,
                _ => unreachable!(),
            };
            Ok(RunStat { error: run.output != expected, bits: run.comm_bits })
        }
    }
}

/// Run one verification configuration; the report holds a single row.
pub fn verify_protocol(cfg: &VerifyConfig) -> Result<VerifyReport> {
    verify_protocols(std::slice::from_ref(cfg))
}

/// Run several configurations; one row each, in order (the per-size cost table).
pub fn verify_protocols(cfgs: &[VerifyConfig]) -> Result<VerifyReport> {
    let mut rows = Vec::with_capacity(cfgs.len());
    for cfg in cfgs {
        rows.push(verify_one(cfg)?);
    }
    Ok(VerifyReport { rows })
}

fn verify_one(cfg: &VerifyConfig) -> Result<VerifyRow> {
    let (n, k) = (cfg.n, cfg.k);
    if n < 1 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let period_only = cfg.protocol == ProtocolId::UbppPeriod;
    if !period_only && (k < 1 || k > n) {
        return Err(Error::InvalidInput(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    let total = if period_only { n } else { n + k };
    let pool = bipartition_pool(cfg, total);

    let stats: Vec<RunStat> = match cfg.mode {
        VerifyMode::Exhaustive => {
            if n + k > 24 {
                return Err(Error::Capacity(format!(
                    "exhaustive verification supports n + k <= 24, got {}; try a smaller n",
                    n + k
                )));
            }
            let y_space = if period_only { 1u64 } else { 1u64 << k };
            (0..(1u64 << n))
                .into_par_iter()
                .map(|x| {
                    let mut local = Vec::with_capacity(y_space as usize);
                    for y in 0..y_space {
                        let idx = (x * y_space + y) as usize % pool.len();
                        let yt = (!period_only).then(|| Pattern::from_bits(y, k));
                        local.push(execute(cfg, Text::from_bits(x, n), yt, &pool[idx], cfg.seed)?);
                    }
                    Ok(local)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect()
        }
        VerifyMode::MonteCarlo => (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(t));
                let x = Text::binary((0..n).map(|_| rng.gen_range(0..2u8)).collect())?;
                let y = if period_only {
                    None
                } else {
                    Some(Pattern::binary((0..k).map(|_| rng.gen_range(0..2u8)).collect())?)
                };
                let idx = rng.gen_range(0..pool.len());
                execute(cfg, x, y, &pool[idx], cfg.seed.wrapping_add(t))
            })
            .collect::<Result<Vec<_>>>()?,
    };

    let trials = stats.len() as u64;
    let errors = stats.iter().filter(|s| s.error).count() as u64;
    let max_bits = stats.iter().map(|s| s.bits).max().unwrap_or(0);
    let mean_bits = if trials == 0 {
        0.0
    } else {
        stats.iter().map(|s| s.bits as f64).sum::<f64>() / trials as f64
    };
    Ok(VerifyRow {
        n,
        k,
        protocol: cfg.protocol.name().to_string(),
        mode: cfg.mode.name().to_string(),
        trials,
        errors,
        max_bits,
        mean_bits,
        seed: cfg.seed,
    })
}

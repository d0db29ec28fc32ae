//! Subcommand implementations. Each returns Ok(true) on success, Ok(false)
//! when a verification found errors (exit code 1), and Err for invalid input.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smlab::circuits::{
    build_depth3, build_dnf, build_threshold_depth2, depth3_size, dnf_size, sparse_encode,
    threshold_depth2_size, verify_equivalence, verify_sparse_reduction, EquivMode, SparseFunction,
};
use smlab::comm::{
    disjointness, or_gt, reduce_disj_to_sm, reduce_or_gt_to_sm, EqMode, ProtocolId, VerifyConfig,
    VerifyMode,
};
use smlab::core::{count_avoiding, count_zero_preimages, min_maxterm_width, sm_oracle, Pattern, Text};
use smlab::learning::{
    build_shattered_exact_k, build_shattered_multi, build_shattered_set, build_tm, classify,
    erm_learn, pac_experiment, vc_exact, vc_upper_window, verify_shattering, DistributionSpec,
    Hypothesis, HypothesisClass, MultiVariant, PacConfig, Sample, Variant,
};
use smlab::report::csv_document;
use smlab::{Error, Result};
use std::fs;
use std::path::Path;

fn read_string_arg(arg: &str) -> Result<String> {
    if let Some(path) = arg.strip_prefix('@') {
        Ok(fs::read_to_string(path)?.trim().to_string())
    } else {
        Ok(arg.to_string())
    }
}

pub fn oracle(x: &str, y: &str, sigma: u8) -> Result<bool> {
    let x = Text::from_digit_str(&read_string_arg(x)?, sigma)?;
    let y = Pattern::from_digit_str(&read_string_arg(y)?, sigma)?;
    println!("{}", u8::from(sm_oracle(&x, &y)?));
    Ok(true)
}

fn write_or_print(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn comm(
    protocol: &str,
    n: usize,
    k: usize,
    b: Option<usize>,
    mode: &str,
    trials: u64,
    seed: u64,
    exact: bool,
    bipartitions: usize,
    out: Option<&Path>,
    format: &str,
) -> Result<bool> {
    match protocol {
        "reduce-disj" => return reduce_disj_grid(n, k.max(2), out, format),
        "reduce-orgt" => return reduce_orgt_grid(n, k.max(1), out, format),
        _ => {}
    }
    let id = match protocol {
        "small-k" => ProtocolId::SmallK,
        "large-k" => ProtocolId::LargeK,
        "fixed-pattern" => ProtocolId::FixedPattern,
        "ubpp-period" => ProtocolId::UbppPeriod,
        "ubpp-sm" => ProtocolId::UbppSm,
        other => return Err(Error::InvalidInput(format!("unknown protocol {other:?}"))),
    };
    let default_k = |id: ProtocolId| match id {
        ProtocolId::UbppPeriod => 0,
        ProtocolId::UbppSm => n * 9 / 10 + usize::from(!(n * 9).is_multiple_of(10)),
        ProtocolId::LargeK => {
            let b = b.unwrap_or_else(|| (1..).find(|&v| v * v >= n).unwrap());
            (2 * b).max(n / 2)
        }
        _ => n.div_euclid(2).max(1),
    };
    let mut cfg = VerifyConfig::new(id, n, if k == 0 { default_k(id) } else { k });
    cfg.b = b;
    cfg.mode = match mode {
        "exhaustive" => VerifyMode::Exhaustive,
        "monte-carlo" => VerifyMode::MonteCarlo,
        other => return Err(Error::InvalidInput(format!("unknown mode {other:?}"))),
    };
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.eq_mode = if exact { EqMode::Exact } else { EqMode::Fingerprint };
    cfg.bipartition_samples = bipartitions;
    let report = smlab::comm::verify_protocol(&cfg)?;
    let row = &report.rows[0];
    println!(
        "protocol={} n={} k={} runs={} errors={} error_rate={:.4} max_bits={} mean_bits={:.1}",
        row.protocol,
        row.n,
        row.k,
        row.trials,
        row.errors,
        row.errors as f64 / row.trials.max(1) as f64,
        row.max_bits,
        row.mean_bits
    );
    if id == ProtocolId::UbppPeriod || id == ProtocolId::UbppSm {
        println!("unambiguous={}", row.errors == 0);
    }
    let doc = match format {
        "csv" => report.to_csv(),
        "json" => report.to_json(),
        other => return Err(Error::InvalidInput(format!("unknown format {other:?}"))),
    };
    if out.is_some() {
        write_or_print(out, &doc)?;
    }
    Ok(row.errors == 0)
}

fn reduce_disj_grid(m: usize, k: usize, out: Option<&Path>, format: &str) -> Result<bool> {
    if m == 0 || m > 16 {
        return Err(Error::InvalidInput("reduction grid needs 1 <= m <= 16".into()));
    }
    let mut errors = 0u64;
    let mut total = 0u64;
    for av in 0..(1u32 << m) {
        for bv in 0..(1u32 << m) {
            let a: Vec<bool> = (0..m).map(|i| (av >> i) & 1 == 1).collect();
            let b: Vec<bool> = (0..m).map(|i| (bv >> i) & 1 == 1).collect();
            let r = reduce_disj_to_sm(&a, &b, k)?;
            total += 1;
            if sm_oracle(&r.x, &r.y)? != disjointness(&a, &b) {
                errors += 1;
            }
        }
    }
    println!("reduction=disj m={m} k={k} instances={total} errors={errors}");
    emit_reduction_report("disj", m, k, total, errors, out, format)?;
    Ok(errors == 0)
}

fn reduce_orgt_grid(m: usize, k: usize, out: Option<&Path>, format: &str) -> Result<bool> {
    if m == 0 || m > 4 || k > 8 {
        return Err(Error::InvalidInput("reduction grid needs 1 <= m <= 4 and k <= 8".into()));
    }
    let mut errors = 0u64;
    let mut total = 0u64;
    let mut idx = vec![1usize; 2 * m];
    loop {
        let (a, b) = idx.split_at(m);
        let r = reduce_or_gt_to_sm(a, b, k)?;
        total += 1;
        if sm_oracle(&r.x, &r.y)? != or_gt(a, b) {
            errors += 1;
        }
        let mut pos = 0;
        while pos < 2 * m {
            idx[pos] += 1;
            if idx[pos] <= k {
                break;
            }
            idx[pos] = 1;
            pos += 1;
        }
        if pos == 2 * m {
            break;
        }
    }
    println!("reduction=orgt m={m} k={k} instances={total} errors={errors}");
    emit_reduction_report("orgt", m, k, total, errors, out, format)?;
    Ok(errors == 0)
}

fn emit_reduction_report(
    name: &str,
    m: usize,
    k: usize,
    total: u64,
    errors: u64,
    out: Option<&Path>,
    format: &str,
) -> Result<()> {
    if out.is_none() {
        return Ok(());
    }
    let doc = match format {
        "csv" => csv_document(
            &["reduction", "m", "k", "instances", "errors"],
            &[vec![name.to_string(), m.to_string(), k.to_string(), total.to_string(), errors.to_string()]],
        ),
        "json" => format!("{}\n", reduction_json(name, m, k, total, errors)),
        other => return Err(Error::InvalidInput(format!("unknown format {other:?}"))),
    };
    write_or_print(out, &doc)
}

fn reduction_json(name: &str, m: usize, k: usize, total: u64, errors: u64) -> String {
    format!(
        "{{\"reduction\":\"{name}\",\"m\":{m},\"k\":{k},\"instances\":{total},\"errors\":{errors}}}"
    )
}

#[allow(clippy::too_many_arguments)]
pub fn circuit(
    builder: &str,
    n: usize,
    k: usize,
    c: usize,
    verify: &str,
    trials: u64,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool> {
    if builder == "sparse-verify" {
        return sparse_verify(n, c, trials, seed, out);
    }
    let (circuit, formula) = match builder {
        "threshold2" => (build_threshold_depth2(n, k)?, threshold_depth2_size(n, k)),
        "dnf" => (build_dnf(n, k)?, dnf_size(n, k)),
        "depth3" => (build_depth3(n, k)?, depth3_size(n, k)),
        other => return Err(Error::InvalidInput(format!("unknown builder {other:?}"))),
    };
    println!(
        "builder={builder} n={n} k={k} size={} depth={} formula_size={formula}",
        circuit.size(),
        circuit.depth()
    );
    if circuit.size() as u64 != formula {
        eprintln!("error: built size deviates from the formula");
        return Ok(false);
    }
    if let Some(path) = out {
        fs::write(path, circuit.serialize())?;
    }
    let mode = match verify {
        "none" => None,
        "exhaustive" => Some(EquivMode::Exhaustive),
        "monte-carlo" => Some(EquivMode::MonteCarlo),
        other => return Err(Error::InvalidInput(format!("unknown verify mode {other:?}"))),
    };
    if let Some(mode) = mode {
        let report = verify_equivalence(&circuit, mode, trials, seed)?;
        println!(
            "verify={} evaluated={} mismatches={}",
            report.mode, report.evaluated, report.mismatches
        );
        return Ok(report.mismatches == 0);
    }
    Ok(true)
}

fn sparse_verify(ell: usize, t: usize, trials: u64, seed: u64, out: Option<&Path>) -> Result<bool> {
    if ell == 0 || ell > 14 {
        return Err(Error::InvalidInput("sparse-verify needs 1 <= ell <= 14 (use --n)".into()));
    }
    let points = 1u64 << ell;
    if t == 0 || t as u64 > points {
        return Err(Error::InvalidInput(format!("sparsity t must be in [1, 2^ell] (use --c), got {t}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0u64;
    let mut checked = 0u64;
    for _ in 0..trials.min(1000) {
        let mut ones: Vec<Vec<u8>> = Vec::with_capacity(t);
        let mut used = std::collections::BTreeSet::new();
        while used.len() < t {
            used.insert(rng.gen_range(0..points));
        }
        for p in &used {
            ones.push((0..ell).map(|i| ((p >> i) & 1) as u8).collect());
        }
        let f = SparseFunction::new(ell, ones)?;
        checked += 1;
        if !verify_sparse_reduction(&f)? {
            failures += 1;
        }
        if checked == 1 {
            if let Some(path) = out {
                fs::write(path, format!("{}\n", sparse_encode(&f, None)?))?;
            }
        }
    }
    println!("sparse-verify ell={ell} t={t} functions={checked} failures={failures}");
    Ok(failures == 0)
}

#[allow(clippy::too_many_arguments)]
pub fn learn(
    task: &str,
    n: usize,
    k: usize,
    sigma: u8,
    c: usize,
    variant: &str,
    eps: f64,
    delta: f64,
    trials: u64,
    seed: u64,
    target: Option<&str>,
    plant_rate: Option<f64>,
    pool: &str,
    out: Option<&Path>,
    format: &str,
) -> Result<bool> {
    match task {
        "erm" => learn_erm(n, k, sigma, trials, seed, target),
        "pac" => {
            let target = match target {
                Some(t) => Pattern::from_digit_str(t, sigma)?,
                None => random_pattern(sigma, k, seed),
            };
            let dist = match plant_rate {
                Some(rate) => DistributionSpec::Planted { rate },
                None => DistributionSpec::Uniform,
            };
            let cfg = PacConfig::new(n, k, sigma, eps, delta, trials, seed);
            let report = pac_experiment(&target, &dist, &cfg)?;
            println!(
                "pac target={} m_samples={} trials={} success_fraction={:.3}",
                report.target, report.m_samples, trials, report.success_fraction
            );
            let doc = match format {
                "csv" => report.to_csv(),
                "json" => report.to_json(),
                other => return Err(Error::InvalidInput(format!("unknown format {other:?}"))),
            };
            if out.is_some() {
                write_or_print(out, &doc)?;
            }
            Ok(true)
        }
        "vc" => {
            if pool != "all" {
                return Err(Error::InvalidInput(format!("unknown pool spec {pool:?}")));
            }
            let count = (sigma as u128).checked_pow(n as u32).filter(|&c| c <= 32).ok_or_else(|| {
                Error::Capacity(format!("pool `all` needs sigma^n <= 32, got sigma={sigma} n={n}"))
            })?;
            let mut strings = Vec::with_capacity(count as usize);
            let mut symbols = vec![0u8; n];
            loop {
                strings.push(Text::new(symbols.clone(), sigma)?);
                let mut pos = n;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    symbols[pos] += 1;
                    if symbols[pos] < sigma {
                        break;
                    }
                    symbols[pos] = 0;
                }
                if symbols.iter().all(|&s| s == 0) {
                    break;
                }
            }
            let class = HypothesisClass::single(sigma, n, k)?;
            let vc = vc_exact(&class, &strings)?;
            let window = vc_upper_window(n, k, sigma);
            println!("vc={vc} window_upper={window} pool_size={}", strings.len());
            Ok(vc <= window)
        }
        "shatter" => {
            let cert = build_shattered_set(n, k, sigma)?;
            let class = HypothesisClass::single(sigma, n, k)?;
            let verified = verify_shattering(&cert, &class)?;
            println!("d={} verified={verified}", cert.d());
            if let Some(path) = out {
                fs::write(path, cert.to_json())?;
            }
            Ok(verified)
        }
        "shatter-multi" => {
            let mv = match variant {
                "and" => MultiVariant::And,
                "or" => MultiVariant::Or,
                other => return Err(Error::InvalidInput(format!("unknown variant {other:?}"))),
            };
            let cert = build_shattered_multi(n, k, sigma, c, mv)?;
            let class_variant = if mv == MultiVariant::And { Variant::AndOfC } else { Variant::OrOfC };
            let class = HypothesisClass::new(sigma, n, k, class_variant, c)?;
            let verified = verify_shattering(&cert, &class)?;
            println!("d={} c={c} variant={variant} verified={verified}", cert.d());
            if let Some(path) = out {
                fs::write(path, cert.to_json())?;
            }
            Ok(verified)
        }
        "shatter-exact" => {
            let cert = build_shattered_exact_k(n, k, sigma)?;
            let class = HypothesisClass::new(sigma, n, k, Variant::ExactlyK, 1)?;
            let verified = verify_shattering(&cert, &class)?;
            println!("d={} verified={verified}", cert.d());
            if let Some(path) = out {
                fs::write(path, cert.to_json())?;
            }
            Ok(verified)
        }
        "tm" => {
            // --n is m here; --c the member count.
            let family = build_tm(n, sigma, c)?;
            println!(
                "m={} members={} member_len={} zero_block={}",
                family.m(),
                family.members().len(),
                family.member_len(),
                family.zero_block_len()
            );
            if let Some(path) = out {
                let rows: Vec<Vec<String>> = family
                    .members()
                    .iter()
                    .enumerate()
                    .map(|(i, p)| vec![i.to_string(), p.to_string()])
                    .collect();
                fs::write(path, csv_document(&["index", "member"], &rows))?;
            }
            Ok(true)
        }
        other => Err(Error::InvalidInput(format!("unknown learn task {other:?}"))),
    }
}

fn random_pattern(sigma: u8, k: usize, seed: u64) -> Pattern {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7a26);
    let symbols = (0..k.max(1)).map(|_| rng.gen_range(0..sigma)).collect();
    Pattern::new(symbols, sigma).expect("generated symbols are in range")
}

fn learn_erm(n: usize, k: usize, sigma: u8, m: u64, seed: u64, target: Option<&str>) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidInput("erm needs --trials >= 1 samples".into()));
    }
    let target = match target {
        Some(t) => Pattern::from_digit_str(t, sigma)?,
        None => random_pattern(sigma, k, seed),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = Hypothesis::single(target.clone());
    let samples: Vec<Sample> = (0..m)
        .map(|_| {
            let string = Text::new((0..n).map(|_| rng.gen_range(0..sigma)).collect(), sigma)?;
            let label = classify(&h, &string)?;
            Ok(Sample { string, label })
        })
        .collect::<Result<_>>()?;
    let learned = erm_learn(&samples, k, sigma)?;
    let miss = samples
        .iter()
        .filter(|s| classify(&Hypothesis::single(learned.clone()), &s.string).unwrap() != s.label)
        .count();
    println!(
        "erm target={target} learned={learned} samples={m} empirical_loss={:.4}",
        miss as f64 / m as f64
    );
    Ok(true)
}

pub fn count(which: &str, n: usize, k: usize) -> Result<bool> {
    match which {
        "zeros" => println!("{}", count_zero_preimages(n, k)?),
        "avoiding" => println!("{}", count_avoiding(n, k)?),
        "maxterm" => {
            let width = min_maxterm_width(n, k)?;
            let bound = (2.0 * ((n - k + 1) as f64).sqrt()).ceil() as usize;
            println!("width={width} lower_bound={bound}");
            return Ok(width >= bound);
        }
        other => return Err(Error::InvalidInput(format!("unknown count {other:?}"))),
    }
    Ok(true)
}

//! Depolarizing-channel Monte Carlo.
//!
//! Every trial draws from its own ChaCha8 stream keyed on
//! `(master_seed, p_index, trial_index)`, so counts do not depend on the
//! number of workers or on scheduling order.

use std::io::Write;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decoder::{DecodeResult, Decoder, DecoderConfig, DepolarizingPrior};
use crate::gf4::{F4Vector, F4};
use crate::stabilizer::{in_stabilizer, ParityCheck};
use crate::{Error, Result};

/// Column order of the sweep CSV.
pub const CSV_HEADER: &str =
    "channel_p,trials,successes,logical_errors,detected_failures,bler,ci_low,ci_high,master_seed";

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959963984540054;

fn check_channel(p: f64) -> Result<()> {
    if (0.0..0.75).contains(&p) {
        Ok(())
    } else {
        Err(Error::ChannelParameter(p))
    }
}

/// Draws an error on `n` qubits: `0` with probability `1 - p`, each of
/// `ω`, `ω̄`, `1` with probability `p/3`.
pub fn sample_depolarizing<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<F4Vector> {
    check_channel(p)?;
    let third = p / 3.0;
    let symbols = (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            if u >= p {
                F4::Zero
            } else if u < third {
                F4::Omega
            } else if u < 2.0 * third {
                F4::OmegaBar
            } else {
                F4::One
            }
        })
        .collect();
    Ok(F4Vector(symbols))
}

/// The random stream for one trial.
pub fn trial_rng(master_seed: u64, p_index: usize, trial_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(((p_index as u64) << 32) | (trial_index as u64 & 0xffff_ffff));
    rng
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum TrialOutcome {
    Success,
    /// The decoder matched the syndrome but the residual is a nontrivial logical.
    LogicalError,
    /// The decoder did not reproduce the syndrome.
    DetectedFailure,
}

/// Classifies a decoder output against the true error.
pub fn classify(code: &ParityCheck, error: &F4Vector, result: &DecodeResult) -> Result<TrialOutcome> {
    if !result.converged {
        return Ok(TrialOutcome::DetectedFailure);
    }
    let residual = error.add(&result.estimate)?;
    Ok(if in_stabilizer(code, &residual)? {
        TrialOutcome::Success
    } else {
        TrialOutcome::LogicalError
    })
}

/// Decodes a given error. Used directly to force specific errors in tests.
pub fn run_trial_with_error(
    decoder: &mut Decoder<'_>,
    error: &F4Vector,
    prior: &DepolarizingPrior,
    cfg: &DecoderConfig,
) -> Result<TrialOutcome> {
    let s = decoder.code().syndrome(error)?;
    let result = decoder.decode(&s, prior, cfg)?;
    classify(decoder.code(), error, &result)
}

/// Samples an error, decodes its syndrome and classifies the result.
pub fn run_trial<R: Rng + ?Sized>(
    decoder: &mut Decoder<'_>,
    prior: &DepolarizingPrior,
    cfg: &DecoderConfig,
    rng: &mut R,
) -> Result<TrialOutcome> {
    let e = sample_depolarizing(decoder.code().n(), prior.p(), rng)?;
    run_trial_with_error(decoder, &e, prior, cfg)
}

/// Tallies for one channel parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct StatsRow {
    pub channel_p: f64,
    pub trials: usize,
    pub successes: usize,
    pub logical_errors: usize,
    pub detected_failures: usize,
    pub master_seed: u64,
}

impl StatsRow {
    pub fn empty(channel_p: f64, master_seed: u64) -> Self {
        StatsRow {
            channel_p,
            trials: 0,
            successes: 0,
            logical_errors: 0,
            detected_failures: 0,
            master_seed,
        }
    }

    pub fn record(&mut self, outcome: TrialOutcome) {
        self.trials += 1;
        match outcome {
            TrialOutcome::Success => self.successes += 1,
            TrialOutcome::LogicalError => self.logical_errors += 1,
            TrialOutcome::DetectedFailure => self.detected_failures += 1,
        }
    }

    pub fn failures(&self) -> usize {
        self.logical_errors + self.detected_failures
    }

    /// Block error rate, `None` without trials.
    pub fn bler(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.failures() as f64 / self.trials as f64)
    }

    /// 95% Wilson score interval for the block error rate.
    pub fn wilson(&self) -> Option<(f64, f64)> {
        wilson_interval(self.failures(), self.trials, Z95)
    }

    /// Whether the two 95% intervals intersect.
    pub fn overlaps(&self, other: &StatsRow) -> bool {
        match (self.wilson(), other.wilson()) {
            (Some((a, b)), Some((c, d))) => a <= d && c <= b,
            _ => true,
        }
    }
}

/// Wilson score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: usize, n: usize, z: f64) -> Option<(f64, f64)> {
    if n == 0 {
        return None;
    }
    let n = n as f64;
    let phat = k as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if k == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if k as f64 == n { 1.0 } else { (center + half).min(1.0) };
    Some((lo, hi))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    /// Strictly ascending, each in `(0, 0.75)`.
    pub p_list: Vec<f64>,
    pub trials: usize,
    pub decoder: DecoderConfig,
    pub master_seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.p_list.is_empty() {
            return Err(Error::Config("p_list is empty".into()));
        }
        for &p in &self.p_list {
            if !(p > 0.0 && p < 0.75) {
                return Err(Error::ChannelParameter(p));
            }
        }
        if self.p_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("p_list must be strictly ascending".into()));
        }
        if self.trials > u32::MAX as usize {
            return Err(Error::Config("at most 2^32 - 1 trials per point".into()));
        }
        self.decoder.validate()
    }
}

/// Runs every point of the sweep on a pool of `workers` threads.
pub fn run_sweep(code: &ParityCheck, spec: &SweepSpec, workers: usize) -> Result<Vec<StatsRow>> {
    spec.validate()?;
    if workers == 0 {
        return Err(Error::Config("workers must be positive".into()));
    }
    code.freeze();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    pool.install(|| {
        spec.p_list
            .iter()
            .enumerate()
            .map(|(pi, &p)| run_point(code, spec, pi, p))
            .collect()
    })
}

fn run_point(code: &ParityCheck, spec: &SweepSpec, p_index: usize, p: f64) -> Result<StatsRow> {
    let prior = DepolarizingPrior::new(p)?;
    let outcomes: Vec<TrialOutcome> = (0..spec.trials)
        .into_par_iter()
        .map_init(
            || Decoder::new(code),
            |dec, t| {
                let mut rng = trial_rng(spec.master_seed, p_index, t);
                run_trial(dec, &prior, &spec.decoder, &mut rng)
            },
        )
        .collect::<Result<_>>()?;
    let mut row = StatsRow::empty(p, spec.master_seed);
    outcomes.into_iter().for_each(|o| row.record(o));
    Ok(row)
}

/// Writes the header and one line per row. Undefined rates are empty fields.
pub fn write_csv<W: Write>(rows: &[StatsRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER.split(','))
        .map_err(std::io::Error::from)?;
    for r in rows {
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        let (lo, hi) = r.wilson().unzip();
        w.write_record([
            r.channel_p.to_string(),
            r.trials.to_string(),
            r.successes.to_string(),
            r.logical_errors.to_string(),
            r.detected_failures.to_string(),
            opt(r.bler()),
            opt(lo),
            opt(hi),
            r.master_seed.to_string(),
        ])
        .map_err(std::io::Error::from)?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(rows: &[StatsRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("CSV output is ASCII"))
}

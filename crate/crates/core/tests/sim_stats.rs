mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use qldpc::decoder::{Decoder, DecoderConfig, DepolarizingPrior};
use qldpc::gf4::F4;
use qldpc::sim::*;
use qldpc::stabilizer::find_omega_cycle_error;

fn counts(p: f64, n: usize, seed: u64) -> [usize; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = sample_depolarizing(n, p, &mut rng).unwrap();
    let mut c = [0usize; 4];
    e.symbols().iter().for_each(|s| c[s.code() as usize] += 1);
    c
}

#[test]
fn symbol_frequencies_at_p_03() {
    let n = 100_000;
    let c = counts(0.3, n, 2024);
    let sigma = (n as f64 * 0.1 * 0.9).sqrt();
    for &k in &c[1..] {
        assert!((k as f64 - 0.1 * n as f64).abs() <= 3.0 * sigma, "{c:?}");
    }
    let expected = [0.7, 0.1, 0.1, 0.1].map(|q| q * n as f64);
    let chi2: f64 = c.iter().zip(expected).map(|(&o, e)| (o as f64 - e).powi(2) / e).sum();
    let critical = ChiSquared::new(3.0).unwrap().inverse_cdf(0.999);
    assert!(chi2 < critical, "chi2 = {chi2}");
}

#[test]
fn positions_are_uncorrelated() {
    let n = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let e = sample_depolarizing(n, 0.3, &mut rng).unwrap();
    let x: Vec<f64> = e.symbols().iter().map(|s| (!s.is_zero()) as u8 as f64).collect();
    let mean = x.iter().sum::<f64>() / n as f64;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
    for lag in [1, 2, 7] {
        let cov = x.windows(lag + 1).map(|w| (w[0] - mean) * (w[lag] - mean)).sum::<f64>()
            / (n - lag) as f64;
        let rho = cov / var;
        assert!(rho.abs() < 3.0 / ((n - lag) as f64).sqrt(), "lag {lag}: {rho}");
    }
}

#[test]
fn zero_channel_always_succeeds() {
    let h = &coset().parity;
    let prior = DepolarizingPrior::new(0.0).unwrap();
    let mut dec = Decoder::new(h);
    for t in 0..5 {
        let mut rng = trial_rng(1, 0, t);
        let out = run_trial(&mut dec, &prior, &DecoderConfig::default(), &mut rng).unwrap();
        assert_eq!(out, TrialOutcome::Success);
    }
}

#[test]
fn forced_errors_classify() {
    let h = &coset().parity;
    let prior = DepolarizingPrior::new(0.01).unwrap();
    let cfg = DecoderConfig::default();
    let mut dec = Decoder::new(h);
    let row = h.dense_row(100);
    assert_eq!(run_trial_with_error(&mut dec, &row, &prior, &cfg).unwrap(), TrialOutcome::Success);

    let k = &cayley().parity;
    let w = find_omega_cycle_error(k).unwrap();
    let mut dec = Decoder::new(k);
    assert_eq!(
        run_trial_with_error(&mut dec, &w.error, &prior, &cfg).unwrap(),
        TrialOutcome::LogicalError
    );

    // an error the decoder cannot explain within one iteration
    let mut e = qldpc::gf4::F4Vector::zeros(h.n());
    for q in (0..h.n()).step_by(5) {
        e.0[q] = F4::One;
    }
    let short = DecoderConfig { max_iterations: 1, ..cfg };
    assert_eq!(
        run_trial_with_error(&mut Decoder::new(h), &e, &prior, &short).unwrap(),
        TrialOutcome::DetectedFailure
    );
}

#[test]
fn sweep_is_reproducible_and_worker_independent() {
    let h = &coset().parity;
    let spec = SweepSpec {
        p_list: vec![0.02, 0.04],
        trials: 40,
        decoder: DecoderConfig::default(),
        master_seed: 77,
    };
    let a = csv_string(&run_sweep(h, &spec, 1).unwrap()).unwrap();
    let b = csv_string(&run_sweep(h, &spec, 4).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(a.starts_with(CSV_HEADER));
    assert_eq!(a.lines().count(), 3);
    let other = SweepSpec { master_seed: 78, ..spec };
    assert_ne!(csv_string(&run_sweep(h, &other, 1).unwrap()).unwrap(), a);
}

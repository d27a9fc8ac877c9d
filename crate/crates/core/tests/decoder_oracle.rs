mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qldpc::decoder::*;
use qldpc::gf4::{F4Vector, F4};
use qldpc::stabilizer::{ParityCheck, SyndromeVector};

#[test]
fn brute_force_agrees_with_naive_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let prior = DepolarizingPrior::new(0.1).unwrap();
    for _ in 0..10 {
        let n = rng.random_range(2..=6);
        let m = rng.random_range(1..=4);
        let h = random_tree_code(&mut rng, n, m);
        for b in 0..1usize << m {
            let s = syndrome_from_index(m, b);
            assert_eq!(brute_force_decode(&h, &s, &prior).unwrap(), naive_ml(&h, &s));
        }
    }
}

#[test]
fn one_qubit_tie_goes_to_omega_bar() {
    let h = ParityCheck::new(1, vec![vec![(0, F4::Omega)]]).unwrap();
    let prior = DepolarizingPrior::new(0.1).unwrap();
    let e = brute_force_decode(&h, &SyndromeVector(vec![true]), &prior).unwrap();
    assert_eq!(e, Some(F4Vector(vec![F4::OmegaBar])));
}

#[test]
fn brute_force_refuses_large_codes() {
    let h = ParityCheck::new(15, vec![vec![(0, F4::Omega)]]).unwrap();
    let prior = DepolarizingPrior::new(0.1).unwrap();
    assert!(brute_force_decode(&h, &SyndromeVector(vec![false]), &prior).is_err());
}

/// Posterior marginals from a direct scan, independent of the library oracle.
fn naive_marginals(h: &ParityCheck, s: &SyndromeVector, p: f64) -> Option<Vec<[f64; 4]>> {
    let pr = [1.0 - p, p / 3.0, p / 3.0, p / 3.0];
    let mut marg = vec![[0.0; 4]; h.n()];
    let mut total = 0.0;
    for e in all_errors(h.n()) {
        if dense_syndrome(h, &e) != *s {
            continue;
        }
        let w: f64 = e.symbols().iter().map(|x| pr[x.code() as usize]).product();
        total += w;
        for (mg, x) in marg.iter_mut().zip(e.symbols()) {
            mg[x.code() as usize] += w;
        }
    }
    (total > 0.0).then(|| {
        marg.iter()
            .map(|m| m.map(|x| x / total))
            .collect()
    })
}

#[test]
fn tree_beliefs_equal_exact_posterior() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cfg = DecoderConfig::sum_product();
    for case in 0..25 {
        let n = rng.random_range(3..=8);
        let m = rng.random_range(1..=5);
        let p = [0.02, 0.1, 0.3][case % 3];
        let h = random_tree_code(&mut rng, n, m);
        let prior = DepolarizingPrior::new(p).unwrap();
        let mut dec = Decoder::new(&h);
        for b in 0..1usize << m {
            let s = syndrome_from_index(m, b);
            let Some(exact) = naive_marginals(&h, &s, p) else {
                continue;
            };
            let lib = brute_force_marginals(&h, &s, &prior).unwrap().unwrap();
            // a tree of diameter < 2(n+m) converges within that many rounds
            let bp = dec.beliefs(&s, &prior, &cfg, 2 * (n + m)).unwrap();
            for q in 0..n {
                for x in 0..4 {
                    assert!((exact[q][x] - lib[q][x]).abs() < 1e-12);
                    assert!(
                        (exact[q][x] - bp[q][x]).abs() < 1e-9,
                        "case {case} syndrome {b} qubit {q}: {:?} vs {:?}",
                        exact[q],
                        bp[q]
                    );
                }
            }
            let map = argmax_symbols(&exact, 1e-9);
            assert_eq!(argmax_symbols(&bp, 1e-9), map);
        }
    }
}

#[test]
fn zero_syndrome_converges_immediately() {
    let h = &coset().parity;
    let prior = DepolarizingPrior::new(0.01).unwrap();
    let r = decode(h, &SyndromeVector::zeros(h.m()), &prior, &DecoderConfig::default()).unwrap();
    assert!(r.converged);
    assert_eq!(r.iterations, 0);
    assert!(r.estimate.is_zero());
}

#[test]
fn single_errors_on_coset_code_are_corrected() {
    let h = &coset().parity;
    let prior = DepolarizingPrior::new(0.01).unwrap();
    let mut dec = Decoder::new(h);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let trials = 300;
    let mut ok = 0;
    for _ in 0..trials {
        let mut e = F4Vector::zeros(h.n());
        e.0[rng.random_range(0..h.n())] = F4::Omega;
        let out = qldpc::sim::run_trial_with_error(&mut dec, &e, &prior, &DecoderConfig::default());
        if out.unwrap() == qldpc::sim::TrialOutcome::Success {
            ok += 1;
        }
    }
    assert!(ok * 100 >= trials * 99, "{ok}/{trials}");
}

fn small_cyclic_code() -> ParityCheck {
    // [[5,1,3]]: every pair of checks overlaps on three qubits
    let base = [F4::Omega, F4::OmegaBar, F4::OmegaBar, F4::Omega, F4::Zero];
    let rows: Vec<F4Vector> = (0..4)
        .map(|s| F4Vector((0..5).map(|i| base[(i + 5 - s) % 5]).collect()))
        .collect();
    ParityCheck::from_dense(&rows).unwrap()
}

#[test]
fn converged_outputs_satisfy_syndrome_on_cycles() {
    let h = small_cyclic_code();
    for alg in [Algorithm::SumProduct, Algorithm::MinSum] {
        let cfg = DecoderConfig {
            algorithm: alg,
            ..Default::default()
        };
        for &p in &[0.01, 0.1, 0.3] {
            let prior = DepolarizingPrior::new(p).unwrap();
            for b in 0..1usize << h.m() {
                let s = syndrome_from_index(h.m(), b);
                let r = decode(&h, &s, &prior, &cfg).unwrap();
                if r.converged {
                    assert_eq!(h.syndrome(&r.estimate).unwrap(), s);
                }
            }
        }
    }
}

#[test]
fn variable_likelihoods_are_check_messages_at_the_indicator() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let h = random_tree_code(&mut rng, 7, 4);
        let prior = DepolarizingPrior::new(0.07).unwrap();
        let s = syndrome_from_index(4, rng.random_range(0..16));
        for alg in [Algorithm::SumProduct, Algorithm::MinSum] {
            let cfg = DecoderConfig { algorithm: alg, ..Default::default() };
            let mut dec = Decoder::new(&h);
            dec.beliefs(&s, &prior, &cfg, 3).unwrap();
            let msgs = dec.check_messages();
            let mut expect = vec![prior.log_probs(); h.n()];
            let mut e = 0;
            for row in h.rows() {
                for &(q, label) in row {
                    for x in 0..4u8 {
                        // message is log P(t=0)/P(t=1); symbols with t=1 pay it
                        if edge_indicator(label, F4::from_code(x)).unwrap() {
                            expect[q as usize][x as usize] -= msgs[e];
                        }
                    }
                    e += 1;
                }
            }
            for (got, want) in dec.log_beliefs().iter().zip(&expect) {
                for x in 0..4 {
                    assert!((got[x] - want[x]).abs() < 1e-12);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decode_is_deterministic_and_honest(seed in any::<u64>(), p in 0.005f64..0.4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(3..=9);
        let m = rng.random_range(1..=5);
        let h = random_tree_code(&mut rng, n, m);
        let prior = DepolarizingPrior::new(p).unwrap();
        for alg in [Algorithm::SumProduct, Algorithm::MinSum] {
            let cfg = DecoderConfig { algorithm: alg, max_iterations: 20, ..Default::default() };
            let s = syndrome_from_index(m, rng.random_range(0..1usize << m));
            let a = decode(&h, &s, &prior, &cfg).unwrap();
            let b = decode(&h, &s, &prior, &cfg).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.converged, h.syndrome(&a.estimate).unwrap() == s);
            let beliefs = Decoder::new(&h).beliefs(&s, &prior, &cfg, 20).unwrap();
            for bq in beliefs {
                prop_assert!(bq.iter().all(|x| x.is_finite() && *x >= 0.0));
            }
        }
    }
}

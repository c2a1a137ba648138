mod common;

use degree_lab::bins::{loads, throw};
use degree_lab::experiment::run_experiment;
use degree_lab::nu::nu_hat;
use degree_lab::pruefer::sample_forest;
use degree_lab::samplers::sample_cs_with;
use degree_lab::seed::{rng_from_seed, trial_seed};
use degree_lab::{Degrees, ExperimentConfig, ExperimentKind, SamplerCaps};

const SEED: u64 = 0x5EED;

#[test]
fn few_balls_rarely_collide() {
    let n = 1_000_000usize;
    let k = (n as f64).cbrt().floor() as usize;
    let ones = (0..200)
        .filter(|&i| loads(&throw(n, k, trial_seed(SEED, i)).unwrap()).max_load() == 1)
        .count();
    assert!(ones as f64 / 200.0 >= 0.95, "max load 1 in {ones} of 200");
}

#[test]
fn forest_max_degree_upper_bound() {
    let n = 100_000;
    let bound = nu_hat(n as f64).unwrap().floor() as usize + 2;
    let within = (0..200)
        .filter(|&i| {
            sample_forest(n, 10, trial_seed(SEED, i))
                .unwrap()
                .max_degree()
                <= bound
        })
        .count();
    assert!(
        within as f64 / 200.0 >= 0.99,
        "{within} of 200 below {bound}"
    );
}

#[test]
fn complex_free_acceptance_at_ten_thousand() {
    // 500 G(n, m) attempts, counted one accepted sample at a time
    let mut rng = rng_from_seed(SEED);
    let (mut accepted, mut attempts) = (0u64, 0u64);
    while attempts < 500 {
        let d = sample_cs_with(&mut rng, 10_000, 5_000, SamplerCaps::default()).unwrap();
        attempts += d.attempts;
        accepted += 1;
    }
    let fraction = accepted as f64 / attempts as f64;
    assert!(fraction >= 0.05, "acceptance {fraction}");
}

#[test]
fn small_complex_part_has_smaller_max_degree() {
    let cfg = ExperimentConfig::new(
        ExperimentKind::Pipeline {
            spec: common::regime_two_spec(),
            shuffle_labels: false,
        },
        100,
        SEED,
    );
    let r = run_experiment(&cfg).unwrap();
    let frac = r.auxiliary["smallBelowNonComplexFraction"];
    assert!(frac >= 0.9, "Δ(B_S) < Δ(B_N) in {frac}");
    assert_eq!(r.auxiliary["conservationFraction"], 1.0);
    assert_eq!(r.auxiliary["partOrdersFraction"], 1.0);
}

#[test]
fn max_degree_order_shadow_at_1e12() {
    let n = 1e12f64;
    let ratio = nu_hat(n).unwrap() * n.ln().ln() / n.ln();
    assert!(
        (0.85..=1.15).contains(&ratio),
        "nu_hat(n) ln ln n / ln n = {ratio:.3}"
    );
}

mod common;

use approx::assert_relative_eq;
use tmx::ensemble::{
    exact_trace_moment, mc_trace_moment, sample_constrained_ensemble, EnsembleFamily,
    FiniteEnsemble,
};
use tmx::extremal::{theorem_max_value, BernoulliParams};
use tmx::linalg::eigh;
use tmx::{Error, SymMatrix};

/// Recomputes every admissibility condition without going through `validate`.
fn audit(e: &FiniteEnsemble, cap: f64, alpha: f64) {
    let total: f64 = e.probs().iter().sum();
    assert!((total - 1.0).abs() <= 1e-12);
    assert!(e.probs().iter().all(|&p| p >= 0.0));
    let n = e.dim();
    let mut mean = vec![vec![0.0; n]; n];
    for (atom, &p) in e.atoms().iter().zip(e.probs()) {
        let d = common::dense(atom);
        let spectrum = eigh(atom).unwrap().eigenvalues;
        let norm = common::power_iteration_norm(&d);
        assert!(
            spectrum[0] >= -1e-10 * (1.0 + norm),
            "atom not PSD: {spectrum:?}"
        );
        assert!(
            norm <= cap * (1.0 + 1e-9) + 1e-9,
            "atom norm {norm} above {cap}"
        );
        for i in 0..n {
            for j in 0..n {
                mean[i][j] += p * d[i][j];
            }
        }
    }
    let mean_norm = common::power_iteration_norm(&mean);
    assert!(
        (mean_norm - alpha * cap).abs() <= 1e-8 * alpha * cap + 1e-12 * cap,
        "mean norm {mean_norm} vs {}",
        alpha * cap
    );
}

#[test]
fn sampler_example_passes_independent_audit() {
    let e = sample_constrained_ensemble(3, 2, 1.0, 0.4, 42).unwrap();
    assert_eq!(e.len(), 2);
    audit(&e, 1.0, 0.4);
}

#[test]
fn sampler_outputs_pass_audit_across_seeds() {
    for seed in 0..2000u64 {
        let n = 1 + (seed % 4) as usize;
        let s = 1 + (seed % 3) as usize;
        let cap = 0.5 + (seed % 7) as f64 * 0.3;
        let alpha = match seed % 10 {
            0 => 0.0,
            1 => 1.0,
            k => k as f64 / 10.0,
        };
        let e = sample_constrained_ensemble(n, s, cap, alpha, seed).unwrap();
        audit(&e, cap, alpha);
        assert_eq!(
            e,
            sample_constrained_ensemble(n, s, cap, alpha, seed).unwrap()
        );
    }
}

#[test]
fn sampler_edge_targets() {
    let e = sample_constrained_ensemble(3, 3, 2.0, 0.0, 5).unwrap();
    assert!(e.atoms().iter().all(|a| a.max_abs() == 0.0));
    let e = sample_constrained_ensemble(3, 3, 2.0, 1.0, 5).unwrap();
    assert_relative_eq!(e.mean_norm().unwrap(), 2.0, max_relative = 1e-8);
    assert!(matches!(
        sample_constrained_ensemble(0, 1, 1.0, 0.5, 0),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn invalid_ensembles_are_rejected() {
    let i2 = SymMatrix::identity(2);
    assert!(FiniteEnsemble::new(vec![i2.clone()], vec![0.9], 1.0, 1.0).is_err());
    assert!(FiniteEnsemble::new(vec![i2.scaled(2.0)], vec![1.0], 1.0, 1.0).is_err());
    assert!(FiniteEnsemble::new(vec![SymMatrix::diag(&[1.0, -0.5])], vec![1.0], 1.0, 1.0).is_err());
    assert!(FiniteEnsemble::new(vec![i2.clone()], vec![1.0], 1.0, 0.5).is_err());
    let a = FiniteEnsemble::deterministic(i2, 1.0).unwrap();
    let b = FiniteEnsemble::deterministic(SymMatrix::identity(3), 1.0).unwrap();
    assert!(matches!(
        EnsembleFamily::new(vec![a, b]),
        Err(Error::Dimension { .. })
    ));
}

#[test]
fn deterministic_member_gives_trace_power() {
    let a = common::psd(3, 3, 1.0);
    let family =
        EnsembleFamily::new(vec![FiniteEnsemble::deterministic(a.clone(), 1.0).unwrap()]).unwrap();
    for p in 1..=6 {
        let oracle = common::trace(&common::power(&common::dense(&a), p as u32));
        assert_relative_eq!(
            exact_trace_moment(&family, p).unwrap(),
            oracle,
            max_relative = 1e-12
        );
        let mc = mc_trace_moment(&family, p, 1000, 1).unwrap();
        assert_eq!(mc.std_error, 0.0);
        assert_relative_eq!(mc.estimate, oracle, max_relative = 1e-12);
    }
}

#[test]
fn exact_moment_matches_hand_enumeration() {
    let x = sample_constrained_ensemble(2, 2, 1.0, 0.5, 11).unwrap();
    let y = sample_constrained_ensemble(2, 3, 2.0, 0.3, 12).unwrap();
    let family = EnsembleFamily::new(vec![x.clone(), y.clone()]).unwrap();
    let mut oracle = 0.0;
    for (a, &pa) in x.atoms().iter().zip(x.probs()) {
        for (b, &pb) in y.atoms().iter().zip(y.probs()) {
            let sum = common::add(&common::dense(a), &common::dense(b));
            oracle += pa * pb * common::trace(&common::power(&sum, 4));
        }
    }
    assert_relative_eq!(
        family.exact_trace_moment(4).unwrap(),
        oracle,
        max_relative = 1e-12
    );
}

#[test]
fn scalar_bernoulli_family_attains_the_maximum() {
    for n in 1..=4 {
        for count in 1..=3 {
            let params = BernoulliParams::new(
                (0..count).map(|k| 0.5 + k as f64).collect(),
                (0..count).map(|k| 0.2 + 0.3 * k as f64).collect(),
            )
            .unwrap();
            let family = EnsembleFamily::scalar_bernoulli(n, &params).unwrap();
            for p in 1..=8 {
                let exact = family.exact_trace_moment(p).unwrap();
                let value = theorem_max_value(n, &params, p).unwrap();
                assert!(
                    (exact - value).abs() <= 1e-10 * value,
                    "n {n} N {count} p {p}"
                );
            }
        }
    }
}

#[test]
fn monte_carlo_agrees_with_exact_values() {
    let params = BernoulliParams::new(vec![1.0, 2.0], vec![0.3, 0.6]).unwrap();
    let scalar = EnsembleFamily::scalar_bernoulli(2, &params).unwrap();
    let mc = scalar.mc_trace_moment(3, 100_000, 7).unwrap();
    let value = theorem_max_value(2, &params, 3).unwrap();
    assert!((mc.estimate - value).abs() <= 4.0 * mc.std_error);

    let mut within = 0;
    let runs = 200;
    for seed in 0..runs {
        let members = (0..2)
            .map(|k| sample_constrained_ensemble(3, 2, 1.0, 0.5, seed * 2 + k))
            .collect::<tmx::Result<Vec<_>>>()
            .unwrap();
        let family = EnsembleFamily::new(members).unwrap();
        let exact = family.exact_trace_moment(3).unwrap();
        let mc = family.mc_trace_moment(3, 20_000, seed).unwrap();
        if (mc.estimate - exact).abs() <= 4.0 * mc.std_error {
            within += 1;
        }
    }
    assert!(within as f64 >= 0.95 * runs as f64, "{within}/{runs}");
}

#[test]
fn one_hundred_thousand_sample_estimate_within_four_errors() {
    let members = (0..2)
        .map(|k| sample_constrained_ensemble(3, 2, 1.5, 0.6, 300 + k))
        .collect::<tmx::Result<Vec<_>>>()
        .unwrap();
    let family = EnsembleFamily::new(members).unwrap();
    let exact = family.exact_trace_moment(3).unwrap();
    let mc = family.mc_trace_moment(3, 100_000, 3).unwrap();
    assert_eq!(mc.samples, 100_000);
    assert!((mc.estimate - exact).abs() <= 4.0 * mc.std_error);
}

#[test]
fn doubling_samples_shrinks_error_by_about_root_two() {
    let params = BernoulliParams::new(vec![1.0, 1.0, 2.0], vec![0.5, 0.2, 0.4]).unwrap();
    let family = EnsembleFamily::scalar_bernoulli(2, &params).unwrap();
    let (mut small, mut large) = (0.0, 0.0);
    for seed in 0..20 {
        small += family.mc_trace_moment(4, 20_000, seed).unwrap().std_error;
        large += family
            .mc_trace_moment(4, 40_000, 1000 + seed)
            .unwrap()
            .std_error;
    }
    let ratio = small / large;
    assert!((1.2..=1.7).contains(&ratio), "ratio {ratio}");
}

#[test]
fn monte_carlo_is_deterministic_in_seed() {
    let family =
        EnsembleFamily::new(vec![sample_constrained_ensemble(2, 3, 1.0, 0.5, 1).unwrap()]).unwrap();
    assert_eq!(
        family.mc_trace_moment(5, 10_000, 9).unwrap(),
        family.mc_trace_moment(5, 10_000, 9).unwrap()
    );
    assert!(family.mc_trace_moment(5, 99, 9).is_err());
}

#[test]
fn support_budget_is_enforced() {
    let member = sample_constrained_ensemble(1, 3, 1.0, 0.5, 0).unwrap();
    let family = EnsembleFamily::new(vec![member; 13]).unwrap();
    assert_eq!(family.support_size(), 3u128.pow(13));
    assert!(matches!(
        family.exact_trace_moment(2),
        Err(Error::BudgetExceeded { .. })
    ));
}

#[test]
fn json_round_trip() {
    let members = (0..3)
        .map(|k| sample_constrained_ensemble(3, 2, 1.0 + k as f64, 0.5, k))
        .collect::<tmx::Result<Vec<_>>>()
        .unwrap();
    let family = EnsembleFamily::new(members).unwrap();
    let text = serde_json::to_string(&family).unwrap();
    let back: EnsembleFamily = serde_json::from_str(&text).unwrap();
    assert_eq!(back, family);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["members"][0]["L_cap"], 1.0);
    assert_eq!(doc["members"][0]["atoms"][0].as_array().unwrap().len(), 3);

    let bad = text.replacen("\"probs\":[", "\"probs\":[0.5,", 1);
    assert!(serde_json::from_str::<EnsembleFamily>(&bad).is_err());
}

#[test]
fn sampled_families_never_exceed_the_maximum() {
    for seed in 0..2000u64 {
        let n = 1 + (seed % 4) as usize;
        let count = 1 + (seed % 3) as usize;
        let p = 1 + (seed % 8) as usize;
        let members = (0..count)
            .map(|k| {
                let s = 1 + ((seed + k as u64) % 3) as usize;
                sample_constrained_ensemble(
                    n,
                    s,
                    0.5 + k as f64,
                    0.1 + 0.4 * k as f64,
                    seed * 7 + k as u64,
                )
            })
            .collect::<tmx::Result<Vec<_>>>()
            .unwrap();
        let family = EnsembleFamily::new(members).unwrap();
        let params = family.params().unwrap();
        let value = theorem_max_value(n, &params, p).unwrap();
        let exact = family.exact_trace_moment(p).unwrap();
        assert!(
            exact <= value + 1e-9 * (1.0 + value),
            "seed {seed}: {exact} > {value}"
        );
    }
}

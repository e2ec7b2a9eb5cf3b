mod common;

use approx::assert_relative_eq;
use proptest::prelude::*;
use tmx::linalg::{eigh, psd_power, schatten_norm, trace_product, Matrix};
use tmx::rng;
use tmx::{Error, SymMatrix};

#[test]
fn reconstruction_over_a_thousand_seeds() {
    for seed in 0..1000u64 {
        let mut r = rng::stream(seed, &[1]);
        let n = 1 + (seed % 6) as usize;
        let a = rng::gaussian_symmetric(&mut r, n);
        let e = eigh(&a).unwrap();
        let norm = e.spectral_radius();
        assert!(
            e.reconstruct().max_abs_diff(&a) <= 1e-10 * (1.0 + norm),
            "seed {seed}"
        );
        assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        // orthonormal eigenvectors
        let q = &e.eigenvectors;
        assert!(q.transpose().mul(q).max_abs_diff(&Matrix::identity(n)) <= 1e-12);
    }
}

#[test]
fn eigenvalue_sum_and_norm_match_dense_oracles() {
    for seed in 0..50u64 {
        let a = common::psd(seed, 5, 2.0);
        let e = eigh(&a).unwrap();
        let d = common::dense(&a);
        assert_relative_eq!(
            e.eigenvalues.iter().sum::<f64>(),
            common::trace(&d),
            epsilon = 1e-12
        );
        let sq: f64 = e.eigenvalues.iter().map(|l| l * l).sum();
        assert_relative_eq!(sq.sqrt(), common::frobenius(&d), max_relative = 1e-12);
        assert_relative_eq!(
            a.operator_norm().unwrap(),
            common::power_iteration_norm(&d),
            max_relative = 1e-10
        );
    }
}

#[test]
fn power_law_for_half_one_two() {
    let exps = [0.5, 1.0, 2.0];
    for seed in 0..100u64 {
        let a = common::psd(seed, 1 + (seed % 5) as usize, 3.0);
        for &s in &exps {
            for &t in &exps {
                let lhs = psd_power(&psd_power(&a, s).unwrap(), t).unwrap();
                let rhs = psd_power(&a, s * t).unwrap();
                let scale = 1.0 + rhs.max_abs();
                assert!(
                    lhs.max_abs_diff(&rhs) <= 1e-9 * scale,
                    "seed {seed} s {s} t {t}"
                );
            }
        }
    }
}

#[test]
fn square_root_squares_back() {
    for seed in 0..100u64 {
        let a = common::psd(seed, 4, 5.0);
        let root = common::dense(&psd_power(&a, 0.5).unwrap());
        let back = common::matmul(&root, &root);
        assert!(common::max_abs_diff(&back, &common::dense(&a)) <= 1e-10 * (1.0 + a.max_abs()));
    }
}

#[test]
fn integer_powers_match_naive_multiplication() {
    for seed in 0..50u64 {
        let a = common::psd(seed, 4, 1.5);
        for k in 0..6u32 {
            let oracle = common::power(&common::dense(&a), k);
            let fast = psd_power(&a, k as f64).unwrap();
            assert!(
                common::max_abs_diff(&fast.rows(), &oracle)
                    <= 1e-10 * (1.0 + common::frobenius(&oracle))
            );
            assert!(
                common::max_abs_diff(&a.pow(k).rows(), &oracle)
                    <= 1e-12 * (1.0 + common::frobenius(&oracle))
            );
        }
    }
}

#[test]
fn schatten_norm_ordering_and_bounds() {
    for seed in 0..200u64 {
        let mut r = rng::stream(seed, &[2]);
        let n = 1 + (seed % 5) as usize;
        let a = rng::gaussian_symmetric(&mut r, n);
        let qs = [1.0, 2.0, 4.0, f64::INFINITY];
        let norms: Vec<f64> = qs.iter().map(|&q| schatten_norm(&a, q).unwrap()).collect();
        for w in norms.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12), "seed {seed}: {norms:?}");
        }
        let inf = norms[3];
        for (&q, &v) in qs[..3].iter().zip(&norms) {
            assert!(inf <= v * (1.0 + 1e-12));
            assert!(v <= (n as f64).powf(1.0 / q) * inf * (1.0 + 1e-12));
        }
    }
}

#[test]
fn schatten_three_matches_eigenvalue_oracle() {
    for seed in 0..100u64 {
        let mut r = rng::stream(seed, &[3]);
        let a = rng::gaussian_symmetric(&mut r, 4);
        let eig = eigh(&a).unwrap().eigenvalues;
        let oracle = eig.iter().map(|l| l.abs().powi(3)).sum::<f64>().cbrt();
        assert_relative_eq!(
            schatten_norm(&a, 3.0).unwrap(),
            oracle,
            max_relative = 1e-10
        );
    }
}

#[test]
fn schatten_norm_of_nonsymmetric_product_uses_singular_values() {
    // [[0, 1], [0, 0]] has singular values 1 and 0
    let m = Matrix::from_row_major(2, vec![0.0, 1.0, 0.0, 0.0]).unwrap();
    assert_relative_eq!(m.schatten_norm(1.0).unwrap(), 1.0, epsilon = 1e-14);
    assert_relative_eq!(m.operator_norm().unwrap(), 1.0, epsilon = 1e-14);
}

#[test]
fn trace_product_matches_naive_product() {
    for seed in 0..100u64 {
        let factors: Vec<SymMatrix> = (0..4).map(|k| common::psd(seed * 7 + k, 3, 2.0)).collect();
        let oracle = factors
            .iter()
            .map(common::dense)
            .reduce(|acc, f| common::matmul(&acc, &f))
            .unwrap();
        assert_relative_eq!(
            trace_product(&factors).unwrap(),
            common::trace(&oracle),
            max_relative = 1e-12,
            epsilon = 1e-14
        );
    }
}

#[test]
fn error_cases() {
    assert!(matches!(
        psd_power(&SymMatrix::diag(&[1.0, -0.5]), 0.5),
        Err(Error::NotPsd { .. })
    ));
    assert!(matches!(
        schatten_norm(&SymMatrix::identity(2), 0.5),
        Err(Error::InvalidExponent(_))
    ));
    assert!(matches!(
        trace_product(&[SymMatrix::identity(2), SymMatrix::identity(3)]),
        Err(Error::Dimension { .. })
    ));
    assert!(SymMatrix::from_row_major(2, vec![1.0, f64::NAN, 0.0, 1.0]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cyclic_trace_invariance(seed in any::<u64>(), n in 1usize..5) {
        let a = common::psd(seed, n, 2.0);
        let b = common::psd(seed ^ 0xabc, n, 2.0);
        let c = common::psd(seed ^ 0xdef, n, 2.0);
        let abc = trace_product(&[a.clone(), b.clone(), c.clone()]).unwrap();
        let bca = trace_product(&[b, c, a]).unwrap();
        prop_assert!((abc - bca).abs() <= 1e-11 * (1.0 + abc.abs()));
    }

    #[test]
    fn eigenvalues_scale_linearly(seed in any::<u64>(), n in 1usize..6, c in 0.01f64..100.0) {
        let mut r = rng::stream(seed, &[4]);
        let a = rng::gaussian_symmetric(&mut r, n);
        let e = eigh(&a).unwrap().eigenvalues;
        let ec = eigh(&a.scaled(c)).unwrap().eigenvalues;
        for (x, y) in e.iter().zip(&ec) {
            prop_assert!((x * c - y).abs() <= 1e-11 * c * (1.0 + e.iter().map(|v| v.abs()).fold(0.0, f64::max)));
        }
    }

    #[test]
    fn psd_power_stays_psd_with_mapped_spectrum(seed in any::<u64>(), n in 1usize..6, t in 0.1f64..4.0) {
        let a = common::psd(seed, n, 2.0);
        let e = eigh(&a).unwrap();
        let at = psd_power(&a, t).unwrap();
        let et = eigh(&at).unwrap();
        let expected: Vec<f64> = e.eigenvalues.iter().map(|l| l.max(0.0).powf(t)).collect();
        for (x, y) in expected.iter().zip(&et.eigenvalues) {
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + x.abs()));
        }
    }
}

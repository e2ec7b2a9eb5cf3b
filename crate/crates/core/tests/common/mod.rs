//! Independent dense-matrix oracles shared by the integration tests.
#![allow(dead_code)]

use tmx::rng::{self, StreamRng};
use tmx::SymMatrix;

pub type Dense = Vec<Vec<f64>>;

pub fn dense(a: &SymMatrix) -> Dense {
    a.rows()
}

pub fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

pub fn trace(a: &Dense) -> f64 {
    (0..a.len()).map(|i| a[i][i]).sum()
}

pub fn power(a: &Dense, k: u32) -> Dense {
    (0..k).fold(identity(a.len()), |acc, _| matmul(&acc, a))
}

pub fn add(a: &Dense, b: &Dense) -> Dense {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn max_abs_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn frobenius(a: &Dense) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

/// Largest eigenvalue of a PSD matrix as `lim ‖A^(2^k)‖_F^(2^-k)`, by repeated
/// normalized squaring. Insensitive to near-degenerate top eigenvalues.
pub fn power_iteration_norm(a: &Dense) -> f64 {
    let f = frobenius(a);
    if f == 0.0 {
        return 0.0;
    }
    let mut b: Dense = a
        .iter()
        .map(|r| r.iter().map(|x| x / f).collect())
        .collect();
    let mut log_scale = f.ln();
    let mut exponent = 1.0;
    for _ in 0..50 {
        let c = matmul(&b, &b);
        let g = frobenius(&c);
        if g == 0.0 {
            return 0.0;
        }
        b = c
            .iter()
            .map(|r| r.iter().map(|x| x / g).collect())
            .collect();
        log_scale = 2.0 * log_scale + g.ln();
        exponent *= 2.0;
    }
    (log_scale / exponent).exp()
}

pub fn psd(seed: u64, n: usize, scale: f64) -> SymMatrix {
    let mut r = rng::stream(seed, &[0x7e57]);
    rng::random_psd(&mut r, n, scale)
}

pub fn stream(seed: u64) -> StreamRng {
    rng::stream(seed, &[0x7e57, 1])
}

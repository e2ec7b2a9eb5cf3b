//! Seeded random streams.
//!
//! Every randomized routine takes an explicit seed. Independent streams are
//! derived from a base seed and a list of tags (restart index, trial index,
//! lemma id, ...) so that results do not depend on evaluation order or on the
//! number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{Matrix, SymMatrix};

pub type StreamRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes a base seed with tags into a single 64-bit seed.
pub fn derive_seed(seed: u64, tags: &[u64]) -> u64 {
    tags.iter().fold(splitmix64(seed), |acc, &t| {
        splitmix64(acc ^ splitmix64(t.wrapping_add(0x5851_F42D)))
    })
}

/// ChaCha8 stream keyed by `(seed, tags)`.
pub fn stream(seed: u64, tags: &[u64]) -> StreamRng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&derive_seed(seed, tags).to_le_bytes());
    key[16..24].copy_from_slice(&(tags.len() as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Orthogonal matrix built from two passes of Givens rotations with uniform angles.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let mut q = Matrix::identity(n);
    for _ in 0..2 {
        for i in 0..n {
            for j in (i + 1)..n {
                let theta = rng.random_range(0.0..std::f64::consts::TAU);
                q.rotate_columns(i, j, theta.cos(), theta.sin());
            }
        }
    }
    q
}

/// `Q diag(d) Qᵀ` for a random rotation `Q`.
pub fn random_with_spectrum<R: Rng + ?Sized>(rng: &mut R, spectrum: &[f64]) -> SymMatrix {
    let q = random_rotation(rng, spectrum.len());
    q.conjugate_diag(spectrum)
}

/// Random PSD matrix with eigenvalues uniform on `[0, scale]`.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> SymMatrix {
    let spectrum: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=scale)).collect();
    random_with_spectrum(rng, &spectrum)
}

/// Random PSD matrix whose spectrum sometimes contains exact zeros or a repeated top value.
pub fn random_psd_degenerate<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> SymMatrix {
    let mut spectrum: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..=scale)).collect();
    match rng.random_range(0..5u8) {
        0 => spectrum
            .iter_mut()
            .filter(|_| rng.random_bool(0.5))
            .for_each(|x| *x = 0.0),
        1 => spectrum
            .iter_mut()
            .filter(|_| rng.random_bool(0.5))
            .for_each(|x| *x = scale),
        _ => {}
    }
    random_with_spectrum(rng, &spectrum)
}

/// Symmetric matrix with independent standard Gaussian entries on and above the diagonal.
pub fn gaussian_symmetric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SymMatrix {
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let x = gaussian(rng);
            data[i * n + j] = x;
            data[j * n + i] = x;
        }
    }
    SymMatrix::from_row_major(n, data).expect("square buffer")
}

/// Point drawn uniformly from the probability simplex of dimension `k`.
pub fn simplex<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..k).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|x| x / total).collect()
}

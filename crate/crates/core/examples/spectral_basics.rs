//! Eigendecomposition, fractional powers and Schatten norms of symmetric matrices.
//!
//! Run with `cargo run --example spectral_basics`.

use tmx::linalg::{eigh, psd_power, schatten_norm, trace_product};
use tmx::rng;
use tmx::SymMatrix;

fn main() -> tmx::Result<()> {
    let a = SymMatrix::from_rows(&[
        vec![4.0, 1.0, 0.0],
        vec![1.0, 3.0, 1.0],
        vec![0.0, 1.0, 2.0],
    ])?;
    let e = eigh(&a)?;
    println!("eigenvalues of A: {:?}", e.eigenvalues);
    println!(
        "reconstruction error: {:e}",
        e.reconstruct().max_abs_diff(&a)
    );

    let root = psd_power(&a, 0.5)?;
    let back = root.mul(&root).into_symmetric();
    println!("|A^(1/2) A^(1/2) - A|_max = {:e}", back.max_abs_diff(&a));

    for q in [1.0, 2.0, 4.0, f64::INFINITY] {
        println!("|A|_{q} = {:.6}", schatten_norm(&a, q)?);
    }

    let mut r = rng::stream(7, &[]);
    let b = rng::random_psd(&mut r, 3, 2.0);
    println!(
        "tr(A B A) = {:.6}",
        trace_product(&[a.clone(), b.clone(), a.clone()])?
    );
    println!("tr(A^2 B) = {:.6}", trace_product(&[a.pow(2), b])?);
    Ok(())
}

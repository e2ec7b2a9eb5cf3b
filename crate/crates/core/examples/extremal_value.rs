//! The maximal trace moment n * E(f_1 + ... + f_N)^p and its exact oracle.
//!
//! Run with `cargo run --example extremal_value`.

use tmx::extremal::{
    bernoulli_sum_moments, enumerate_bernoulli_moment, theorem_max_value, BernoulliParams,
};

fn main() -> tmx::Result<()> {
    let params = BernoulliParams::new(vec![1.0, 2.0, 0.5], vec![0.3, 0.6, 0.9])?;
    let n = 3;
    println!(
        "caps {:?}, ratios {:?}, n = {n}",
        params.caps(),
        params.alphas()
    );
    let moments = bernoulli_sum_moments(&params, 8)?;
    for (p, moment) in moments.iter().enumerate().skip(1) {
        let oracle = enumerate_bernoulli_moment(&params, p)?;
        println!(
            "p = {p}: max E tr(sum)^p = {:>12.6}   E S^p = {:>12.6}   enumeration {:>12.6}",
            theorem_max_value(n, &params, p)?,
            moment,
            oracle
        );
    }
    Ok(())
}

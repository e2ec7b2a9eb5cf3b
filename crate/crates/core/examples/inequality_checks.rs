//! Runs each inequality checker on one random input and prints its report.
//!
//! Run with `cargo run --example inequality_checks`.

use tmx::checks::{
    check_alt, check_alt_schatten, check_binomial_reduction, check_expectation_word_bound,
    check_holder, check_word_bound, word_bound_chain, CheckReport,
};
use tmx::ensemble::sample_constrained_ensemble;
use tmx::rng;
use tmx::words::AlternatingWord;

fn show(r: &CheckReport) {
    println!(
        "{:<22} lhs {:>12.6}  rhs {:>12.6}  slack {:>10.3e}  {}",
        r.lemma_id.name(),
        r.lhs,
        r.rhs,
        r.slack,
        if r.passed { "ok" } else { "FAILED" }
    );
}

fn main() -> tmx::Result<()> {
    let mut r = rng::stream(11, &[]);
    let a = rng::random_psd(&mut r, 4, 2.0);
    let b = rng::random_psd(&mut r, 4, 1.0);
    let w = AlternatingWord::new(vec![(2.0, 1.0), (1.5, 2.5)])?;

    show(&check_holder(&[a.clone(), b.clone()], &[3.0, 1.5])?);
    show(&check_alt(&a, &b, 2.0)?);
    show(&check_alt_schatten(&a, &b, 1.5)?);
    show(&check_word_bound(&a, &b, &w)?);

    let ex = sample_constrained_ensemble(4, 3, 2.0, 0.6, 1)?;
    let ey = sample_constrained_ensemble(4, 2, 1.0, 0.4, 2)?;
    show(&check_expectation_word_bound(&ex, &ey, &w, 2.0)?);
    show(&check_binomial_reduction(&ex, &ey, 5, 2.0)?);

    let chain = word_bound_chain(&a, &b, &w)?;
    println!("\nintermediate bounds for the word bound:");
    println!("  word trace            {:.6}", chain.trace);
    println!("  Hoelder product       {:.6}", chain.holder_product);
    println!("  final bound           {:.6}", chain.final_bound);
    println!("  every link holds:     {}", chain.holds());
    Ok(())
}

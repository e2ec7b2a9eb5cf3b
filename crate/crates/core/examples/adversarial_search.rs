//! Hill climbing over admissible families, trying to beat the Bernoulli maximum.
//!
//! Run with `cargo run --release --example adversarial_search`.

use tmx::extremal::BernoulliParams;
use tmx::search::{gap_sweep, maximize, SearchConfig, SweepGrid};

fn main() -> tmx::Result<()> {
    let params = BernoulliParams::new(vec![1.0, 2.0], vec![0.4, 0.7])?;
    let r = maximize(2, &params, 4, &SearchConfig::new(20, 500, 0))?;
    println!(
        "n = 2, p = 4: best {:.6}, maximum {:.6}, gap {:.3e}, restart {} won after {} accepted moves",
        r.best_value, r.theorem_value, r.gap, r.best_restart, r.accepted
    );
    for (step, value) in r.trajectory.iter().step_by((r.trajectory.len() / 6).max(1)) {
        println!("  step {step:>4}: {value:.6}");
    }

    let grid = SweepGrid {
        dims: vec![1, 2, 3],
        member_counts: vec![2],
        orders: vec![2, 3, 4],
        caps: vec![1.0, 0.5],
        alphas: vec![0.3, 0.9],
    };
    println!("\n n  N  p       best    maximum        gap");
    for cell in gap_sweep(&grid, &SearchConfig::new(8, 200, 1))? {
        match &cell.outcome {
            Ok(r) => println!(
                "{:>2} {:>2} {:>2} {:>10.5} {:>10.5} {:>10.3e}{}",
                cell.n,
                cell.member_count,
                cell.p,
                r.best_value,
                r.theorem_value,
                r.gap,
                if r.is_violation() { "  VIOLATION" } else { "" }
            ),
            Err(e) => println!(
                "{:>2} {:>2} {:>2} error: {e}",
                cell.n, cell.member_count, cell.p
            ),
        }
    }
    Ok(())
}

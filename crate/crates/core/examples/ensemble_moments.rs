//! Constrained random ensembles: sampling, exact trace moments and Monte Carlo.
//!
//! Run with `cargo run --example ensemble_moments`.

use tmx::ensemble::{sample_constrained_ensemble, EnsembleFamily};
use tmx::extremal::theorem_max_value;

fn main() -> tmx::Result<()> {
    let members = vec![
        sample_constrained_ensemble(3, 3, 1.0, 0.5, 1)?,
        sample_constrained_ensemble(3, 2, 2.0, 0.25, 2)?,
    ];
    for (k, m) in members.iter().enumerate() {
        println!(
            "member {k}: {} atoms, max atom norm {:.6} (cap {}), |E X| = {:.9} (target {})",
            m.len(),
            m.max_atom_norm()?,
            m.cap(),
            m.mean_norm()?,
            m.alpha_target() * m.cap()
        );
    }
    let family = EnsembleFamily::new(members)?;
    let params = family.params()?;
    let scalar = EnsembleFamily::scalar_bernoulli(3, &params)?;
    for p in [2, 4, 6] {
        let exact = family.exact_trace_moment(p)?;
        let mc = family.mc_trace_moment(p, 50_000, 9)?;
        println!(
            "p = {p}: exact {exact:>10.5}  MC {:>10.5} +- {:.5}  Bernoulli family {:>10.5}  maximum {:>10.5}",
            mc.estimate,
            mc.std_error,
            scalar.exact_trace_moment(p)?,
            theorem_max_value(3, &params, p)?
        );
    }
    println!(
        "\nfamily as JSON:\n{}",
        serde_json::to_string_pretty(&family)?
    );
    Ok(())
}

//! Writes the same reports as the `tmx` binary into a scratch directory and
//! shows that a rerun reproduces them byte for byte.
//!
//! Run with `cargo run --example reproducible_reports`.

use std::fs;

use tmx::commands::{cmd_corollary, cmd_verify_lemmas, CorollaryOptions, VerifyOptions};

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("tmx-example-reports");
    fs::create_dir_all(&dir)?;
    let mut stdout = std::io::stdout();

    let verify = VerifyOptions {
        trials: 200,
        dim_max: 4,
        p_max: 6,
        seed: 0,
        out: dir.join("lemmas.json"),
    };
    let code = cmd_verify_lemmas(&verify, &mut stdout);
    let first = fs::read(&verify.out)?;
    cmd_verify_lemmas(&verify, &mut std::io::sink());
    println!(
        "verify-lemmas exit {code}; rerun identical: {}\n",
        fs::read(&verify.out)? == first
    );

    let corollary = CorollaryOptions {
        p_max: 12,
        n_max: 10,
        out: dir.join("corollary.csv"),
    };
    let code = cmd_corollary(&corollary, &mut stdout);
    println!("corollary exit {code}");
    println!(
        "{}",
        fs::read_to_string(dir.join("corollary.csv.manifest.json"))?
    );
    Ok(())
}

//! Alternating words in two matrices: canonical forms, traces and the
//! expansion of tr(X + Y)^p into its 2^p words.
//!
//! Run with `cargo run --example word_traces`.

use tmx::rng;
use tmx::words::{
    enumerate_binary_words, eval_word_trace, expand_trace_power, to_alternating, WordForm,
};

fn main() -> tmx::Result<()> {
    for text in ["XXYXY", "XYX", "YXXYY", "YYY"] {
        let word = text.parse()?;
        match to_alternating(&word) {
            WordForm::Alternating(w) => println!(
                "{text:>6} -> pairs {:?} (l = {}, m = {})",
                w.pairs(),
                w.l(),
                w.m()
            ),
            WordForm::PurePower { letter, power } => {
                println!("{text:>6} -> pure power {letter:?}^{power}")
            }
        }
    }

    let mut r = rng::stream(3, &[]);
    let x = rng::random_psd(&mut r, 3, 1.0);
    let y = rng::random_psd(&mut r, 3, 1.0);
    let p = 6;
    let mut by_form = std::collections::BTreeMap::new();
    for word in enumerate_binary_words(p)? {
        if let WordForm::Alternating(w) = to_alternating(&word) {
            let key = format!("{:?}", w.pairs());
            by_form
                .entry(key)
                .or_insert((0, eval_word_trace(&x, &y, &w)?))
                .0 += 1;
        }
    }
    println!(
        "\n{} distinct alternating forms among the 2^{p} words:",
        by_form.len()
    );
    for (form, (count, trace)) in by_form.iter().take(8) {
        println!("  {count:>2} x {form:<28} trace {trace:.6}");
    }

    let direct = x.add(&y).trace_pow(p as u32);
    println!(
        "\nword sum tr(X+Y)^{p} = {:.12}",
        expand_trace_power(&x, &y, p)?
    );
    println!("direct   tr(X+Y)^{p} = {direct:.12}");
    Ok(())
}

//! Randomized constrained inputs for the checkers.
//!
//! Trial `t` of lemma `k` under base seed `s` always draws the same input,
//! whatever order trials are run in.

use rand::Rng;

use crate::checks::{
    check_alt, check_alt_schatten, check_binomial_reduction, check_expectation_word_bound,
    check_holder, check_theorem_max, check_word_bound, CheckReport, LemmaId,
};
use crate::ensemble::{sample_constrained_ensemble, EnsembleFamily, FiniteEnsemble};
use crate::error::{Error, Result};
use crate::rng::{self, StreamRng};
use crate::words::{to_alternating, AlternatingWord, BinaryWord, Letter, WordForm};

/// Exponents used for the Araki-Lieb-Thirring checks.
pub const ALT_EXPONENTS: [f64; 4] = [1.0, 1.5, 2.0, 3.0];

/// Bounds for one randomized sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialShape {
    pub dim_max: usize,
    pub p_max: usize,
    pub members_max: usize,
    pub atoms_max: usize,
}

impl TrialShape {
    pub fn new(dim_max: usize, p_max: usize) -> Result<Self> {
        if dim_max == 0 || p_max == 0 {
            return Err(Error::InvalidParameter(
                "dim_max and p_max must be positive".into(),
            ));
        }
        Ok(TrialShape {
            dim_max,
            p_max,
            members_max: 3,
            atoms_max: 3,
        })
    }
}

pub fn trial_seed(base_seed: u64, lemma: LemmaId, trial: u64) -> u64 {
    rng::derive_seed(base_seed, &[lemma as u64, trial])
}

/// Runs one randomized trial of the given checker.
pub fn run_trial(
    lemma: LemmaId,
    base_seed: u64,
    trial: u64,
    shape: TrialShape,
) -> Result<CheckReport> {
    let seed = trial_seed(base_seed, lemma, trial);
    let mut r = rng::stream(seed, &[]);
    let n = r.random_range(1..=shape.dim_max);
    let report = match lemma {
        LemmaId::Holder => {
            let count = r.random_range(1..=3usize);
            let factors: Vec<_> = (0..count)
                .map(|_| {
                    if r.random_bool(0.5) {
                        rng::gaussian_symmetric(&mut r, n)
                    } else {
                        let scale = r.random_range(0.1..3.0);
                        rng::random_psd_degenerate(&mut r, n, scale)
                    }
                })
                .collect();
            let exponents = holder_exponents(&mut r, count);
            check_holder(&factors, &exponents)
        }
        LemmaId::Alt | LemmaId::AltSchatten => {
            let alpha = ALT_EXPONENTS[r.random_range(0..ALT_EXPONENTS.len())];
            let (sa, sb) = (r.random_range(0.1..3.0), r.random_range(0.1..3.0));
            let a = rng::random_psd_degenerate(&mut r, n, sa);
            let b = rng::random_psd_degenerate(&mut r, n, sb);
            if lemma == LemmaId::Alt {
                check_alt(&a, &b, alpha)
            } else {
                check_alt_schatten(&a, &b, alpha)
            }
        }
        LemmaId::WordBound => {
            let (sx, sy) = (r.random_range(0.1..3.0), r.random_range(0.1..3.0));
            let x = rng::random_psd_degenerate(&mut r, n, sx);
            let y = rng::random_psd_degenerate(&mut r, n, sy);
            let w = random_word(&mut r, shape.p_max);
            check_word_bound(&x, &y, &w)
        }
        LemmaId::ExpectationWordBound => {
            let ex = random_member(&mut r, n, shape.atoms_max, seed, 0)?;
            let ey = random_member(&mut r, n, shape.atoms_max, seed, 1)?;
            let w = random_word(&mut r, shape.p_max);
            check_expectation_word_bound(&ex, &ey, &w, ex.cap())
        }
        LemmaId::BinomialReduction => {
            let ex = random_member(&mut r, n, shape.atoms_max, seed, 0)?;
            let ey = random_member(&mut r, n, shape.atoms_max, seed, 1)?;
            let p = r.random_range(1..=shape.p_max);
            check_binomial_reduction(&ex, &ey, p, ex.cap())
        }
        LemmaId::TheoremMax => {
            let count = r.random_range(1..=shape.members_max);
            let members = (0..count)
                .map(|k| random_member(&mut r, n, shape.atoms_max, seed, k as u64))
                .collect::<Result<Vec<_>>>()?;
            let p = r.random_range(1..=shape.p_max);
            check_theorem_max(&EnsembleFamily::new(members)?, p)
        }
    };
    Ok(report.map_err(|e| e.with_seed(seed))?.with_seed(seed))
}

/// Exponents with `Σ 1/p_i = 1`, occasionally including `∞`.
fn holder_exponents(r: &mut StreamRng, count: usize) -> Vec<f64> {
    if count == 2 && r.random_bool(0.1) {
        return vec![1.0, f64::INFINITY];
    }
    let weights = rng::simplex(r, count);
    let mut exponents: Vec<f64> = weights.iter().map(|w| 1.0 / w).collect();
    // absorb rounding into the last exponent so the reciprocals sum to one
    let head: f64 = exponents[..count - 1].iter().map(|p| 1.0 / p).sum();
    exponents[count - 1] = 1.0 / (1.0 - head);
    exponents
}

/// Random alternating word: half integral (from a random binary word), half fractional.
pub fn random_word(r: &mut StreamRng, p_max: usize) -> AlternatingWord {
    if r.random_bool(0.5) && p_max >= 2 {
        let len = r.random_range(2..=p_max);
        loop {
            let letters: Vec<Letter> = (0..len)
                .map(|_| {
                    if r.random_bool(0.5) {
                        Letter::X
                    } else {
                        Letter::Y
                    }
                })
                .collect();
            let word = BinaryWord::new(letters).expect("nonempty");
            if let WordForm::Alternating(w) = to_alternating(&word) {
                return w;
            }
        }
    }
    let pairs = r.random_range(1..=3usize);
    AlternatingWord::new(
        (0..pairs)
            .map(|_| (r.random_range(1.0..3.0), r.random_range(1.0..3.0)))
            .collect(),
    )
    .expect("exponents >= 1")
}

/// Admissible member with random cap, target ratio (sometimes exactly 0 or 1) and atom count.
pub fn random_member(
    r: &mut StreamRng,
    n: usize,
    atoms_max: usize,
    seed: u64,
    tag: u64,
) -> Result<FiniteEnsemble> {
    let s = r.random_range(1..=atoms_max);
    let cap = r.random_range(0.5..2.0);
    let alpha = match r.random_range(0..10u8) {
        0 => 0.0,
        1 => 1.0,
        _ => r.random_range(0.0..1.0),
    };
    sample_constrained_ensemble(n, s, cap, alpha, rng::derive_seed(seed, &[tag]))
}

//! Executable checkers for each inequality in the reduction.
//!
//! Every checker evaluates both sides exactly (no sampling) and returns a
//! [`CheckReport`]. A report passes iff `lhs ≤ rhs + 1e-9 · (1 + |rhs|)`.

use serde::{Deserialize, Serialize};

use crate::ensemble::{EnsembleFamily, FiniteEnsemble, CAP_TOLERANCE};
use crate::error::{Error, Result};
use crate::extremal::{theorem_max_value, BernoulliParams};
use crate::linalg::{eigh, schatten_norm, trace_product, EigenDecomposition, Matrix, SymMatrix};
use crate::sum::CompensatedSum;
use crate::words::{AlternatingWord, WordEvaluator, WORD_BUDGET};

/// Relative tolerance with additive floor used by every checker.
pub const CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LemmaId {
    Holder,
    #[serde(rename = "ALT")]
    Alt,
    #[serde(rename = "ALT_Schatten")]
    AltSchatten,
    WordBound,
    ExpectationWordBound,
    BinomialReduction,
    TheoremMax,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::Holder,
        LemmaId::Alt,
        LemmaId::AltSchatten,
        LemmaId::WordBound,
        LemmaId::ExpectationWordBound,
        LemmaId::BinomialReduction,
        LemmaId::TheoremMax,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::Holder => "Holder",
            LemmaId::Alt => "ALT",
            LemmaId::AltSchatten => "ALT_Schatten",
            LemmaId::WordBound => "WordBound",
            LemmaId::ExpectationWordBound => "ExpectationWordBound",
            LemmaId::BinomialReduction => "BinomialReduction",
            LemmaId::TheoremMax => "TheoremMax",
        }
    }
}

/// Where a checked input came from: the seed that generated it and a parameter summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub seed: Option<u64>,
    pub params: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub lemma_id: LemmaId,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub slack: f64,
    pub passed: bool,
    pub input_digest: InputDigest,
}

pub fn passes(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + CHECK_TOLERANCE * (1.0 + rhs.abs())
}

impl CheckReport {
    pub fn new(lemma_id: LemmaId, lhs: f64, rhs: f64, params: String) -> Self {
        CheckReport {
            lemma_id,
            lhs,
            rhs,
            slack: rhs - lhs,
            passed: passes(lhs, rhs),
            input_digest: InputDigest { seed: None, params },
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.input_digest.seed = Some(seed);
        self
    }

    /// Slack normalized by the additive floor: `slack / (1 + |rhs|)`.
    pub fn margin(&self) -> f64 {
        self.slack / (1.0 + self.rhs.abs())
    }
}

fn same_dims(mats: &[&SymMatrix]) -> Result<usize> {
    let n = mats[0].dim();
    match mats.iter().find(|m| m.dim() != n) {
        Some(m) => Err(Error::Dimension {
            expected: n,
            found: m.dim(),
        }),
        None => Ok(n),
    }
}

fn psd_decomposition(a: &SymMatrix) -> Result<EigenDecomposition> {
    let e = eigh(a)?;
    e.require_psd()?;
    Ok(e)
}

/// `tr A^t` for PSD `A` from its spectrum.
fn trace_of_power(e: &EigenDecomposition, t: f64) -> f64 {
    e.eigenvalues
        .iter()
        .map(|&x| x.max(0.0).powf(t))
        .collect::<CompensatedSum>()
        .value()
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha >= 1.0) {
        return Err(Error::InvalidExponent(format!(
            "alpha {alpha} must be finite and >= 1"
        )));
    }
    Ok(())
}

/// `|A_1 ⋯ A_r|_1 ≤ Π |A_i|_{p_i}` for `Σ 1/p_i = 1`.
pub fn check_holder(factors: &[SymMatrix], exponents: &[f64]) -> Result<CheckReport> {
    if factors.is_empty() || factors.len() != exponents.len() {
        return Err(Error::InvalidParameter(format!(
            "{} factors with {} exponents",
            factors.len(),
            exponents.len()
        )));
    }
    if let Some(p) = exponents.iter().find(|p| p.is_nan() || **p < 1.0) {
        return Err(Error::InvalidExponent(format!(
            "Hölder exponent {p} must be >= 1"
        )));
    }
    let reciprocal_sum: f64 = exponents.iter().map(|p| 1.0 / p).sum();
    if (reciprocal_sum - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidExponent(format!(
            "reciprocal exponents sum to {reciprocal_sum}, not 1"
        )));
    }
    let n = same_dims(&factors.iter().collect::<Vec<_>>())?;
    let product = factors
        .iter()
        .fold(Matrix::identity(n), |acc, f| acc.mul_sym(f));
    let lhs = product.schatten_norm(1.0)?;
    let rhs = factors
        .iter()
        .zip(exponents)
        .map(|(f, &p)| schatten_norm(f, p))
        .try_fold(1.0, |acc, x| Ok::<_, Error>(acc * x?))?;
    Ok(CheckReport::new(
        LemmaId::Holder,
        lhs,
        rhs,
        format!("n={n} r={} p={exponents:?}", factors.len()),
    ))
}

fn sandwich(a: &SymMatrix, b: &SymMatrix) -> SymMatrix {
    a.mul(b).mul_sym(a).into_symmetric()
}

/// `tr (A^{2α} B^α)` for PSD `A`, `B`.
fn alt_right_side(ea: &EigenDecomposition, eb: &EigenDecomposition, alpha: f64) -> Result<f64> {
    trace_product(&[ea.psd_power(2.0 * alpha)?, eb.psd_power(alpha)?])
}

/// `tr (ABA)^α ≤ tr (A^{2α} B^α)` for PSD `A`, `B`, `α ≥ 1`.
pub fn check_alt(a: &SymMatrix, b: &SymMatrix, alpha: f64) -> Result<CheckReport> {
    check_alpha(alpha)?;
    let n = same_dims(&[a, b])?;
    let ea = psd_decomposition(a)?;
    let eb = psd_decomposition(b)?;
    let lhs = trace_of_power(&eigh(&sandwich(a, b))?, alpha);
    let rhs = alt_right_side(&ea, &eb, alpha)?;
    Ok(CheckReport::new(
        LemmaId::Alt,
        lhs,
        rhs,
        format!("n={n} alpha={alpha}"),
    ))
}

/// `|ABA|_α ≤ (tr A^{2α} B^α)^{1/α}`.
pub fn check_alt_schatten(a: &SymMatrix, b: &SymMatrix, alpha: f64) -> Result<CheckReport> {
    check_alpha(alpha)?;
    let n = same_dims(&[a, b])?;
    let ea = psd_decomposition(a)?;
    let eb = psd_decomposition(b)?;
    let lhs = schatten_norm(&sandwich(a, b), alpha)?;
    let rhs = alt_right_side(&ea, &eb, alpha)?.max(0.0).powf(1.0 / alpha);
    Ok(CheckReport::new(
        LemmaId::AltSchatten,
        lhs,
        rhs,
        format!("n={n} alpha={alpha}"),
    ))
}

/// `‖X‖^{l−1} tr(X Y^m)`.
fn word_bound_rhs(ev: &WordEvaluator, w: &AlternatingWord) -> Result<f64> {
    let norm_x = ev.x_decomposition().max_eigenvalue().max(0.0);
    let x_ym = trace_product(&[ev.x().clone(), ev.y_power(w.m())?])?;
    Ok(norm_x.powf(w.l() - 1.0) * x_ym)
}

/// `|tr X^{l_1} Y^{m_1} ⋯ X^{l_r} Y^{m_r}| ≤ ‖X‖^{l−1} tr(X Y^m)`.
pub fn check_word_bound(x: &SymMatrix, y: &SymMatrix, w: &AlternatingWord) -> Result<CheckReport> {
    let ev = WordEvaluator::new(x, y)?;
    check_word_bound_with(&ev, w)
}

/// [`check_word_bound`] reusing a prepared evaluator.
pub fn check_word_bound_with(ev: &WordEvaluator, w: &AlternatingWord) -> Result<CheckReport> {
    let lhs = ev.trace(w)?.abs();
    let rhs = word_bound_rhs(ev, w)?;
    Ok(CheckReport::new(
        LemmaId::WordBound,
        lhs,
        rhs,
        format!("n={} word={w}", ev.x().dim()),
    ))
}

/// Intermediate quantities of the word bound's factorization argument.
///
/// With `F_i = X^{l_i/2} Y^{m_i} X^{l_{i+1}/2}` (indices cyclic), the trace of
/// the word equals `tr(F_1 ⋯ F_r)`; Hölder with exponents `m/m_i` bounds it by
/// `Π |F_i|_{m/m_i}`; pulling powers of `‖X‖` out of each factor leaves
/// `|X^{m_i/2m} Y^{m_i} X^{m_i/2m}|_{m/m_i}`, which the Schatten form of
/// Araki-Lieb-Thirring bounds by `(tr X Y^m)^{m_i/m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WordBoundChain {
    /// `tr X^{l_1} Y^{m_1} ⋯`.
    pub trace: f64,
    /// `tr(F_1 ⋯ F_r)`.
    pub rotated_trace: f64,
    /// `|F_i|_{m/m_i}`.
    pub factor_norms: Vec<f64>,
    /// `‖X‖^{(l_i+l_{i+1})/2 − m_i/m} |X^{m_i/2m} Y^{m_i} X^{m_i/2m}|_{m/m_i}`.
    pub factor_ideal_bounds: Vec<f64>,
    /// `‖X‖^{(l_i+l_{i+1})/2 − m_i/m} (tr X Y^m)^{m_i/m}`.
    pub factor_final_bounds: Vec<f64>,
    /// `Π |F_i|_{m/m_i}`.
    pub holder_product: f64,
    /// `‖X‖^{l−1} tr(X Y^m)`.
    pub final_bound: f64,
}

impl WordBoundChain {
    /// Every link of the chain holds at the checker tolerance.
    pub fn holds(&self) -> bool {
        let rel_eq =
            |a: f64, b: f64| (a - b).abs() <= CHECK_TOLERANCE * (1.0 + a.abs().max(b.abs()));
        let final_product: f64 = self.factor_final_bounds.iter().product();
        rel_eq(self.trace, self.rotated_trace)
            && passes(self.trace.abs(), self.holder_product)
            && self
                .factor_norms
                .iter()
                .zip(&self.factor_ideal_bounds)
                .zip(&self.factor_final_bounds)
                .all(|((&f, &ideal), &fin)| passes(f, ideal) && passes(ideal, fin))
            && rel_eq(final_product, self.final_bound)
    }
}

pub fn word_bound_chain(
    x: &SymMatrix,
    y: &SymMatrix,
    w: &AlternatingWord,
) -> Result<WordBoundChain> {
    let ev = WordEvaluator::new(x, y)?;
    let pairs = w.pairs();
    let r = pairs.len();
    let m = w.m();
    let norm_x = ev.x_decomposition().max_eigenvalue().max(0.0);
    let x_ym = trace_product(&[x.clone(), ev.y_power(m)?])?;
    let ex = ev.x_decomposition();

    let mut factors = Vec::with_capacity(r);
    let mut factor_norms = Vec::with_capacity(r);
    let mut factor_ideal_bounds = Vec::with_capacity(r);
    let mut factor_final_bounds = Vec::with_capacity(r);
    for i in 0..r {
        let (l_i, m_i) = pairs[i];
        let l_next = pairs[(i + 1) % r].0;
        let f = ex
            .psd_power(l_i / 2.0)?
            .mul(&ev.y_power(m_i)?)
            .mul_sym(&ex.psd_power(l_next / 2.0)?);
        let q = m / m_i;
        let norm_exponent = (l_i + l_next) / 2.0 - m_i / m;
        let inner_root = ex.psd_power(m_i / (2.0 * m))?;
        let inner = sandwich(&inner_root, &ev.y_power(m_i)?);
        factor_norms.push(f.schatten_norm(q)?);
        factor_ideal_bounds.push(norm_x.powf(norm_exponent) * schatten_norm(&inner, q)?);
        factor_final_bounds.push(norm_x.powf(norm_exponent) * x_ym.max(0.0).powf(m_i / m));
        factors.push(f);
    }
    let product = factors[1..]
        .iter()
        .fold(factors[0].clone(), |acc, f| acc.mul(f));
    Ok(WordBoundChain {
        trace: ev.trace(w)?,
        rotated_trace: product.trace(),
        holder_product: factor_norms.iter().product(),
        factor_norms,
        factor_ideal_bounds,
        factor_final_bounds,
        final_bound: norm_x.powf(w.l() - 1.0) * x_ym,
    })
}

/// `P(f = L) = ‖E X‖ / L` for the scalar surrogate of `X`.
fn surrogate_probability(ex: &FiniteEnsemble, cap: f64) -> Result<f64> {
    if !(cap.is_finite() && cap > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "cap L = {cap} must be positive"
        )));
    }
    let max_atom = ex.max_atom_norm()?;
    if max_atom > cap * (1.0 + CAP_TOLERANCE) {
        return Err(Error::ConstraintViolated(format!(
            "atom norm {max_atom} exceeds L = {cap}"
        )));
    }
    let mean_norm = ex.mean_norm()?;
    Ok((mean_norm / cap).min(1.0))
}

/// `E tr X^{l_1} Y^{m_1} ⋯ X^{l_r} Y^{m_r} ≤ E f^l · E tr Y^m` for independent `X`, `Y`.
pub fn check_expectation_word_bound(
    ex: &FiniteEnsemble,
    ey: &FiniteEnsemble,
    w: &AlternatingWord,
    cap: f64,
) -> Result<CheckReport> {
    if ex.dim() != ey.dim() {
        return Err(Error::Dimension {
            expected: ex.dim(),
            found: ey.dim(),
        });
    }
    let beta = surrogate_probability(ex, cap)?;
    let mut lhs = CompensatedSum::new();
    let mut y_moment = CompensatedSum::new();
    for (y, &qy) in ey.atoms().iter().zip(ey.probs()) {
        for (x, &px) in ex.atoms().iter().zip(ex.probs()) {
            let prob = px * qy;
            if prob != 0.0 {
                lhs.add(prob * WordEvaluator::new(x, y)?.trace(w)?);
            }
        }
        if qy != 0.0 {
            y_moment.add(qy * trace_of_power(&psd_decomposition(y)?, w.m()));
        }
    }
    let f_moment = beta * cap.powf(w.l());
    let rhs = f_moment * y_moment.value();
    Ok(CheckReport::new(
        LemmaId::ExpectationWordBound,
        lhs.value(),
        rhs,
        format!(
            "n={} sx={} sy={} L={cap} beta={beta} word={w}",
            ex.dim(),
            ex.len(),
            ey.len()
        ),
    ))
}

/// `E tr(X + Y)^p ≤ E tr(f I + Y)^p` with `f ∈ {0, L}`, `P(f = L) = ‖E X‖ / L`.
pub fn check_binomial_reduction(
    ex: &FiniteEnsemble,
    ey: &FiniteEnsemble,
    p: usize,
    cap: f64,
) -> Result<CheckReport> {
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    if p > WORD_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "binomial reduction order",
            requested: p as u128,
            limit: WORD_BUDGET as u128,
        });
    }
    if ex.dim() != ey.dim() {
        return Err(Error::Dimension {
            expected: ex.dim(),
            found: ey.dim(),
        });
    }
    let n = ex.dim();
    let beta = surrogate_probability(ex, cap)?;
    let shift = SymMatrix::scalar(n, cap);
    let k = p as u32;
    let mut lhs = CompensatedSum::new();
    let mut rhs = CompensatedSum::new();
    for (y, &qy) in ey.atoms().iter().zip(ey.probs()) {
        if qy == 0.0 {
            continue;
        }
        for (x, &px) in ex.atoms().iter().zip(ex.probs()) {
            if px != 0.0 {
                lhs.add(px * qy * x.add(y).trace_pow(k));
            }
        }
        rhs.add(qy * (1.0 - beta) * y.trace_pow(k));
        rhs.add(qy * beta * shift.add(y).trace_pow(k));
    }
    Ok(CheckReport::new(
        LemmaId::BinomialReduction,
        lhs.value(),
        rhs.value(),
        format!(
            "n={n} sx={} sy={} p={p} L={cap} beta={beta}",
            ex.len(),
            ey.len()
        ),
    ))
}

/// Bernoulli parameters read off the family: `α_k = ‖E X_k‖ / L_k`.
pub fn measured_params(family: &EnsembleFamily) -> Result<BernoulliParams> {
    let caps: Vec<f64> = family.members().iter().map(|m| m.cap()).collect();
    let alphas = family
        .members()
        .iter()
        .map(|m| Ok((m.mean_norm()? / m.cap()).min(1.0)))
        .collect::<Result<Vec<_>>>()?;
    BernoulliParams::new(caps, alphas)
}

/// `E tr(Σ X_k)^p ≤ n · E(Σ f_k)^p` for an admissible family.
pub fn check_theorem_max(family: &EnsembleFamily, p: usize) -> Result<CheckReport> {
    let params = measured_params(family)?;
    let lhs = family.exact_trace_moment(p)?;
    let rhs = theorem_max_value(family.dim(), &params, p)?;
    Ok(CheckReport::new(
        LemmaId::TheoremMax,
        lhs,
        rhs,
        format!(
            "n={} N={} s={:?} p={p} L={:?} alpha={:?}",
            family.dim(),
            family.len(),
            family.members().iter().map(|m| m.len()).collect::<Vec<_>>(),
            params.caps(),
            params.alphas()
        ),
    ))
}

/// Values along the member-by-member replacement `X_k → f_k I`.
///
/// Entry `k` is `E tr(f_1 I + ⋯ + f_k I + X_{k+1} + ⋯ + X_N)^p`, so entry `0`
/// is the family's own moment and entry `N` equals the maximum. Each step is
/// one application of the binomial reduction and must not decrease the value.
pub fn reduction_chain(family: &EnsembleFamily, p: usize) -> Result<Vec<f64>> {
    let params = measured_params(family)?;
    let n = family.dim();
    let mut members: Vec<FiniteEnsemble> = family.members().to_vec();
    let mut values = vec![family.exact_trace_moment(p)?];
    for (k, (cap, alpha)) in params.iter().enumerate() {
        members[k] = FiniteEnsemble::scalar_bernoulli(n, cap, alpha)?;
        values.push(EnsembleFamily::new(members.clone())?.exact_trace_moment(p)?);
    }
    Ok(values)
}

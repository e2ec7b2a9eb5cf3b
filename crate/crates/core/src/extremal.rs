//! Exact moments of sums of independent scaled Bernoulli variables.
//!
//! The extremal family puts `X_k = L_k I` with probability `α_k` and `X_k = 0`
//! otherwise, so `E tr(Σ X_k)^p = n · E(f_1 + ⋯ + f_N)^p` with
//! `f_k ∈ {0, L_k}`. The raw moments of the partial sums are carried through a
//! dynamic program over the `p + 1` moments instead of over the support,
//! which can have `2^N` points.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// Largest moment order handled; binomial coefficients are tabulated up to here.
pub const MAX_MOMENT_ORDER: usize = 30;

/// Largest `N` for which brute-force enumeration over `2^N` outcomes is allowed.
pub const ENUMERATION_BUDGET: usize = 24;

/// Pascal's triangle as `f64`, rows `0..=MAX_MOMENT_ORDER`. Exact: every entry is below `2^53`.
fn binomial_table() -> &'static [[f64; MAX_MOMENT_ORDER + 1]; MAX_MOMENT_ORDER + 1] {
    static TABLE: std::sync::OnceLock<[[f64; MAX_MOMENT_ORDER + 1]; MAX_MOMENT_ORDER + 1]> =
        std::sync::OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[0.0; MAX_MOMENT_ORDER + 1]; MAX_MOMENT_ORDER + 1];
        for j in 0..=MAX_MOMENT_ORDER {
            t[j][0] = 1.0;
            for i in 1..=j {
                t[j][i] = t[j - 1][i - 1] + if i < j { t[j - 1][i] } else { 0.0 };
            }
        }
        t
    })
}

pub fn binomial(j: usize, i: usize) -> f64 {
    if i > j {
        0.0
    } else {
        binomial_table()[j][i]
    }
}

/// Caps `L_k > 0` and probabilities `α_k ∈ [0, 1]` of `N` independent scaled Bernoullis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BernoulliParams {
    caps: Vec<f64>,
    alphas: Vec<f64>,
}

impl BernoulliParams {
    pub fn new(caps: Vec<f64>, alphas: Vec<f64>) -> Result<Self> {
        if caps.is_empty() {
            return Err(Error::InvalidParameter(
                "need at least one summand (N >= 1)".into(),
            ));
        }
        if caps.len() != alphas.len() {
            return Err(Error::InvalidParameter(format!(
                "{} caps but {} alphas",
                caps.len(),
                alphas.len()
            )));
        }
        if let Some(l) = caps.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "cap L = {l} must be positive and finite"
            )));
        }
        if let Some(a) = alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {a} must lie in [0, 1]"
            )));
        }
        Ok(BernoulliParams { caps, alphas })
    }

    /// `N` identical summands.
    pub fn uniform(count: usize, cap: f64, alpha: f64) -> Result<Self> {
        Self::new(vec![cap; count], vec![alpha; count])
    }

    pub fn len(&self) -> usize {
        self.caps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.caps.is_empty()
    }

    pub fn caps(&self) -> &[f64] {
        &self.caps
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.caps.iter().copied().zip(self.alphas.iter().copied())
    }

    /// Same parameters with every cap multiplied by `c`.
    pub fn with_scaled_caps(&self, c: f64) -> Result<Self> {
        Self::new(
            self.caps.iter().map(|l| l * c).collect(),
            self.alphas.clone(),
        )
    }
}

fn check_order(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidParameter(
            "moment order p must be at least 1".into(),
        ));
    }
    if p > MAX_MOMENT_ORDER {
        return Err(Error::BudgetExceeded {
            what: "moment order",
            requested: p as u128,
            limit: MAX_MOMENT_ORDER as u128,
        });
    }
    Ok(())
}

/// Raw moments `E S^j`, `j = 0..=p`, of `S = f_1 + ⋯ + f_N`.
pub fn bernoulli_sum_moments(params: &BernoulliParams, p: usize) -> Result<Vec<f64>> {
    check_order(p)?;
    let mut moments = vec![0.0; p + 1];
    moments[0] = 1.0;
    let mut summand = vec![0.0; p + 1];
    for (cap, alpha) in params.iter() {
        summand[0] = 1.0;
        let mut power = 1.0;
        for s in summand.iter_mut().skip(1) {
            power *= cap;
            *s = alpha * power;
        }
        let next: Vec<f64> = (0..=p)
            .map(|j| {
                let mut acc = CompensatedSum::new();
                for i in 0..=j {
                    acc.add(binomial(j, i) * moments[i] * summand[j - i]);
                }
                acc.value()
            })
            .collect();
        moments = next;
    }
    Ok(moments)
}

/// `E(f_1 + ⋯ + f_N)^p` with `f_k ∈ {0, L_k}`, `P(f_k = L_k) = α_k`, independent.
pub fn bernoulli_sum_moment(params: &BernoulliParams, p: usize) -> Result<f64> {
    Ok(bernoulli_sum_moments(params, p)?[p])
}

/// Same moment by summing over all `2^N` outcomes.
pub fn enumerate_bernoulli_moment(params: &BernoulliParams, p: usize) -> Result<f64> {
    check_order(p)?;
    let n = params.len();
    if n > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "Bernoulli outcomes (2^N)",
            requested: 1u128 << n,
            limit: 1u128 << ENUMERATION_BUDGET,
        });
    }
    let mut acc = CompensatedSum::new();
    for mask in 0u64..(1u64 << n) {
        let mut prob = 1.0;
        let mut total = 0.0;
        for (k, (cap, alpha)) in params.iter().enumerate() {
            if mask >> k & 1 == 1 {
                prob *= alpha;
                total += cap;
            } else {
                prob *= 1.0 - alpha;
            }
        }
        if prob != 0.0 {
            acc.add(prob * total.powi(p as i32));
        }
    }
    Ok(acc.value())
}

/// Maximum of `E tr(Σ X_k)^p` over admissible `n × n` families: `n · E(Σ f_k)^p`.
pub fn theorem_max_value(n: usize, params: &BernoulliParams, p: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "matrix dimension n must be at least 1".into(),
        ));
    }
    Ok(n as f64 * bernoulli_sum_moment(params, p)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorollaryRow {
    pub n: usize,
    pub p: usize,
    /// `E Bin(n, 1/n)^p`.
    pub value: f64,
    /// `value^{1/p} · ln p / p · n^{-1/p}`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorollaryTable {
    pub rows: Vec<CorollaryRow>,
}

impl CorollaryTable {
    /// Row with the largest ratio; the first such row in grid order on ties.
    pub fn sup(&self) -> Option<&CorollaryRow> {
        self.rows
            .iter()
            .fold(None, |best: Option<&CorollaryRow>, r| match best {
                Some(b) if b.ratio >= r.ratio => Some(b),
                _ => Some(r),
            })
    }

    /// Supremum of the ratio over rows with `p ≤ p_max`.
    pub fn sup_up_to(&self, p_max: usize) -> Option<f64> {
        self.rows
            .iter()
            .filter(|r| r.p <= p_max)
            .map(|r| r.ratio)
            .reduce(f64::max)
    }
}

pub fn growth_ratio(n: usize, p: usize, value: f64) -> f64 {
    let pf = p as f64;
    value.powf(1.0 / pf) * pf.ln() / pf * (n as f64).powf(-1.0 / pf)
}

/// Moments of `Binomial(n, 1/n)` over the grid, rows ordered by `n` then `p`.
pub fn corollary_growth(n_grid: &[usize], p_grid: &[usize]) -> Result<CorollaryTable> {
    if let Some(v) = n_grid.iter().chain(p_grid).find(|&&v| v < 2) {
        return Err(Error::InvalidParameter(format!(
            "grid entries must be >= 2, got {v}"
        )));
    }
    if let Some(&p) = p_grid.iter().find(|&&p| p > MAX_MOMENT_ORDER) {
        check_order(p)?;
    }
    let cells: Vec<(usize, usize)> = n_grid
        .iter()
        .flat_map(|&n| p_grid.iter().map(move |&p| (n, p)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(n, p)| {
            let params = BernoulliParams::uniform(n, 1.0, 1.0 / n as f64)?;
            let value = bernoulli_sum_moment(&params, p)?;
            Ok(CorollaryRow {
                n,
                p,
                value,
                ratio: growth_ratio(n, p, value),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CorollaryTable { rows })
}

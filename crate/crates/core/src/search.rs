//! Hill climbing with random restarts over admissible families.
//!
//! The search tries to push `E tr(Σ X_k)^p` above the Bernoulli maximum. Each
//! proposal perturbs one member, is projected back onto the constraint set,
//! and is accepted only on strict improvement. A result whose best value
//! exceeds the maximum beyond tolerance is a counterexample, which for a
//! correct implementation never happens.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checks::CHECK_TOLERANCE;
use crate::ensemble::{
    project_to_constraints, sample_constrained_ensemble, EnsembleFamily, FiniteEnsemble,
};
use crate::error::{Error, Result};
use crate::extremal::{theorem_max_value, BernoulliParams};
use crate::rng::{self, StreamRng};

/// Gap below `NEAR_VIOLATION · value` flags a family for dumping.
pub const NEAR_VIOLATION: f64 = 1e-6;

/// Relative window in which two restarts count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StartPoint {
    /// Sampled admissible family with 1..=`max_atoms` atoms per member.
    Random,
    /// The scalar Bernoulli family itself.
    Extremal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub steps_per_restart: usize,
    /// Entrywise standard deviation of atom moves, relative to the member's cap.
    pub proposal_scale: f64,
    pub seed: u64,
    pub max_atoms: usize,
    pub start: StartPoint,
}

impl SearchConfig {
    pub fn new(restarts: usize, steps_per_restart: usize, seed: u64) -> Self {
        SearchConfig {
            restarts,
            steps_per_restart,
            proposal_scale: 0.1,
            seed,
            max_atoms: 3,
            start: StartPoint::Random,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.steps_per_restart == 0 || self.max_atoms == 0 {
            return Err(Error::InvalidParameter(
                "restarts, steps and max_atoms must be positive".into(),
            ));
        }
        if !(self.proposal_scale.is_finite() && self.proposal_scale > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "proposal scale {} must be positive",
                self.proposal_scale
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_value: f64,
    pub best_family: EnsembleFamily,
    pub theorem_value: f64,
    /// `theorem_value − best_value`.
    pub gap: f64,
    /// Accepted `(step, value)` pairs of the winning restart, starting at step 0.
    pub trajectory: Vec<(usize, f64)>,
    pub best_restart: usize,
    /// Accepted proposals summed over all restarts.
    pub accepted: usize,
}

impl SearchResult {
    pub fn tolerance(&self) -> f64 {
        CHECK_TOLERANCE * (1.0 + self.theorem_value.abs())
    }

    pub fn is_violation(&self) -> bool {
        self.gap < -self.tolerance()
    }

    pub fn is_near_violation(&self) -> bool {
        self.gap < NEAR_VIOLATION * self.theorem_value
    }
}

struct RestartOutcome {
    value: f64,
    family: EnsembleFamily,
    trajectory: Vec<(usize, f64)>,
    accepted: usize,
}

fn initial_family(
    n: usize,
    params: &BernoulliParams,
    config: &SearchConfig,
    restart: usize,
    r: &mut StreamRng,
) -> Result<EnsembleFamily> {
    match config.start {
        StartPoint::Extremal => EnsembleFamily::scalar_bernoulli(n, params),
        StartPoint::Random => EnsembleFamily::new(
            params
                .iter()
                .enumerate()
                .map(|(k, (cap, alpha))| {
                    let s = r.random_range(1..=config.max_atoms);
                    let seed = rng::derive_seed(config.seed, &[restart as u64, k as u64]);
                    sample_constrained_ensemble(n, s, cap, alpha, seed)
                })
                .collect::<Result<_>>()?,
        ),
    }
}

/// Perturbs one atom or moves probability between two atoms, then re-projects.
/// Returns `None` when the projection cannot restore the constraints.
fn propose(member: &FiniteEnsemble, scale: f64, r: &mut StreamRng) -> Option<FiniteEnsemble> {
    let mut atoms = member.atoms().to_vec();
    let mut probs = member.probs().to_vec();
    let s = atoms.len();
    if s >= 2 && r.random_bool(0.5) {
        let from = r.random_range(0..s);
        let to = (from + r.random_range(1..s)) % s;
        let delta = (r.random::<f64>() * scale).min(1.0) * probs[from];
        probs[from] -= delta;
        probs[to] += delta;
    } else {
        let j = r.random_range(0..s);
        let noise = rng::gaussian_symmetric(r, member.dim()).scaled(scale * member.cap());
        atoms[j] = atoms[j].add(&noise);
    }
    let atoms = project_to_constraints(&atoms, &probs, member.cap(), member.alpha_target()).ok()?;
    FiniteEnsemble::new(atoms, probs, member.cap(), member.alpha_target()).ok()
}

fn run_restart(
    n: usize,
    params: &BernoulliParams,
    p: usize,
    config: &SearchConfig,
    restart: usize,
) -> Result<RestartOutcome> {
    let mut r = rng::stream(config.seed, &[0x5345_4152_4348, restart as u64]);
    let mut members = initial_family(n, params, config, restart, &mut r)?.into_members();
    let mut value = EnsembleFamily::new(members.clone())?.exact_trace_moment(p)?;
    let mut trajectory = vec![(0, value)];
    let mut accepted = 0;
    for step in 1..=config.steps_per_restart {
        let k = r.random_range(0..members.len());
        let Some(candidate) = propose(&members[k], config.proposal_scale, &mut r) else {
            continue;
        };
        let previous = std::mem::replace(&mut members[k], candidate);
        let candidate_value = EnsembleFamily::new(members.clone())?.exact_trace_moment(p)?;
        if candidate_value > value {
            value = candidate_value;
            accepted += 1;
            trajectory.push((step, value));
        } else {
            members[k] = previous;
        }
    }
    Ok(RestartOutcome {
        value,
        family: EnsembleFamily::new(members)?,
        trajectory,
        accepted,
    })
}

/// Searches admissible `n × n` families with the given caps and target ratios.
pub fn maximize(
    n: usize,
    params: &BernoulliParams,
    p: usize,
    config: &SearchConfig,
) -> Result<SearchResult> {
    config.validate()?;
    let theorem_value = theorem_max_value(n, params, p)?;
    let outcomes = (0..config.restarts)
        .into_par_iter()
        .map(|restart| run_restart(n, params, p, config, restart))
        .collect::<Result<Vec<_>>>()?;
    let accepted = outcomes.iter().map(|o| o.accepted).sum();
    let (best_restart, best) = outcomes
        .into_iter()
        .enumerate()
        .reduce(|best, next| {
            let window = TIE_TOLERANCE * (1.0 + best.1.value.abs());
            if next.1.value > best.1.value + window {
                next
            } else {
                best
            }
        })
        .expect("at least one restart");
    Ok(SearchResult {
        best_value: best.value,
        gap: theorem_value - best.value,
        best_family: best.family,
        theorem_value,
        trajectory: best.trajectory,
        best_restart,
        accepted,
    })
}

/// Cross product of dimensions, member counts and orders. Caps and target
/// ratios are assigned to members cyclically from `caps` and `alphas`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub dims: Vec<usize>,
    pub member_counts: Vec<usize>,
    pub orders: Vec<usize>,
    pub caps: Vec<f64>,
    pub alphas: Vec<f64>,
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty()
            || self.member_counts.is_empty()
            || self.orders.is_empty()
            || self.caps.is_empty()
            || self.alphas.is_empty()
        {
            return Err(Error::InvalidParameter(
                "every grid axis needs at least one value".into(),
            ));
        }
        if self.dims.contains(&0) || self.member_counts.contains(&0) || self.orders.contains(&0) {
            return Err(Error::InvalidParameter(
                "grid sizes and orders must be positive".into(),
            ));
        }
        BernoulliParams::new(self.caps.clone(), self.caps.iter().map(|_| 0.5).collect())?;
        BernoulliParams::new(
            self.alphas.iter().map(|_| 1.0).collect(),
            self.alphas.clone(),
        )?;
        Ok(())
    }

    /// `(n, N, p)` in grid order.
    pub fn cells(&self) -> Vec<(usize, usize, usize)> {
        let mut cells = Vec::new();
        for &n in &self.dims {
            for &count in &self.member_counts {
                for &p in &self.orders {
                    cells.push((n, count, p));
                }
            }
        }
        cells
    }

    pub fn params_for(&self, member_count: usize) -> Result<BernoulliParams> {
        BernoulliParams::new(
            (0..member_count)
                .map(|k| self.caps[k % self.caps.len()])
                .collect(),
            (0..member_count)
                .map(|k| self.alphas[k % self.alphas.len()])
                .collect(),
        )
    }
}

/// One grid cell of a sweep; `outcome` holds the error message when the cell failed.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub n: usize,
    pub member_count: usize,
    pub p: usize,
    pub params: BernoulliParams,
    pub seed: u64,
    pub outcome: std::result::Result<SearchResult, String>,
}

impl CellSummary {
    pub fn is_violation(&self) -> bool {
        matches!(&self.outcome, Ok(r) if r.is_violation())
    }
}

/// Runs [`maximize`] on every grid cell. Cell errors are recorded, not propagated.
pub fn gap_sweep(grid: &SweepGrid, config: &SearchConfig) -> Result<Vec<CellSummary>> {
    grid.validate()?;
    config.validate()?;
    let cells = grid.cells();
    Ok(cells
        .par_iter()
        .enumerate()
        .map(|(index, &(n, member_count, p))| {
            let seed = rng::derive_seed(config.seed, &[index as u64]);
            let params = grid.params_for(member_count).expect("grid validated");
            let cell_config = SearchConfig { seed, ..*config };
            let outcome = maximize(n, &params, p, &cell_config).map_err(|e| e.to_string());
            CellSummary {
                n,
                member_count,
                p,
                params,
                seed,
                outcome,
            }
        })
        .collect())
}

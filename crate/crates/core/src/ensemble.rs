//! Finitely supported PSD random matrices under norm constraints.
//!
//! A [`FiniteEnsemble`] is the law of one random matrix `X_k`: PSD atoms with
//! probabilities, every atom within the cap `‖atom‖ ≤ L`, and the mean on the
//! shell `‖E X_k‖ = α L`. An [`EnsembleFamily`] is a list of independent
//! members; its joint law is always the product law, so expectations are sums
//! over the product support.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{BernoulliParams, MAX_MOMENT_ORDER};
use crate::linalg::{eigh, psd_tolerance, Matrix, SymMatrix};
use crate::rng;
use crate::sum::CompensatedSum;

/// Largest product support `Π s_k` enumerated exactly.
pub const SUPPORT_BUDGET: u128 = 1_000_000;

/// Scale/clip rounds before falling back to bisection.
pub const PROJECTION_ROUNDS: usize = 50;

/// Relative tolerance on `‖E X‖ = α L`.
pub const MEAN_NORM_TOLERANCE: f64 = 1e-8;

/// Relative slack on the atom cap `‖atom‖ ≤ L`.
pub const CAP_TOLERANCE: f64 = 1e-9;

/// Tolerance on `Σ probs = 1`.
pub const PROB_TOLERANCE: f64 = 1e-12;

const MC_CHUNK: usize = 4096;

fn mean_norm_tolerance(cap: f64, alpha: f64) -> f64 {
    MEAN_NORM_TOLERANCE * alpha * cap + 1e-14 * cap
}

fn weighted_mean(atoms: &[SymMatrix], probs: &[f64]) -> SymMatrix {
    let n = atoms[0].dim();
    let mut acc: Vec<CompensatedSum> = vec![CompensatedSum::new(); n * n];
    for (atom, &p) in atoms.iter().zip(probs) {
        for (a, &x) in acc.iter_mut().zip(atom.as_slice()) {
            a.add(p * x);
        }
    }
    SymMatrix::from_row_major(n, acc.iter().map(|a| a.value()).collect()).expect("square buffer")
}

/// Law of one random PSD matrix with finite support.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteEnsemble {
    atoms: Vec<SymMatrix>,
    probs: Vec<f64>,
    cap: f64,
    alpha_target: f64,
}

impl FiniteEnsemble {
    /// Validates every invariant and fails with `ConstraintViolated` otherwise.
    pub fn new(
        atoms: Vec<SymMatrix>,
        probs: Vec<f64>,
        cap: f64,
        alpha_target: f64,
    ) -> Result<Self> {
        let e = FiniteEnsemble {
            atoms,
            probs,
            cap,
            alpha_target,
        };
        e.validate()?;
        Ok(e)
    }

    /// Single atom with probability one; `alpha_target` is read off the atom.
    pub fn deterministic(atom: SymMatrix, cap: f64) -> Result<Self> {
        let alpha = atom.operator_norm()? / cap;
        Self::new(vec![atom], vec![1.0], cap, alpha)
    }

    /// `X ∈ {L I, 0}` with probabilities `(α, 1 − α)`.
    pub fn scalar_bernoulli(dim: usize, cap: f64, alpha: f64) -> Result<Self> {
        Self::new(
            vec![SymMatrix::scalar(dim, cap), SymMatrix::zeros(dim)],
            vec![alpha, 1.0 - alpha],
            cap,
            alpha,
        )
    }

    /// Recomputes every invariant from scratch.
    pub fn validate(&self) -> Result<()> {
        let violated = |msg: String| Err(Error::ConstraintViolated(msg));
        if self.atoms.is_empty() {
            return violated("ensemble needs at least one atom".into());
        }
        if self.atoms.len() != self.probs.len() {
            return violated(format!(
                "{} atoms but {} probabilities",
                self.atoms.len(),
                self.probs.len()
            ));
        }
        if !(self.cap.is_finite() && self.cap > 0.0) {
            return violated(format!("cap {} must be positive", self.cap));
        }
        if !(0.0..=1.0).contains(&self.alpha_target) {
            return violated(format!("alpha {} outside [0, 1]", self.alpha_target));
        }
        let n = self.atoms[0].dim();
        if let Some(a) = self.atoms.iter().find(|a| a.dim() != n) {
            return violated(format!(
                "atom of dimension {} in ensemble of dimension {n}",
                a.dim()
            ));
        }
        if let Some(p) = self.probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return violated(format!("probability {p} is negative or not finite"));
        }
        let total: f64 = self.probs.iter().sum();
        if (total - 1.0).abs() > PROB_TOLERANCE {
            return violated(format!("probabilities sum to {total}"));
        }
        for (j, atom) in self.atoms.iter().enumerate() {
            let e = eigh(atom)?;
            let norm = e.spectral_radius();
            if e.min_eigenvalue() < -psd_tolerance(norm) {
                return violated(format!(
                    "atom {j} is not PSD (min eigenvalue {:e})",
                    e.min_eigenvalue()
                ));
            }
            if norm > self.cap * (1.0 + CAP_TOLERANCE) {
                return violated(format!("atom {j} has norm {norm} above cap {}", self.cap));
            }
        }
        let mean_norm = self.mean_norm()?;
        let target = self.alpha_target * self.cap;
        if (mean_norm - target).abs() > mean_norm_tolerance(self.cap, self.alpha_target) {
            return violated(format!(
                "mean norm {mean_norm} differs from alpha * L = {target}"
            ));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.atoms[0].dim()
    }

    /// Number of atoms `s`.
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[SymMatrix] {
        &self.atoms
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn alpha_target(&self) -> f64 {
        self.alpha_target
    }

    pub fn mean(&self) -> SymMatrix {
        weighted_mean(&self.atoms, &self.probs)
    }

    pub fn mean_norm(&self) -> Result<f64> {
        self.mean().operator_norm()
    }

    /// Largest atom norm.
    pub fn max_atom_norm(&self) -> Result<f64> {
        self.atoms
            .iter()
            .map(|a| a.operator_norm())
            .try_fold(0.0f64, |m, x| Ok(m.max(x?)))
    }

    /// Index of the atom at cumulative probability `u ∈ [0, 1)`.
    fn atom_index(&self, u: f64) -> usize {
        let mut cumulative = 0.0;
        for (j, &p) in self.probs.iter().enumerate() {
            cumulative += p;
            if u < cumulative {
                return j;
            }
        }
        self.probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
    }
}

/// Atom in spectral form, so scaling and clipping act on eigenvalues only.
#[derive(Debug, Clone)]
struct SpectralAtom {
    vectors: Matrix,
    values: Vec<f64>,
}

impl SpectralAtom {
    fn from_matrix(a: &SymMatrix) -> Result<Self> {
        let e = eigh(a)?;
        Ok(SpectralAtom {
            vectors: e.eigenvectors,
            values: e.eigenvalues,
        })
    }

    fn at_scale(&self, t: f64, cap: f64) -> SymMatrix {
        let d: Vec<f64> = self
            .values
            .iter()
            .map(|&x| (t * x.max(0.0)).min(cap))
            .collect();
        self.vectors.conjugate_diag(&d)
    }

    fn scale_and_clip(&mut self, t: f64, cap: f64) {
        for x in &mut self.values {
            *x = (t * x.max(0.0)).min(cap);
        }
    }
}

/// Moves atoms onto `{‖atom‖ ≤ L, ‖Σ p_j atom_j‖ = α L}`.
///
/// Negative eigenvalues are clamped to zero first. Then all atoms are scaled
/// so the mean norm hits `α L` and any eigenvalue above `L` is clipped back to
/// the cap, for at most [`PROJECTION_ROUNDS`] rounds. If the loop has not
/// settled, the common scale is found by bisection instead: the mean of the
/// clipped atoms is Loewner-monotone in the scale, so its norm is too.
pub fn project_to_constraints(
    atoms: &[SymMatrix],
    probs: &[f64],
    cap: f64,
    alpha: f64,
) -> std::result::Result<Vec<SymMatrix>, String> {
    if atoms.is_empty() {
        return Err("no atoms".into());
    }
    let n = atoms[0].dim();
    if alpha == 0.0 {
        return Ok(vec![SymMatrix::zeros(n); atoms.len()]);
    }
    let target = alpha * cap;
    let tol = mean_norm_tolerance(cap, alpha);
    let mut spectral: Vec<SpectralAtom> = atoms
        .iter()
        .map(SpectralAtom::from_matrix)
        .collect::<Result<_>>()
        .map_err(|e| e.to_string())?;
    for s in &mut spectral {
        s.scale_and_clip(1.0, cap);
    }
    let mean_norm_at = |spectral: &[SpectralAtom], t: f64| -> std::result::Result<f64, String> {
        let current: Vec<SymMatrix> = spectral.iter().map(|s| s.at_scale(t, cap)).collect();
        weighted_mean(&current, probs)
            .operator_norm()
            .map_err(|e| e.to_string())
    };

    for _ in 0..PROJECTION_ROUNDS {
        let m = mean_norm_at(&spectral, 1.0)?;
        if m == 0.0 {
            return Err("all atoms vanish on the support, mean cannot reach alpha * L".into());
        }
        if (m - target).abs() <= tol {
            return shrink_to_target(
                spectral.iter().map(|s| s.at_scale(1.0, cap)).collect(),
                probs,
                target,
            );
        }
        let t = target / m;
        for s in &mut spectral {
            s.scale_and_clip(t, cap);
        }
    }

    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut steps = 0;
    while mean_norm_at(&spectral, hi)? < target - tol {
        lo = hi;
        hi *= 2.0;
        steps += 1;
        if steps > 1100 {
            return Err(format!(
                "mean norm saturates below alpha * L = {target}; atoms share a kernel"
            ));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let m = mean_norm_at(&spectral, mid)?;
        if (m - target).abs() <= tol {
            return shrink_to_target(
                spectral.iter().map(|s| s.at_scale(mid, cap)).collect(),
                probs,
                target,
            );
        }
        if m < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let m = mean_norm_at(&spectral, hi)?;
    if (m - target).abs() <= tol {
        return shrink_to_target(
            spectral.iter().map(|s| s.at_scale(hi, cap)).collect(),
            probs,
            target,
        );
    }
    Err(format!(
        "projection stalled at mean norm {m}, target {target}"
    ))
}

/// Scales atoms down uniformly when the mean norm overshoots `target`, so the
/// accepted mean never exceeds `αL` by more than rounding. Scaling by a factor
/// below one keeps atoms PSD and under the cap.
fn shrink_to_target(
    atoms: Vec<SymMatrix>,
    probs: &[f64],
    target: f64,
) -> std::result::Result<Vec<SymMatrix>, String> {
    let m = weighted_mean(&atoms, probs)
        .operator_norm()
        .map_err(|e| e.to_string())?;
    if m <= target {
        return Ok(atoms);
    }
    let t = target / m;
    Ok(atoms.iter().map(|a| a.scaled(t)).collect())
}

/// Random admissible ensemble with `s` atoms, deterministic in `seed`.
///
/// Atoms start as `Q D Qᵀ` with `D` uniform on `[0, L]` and `Q` a product of
/// random rotations; probabilities are uniform on the simplex.
pub fn sample_constrained_ensemble(
    n: usize,
    s: usize,
    cap: f64,
    alpha: f64,
    seed: u64,
) -> Result<FiniteEnsemble> {
    if n == 0 || s == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and s >= 1".into()));
    }
    if !(cap.is_finite() && cap > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "cap {cap} must be positive"
        )));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha {alpha} outside [0, 1]"
        )));
    }
    let mut r = rng::stream(seed, &[0x5A4D_504C]);
    let probs = rng::simplex(&mut r, s);
    let raw: Vec<SymMatrix> = (0..s).map(|_| rng::random_psd(&mut r, n, cap)).collect();
    let atoms = project_to_constraints(&raw, &probs, cap, alpha)
        .map_err(|reason| Error::SamplerFailed { seed, reason })?;
    FiniteEnsemble::new(atoms, probs, cap, alpha).map_err(|e| match e {
        Error::ConstraintViolated(reason) => Error::SamplerFailed { seed, reason },
        other => other.with_seed(seed),
    })
}

/// Independent members sharing a dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FamilyDocument", into = "FamilyDocument")]
pub struct EnsembleFamily {
    dim: usize,
    members: Vec<FiniteEnsemble>,
}

impl EnsembleFamily {
    pub fn new(members: Vec<FiniteEnsemble>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::InvalidParameter("family needs at least one member".into()))?;
        let dim = first.dim();
        if let Some(m) = members.iter().find(|m| m.dim() != dim) {
            return Err(Error::Dimension {
                expected: dim,
                found: m.dim(),
            });
        }
        Ok(EnsembleFamily { dim, members })
    }

    /// Extremal family `X_k ∈ {L_k I, 0}` with `P(X_k = L_k I) = α_k`.
    pub fn scalar_bernoulli(dim: usize, params: &BernoulliParams) -> Result<Self> {
        Self::new(
            params
                .iter()
                .map(|(cap, alpha)| FiniteEnsemble::scalar_bernoulli(dim, cap, alpha))
                .collect::<Result<_>>()?,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[FiniteEnsemble] {
        &self.members
    }

    pub fn into_members(self) -> Vec<FiniteEnsemble> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Caps and target ratios of the members.
    pub fn params(&self) -> Result<BernoulliParams> {
        BernoulliParams::new(
            self.members.iter().map(|m| m.cap()).collect(),
            self.members.iter().map(|m| m.alpha_target()).collect(),
        )
    }

    pub fn support_size(&self) -> u128 {
        self.members.iter().map(|m| m.len() as u128).product()
    }

    pub fn validate(&self) -> Result<()> {
        self.members.iter().try_for_each(|m| m.validate())
    }

    /// `E g(X_1 + ⋯ + X_N)` summed exactly over the product support.
    pub fn expectation<F>(&self, g: F) -> Result<f64>
    where
        F: Fn(&SymMatrix) -> f64 + Sync,
    {
        let size = self.support_size();
        if size > SUPPORT_BUDGET {
            return Err(Error::BudgetExceeded {
                what: "product support",
                requested: size,
                limit: SUPPORT_BUDGET,
            });
        }
        let size = size as usize;
        let radices: Vec<usize> = self.members.iter().map(|m| m.len()).collect();
        let term = |mut index: usize| -> f64 {
            let mut prob = 1.0;
            let mut total = SymMatrix::zeros(self.dim);
            for (member, &radix) in self.members.iter().zip(&radices) {
                let j = index % radix;
                index /= radix;
                prob *= member.probs[j];
                if prob == 0.0 {
                    return 0.0;
                }
                total.add_assign(&member.atoms[j]);
            }
            prob * g(&total)
        };
        const CHUNK: usize = 4096;
        if size <= CHUNK {
            return Ok((0..size).map(term).collect::<CompensatedSum>().value());
        }
        let partials: Vec<f64> = (0..size.div_ceil(CHUNK))
            .into_par_iter()
            .map(|c| {
                (c * CHUNK..((c + 1) * CHUNK).min(size))
                    .map(term)
                    .collect::<CompensatedSum>()
                    .value()
            })
            .collect();
        Ok(partials.into_iter().collect::<CompensatedSum>().value())
    }

    /// Exact `E tr(X_1 + ⋯ + X_N)^p`.
    pub fn exact_trace_moment(&self, p: usize) -> Result<f64> {
        check_order(p)?;
        self.expectation(|s| s.trace_pow(p as u32))
    }

    /// Draws one realization of `X_1 + ⋯ + X_N`.
    pub fn draw_sum<R: Rng + ?Sized>(&self, rng: &mut R) -> SymMatrix {
        let mut total = SymMatrix::zeros(self.dim);
        for member in &self.members {
            let j = member.atom_index(rng.random::<f64>());
            total.add_assign(&member.atoms[j]);
        }
        total
    }

    /// Monte Carlo estimate of `E tr(X_1 + ⋯ + X_N)^p`.
    ///
    /// Samples are split into fixed chunks with one stream per chunk, and
    /// chunk statistics are merged in index order, so the result depends on
    /// the seed only.
    pub fn mc_trace_moment(&self, p: usize, samples: usize, seed: u64) -> Result<McEstimate> {
        check_order(p)?;
        if samples < 100 {
            return Err(Error::InvalidParameter(format!(
                "need at least 100 samples, got {samples}"
            )));
        }
        let chunks: Vec<RunningStats> = (0..samples.div_ceil(MC_CHUNK))
            .into_par_iter()
            .map(|c| {
                let mut r = rng::stream(seed, &[0x4D43, c as u64]);
                let mut stats = RunningStats::default();
                for _ in c * MC_CHUNK..((c + 1) * MC_CHUNK).min(samples) {
                    stats.push(self.draw_sum(&mut r).trace_pow(p as u32));
                }
                stats
            })
            .collect();
        let stats = chunks
            .into_iter()
            .fold(RunningStats::default(), |acc, s| acc.merge(&s));
        let variance = if stats.count > 1 {
            stats.m2 / (stats.count - 1) as f64
        } else {
            0.0
        };
        Ok(McEstimate {
            estimate: stats.mean,
            std_error: (variance / stats.count as f64).sqrt(),
            samples,
        })
    }
}

fn check_order(p: usize) -> Result<()> {
    if p == 0 || p > MAX_MOMENT_ORDER {
        return Err(Error::InvalidParameter(format!(
            "moment order {p} outside 1..={MAX_MOMENT_ORDER}"
        )));
    }
    Ok(())
}

/// `E tr(X_1 + ⋯ + X_N)^p` summed over the product support.
pub fn exact_trace_moment(family: &EnsembleFamily, p: usize) -> Result<f64> {
    family.exact_trace_moment(p)
}

pub fn mc_trace_moment(
    family: &EnsembleFamily,
    p: usize,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    family.mc_trace_moment(p, samples, seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Welford accumulator with Chan's pairwise merge.
#[derive(Debug, Clone, Copy, Default)]
struct RunningStats {
    count: usize,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: &RunningStats) -> RunningStats {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * self.count as f64 * other.count as f64 / count as f64;
        RunningStats { count, mean, m2 }
    }
}

/// On-disk form of a family: atoms as nested row-major arrays.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub dim: usize,
    pub members: Vec<MemberDocument>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MemberDocument {
    pub atoms: Vec<Vec<Vec<f64>>>,
    pub probs: Vec<f64>,
    #[serde(rename = "L_cap")]
    pub cap: f64,
    pub alpha_target: f64,
}

impl From<EnsembleFamily> for FamilyDocument {
    fn from(family: EnsembleFamily) -> Self {
        FamilyDocument {
            dim: family.dim,
            members: family
                .members
                .into_iter()
                .map(|m| MemberDocument {
                    atoms: m.atoms.iter().map(|a| a.rows()).collect(),
                    probs: m.probs,
                    cap: m.cap,
                    alpha_target: m.alpha_target,
                })
                .collect(),
        }
    }
}

impl TryFrom<FamilyDocument> for EnsembleFamily {
    type Error = Error;

    fn try_from(doc: FamilyDocument) -> Result<Self> {
        let members = doc
            .members
            .into_iter()
            .map(|m| {
                let atoms = m
                    .atoms
                    .iter()
                    .map(|rows| SymMatrix::from_rows(rows))
                    .collect::<Result<Vec<_>>>()?;
                FiniteEnsemble::new(atoms, m.probs, m.cap, m.alpha_target)
            })
            .collect::<Result<Vec<_>>>()?;
        let family = EnsembleFamily::new(members)?;
        if family.dim != doc.dim {
            return Err(Error::Dimension {
                expected: doc.dim,
                found: family.dim,
            });
        }
        Ok(family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_one_reaches_the_cap() {
        let e = sample_constrained_ensemble(3, 2, 1.0, 1.0, 5).unwrap();
        assert!((e.mean_norm().unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn alpha_zero_gives_zero_atoms() {
        let e = sample_constrained_ensemble(3, 3, 2.0, 0.0, 1).unwrap();
        assert!(e.atoms().iter().all(|a| a.max_abs() == 0.0));
    }

    #[test]
    fn sampler_rejects_bad_parameters() {
        assert!(sample_constrained_ensemble(0, 1, 1.0, 0.5, 0).is_err());
        assert!(sample_constrained_ensemble(2, 1, -1.0, 0.5, 0).is_err());
        assert!(sample_constrained_ensemble(2, 1, 1.0, 1.5, 0).is_err());
    }

    #[test]
    fn projection_fails_when_atoms_vanish() {
        let atoms = vec![SymMatrix::zeros(2)];
        assert!(project_to_constraints(&atoms, &[1.0], 1.0, 0.5).is_err());
    }

    #[test]
    fn constructor_rejects_violations() {
        let over_cap = FiniteEnsemble::new(vec![SymMatrix::scalar(2, 2.0)], vec![1.0], 1.0, 1.0);
        assert!(matches!(over_cap, Err(Error::ConstraintViolated(_))));
        let bad_probs = FiniteEnsemble::new(vec![SymMatrix::identity(2)], vec![0.9], 1.0, 0.9);
        assert!(bad_probs.is_err());
        let wrong_mean = FiniteEnsemble::new(vec![SymMatrix::identity(2)], vec![1.0], 1.0, 0.5);
        assert!(wrong_mean.is_err());
        let indefinite =
            FiniteEnsemble::new(vec![SymMatrix::diag(&[0.5, -0.5])], vec![1.0], 1.0, 0.5);
        assert!(indefinite.is_err());
    }

    #[test]
    fn deterministic_member_moment() {
        let a = SymMatrix::diag(&[0.5, 1.0, 0.25]);
        let family =
            EnsembleFamily::new(vec![FiniteEnsemble::deterministic(a.clone(), 1.0).unwrap()])
                .unwrap();
        for p in 1..=5 {
            let v = family.exact_trace_moment(p).unwrap();
            assert!((v - a.trace_pow(p as u32)).abs() < 1e-15);
        }
        let mc = family.mc_trace_moment(3, 500, 9).unwrap();
        assert_eq!(mc.std_error, 0.0);
        assert!((mc.estimate - a.trace_pow(3)).abs() < 1e-14);
    }

    #[test]
    fn support_budget_is_enforced() {
        let member = FiniteEnsemble::new(vec![SymMatrix::identity(1); 10], vec![0.1; 10], 1.0, 1.0);
        let member = member.unwrap();
        let family = EnsembleFamily::new(vec![member; 7]).unwrap();
        assert!(matches!(
            family.exact_trace_moment(2),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let a = FiniteEnsemble::scalar_bernoulli(2, 1.0, 0.5).unwrap();
        let b = FiniteEnsemble::scalar_bernoulli(3, 1.0, 0.5).unwrap();
        assert!(matches!(
            EnsembleFamily::new(vec![a, b]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn mc_needs_enough_samples() {
        let family =
            EnsembleFamily::scalar_bernoulli(2, &BernoulliParams::uniform(1, 1.0, 0.5).unwrap())
                .unwrap();
        assert!(family.mc_trace_moment(2, 99, 0).is_err());
    }
}

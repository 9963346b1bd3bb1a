//! Single-model types: the finite kernel M : Π → Δ(ℛ × 𝒪) and decision
//! distributions p ∈ Δ(Π).

use crate::{check_pmf, ModelError};
use serde::{Deserialize, Serialize};

// ── FiniteModel ──────────────────────────────────────────────────────────

/// A finite model M : Π → Δ(ℛ × 𝒪).
///
/// Rewards live on a shared strictly-increasing support grid in [0,1];
/// observations are an index alphabet where `obs_count = 0` denotes the
/// null-observation setting (a single dummy symbol ⊥). The kernel stores,
/// for every decision, a joint pmf over `(reward index, observation index)`
/// flattened row-major as `r_idx * obs_width + o_idx`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteModel {
    reward_support: Vec<f64>,
    obs_count: usize,
    kernel: Vec<Vec<f64>>,
    /// Cached mean rewards f^M(π), derived from the kernel.
    mean: Vec<f64>,
    /// Cached (π_M, f^M(π_M)) with lowest-index tie-breaking.
    best: (usize, f64),
}

impl FiniteModel {
    /// Builds a model from a reward support, observation count, and
    /// per-decision joint pmfs over (reward × observation).
    pub fn new(
        reward_support: Vec<f64>,
        obs_count: usize,
        kernel: Vec<Vec<f64>>,
    ) -> Result<Self, ModelError> {
        if reward_support.is_empty() {
            return Err(ModelError::InvalidSupport("empty support".into()));
        }
        for &r in &reward_support {
            if !r.is_finite() || !(0.0..=1.0).contains(&r) {
                return Err(ModelError::InvalidSupport(format!(
                    "value {r} outside [0,1]"
                )));
            }
        }
        if reward_support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ModelError::InvalidSupport(
                "support must be strictly increasing".into(),
            ));
        }
        if kernel.is_empty() {
            return Err(ModelError::InvalidParameter {
                name: "kernel",
                reason: "at least one decision required".into(),
            });
        }
        let width = reward_support.len() * obs_count.max(1);
        for (d, row) in kernel.iter().enumerate() {
            if row.len() != width {
                return Err(ModelError::SpaceMismatch(format!(
                    "kernel row {d} has length {}, expected {width}",
                    row.len()
                )));
            }
            check_pmf(&format!("kernel row for decision {d}"), row)?;
        }
        let obs_width = obs_count.max(1);
        let mean: Vec<f64> = kernel
            .iter()
            .map(|row| {
                reward_support
                    .iter()
                    .enumerate()
                    .map(|(ri, &r)| {
                        let mass: f64 = row[ri * obs_width..(ri + 1) * obs_width].iter().sum();
                        r * mass
                    })
                    .sum()
            })
            .collect();
        let best = argmax_lowest(&mean);
        Ok(FiniteModel {
            reward_support,
            obs_count,
            kernel,
            mean,
            best,
        })
    }

    /// Number of decisions |Π|.
    pub fn decision_count(&self) -> usize {
        self.kernel.len()
    }

    /// Reward support grid.
    pub fn reward_support(&self) -> &[f64] {
        &self.reward_support
    }

    /// Declared observation count (0 = null-observation setting).
    pub fn obs_count(&self) -> usize {
        self.obs_count
    }

    /// Effective observation alphabet width (≥ 1).
    pub fn obs_width(&self) -> usize {
        self.obs_count.max(1)
    }

    /// Number of joint outcomes per decision.
    pub fn outcome_count(&self) -> usize {
        self.reward_support.len() * self.obs_width()
    }

    /// Joint pmf over (reward × observation) for one decision.
    pub fn kernel_row(&self, decision: usize) -> &[f64] {
        &self.kernel[decision]
    }

    /// P(r = support[r_idx], o = o_idx | π = decision).
    pub fn prob(&self, decision: usize, r_idx: usize, o_idx: usize) -> f64 {
        self.kernel[decision][r_idx * self.obs_width() + o_idx]
    }

    /// Mean reward f^M(π) = Σ r·P(r, o | π).
    pub fn mean_reward(&self, decision: usize) -> Result<f64, ModelError> {
        self.mean
            .get(decision)
            .copied()
            .ok_or(ModelError::IndexOutOfRange {
                space: "decision",
                index: decision,
                size: self.mean.len(),
            })
    }

    /// All mean rewards (f^M(π))_{π ∈ Π}.
    pub fn means(&self) -> &[f64] {
        &self.mean
    }

    /// (π_M, f^M(π_M)); ties broken by lowest decision index.
    pub fn best_decision(&self) -> (usize, f64) {
        self.best
    }

    /// Suboptimality gap g^M(π) = f^M(π_M) − f^M(π).
    pub fn gap(&self, decision: usize) -> Result<f64, ModelError> {
        Ok(self.best.1 - self.mean_reward(decision)?)
    }

    /// All gaps (g^M(π))_{π ∈ Π}.
    pub fn gaps(&self) -> Vec<f64> {
        self.mean.iter().map(|&f| self.best.1 - f).collect()
    }

    /// E_{π∼p}[g^M(π)] ≥ 0.
    pub fn suboptimality(&self, p: &DecisionDistribution) -> Result<f64, ModelError> {
        if p.len() != self.decision_count() {
            return Err(ModelError::SpaceMismatch(format!(
                "distribution over {} decisions, model has {}",
                p.len(),
                self.decision_count()
            )));
        }
        Ok(p.probs()
            .iter()
            .zip(&self.mean)
            .map(|(&pi, &f)| pi * (self.best.1 - f))
            .sum())
    }

    /// True when `self` and `other` share decision count, reward support
    /// (exactly), and observation count.
    pub fn same_spaces(&self, other: &FiniteModel) -> bool {
        self.decision_count() == other.decision_count()
            && self.obs_count == other.obs_count
            && self.reward_support == other.reward_support
    }
}

fn argmax_lowest(values: &[f64]) -> (usize, f64) {
    let mut best = (0, values[0]);
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > best.1 {
            best = (i, v);
        }
    }
    best
}

// ── DecisionDistribution ─────────────────────────────────────────────────

/// A randomization distribution p ∈ Δ(Π) over decisions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionDistribution {
    probs: Vec<f64>,
}

impl DecisionDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self, ModelError> {
        check_pmf("decision distribution", &probs)?;
        Ok(DecisionDistribution { probs })
    }

    /// Point mass 𝕀_{π = decision}.
    pub fn point_mass(decision: usize, decision_count: usize) -> Result<Self, ModelError> {
        if decision >= decision_count {
            return Err(ModelError::IndexOutOfRange {
                space: "decision",
                index: decision,
                size: decision_count,
            });
        }
        let mut probs = vec![0.0; decision_count];
        probs[decision] = 1.0;
        Ok(DecisionDistribution { probs })
    }

    /// Uniform distribution over Π.
    pub fn uniform(decision_count: usize) -> Result<Self, ModelError> {
        if decision_count == 0 {
            return Err(ModelError::InvalidParameter {
                name: "decision_count",
                reason: "must be positive".into(),
            });
        }
        Ok(DecisionDistribution {
            probs: vec![1.0 / decision_count as f64; decision_count],
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Draws a decision index using the supplied generator.
    pub fn sample(&self, rng: &mut crate::rng::SplitRng) -> usize {
        rng.sample_pmf(&self.probs)
    }
}

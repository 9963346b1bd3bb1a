//! Constructors for the standard test-bed classes.
//!
//! * [`make_mab`] / [`make_mab_class`] — Bernoulli bandit models and the
//!   common-gap family {M_i} with f_i(π) = ½ + Δ·1{π = i}.
//! * [`make_revealing_class`] — the A+1-decision class with a zero-reward
//!   revealing decision π∘ that discloses the best arm with probability β.
//! * [`make_union_gap_class`] — the bandit family whose extra decision π∘
//!   reveals *every* arm at once through a product observation, used to
//!   separate proper- and hull-referenced constrained values.
//! * [`make_random_class`] — seeded random classes for property sweeps.

use crate::rng::SplitRng;
use crate::{FiniteModel, ModelClass, ModelError};

/// Bernoulli bandit: decision π yields reward 1 with probability `means[π]`.
/// No observations beyond the reward.
pub fn make_mab(means: &[f64]) -> Result<FiniteModel, ModelError> {
    if means.is_empty() {
        return Err(ModelError::InvalidParameter {
            name: "means",
            reason: "at least one arm required".into(),
        });
    }
    for &m in means {
        if !m.is_finite() || !(0.0..=1.0).contains(&m) {
            return Err(ModelError::InvalidParameter {
                name: "means",
                reason: format!("mean {m} outside [0,1]"),
            });
        }
    }
    let kernel = means.iter().map(|&m| vec![1.0 - m, m]).collect();
    FiniteModel::new(vec![0.0, 1.0], 0, kernel)
}

/// The common-gap bandit class {M_i}_{i∈[A]} with f_i(π) = ½ + Δ·1{π = i}.
pub fn make_mab_class(gap: f64, arms: usize) -> Result<ModelClass, ModelError> {
    if !(gap > 0.0 && gap <= 0.5) {
        return Err(ModelError::InvalidParameter {
            name: "gap",
            reason: format!("Δ must lie in (0, 1/2], got {gap}"),
        });
    }
    if arms < 2 {
        return Err(ModelError::InvalidParameter {
            name: "arms",
            reason: "at least two arms required".into(),
        });
    }
    let mut models = Vec::with_capacity(arms);
    for i in 0..arms {
        let means: Vec<f64> = (0..arms)
            .map(|p| if p == i { 0.5 + gap } else { 0.5 })
            .collect();
        models.push(make_mab(&means)?);
    }
    ModelClass::new(models)
}

/// The revealing class M^{α,β}.
///
/// Decisions are the A arms (indices 0..A−1) plus the revealing decision π∘
/// (index A). Observations are ⊥ (index 0) and arm identities (index i+1
/// announces arm i); rewards are deterministic, on the support
/// {0, ½, ½+α}.
///
/// * M_{α,i} (i ∈ [A]): f(π) = ½ + α·1{π = i} on arms with o = ⊥;
///   at π∘ the reward is 0 and o announces i with probability β, else ⊥.
/// * M̃ (appended last when `with_reference`): f ≡ ½ on arms, 0 at π∘, and
///   at π∘ the announcement is uniform over arms with total probability β.
pub fn make_revealing_class(
    alpha: f64,
    beta: f64,
    arms: usize,
    with_reference: bool,
) -> Result<ModelClass, ModelError> {
    if !(alpha > 0.0 && alpha <= 0.5) {
        return Err(ModelError::InvalidParameter {
            name: "alpha",
            reason: format!("α must lie in (0, 1/2], got {alpha}"),
        });
    }
    if !(beta > 0.0 && beta < 1.0) {
        return Err(ModelError::InvalidParameter {
            name: "beta",
            reason: format!("β must lie in (0, 1), got {beta}"),
        });
    }
    if arms < 2 {
        return Err(ModelError::InvalidParameter {
            name: "arms",
            reason: "A ≥ 2 required".into(),
        });
    }
    let support = vec![0.0, 0.5, 0.5 + alpha];
    let obs_count = arms + 1; // ⊥ plus one announcement per arm
    let width = support.len() * obs_count;
    let reveal = arms; // index of π∘
    let cell = |r_idx: usize, o_idx: usize| r_idx * obs_count + o_idx;

    let mut models = Vec::with_capacity(arms + 1);
    let mut labels = Vec::with_capacity(arms + 1);
    for i in 0..arms {
        let mut kernel = vec![vec![0.0; width]; arms + 1];
        for (pi, row) in kernel.iter_mut().enumerate() {
            if pi == reveal {
                // Reward 0; announce i with probability β, else ⊥.
                row[cell(0, i + 1)] = beta;
                row[cell(0, 0)] = 1.0 - beta;
            } else {
                let r_idx = if pi == i { 2 } else { 1 };
                row[cell(r_idx, 0)] = 1.0;
            }
        }
        models.push(FiniteModel::new(support.clone(), obs_count, kernel)?);
        labels.push(format!("M_a{i}"));
    }
    if with_reference {
        let mut kernel = vec![vec![0.0; width]; arms + 1];
        for (pi, row) in kernel.iter_mut().enumerate() {
            if pi == reveal {
                for o in 0..arms {
                    row[cell(0, o + 1)] = beta / arms as f64;
                }
                row[cell(0, 0)] = 1.0 - beta;
            } else {
                row[cell(1, 0)] = 1.0;
            }
        }
        models.push(FiniteModel::new(support.clone(), obs_count, kernel)?);
        labels.push("Mtilde".into());
    }
    ModelClass::with_labels(models, labels)
}

/// The union-gap counterexample family, truncated to `arms` arms.
///
/// Decisions are the A arms plus π∘ (index A). Arm π pays the deterministic
/// reward ½ + α·1{π = a} under model M_a with observation ⊥. The decision
/// π∘ pays 0 and emits the full vector o ∈ {0,1}^A with independent
/// coordinates o_i ∼ Ber(½ + α·1{a = i}), encoded as a bitmask (observation
/// index mask+1; index 0 is ⊥). The observation alphabet is exponential in
/// `arms`, so `arms` is capped at 12.
pub fn make_union_gap_class(alpha: f64, arms: usize) -> Result<ModelClass, ModelError> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(ModelError::InvalidParameter {
            name: "alpha",
            reason: format!("α must lie in (0, 1/2), got {alpha}"),
        });
    }
    if !(2..=12).contains(&arms) {
        return Err(ModelError::InvalidParameter {
            name: "arms",
            reason: "2 ≤ A ≤ 12 required (alphabet is 2^A)".into(),
        });
    }
    let support = vec![0.0, 0.5, 0.5 + alpha];
    let masks = 1usize << arms;
    let obs_count = masks + 1; // ⊥ plus one symbol per bitmask
    let width = support.len() * obs_count;
    let reveal = arms;
    let cell = |r_idx: usize, o_idx: usize| r_idx * obs_count + o_idx;

    let mut models = Vec::with_capacity(arms);
    for a in 0..arms {
        let mut kernel = vec![vec![0.0; width]; arms + 1];
        for (pi, row) in kernel.iter_mut().enumerate() {
            if pi == reveal {
                for mask in 0..masks {
                    let mut p = 1.0;
                    for i in 0..arms {
                        let mean = if i == a { 0.5 + alpha } else { 0.5 };
                        p *= if mask >> i & 1 == 1 { mean } else { 1.0 - mean };
                    }
                    row[cell(0, mask + 1)] = p;
                }
                // Deterministic renormalization of the residual onto the
                // all-zeros mask keeps the row an exact pmf.
                let sum: f64 = row.iter().sum();
                row[cell(0, 1)] += 1.0 - sum;
            } else {
                let r_idx = if pi == a { 2 } else { 1 };
                row[cell(r_idx, 0)] = 1.0;
            }
        }
        models.push(FiniteModel::new(support.clone(), obs_count, kernel)?);
    }
    ModelClass::new(models)
}

/// Seeded random class: `decisions` decisions, `models` models, a uniform
/// reward grid of `reward_grid` points in [0,1], and `obs` observations
/// (0 for the null-observation setting). Rows are uniform draws from the
/// outcome simplex; the result is a deterministic function of `seed`.
pub fn make_random_class(
    seed: u64,
    decisions: usize,
    models: usize,
    reward_grid: usize,
    obs: usize,
) -> Result<ModelClass, ModelError> {
    if decisions == 0 || models == 0 {
        return Err(ModelError::InvalidParameter {
            name: "decisions/models",
            reason: "must be positive".into(),
        });
    }
    if reward_grid < 2 {
        return Err(ModelError::InvalidParameter {
            name: "reward_grid",
            reason: "at least two support points required".into(),
        });
    }
    let support: Vec<f64> = (0..reward_grid)
        .map(|i| i as f64 / (reward_grid - 1) as f64)
        .collect();
    let width = reward_grid * obs.max(1);
    let mut root = SplitRng::root(seed);
    let mut out = Vec::with_capacity(models);
    for m in 0..models {
        let mut model_rng = root.child(m as u64);
        let kernel: Vec<Vec<f64>> = (0..decisions)
            .map(|d| model_rng.child(d as u64).dirichlet_uniform(width))
            .collect();
        out.push(FiniteModel::new(support.clone(), obs, kernel)?);
    }
    // Touch the root stream so nested and sequential derivations based on
    // the same seed cannot silently collide with future extensions.
    let _ = root.next_u64();
    ModelClass::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mab_class_means() {
        // Δ = 0.2, A = 2 gives f-profiles (0.7, 0.5) and (0.5, 0.7).
        let class = make_mab_class(0.2, 2).unwrap();
        assert_eq!(class.get(0).unwrap().means(), &[0.7, 0.5]);
        assert_eq!(class.get(1).unwrap().means(), &[0.5, 0.7]);
        assert!(make_mab_class(0.0, 2).is_err());
        assert!(make_mab_class(0.2, 1).is_err());
        assert!(make_mab_class(0.6, 2).is_err());
    }

    #[test]
    fn revealing_class_structure() {
        // Example with α = 0.25, β = 0.5, A = 2: at π∘ model M_{α,1} emits
        // o = announcement of arm 1 w.p. 0.5, ⊥ w.p. 0.5, with reward 0.
        let class = make_revealing_class(0.25, 0.5, 2, true).unwrap();
        assert_eq!(class.len(), 3);
        let m1 = class.get(1).unwrap();
        let reveal = 2;
        assert_eq!(m1.best_decision(), (1, 0.75));
        assert!((m1.mean_reward(reveal).unwrap()).abs() < 1e-15);
        // Reward index 0 (value 0) × observation index 2 (announce arm 1).
        assert!((m1.prob(reveal, 0, 2) - 0.5).abs() < 1e-15);
        assert!((m1.prob(reveal, 0, 0) - 0.5).abs() < 1e-15);

        // M̃ announces uniformly: 0.25 per arm at β = 0.5.
        let mt = class.get(2).unwrap();
        assert!((mt.prob(reveal, 0, 1) - 0.25).abs() < 1e-15);
        assert!((mt.prob(reveal, 0, 2) - 0.25).abs() < 1e-15);
        assert_eq!(mt.best_decision(), (0, 0.5));

        assert_eq!(make_revealing_class(0.25, 0.5, 2, false).unwrap().len(), 2);
        assert!(make_revealing_class(0.25, 1.0, 2, true).is_err());
        assert!(make_revealing_class(0.7, 0.5, 2, true).is_err());
    }

    #[test]
    fn union_gap_class_structure() {
        let class = make_union_gap_class(0.25, 3).unwrap();
        assert_eq!(class.len(), 3);
        let m0 = class.get(0).unwrap();
        assert_eq!(m0.decision_count(), 4);
        assert_eq!(m0.best_decision(), (0, 0.75));
        assert!(m0.mean_reward(3).unwrap().abs() < 1e-15);
        // P(o = mask 0b001 | π∘) under M_0 = (½+α)·(½)·(½) = 0.09375.
        assert!((m0.prob(3, 0, 0b001 + 1) - 0.75 * 0.25).abs() < 1e-12);
        assert!(make_union_gap_class(0.25, 13).is_err());
    }

    #[test]
    fn random_class_deterministic_in_seed() {
        let a = make_random_class(99, 4, 3, 3, 2).unwrap();
        let b = make_random_class(99, 4, 3, 3, 2).unwrap();
        assert_eq!(a, b);
        let c = make_random_class(100, 4, 3, 3, 2).unwrap();
        assert_ne!(a, c);
        assert_eq!(a.decision_count(), 4);
        assert_eq!(a.len(), 3);
        assert_eq!(a.reward_support(), &[0.0, 0.5, 1.0]);
    }
}

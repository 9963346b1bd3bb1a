//! Exact transcript-law comparison for the chain-rule upper bound.
//!
//! For a fixed T-round algorithm (a deterministic map from histories to
//! decision distributions) and two environments M, M̄, the laws ℙ^M and
//! ℙ^{M̄} of the full transcript (π¹,r¹,o¹,…,π^T,r^T,o^T) are finite. This
//! module enumerates them exactly and checks
//!
//!   D²_H(ℙ^M, ℙ^{M̄}) ≤ C(T) · T · E_{π∼q̄}[D²_H(M(π), M̄(π))],
//!
//! where q̄ is the algorithm's average decision distribution under M̄ and
//! C(T) = 2⁸·log(T ∧ V(𝓜)). The report also carries the slack under the
//! bare log(T ∧ V(𝓜)) convention, since the two appear side by side in the
//! literature; the pass/fail verdict uses the 2⁸ version. Logs are floored
//! at 1 so the single-round case degrades to plain data processing.

use crate::DivergenceError;
use model_core::{
    density_ratio_bound, DecisionDistribution, DensityRatioBound, FiniteModel, ModelClass,
};
use serde::Serialize;

/// One observed interaction step as seen by the algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub decision: usize,
    pub reward_idx: usize,
    pub obs_idx: usize,
}

/// History-dependent algorithm: maps the transcript so far to the next
/// decision distribution.
pub type AlgorithmFn<'a> = dyn Fn(&[StepRecord]) -> DecisionDistribution + 'a;

/// Outcome of [`tv_ub_check`].
#[derive(Debug, Clone, Serialize)]
pub struct TvUbReport {
    /// D²_H(ℙ^M, ℙ^{M̄}), exact.
    pub lhs: f64,
    /// E_{π∼q̄}[D²_H(M(π), M̄(π))], exact given q̄.
    pub expected_hellinger: f64,
    /// Average decision distribution under ℙ^{M̄}.
    pub qbar: Vec<f64>,
    /// log(T ∧ V(𝓜)), floored at 1.
    pub c_statement: f64,
    /// 2⁸ · log(T ∧ V(𝓜)), floored logs.
    pub c_proof: f64,
    pub rhs_statement: f64,
    pub rhs_proof: f64,
    /// rhs − lhs under each convention.
    pub slack_statement: f64,
    pub slack_proof: f64,
    /// Whether the asserted (proof-convention) bound holds.
    pub pass: bool,
    /// Number of transcript branches enumerated.
    pub branches: u64,
}

/// Exhaustively verifies the chain-rule bound for a T-round algorithm.
///
/// `class` supplies V(𝓜); `model` and `reference` are the two environments
/// (either may be improper, i.e. outside the class, as long as spaces
/// match). Refuses when the transcript tree exceeds `budget` branches
/// ((|Π|·outcomes)^T as a crude bound).
pub fn tv_ub_check(
    class: &ModelClass,
    model: &FiniteModel,
    reference: &FiniteModel,
    algorithm: &AlgorithmFn<'_>,
    t: usize,
    budget: u128,
) -> Result<TvUbReport, DivergenceError> {
    if !model.same_spaces(reference) || !class.admits(model) {
        return Err(DivergenceError::SpaceMismatch);
    }
    if t == 0 {
        return Err(DivergenceError::NotPmf("T must be positive".into()));
    }
    let per_round = (model.decision_count() as u128) * (model.outcome_count() as u128);
    let size = per_round.checked_pow(t as u32).unwrap_or(u128::MAX);
    if size > budget {
        return Err(DivergenceError::TooLarge { size, budget });
    }

    let mut walker = Walker {
        model,
        reference,
        algorithm,
        t,
        affinity: 0.0,
        qbar: vec![0.0; model.decision_count()],
        branches: 0,
        history: Vec::with_capacity(t),
    };
    walker.descend(0, 1.0, 1.0);
    let Walker {
        affinity,
        mut qbar,
        branches,
        ..
    } = walker;

    for w in &mut qbar {
        *w /= t as f64;
    }
    // Affinity Σ√(P·Q) ∈ [0,1]; D²_H = 2 − 2·affinity.
    let lhs = (2.0 - 2.0 * affinity).max(0.0);
    let expected_hellinger = crate::expected_hellinger_sq_probs(model, reference, &qbar);

    let v = density_ratio_bound(class);
    let t_and_v = match v {
        DensityRatioBound::Bounded(v) => (t as f64).min(v),
        DensityRatioBound::Unbounded => t as f64,
    };
    let c_statement = t_and_v.ln().max(1.0);
    let c_proof = 256.0 * c_statement;
    let rhs_statement = c_statement * t as f64 * expected_hellinger;
    let rhs_proof = c_proof * t as f64 * expected_hellinger;
    let slack_statement = rhs_statement - lhs;
    let slack_proof = rhs_proof - lhs;

    Ok(TvUbReport {
        lhs,
        expected_hellinger,
        qbar,
        c_statement,
        c_proof,
        rhs_statement,
        rhs_proof,
        slack_statement,
        slack_proof,
        pass: slack_proof >= -1e-12,
        branches,
    })
}

struct Walker<'a> {
    model: &'a FiniteModel,
    reference: &'a FiniteModel,
    algorithm: &'a AlgorithmFn<'a>,
    t: usize,
    affinity: f64,
    qbar: Vec<f64>,
    branches: u64,
    history: Vec<StepRecord>,
}

impl Walker<'_> {
    /// Depth-first walk over transcripts carrying the prefix probabilities
    /// under ℙ^M (`pm`) and ℙ^{M̄} (`pq`).
    fn descend(&mut self, depth: usize, pm: f64, pq: f64) {
        if depth == self.t {
            self.affinity += (pm * pq).sqrt();
            self.branches += 1;
            return;
        }
        let dist = (self.algorithm)(&self.history);
        debug_assert_eq!(dist.len(), self.model.decision_count());
        let obs_width = self.model.obs_width();
        for (decision, &pd) in dist.probs().iter().enumerate() {
            if pd == 0.0 {
                continue;
            }
            // Average exploration distribution under the reference law.
            self.qbar[decision] += pq * pd;
            let row_m = self.model.kernel_row(decision);
            let row_q = self.reference.kernel_row(decision);
            for (outcome, (&am, &aq)) in row_m.iter().zip(row_q).enumerate() {
                let next_pm = pm * pd * am;
                let next_pq = pq * pd * aq;
                if next_pm == 0.0 && next_pq == 0.0 {
                    continue;
                }
                self.history.push(StepRecord {
                    decision,
                    reward_idx: outcome / obs_width,
                    obs_idx: outcome % obs_width,
                });
                self.descend(depth + 1, next_pm, next_pq);
                self.history.pop();
            }
        }
    }
}

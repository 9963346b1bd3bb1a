//! Exact divergences on finite supports.
//!
//! Squared Hellinger distance D²_H(ℙ, ℚ) = Σ(√ℙ_i − √ℚ_i)² ∈ [0, 2] and
//! total variation ½Σ|ℙ_i − ℚ_i| ∈ [0, 1] between outcome pmfs, their
//! expectations E_{π∼p}[D²_H(M(π), M̄(π))] under a decision distribution
//! (the functional that defines the ball 𝓗_{p,ε}(M̄)), and an exhaustive
//! transcript-law comparison [`tv_ub_check`] that certifies the chain-rule
//! upper bound D²_H(ℙ^M, ℙ^{M̄}) ≤ C(T)·T·E_{π∼q̄}[D²_H(M(π), M̄(π))] on
//! instances small enough to enumerate.
//!
//! Everything in this module is computed exactly in double precision — no
//! sampling estimators — because downstream min-max solvers consume these
//! values as constraint coefficients.

mod transcript;

pub use transcript::{tv_ub_check, AlgorithmFn, StepRecord, TvUbReport};

use model_core::{DecisionDistribution, FiniteModel, ModelError};
use thiserror::Error;

/// Absolute slack used for ball membership tests `E_p[D²_H] ≤ ε² + BALL_SLACK`;
/// boundary feasibility is included.
pub const BALL_SLACK: f64 = 1e-12;

/// Tolerance for validating user-supplied pmfs (looser than construction
/// tolerances to absorb mixture roundoff).
const INPUT_PMF_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum DivergenceError {
    #[error("pmf length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("input is not a pmf: {0}")]
    NotPmf(String),
    #[error("models do not share outcome spaces")]
    SpaceMismatch,
    #[error("transcript space too large to enumerate: {size} > budget {budget}")]
    TooLarge { size: u128, budget: u128 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn check_input_pmf(v: &[f64]) -> Result<(), DivergenceError> {
    let mut sum = 0.0;
    for &x in v {
        if !x.is_finite() || x < 0.0 {
            return Err(DivergenceError::NotPmf(format!("entry {x}")));
        }
        sum += x;
    }
    if (sum - 1.0).abs() > INPUT_PMF_TOL {
        return Err(DivergenceError::NotPmf(format!("sums to {sum}")));
    }
    Ok(())
}

// ── Pointwise divergences ────────────────────────────────────────────────

/// D²_H(a, b) = Σ(√a_i − √b_i)², validated inputs.
pub fn hellinger_sq(a: &[f64], b: &[f64]) -> Result<f64, DivergenceError> {
    if a.len() != b.len() {
        return Err(DivergenceError::LengthMismatch(a.len(), b.len()));
    }
    check_input_pmf(a)?;
    check_input_pmf(b)?;
    Ok(hellinger_sq_slices(a, b))
}

/// D²_H on pre-validated slices (hot path for solvers).
#[inline]
pub fn hellinger_sq_slices(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        let d = x.sqrt() - y.sqrt();
        acc += d * d;
    }
    acc
}

/// Total variation ½Σ|a_i − b_i|, validated inputs.
pub fn tv(a: &[f64], b: &[f64]) -> Result<f64, DivergenceError> {
    if a.len() != b.len() {
        return Err(DivergenceError::LengthMismatch(a.len(), b.len()));
    }
    check_input_pmf(a)?;
    check_input_pmf(b)?;
    Ok(tv_slices(a, b))
}

/// Total variation on pre-validated slices.
#[inline]
pub fn tv_slices(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(&x, &y)| (x - y).abs()).sum::<f64>()
}

// ── Expectations over decisions ──────────────────────────────────────────

/// E_{π∼p}[D²_H(M_a(π), M_b(π))] — the ball-defining functional.
pub fn expected_hellinger_sq(
    model_a: &FiniteModel,
    model_b: &FiniteModel,
    p: &DecisionDistribution,
) -> Result<f64, DivergenceError> {
    if !model_a.same_spaces(model_b) {
        return Err(DivergenceError::SpaceMismatch);
    }
    if p.len() != model_a.decision_count() {
        return Err(DivergenceError::LengthMismatch(
            p.len(),
            model_a.decision_count(),
        ));
    }
    Ok(expected_hellinger_sq_probs(model_a, model_b, p.probs()))
}

/// Same as [`expected_hellinger_sq`] on a pre-validated probability slice.
#[inline]
pub fn expected_hellinger_sq_probs(model_a: &FiniteModel, model_b: &FiniteModel, probs: &[f64]) -> f64 {
    probs
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0.0)
        .map(|(d, &w)| w * hellinger_sq_slices(model_a.kernel_row(d), model_b.kernel_row(d)))
        .sum()
}

/// Per-decision divergence profile h(π) = D²_H(M_a(π), M_b(π)).
pub fn hellinger_profile(model_a: &FiniteModel, model_b: &FiniteModel) -> Vec<f64> {
    (0..model_a.decision_count())
        .map(|d| hellinger_sq_slices(model_a.kernel_row(d), model_b.kernel_row(d)))
        .collect()
}

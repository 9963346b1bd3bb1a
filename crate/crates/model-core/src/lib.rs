//! Domain types for interactive decision making with structured observations.
//!
//! A [`FiniteModel`] describes an environment with a finite decision space Π,
//! a finite reward support grid ℛ ⊂ [0,1], and a finite observation alphabet
//! 𝒪: for each decision π it stores a joint pmf M(r, o | π). From the kernel
//! we derive the mean-reward function f^M(π), the optimal decision
//! π_M = argmax_π f^M(π), and the suboptimality gaps
//! g^M(π) = f^M(π_M) − f^M(π).
//!
//! A [`ModelClass`] is an ordered family of models over shared spaces, and a
//! [`MixtureModel`] is a point of its convex hull co(𝓜), materializable back
//! into a [`FiniteModel`] by averaging kernel rows.
//!
//! The [`examples`] module builds the standard test-bed classes (bandit
//! classes with a common gap, the revealing class with a costly
//! information-gathering decision, and seeded random classes), and
//! [`textio`] provides an exact round-trip text serialization. Randomness is
//! funneled through the counter-based splittable generator in [`rng`], so
//! every consumer of this workspace is reproducible from a single seed.

mod class;
mod model;

pub mod examples;
pub mod rng;
pub mod textio;

pub use class::{
    density_ratio_bound, localize, localize_indices, mixture_materialize, DensityRatioBound,
    LocalizeMode, MixtureModel, ModelClass,
};
pub use model::{DecisionDistribution, FiniteModel};

use thiserror::Error;

/// Tolerance used when validating that stored vectors are pmfs.
pub const PMF_TOLERANCE: f64 = 1e-12;

/// Errors produced when constructing or querying domain types.
#[derive(Debug, Error)]
pub enum ModelError {
    /// A stored vector is expected to be a probability mass function.
    #[error("{context}: not a pmf ({reason})")]
    InvalidPmf { context: String, reason: String },
    /// Reward support must be strictly increasing values in [0,1].
    #[error("invalid reward support: {0}")]
    InvalidSupport(String),
    /// An index was out of range for the referenced space.
    #[error("{space} index {index} out of range (size {size})")]
    IndexOutOfRange {
        space: &'static str,
        index: usize,
        size: usize,
    },
    /// Two objects were expected to share decision/reward/observation spaces.
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    /// Model classes must be nonempty.
    #[error("model class must contain at least one model")]
    EmptyClass,
    /// A parameter violated its documented range.
    #[error("parameter `{name}` out of range: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    /// Text-format parse failure.
    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl ModelError {
    pub(crate) fn pmf(context: impl Into<String>, reason: impl Into<String>) -> Self {
        ModelError::InvalidPmf {
            context: context.into(),
            reason: reason.into(),
        }
    }
}

/// Validates that `v` is a pmf within [`PMF_TOLERANCE`].
pub(crate) fn check_pmf(context: &str, v: &[f64]) -> Result<(), ModelError> {
    if v.is_empty() {
        return Err(ModelError::pmf(context, "empty vector"));
    }
    let mut sum = 0.0;
    for (i, &x) in v.iter().enumerate() {
        if !x.is_finite() {
            return Err(ModelError::pmf(context, format!("entry {i} is not finite")));
        }
        if x < 0.0 {
            return Err(ModelError::pmf(context, format!("entry {i} is negative ({x})")));
        }
        sum += x;
    }
    if (sum - 1.0).abs() > PMF_TOLERANCE {
        return Err(ModelError::pmf(context, format!("sums to {sum}, expected 1")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_pmf_accepts_valid() {
        assert!(check_pmf("t", &[0.25, 0.75]).is_ok());
        assert!(check_pmf("t", &[1.0]).is_ok());
    }

    #[test]
    fn check_pmf_rejects_bad_inputs() {
        assert!(check_pmf("t", &[]).is_err());
        assert!(check_pmf("t", &[0.5, 0.4]).is_err());
        assert!(check_pmf("t", &[-0.1, 1.1]).is_err());
        assert!(check_pmf("t", &[f64::NAN, 1.0]).is_err());
    }
}

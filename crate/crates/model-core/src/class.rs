//! Model classes 𝓜, mixtures M̄ ∈ co(𝓜), localization, and the likelihood
//! ratio bound V(𝓜).

use crate::{check_pmf, FiniteModel, ModelError};
use serde::{Deserialize, Serialize};

// ── ModelClass ───────────────────────────────────────────────────────────

/// An ordered, nonempty family of models over shared spaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelClass {
    models: Vec<FiniteModel>,
    labels: Vec<String>,
}

impl ModelClass {
    /// Builds a class with default labels `M0, M1, …`.
    pub fn new(models: Vec<FiniteModel>) -> Result<Self, ModelError> {
        let labels = (0..models.len()).map(|i| format!("M{i}")).collect();
        Self::with_labels(models, labels)
    }

    /// Builds a class with explicit labels (one per model).
    pub fn with_labels(models: Vec<FiniteModel>, labels: Vec<String>) -> Result<Self, ModelError> {
        if models.is_empty() {
            return Err(ModelError::EmptyClass);
        }
        if labels.len() != models.len() {
            return Err(ModelError::SpaceMismatch(format!(
                "{} labels for {} models",
                labels.len(),
                models.len()
            )));
        }
        let first = &models[0];
        for (i, m) in models.iter().enumerate().skip(1) {
            if !first.same_spaces(m) {
                return Err(ModelError::SpaceMismatch(format!(
                    "model {i} does not share the class spaces"
                )));
            }
        }
        Ok(ModelClass { models, labels })
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn models(&self) -> &[FiniteModel] {
        &self.models
    }

    pub fn get(&self, index: usize) -> Result<&FiniteModel, ModelError> {
        self.models.get(index).ok_or(ModelError::IndexOutOfRange {
            space: "model",
            index,
            size: self.models.len(),
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn decision_count(&self) -> usize {
        self.models[0].decision_count()
    }

    pub fn reward_support(&self) -> &[f64] {
        self.models[0].reward_support()
    }

    pub fn obs_count(&self) -> usize {
        self.models[0].obs_count()
    }

    /// Restriction to the given model indices, preserving order and labels.
    /// Errors when `indices` is empty or out of range.
    pub fn subset(&self, indices: &[usize]) -> Result<ModelClass, ModelError> {
        if indices.is_empty() {
            return Err(ModelError::EmptyClass);
        }
        let mut models = Vec::with_capacity(indices.len());
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            models.push(self.get(i)?.clone());
            labels.push(self.labels[i].clone());
        }
        ModelClass::with_labels(models, labels)
    }

    /// True when `model` shares the class spaces.
    pub fn admits(&self, model: &FiniteModel) -> bool {
        self.models[0].same_spaces(model)
    }
}

// ── MixtureModel ─────────────────────────────────────────────────────────

/// A point of co(𝓜): a pmf over the members of a class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureModel {
    weights: Vec<f64>,
}

impl MixtureModel {
    pub fn new(weights: Vec<f64>) -> Result<Self, ModelError> {
        check_pmf("mixture weights", &weights)?;
        Ok(MixtureModel { weights })
    }

    /// Indicator weight on a single member (a proper reference model).
    pub fn point_mass(index: usize, class_size: usize) -> Result<Self, ModelError> {
        if index >= class_size {
            return Err(ModelError::IndexOutOfRange {
                space: "model",
                index,
                size: class_size,
            });
        }
        let mut weights = vec![0.0; class_size];
        weights[index] = 1.0;
        Ok(MixtureModel { weights })
    }

    pub fn uniform(class_size: usize) -> Result<Self, ModelError> {
        if class_size == 0 {
            return Err(ModelError::EmptyClass);
        }
        Ok(MixtureModel {
            weights: vec![1.0 / class_size as f64; class_size],
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Realizes the mixture as a [`FiniteModel`] by averaging kernel rows:
    /// M̄(r, o | π) = Σ_i w_i · M_i(r, o | π).
    pub fn materialize(&self, class: &ModelClass) -> Result<FiniteModel, ModelError> {
        if self.weights.len() != class.len() {
            return Err(ModelError::SpaceMismatch(format!(
                "{} weights for {} models",
                self.weights.len(),
                class.len()
            )));
        }
        let width = class.models()[0].outcome_count();
        let decisions = class.decision_count();
        let mut kernel = vec![vec![0.0; width]; decisions];
        for (w, model) in self.weights.iter().zip(class.models()) {
            if *w == 0.0 {
                continue;
            }
            for (d, row) in kernel.iter_mut().enumerate() {
                for (cell, &p) in row.iter_mut().zip(model.kernel_row(d)) {
                    *cell += w * p;
                }
            }
        }
        FiniteModel::new(
            class.reward_support().to_vec(),
            class.obs_count(),
            kernel,
        )
    }
}

/// Free-function form of [`MixtureModel::materialize`].
pub fn mixture_materialize(
    class: &ModelClass,
    mix: &MixtureModel,
) -> Result<FiniteModel, ModelError> {
    mix.materialize(class)
}

// ── Localization ─────────────────────────────────────────────────────────

/// Which side(s) of the localization constraint to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalizeMode {
    /// 𝓜_α(M̄) = {M : f^M(π_M) ≤ f^{M̄}(π_{M̄}) + α}.
    OneSided,
    /// Additionally requires f^{M̄}(π_{M̄}) ≤ f^M(π_{M̄}) + α.
    TwoSided,
}

/// Indices of the members of `class` that survive α-localization around
/// `reference`.
pub fn localize_indices(
    class: &ModelClass,
    reference: &FiniteModel,
    alpha: f64,
    mode: LocalizeMode,
) -> Result<Vec<usize>, ModelError> {
    if !class.admits(reference) {
        return Err(ModelError::SpaceMismatch(
            "reference does not share the class spaces".into(),
        ));
    }
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(ModelError::InvalidParameter {
            name: "alpha",
            reason: format!("must be a nonnegative real, got {alpha}"),
        });
    }
    let (ref_best, ref_value) = reference.best_decision();
    let mut kept = Vec::new();
    for (i, m) in class.models().iter().enumerate() {
        let (_, m_value) = m.best_decision();
        let one = m_value <= ref_value + alpha;
        let keep = match mode {
            LocalizeMode::OneSided => one,
            LocalizeMode::TwoSided => one && ref_value <= m.means()[ref_best] + alpha,
        };
        if keep {
            kept.push(i);
        }
    }
    Ok(kept)
}

/// α-localized subclass around `reference`; `None` when no member survives
/// (downstream solvers treat an empty adversary class as value 0).
pub fn localize(
    class: &ModelClass,
    reference: &FiniteModel,
    alpha: f64,
    mode: LocalizeMode,
) -> Result<Option<ModelClass>, ModelError> {
    let kept = localize_indices(class, reference, alpha, mode)?;
    if kept.is_empty() {
        return Ok(None);
    }
    Ok(Some(class.subset(&kept)?))
}

// ── Likelihood ratio bound ───────────────────────────────────────────────

/// V(𝓜) with the unbounded case kept out of float arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DensityRatioBound {
    /// max ratio, floored at e.
    Bounded(f64),
    /// Some outcome has positive mass under one model and zero under another.
    Unbounded,
}

impl DensityRatioBound {
    /// min(t, V(𝓜)) as a float, treating the unbounded case as +∞.
    pub fn min_with(&self, t: f64) -> f64 {
        match self {
            DensityRatioBound::Bounded(v) => t.min(*v),
            DensityRatioBound::Unbounded => t,
        }
    }
}

/// V(𝓜) = sup_{M,M'∈𝓜} sup_π sup_{(r,o)} M(r,o|π) / M'(r,o|π), floored at e.
pub fn density_ratio_bound(class: &ModelClass) -> DensityRatioBound {
    let mut max_ratio: f64 = 1.0;
    let models = class.models();
    for (i, a) in models.iter().enumerate() {
        for b in &models[i + 1..] {
            for d in 0..class.decision_count() {
                for (&pa, &pb) in a.kernel_row(d).iter().zip(b.kernel_row(d)) {
                    match (pa > 0.0, pb > 0.0) {
                        (true, true) => {
                            max_ratio = max_ratio.max(pa / pb).max(pb / pa);
                        }
                        (true, false) | (false, true) => {
                            return DensityRatioBound::Unbounded;
                        }
                        (false, false) => {}
                    }
                }
            }
        }
    }
    DensityRatioBound::Bounded(max_ratio.max(std::f64::consts::E))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arm(mean: f64) -> FiniteModel {
        FiniteModel::new(vec![0.0, 1.0], 0, vec![vec![1.0 - mean, mean]]).unwrap()
    }

    fn mab(means: &[f64]) -> FiniteModel {
        let kernel = means.iter().map(|&m| vec![1.0 - m, m]).collect();
        FiniteModel::new(vec![0.0, 1.0], 0, kernel).unwrap()
    }

    #[test]
    fn class_requires_shared_spaces() {
        let a = arm(0.4);
        let b = FiniteModel::new(vec![0.0, 0.5, 1.0], 0, vec![vec![0.2, 0.3, 0.5]]).unwrap();
        assert!(ModelClass::new(vec![a.clone(), b]).is_err());
        assert!(ModelClass::new(vec![]).is_err());
        assert!(ModelClass::new(vec![a]).is_ok());
    }

    #[test]
    fn mixture_point_mass_reproduces_member() {
        let class = ModelClass::new(vec![arm(0.4), arm(0.6)]).unwrap();
        let mixed = MixtureModel::point_mass(0, 2)
            .unwrap()
            .materialize(&class)
            .unwrap();
        assert_eq!(&mixed, class.get(0).unwrap());
    }

    #[test]
    fn mixture_of_bernoullis_averages() {
        // Uniform mixture of Ber(0.4) and Ber(0.6) is Ber(0.5).
        let class = ModelClass::new(vec![arm(0.4), arm(0.6)]).unwrap();
        let mixed = MixtureModel::uniform(2)
            .unwrap()
            .materialize(&class)
            .unwrap();
        assert!((mixed.mean_reward(0).unwrap() - 0.5).abs() < 1e-15);
        assert!((mixed.kernel_row(0)[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn density_ratio_examples() {
        let single = ModelClass::new(vec![arm(0.4)]).unwrap();
        assert_eq!(
            density_ratio_bound(&single),
            DensityRatioBound::Bounded(std::f64::consts::E)
        );

        // {Ber(0.4), Ber(0.6)}: max ratio 0.6/0.4 = 1.5 < e, so floored at e.
        let pair = ModelClass::new(vec![arm(0.4), arm(0.6)]).unwrap();
        assert_eq!(
            density_ratio_bound(&pair),
            DensityRatioBound::Bounded(std::f64::consts::E)
        );

        // Disjoint supports are unbounded.
        let disjoint = ModelClass::new(vec![arm(0.0), arm(1.0)]).unwrap();
        assert_eq!(density_ratio_bound(&disjoint), DensityRatioBound::Unbounded);

        // A genuinely large ratio beats the floor.
        let wide = ModelClass::new(vec![arm(0.05), arm(0.95)]).unwrap();
        match density_ratio_bound(&wide) {
            DensityRatioBound::Bounded(v) => assert!((v - 19.0).abs() < 1e-12),
            other => panic!("expected bounded ratio, got {other:?}"),
        }
    }

    #[test]
    fn localize_examples() {
        let class = ModelClass::new(vec![mab(&[0.7, 0.5]), mab(&[0.5, 0.9])]).unwrap();
        let reference = mab(&[0.7, 0.5]);

        // α ≥ 1 retains everything (rewards live in [0,1]).
        let all = localize(&class, &reference, 1.0, LocalizeMode::OneSided)
            .unwrap()
            .unwrap();
        assert_eq!(all.len(), 2);

        // α = 0 with ref value 0.7 keeps only the first model (0.7 ≤ 0.7,
        // while 0.9 > 0.7).
        let kept = localize_indices(&class, &reference, 0.0, LocalizeMode::OneSided).unwrap();
        assert_eq!(kept, vec![0]);

        // A reference far below every model empties the class at α = 0.
        let low = mab(&[0.05, 0.0]);
        let none = localize(&class, &low, 0.0, LocalizeMode::OneSided).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn localize_two_sided_tightens() {
        // Second model optimum 0.55 ≤ 0.7 + α passes one-sided at α = 0.1,
        // but its value at π_ref = 0 (0.2) violates the reverse inequality.
        let class = ModelClass::new(vec![mab(&[0.7, 0.5]), mab(&[0.2, 0.55])]).unwrap();
        let reference = mab(&[0.7, 0.5]);
        let one = localize_indices(&class, &reference, 0.1, LocalizeMode::OneSided).unwrap();
        assert_eq!(one, vec![0, 1]);
        let two = localize_indices(&class, &reference, 0.1, LocalizeMode::TwoSided).unwrap();
        assert_eq!(two, vec![0]);
    }

    #[test]
    fn subset_preserves_order_and_labels() {
        let class = ModelClass::with_labels(
            vec![arm(0.2), arm(0.4), arm(0.6)],
            vec!["a".into(), "b".into(), "c".into()],
        )
        .unwrap();
        let sub = class.subset(&[2, 0]).unwrap();
        assert_eq!(sub.labels(), &["c".to_string(), "a".to_string()]);
        assert_eq!(sub.get(0).unwrap(), class.get(2).unwrap());
        assert!(class.subset(&[]).is_err());
        assert!(class.subset(&[3]).is_err());
    }
}

//! Soft-margin linear classification over feature vectors.
//!
//! Minimizes `(lambda/2)||w||^2 + (1/M) sum_i max(0, 1 - y_i (w.f_i + b))`
//! by mini-batch gradient descent with a `1/sqrt(t)` step-size decay. The
//! bias is left unregularized: it becomes the witness identity coefficient
//! and regularizing it would distort coefficient-ratio comparisons. Feature
//! values arrive already in `[-1, 1]` and are used raw.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureSet, FeatureVector};
use crate::pauli::PauliString;
use crate::rng::SeedFanout;
use crate::statesets::{Label, TrainingSet};

/// Hyperparameters for hinge-loss training.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, rename_all = "snake_case")]
pub struct SvmConfig {
    pub learning_rate: f64,
    pub batch_size: usize,
    pub regularization: f64,
    pub epochs: usize,
    pub seed: u64,
    pub shuffle: bool,
}

impl Default for SvmConfig {
    fn default() -> Self {
        SvmConfig {
            learning_rate: 0.01,
            batch_size: 64,
            regularization: 1e-4,
            epochs: 200,
            seed: 0,
            shuffle: true,
        }
    }
}

impl SvmConfig {
    pub fn validate(&self) -> Result<()> {
        if self.learning_rate <= 0.0 {
            return Err(Error::InvalidConfig("learning_rate must be > 0".into()));
        }
        if self.batch_size < 1 {
            return Err(Error::InvalidConfig("batch_size must be >= 1".into()));
        }
        if self.regularization < 0.0 {
            return Err(Error::InvalidConfig("regularization must be >= 0".into()));
        }
        if self.epochs < 1 {
            return Err(Error::InvalidConfig("epochs must be >= 1".into()));
        }
        Ok(())
    }
}

/// A trained decision boundary: weights over non-identity Pauli strings plus
/// a bias. The bias is the identity coefficient of the resulting witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub feature_strings: Vec<PauliString>,
}

impl Hyperplane {
    pub fn num_qubits(&self) -> usize {
        self.feature_strings[0].num_qubits()
    }
}

/// `w . f + b` for a feature vector aligned to the hyperplane's strings.
pub fn decision_value(h: &Hyperplane, f: &FeatureVector) -> Result<f64> {
    if f.feature_set.strings() != h.feature_strings.as_slice() {
        return Err(Error::FeatureSetMismatch(
            "feature vector does not align with hyperplane".into(),
        ));
    }
    Ok(dot(&h.weights, &f.values) + h.bias)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rows of the training set projected onto a feature subset.
struct ProjectedData {
    rows: Vec<Vec<f64>>,
    labels: Vec<f64>,
}

fn project(data: &TrainingSet, subset: &FeatureSet) -> Result<ProjectedData> {
    let columns: Vec<usize> = subset
        .strings()
        .iter()
        .map(|s| {
            data.feature_set.position(s).ok_or_else(|| {
                Error::FeatureSetMismatch(format!("feature {s} missing from training data"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rows = data
        .samples
        .iter()
        .map(|s| columns.iter().map(|&c| s.features.values[c]).collect())
        .collect();
    let labels = data.samples.iter().map(|s| s.label.sign()).collect();
    Ok(ProjectedData { rows, labels })
}

/// Train a hyperplane over `feature_subset` (identity excluded).
///
/// Deterministic in `(data, subset, cfg)`: the shuffle stream derives from
/// `cfg.seed` alone.
pub fn train(
    data: &TrainingSet,
    feature_subset: &FeatureSet,
    cfg: &SvmConfig,
) -> Result<Hyperplane> {
    cfg.validate()?;
    if feature_subset.strings().iter().any(|s| s.is_identity()) {
        return Err(Error::InvalidConfig(
            "the identity string is the bias term, not a trainable feature".into(),
        ));
    }
    if data.count_with_label(Label::Separable) == 0 || data.count_with_label(Label::Entangled) == 0
    {
        return Err(Error::SingleClassData);
    }
    let projected = project(data, feature_subset)?;
    let m = projected.rows.len();
    let d = feature_subset.len();

    let mut weights = vec![0.0f64; d];
    let mut bias = 0.0f64;
    let mut order: Vec<usize> = (0..m).collect();
    let mut rng = SeedFanout::new(cfg.seed).stream("svm-shuffle");
    let mut step: u64 = 0;

    for epoch in 0..cfg.epochs {
        if cfg.shuffle {
            order.shuffle(&mut rng);
        }
        for chunk in order.chunks(cfg.batch_size) {
            step += 1;
            let lr = cfg.learning_rate / (step as f64).sqrt();
            let inv = 1.0 / chunk.len() as f64;
            let mut grad_w = vec![0.0f64; d];
            let mut grad_b = 0.0f64;
            for &idx in chunk {
                let row = &projected.rows[idx];
                let y = projected.labels[idx];
                let margin = y * (dot(&weights, row) + bias);
                if margin < 1.0 {
                    for (g, &x) in grad_w.iter_mut().zip(row) {
                        *g -= y * x * inv;
                    }
                    grad_b -= y * inv;
                }
            }
            for (w, g) in weights.iter_mut().zip(&grad_w) {
                *w -= lr * (cfg.regularization * *w + g);
            }
            bias -= lr * grad_b;
        }
        if !bias.is_finite() || weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::TrainingDiverged(format!(
                "non-finite parameters at epoch {epoch}"
            )));
        }
    }

    let h = Hyperplane {
        weights,
        bias,
        feature_strings: feature_subset.strings().to_vec(),
    };
    let loss = dataset_loss(&h, data, cfg.regularization)?;
    if !loss.is_finite() {
        return Err(Error::TrainingDiverged(format!("final loss {loss}")));
    }
    Ok(h)
}

/// Fraction of samples whose decision-value sign matches the label.
/// A decision value of exactly zero counts as misclassified for both labels.
pub fn training_accuracy(h: &Hyperplane, data: &TrainingSet) -> Result<f64> {
    let subset = FeatureSet::new(h.feature_strings.clone())?;
    let projected = project(data, &subset)?;
    let mut correct = 0usize;
    for (row, &y) in projected.rows.iter().zip(&projected.labels) {
        let value = dot(&h.weights, row) + h.bias;
        if value * y > 0.0 {
            correct += 1;
        }
    }
    Ok(correct as f64 / projected.rows.len() as f64)
}

/// Full-dataset objective `(lambda/2)||w||^2 + mean hinge`.
pub fn dataset_loss(h: &Hyperplane, data: &TrainingSet, regularization: f64) -> Result<f64> {
    let subset = FeatureSet::new(h.feature_strings.clone())?;
    let projected = project(data, &subset)?;
    let reg: f64 = 0.5 * regularization * h.weights.iter().map(|w| w * w).sum::<f64>();
    let hinge: f64 = projected
        .rows
        .iter()
        .zip(&projected.labels)
        .map(|(row, &y)| (1.0 - y * (dot(&h.weights, row) + h.bias)).max(0.0))
        .sum::<f64>()
        / projected.rows.len() as f64;
    Ok(reg + hinge)
}

/// Analytic gradient of [`dataset_loss`] in `(weights.., bias)` order.
/// Subgradient 0 is used exactly at hinge kinks.
pub fn dataset_gradient(h: &Hyperplane, data: &TrainingSet, regularization: f64) -> Result<Vec<f64>> {
    let subset = FeatureSet::new(h.feature_strings.clone())?;
    let projected = project(data, &subset)?;
    let m = projected.rows.len() as f64;
    let d = h.weights.len();
    let mut grad = vec![0.0f64; d + 1];
    for (g, &w) in grad.iter_mut().zip(&h.weights) {
        *g = regularization * w;
    }
    for (row, &y) in projected.rows.iter().zip(&projected.labels) {
        let margin = y * (dot(&h.weights, row) + h.bias);
        if margin < 1.0 {
            for (g, &x) in grad.iter_mut().zip(row) {
                *g -= y * x / m;
            }
            grad[d] -= y / m;
        }
    }
    Ok(grad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::FeatureVector;
    use crate::statesets::{LabeledSample, SampleOrigin};
    use approx::assert_relative_eq;

    fn toy_set() -> (TrainingSet, FeatureSet) {
        // single feature Z: separable at +1, "entangled" at -1
        let set = FeatureSet::new(vec!["Z".parse().unwrap()]).unwrap();
        let mut samples = Vec::new();
        for _ in 0..40 {
            samples.push(LabeledSample {
                features: FeatureVector {
                    values: vec![1.0],
                    feature_set: set.clone(),
                },
                label: Label::Separable,
                origin: SampleOrigin::Eigenstate,
            });
            samples.push(LabeledSample {
                features: FeatureVector {
                    values: vec![-1.0],
                    feature_set: set.clone(),
                },
                label: Label::Entangled,
                origin: SampleOrigin::Werner,
            });
        }
        (
            TrainingSet {
                samples,
                feature_set: set.clone(),
                num_qubits: 1,
                seed: 0,
            },
            set,
        )
    }

    #[test]
    fn decision_value_basics() {
        let set = FeatureSet::new(vec!["XX".parse().unwrap()]).unwrap();
        let h = Hyperplane {
            weights: vec![0.0],
            bias: 1.0,
            feature_strings: set.strings().to_vec(),
        };
        let f = FeatureVector {
            values: vec![0.7],
            feature_set: set.clone(),
        };
        assert_relative_eq!(decision_value(&h, &f).unwrap(), 1.0);
        let flipped = Hyperplane {
            weights: vec![-2.0],
            bias: -1.0,
            feature_strings: set.strings().to_vec(),
        };
        let h2 = Hyperplane {
            weights: vec![2.0],
            bias: 1.0,
            feature_strings: set.strings().to_vec(),
        };
        assert_relative_eq!(
            decision_value(&flipped, &f).unwrap(),
            -decision_value(&h2, &f).unwrap()
        );
    }

    #[test]
    fn mermin_hyperplane_on_ghz_features() {
        let strings: Vec<PauliString> = ["XXX", "XYY", "YXY", "YYX"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let set = FeatureSet::new(strings.clone()).unwrap();
        let h = Hyperplane {
            weights: vec![-1.0, 1.0, 1.0, 1.0],
            bias: 2.0,
            feature_strings: strings,
        };
        let f = FeatureVector {
            values: vec![1.0, -1.0, -1.0, -1.0],
            feature_set: set,
        };
        assert_relative_eq!(decision_value(&h, &f).unwrap(), -2.0);
    }

    #[test]
    fn toy_problem_separates_perfectly() {
        let (data, set) = toy_set();
        let cfg = SvmConfig {
            epochs: 80,
            ..SvmConfig::default()
        };
        let h = train(&data, &set, &cfg).unwrap();
        assert!(h.weights[0] > h.bias.abs(), "weights {:?} bias {}", h.weights, h.bias);
        assert_relative_eq!(training_accuracy(&h, &data).unwrap(), 1.0);
    }

    #[test]
    fn duplicated_data_trains_identically() {
        // full-batch updates: duplicating every sample leaves the mean
        // gradient, and hence the whole trajectory, unchanged
        let (data, set) = toy_set();
        let mut doubled = data.clone();
        let copy = doubled.samples.clone();
        doubled.samples.extend(copy);
        let cfg = SvmConfig {
            epochs: 30,
            shuffle: false,
            batch_size: 10_000,
            ..SvmConfig::default()
        };
        let a = train(&data, &set, &cfg).unwrap();
        let b = train(&doubled, &set, &cfg).unwrap();
        assert_relative_eq!(a.weights[0], b.weights[0], epsilon = 1e-12);
        assert_relative_eq!(a.bias, b.bias, epsilon = 1e-12);
    }

    #[test]
    fn training_is_seed_deterministic() {
        let (data, set) = toy_set();
        let cfg = SvmConfig {
            epochs: 20,
            seed: 7,
            ..SvmConfig::default()
        };
        let a = train(&data, &set, &cfg).unwrap();
        let b = train(&data, &set, &cfg).unwrap();
        assert_eq!(a.weights, b.weights);
        assert_eq!(a.bias, b.bias);
    }

    #[test]
    fn single_class_rejected() {
        let (mut data, set) = toy_set();
        data.samples.retain(|s| s.label == Label::Separable);
        assert!(matches!(
            train(&data, &set, &SvmConfig::default()),
            Err(Error::SingleClassData)
        ));
    }

    #[test]
    fn identity_feature_rejected() {
        let (data, _) = toy_set();
        let set = FeatureSet::new(vec!["I".parse().unwrap()]).unwrap();
        assert!(train(&data, &set, &SvmConfig::default()).is_err());
    }

    #[test]
    fn zero_hyperplane_accuracy_counts_ties_wrong() {
        let (data, set) = toy_set();
        let h = Hyperplane {
            weights: vec![0.0],
            bias: 0.0,
            feature_strings: set.strings().to_vec(),
        };
        assert_relative_eq!(training_accuracy(&h, &data).unwrap(), 0.0);
    }

    #[test]
    fn scale_covariance_of_classification() {
        let (data, set) = toy_set();
        let h = train(&data, &set, &SvmConfig::default()).unwrap();
        let scaled = Hyperplane {
            weights: h.weights.iter().map(|w| w * 3.5).collect(),
            bias: h.bias * 3.5,
            feature_strings: h.feature_strings.clone(),
        };
        assert_relative_eq!(
            training_accuracy(&h, &data).unwrap(),
            training_accuracy(&scaled, &data).unwrap()
        );
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let (data, set) = toy_set();
        // a non-kink point: margins are far from 1
        let h = Hyperplane {
            weights: vec![0.3],
            bias: 0.1,
            feature_strings: set.strings().to_vec(),
        };
        let lambda = 1e-3;
        let grad = dataset_gradient(&h, &data, lambda).unwrap();
        let step = 1e-6;
        #[allow(clippy::needless_range_loop)]
        for k in 0..2 {
            let mut plus = h.clone();
            let mut minus = h.clone();
            if k == 0 {
                plus.weights[0] += step;
                minus.weights[0] -= step;
            } else {
                plus.bias += step;
                minus.bias -= step;
            }
            let fd = (dataset_loss(&plus, &data, lambda).unwrap()
                - dataset_loss(&minus, &data, lambda).unwrap())
                / (2.0 * step);
            let denom = fd.abs().max(1e-12);
            assert!(
                ((grad[k] - fd) / denom).abs() < 1e-5,
                "component {k}: analytic {} vs fd {fd}",
                grad[k]
            );
        }
    }
}

//! Feature vectors: real expectation values over an ordered Pauli string set.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pauli::{all_strings, PauliString};
use crate::state::{expectation, expectation_pure, DensityMatrix, StateVector};

/// An ordered, immutable list of Pauli strings defining feature coordinates.
/// Cheap to clone; shared across every sample of a data set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureSet {
    strings: Arc<Vec<PauliString>>,
}

impl FeatureSet {
    pub fn new(strings: Vec<PauliString>) -> Result<Self> {
        if strings.is_empty() {
            return Err(Error::EmptyFeatureSet);
        }
        let n = strings[0].num_qubits();
        if strings.iter().any(|s| s.num_qubits() != n) {
            return Err(Error::FeatureSetMismatch(
                "all strings must have the same length".into(),
            ));
        }
        Ok(FeatureSet {
            strings: Arc::new(strings),
        })
    }

    /// All `4^n` strings in canonical order, identity first.
    pub fn full(n: usize) -> Self {
        FeatureSet {
            strings: Arc::new(all_strings(n)),
        }
    }

    pub fn strings(&self) -> &[PauliString] {
        &self.strings
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn num_qubits(&self) -> usize {
        self.strings[0].num_qubits()
    }

    pub fn position(&self, s: &PauliString) -> Option<usize> {
        self.strings.iter().position(|t| t == s)
    }

    /// Subset preserving this set's order.
    pub fn subset(&self, keep: &[PauliString]) -> Result<FeatureSet> {
        let kept: Vec<PauliString> = self
            .strings
            .iter()
            .filter(|s| keep.contains(s))
            .cloned()
            .collect();
        if kept.len() != keep.len() {
            return Err(Error::FeatureSetMismatch(
                "requested subset contains strings absent from the feature set".into(),
            ));
        }
        FeatureSet::new(kept)
    }
}

/// Expectation values of a state over a feature set.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub feature_set: FeatureSet,
}

/// Feature vector of a mixed state; coordinate `i` is
/// `expectation(rho, feature_set[i])`.
pub fn feature_vector(rho: &DensityMatrix, feature_set: &FeatureSet) -> Result<FeatureVector> {
    let values = feature_set
        .strings()
        .iter()
        .map(|s| expectation(rho, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(FeatureVector {
        values,
        feature_set: feature_set.clone(),
    })
}

/// Feature vector of a pure state, without forming the projector.
pub fn feature_vector_pure(psi: &StateVector, feature_set: &FeatureSet) -> Result<FeatureVector> {
    let values = feature_set
        .strings()
        .iter()
        .map(|s| expectation_pure(psi, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(FeatureVector {
        values,
        feature_set: feature_set.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CVector;
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    #[test]
    fn full_set_has_4_pow_n_entries() {
        let set = FeatureSet::full(2);
        assert_eq!(set.len(), 16);
        assert!(set.strings()[0].is_identity());
    }

    #[test]
    fn identity_coordinate_is_exactly_one() {
        let set = FeatureSet::full(2);
        let rho = DensityMatrix::maximally_mixed(2);
        let f = feature_vector(&rho, &set).unwrap();
        assert_relative_eq!(f.values[0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn ghz3_over_xxx_yyy_zzz() {
        let mut amps = CVector::zeros(8);
        let w = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[0] = w;
        amps[7] = w;
        let rho = StateVector::new(amps).unwrap().projector();
        let set = FeatureSet::new(vec![
            "XXX".parse().unwrap(),
            "YYY".parse().unwrap(),
            "ZZZ".parse().unwrap(),
        ])
        .unwrap();
        let f = feature_vector(&rho, &set).unwrap();
        assert_relative_eq!(f.values[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(f.values[1], 0.0, epsilon = 1e-12);
        assert_relative_eq!(f.values[2], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn empty_set_rejected() {
        assert!(FeatureSet::new(vec![]).is_err());
    }

    #[test]
    fn mixed_lengths_rejected() {
        assert!(FeatureSet::new(vec!["XX".parse().unwrap(), "X".parse().unwrap()]).is_err());
    }
}

//! The witness data model and its analysis.
//!
//! A witness is a sparse real combination of generalized Pauli observables;
//! its expectation is nonnegative on every separable state and negative on
//! entangled states it detects. The identity coefficient is the bias term.
//!
//! Noise tolerance is the largest Werner mixing fraction `p` at which the
//! witness still reports the target entangled: strict negativity is the
//! detection criterion, and the 0.001-step scan reports the last strictly
//! negative grid point. Because the expectation is affine in `p`, the exact
//! crossing is also available in closed form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::batch;
use crate::error::{Error, Result};
use crate::features::FeatureSet;
use crate::pauli::{Pauli, PauliString};
use crate::rng::SeedFanout;
use crate::state::{expectation, expectation_pure, werner_state, DensityMatrix, StateVector};
use crate::statesets::{pauli_eigenstates, separable_test_states};
use crate::svm::Hyperplane;

/// Sparse witness: Pauli string -> real coefficient. The identity string is
/// allowed and is the bias term. Terms iterate in canonical string order.
///
/// Serializes as `{ "n_qubits", "target", "terms": [{"pauli", "coeff"}..],
/// "metadata" }` with terms in canonical order; the `target` field mirrors
/// `metadata["target"]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub num_qubits: usize,
    pub terms: BTreeMap<PauliString, f64>,
    pub metadata: BTreeMap<String, serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
struct TermEntry {
    pauli: String,
    coeff: f64,
}

#[derive(Serialize, Deserialize)]
struct WitnessFile {
    n_qubits: usize,
    target: String,
    terms: Vec<TermEntry>,
    #[serde(default)]
    metadata: BTreeMap<String, serde_json::Value>,
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let target = self
            .metadata
            .get("target")
            .and_then(|v| v.as_str())
            .unwrap_or("unknown")
            .to_string();
        let mut metadata = self.metadata.clone();
        metadata.remove("target");
        WitnessFile {
            n_qubits: self.num_qubits,
            target,
            terms: self
                .terms
                .iter()
                .map(|(s, &c)| TermEntry {
                    pauli: s.to_string(),
                    coeff: c,
                })
                .collect(),
            metadata,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Witness {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = WitnessFile::deserialize(deserializer)?;
        let mut terms = BTreeMap::new();
        for entry in file.terms {
            let s: PauliString = entry.pauli.parse().map_err(serde::de::Error::custom)?;
            if s.num_qubits() != file.n_qubits {
                return Err(serde::de::Error::custom(format!(
                    "term {} does not match n_qubits = {}",
                    entry.pauli, file.n_qubits
                )));
            }
            terms.insert(s, entry.coeff);
        }
        let mut metadata = file.metadata;
        metadata.insert("target".into(), serde_json::Value::String(file.target));
        Ok(Witness {
            num_qubits: file.n_qubits,
            terms,
            metadata,
        })
    }
}

impl Witness {
    pub fn new(num_qubits: usize, terms: BTreeMap<PauliString, f64>) -> Result<Self> {
        for (s, c) in &terms {
            if s.num_qubits() != num_qubits {
                return Err(Error::DimensionMismatch {
                    context: "witness term length",
                    expected: num_qubits,
                    actual: s.num_qubits(),
                });
            }
            if !c.is_finite() {
                return Err(Error::InvalidConfig(format!("non-finite coefficient on {s}")));
            }
        }
        Ok(Witness {
            num_qubits,
            terms,
            metadata: BTreeMap::new(),
        })
    }

    pub fn identity_coefficient(&self) -> f64 {
        self.terms
            .get(&PauliString::identity(self.num_qubits))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn set_identity_coefficient(&mut self, value: f64) {
        self.terms
            .insert(PauliString::identity(self.num_qubits), value);
    }

    /// Number of stored terms, identity included.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn non_identity_terms(&self) -> impl Iterator<Item = (&PauliString, &f64)> {
        self.terms.iter().filter(|(s, _)| !s.is_identity())
    }

    /// Non-identity strings in canonical order.
    pub fn feature_strings(&self) -> Vec<PauliString> {
        self.non_identity_terms().map(|(s, _)| s.clone()).collect()
    }

    pub fn with_metadata(mut self, key: &str, value: serde_json::Value) -> Self {
        self.metadata.insert(key.to_string(), value);
        self
    }
}

/// `Tr(rho W)` over the sparse terms only.
pub fn evaluate(w: &Witness, rho: &DensityMatrix) -> Result<f64> {
    if rho.num_qubits() != w.num_qubits {
        return Err(Error::DimensionMismatch {
            context: "witness vs density matrix",
            expected: w.num_qubits,
            actual: rho.num_qubits(),
        });
    }
    let mut acc = 0.0;
    for (s, &c) in &w.terms {
        acc += c * expectation(rho, s)?;
    }
    Ok(acc)
}

/// `<psi| W |psi>` over the sparse terms, without forming the projector.
pub fn evaluate_pure(w: &Witness, psi: &StateVector) -> Result<f64> {
    if psi.num_qubits() != w.num_qubits {
        return Err(Error::DimensionMismatch {
            context: "witness vs state vector",
            expected: w.num_qubits,
            actual: psi.num_qubits(),
        });
    }
    let mut acc = 0.0;
    for (s, &c) in &w.terms {
        acc += c * expectation_pure(psi, s)?;
    }
    Ok(acc)
}

/// Convert a trained hyperplane into a witness: the bias becomes the
/// identity coefficient and every weight the coefficient of its string.
pub fn from_hyperplane(h: &Hyperplane) -> Result<Witness> {
    let n = h.num_qubits();
    let mut terms = BTreeMap::new();
    terms.insert(PauliString::identity(n), h.bias);
    for (s, &w) in h.feature_strings.iter().zip(&h.weights) {
        terms.insert(s.clone(), w);
    }
    Witness::new(n, terms)
}

/// All distinct strings over {X, Y} with an even number of Y symbols, signed
/// alternately: witness coefficient -1 when the Y count is 0 mod 4, +1 when
/// it is 2 mod 4.
fn mermin_terms(n: usize) -> Vec<(PauliString, f64)> {
    let mut out = Vec::new();
    for mask in 0..(1usize << n) {
        let y_count = mask.count_ones() as usize;
        if !y_count.is_multiple_of(2) {
            continue;
        }
        let labels = (0..n)
            .map(|q| {
                if (mask >> (n - 1 - q)) & 1 == 1 {
                    Pauli::Y
                } else {
                    Pauli::X
                }
            })
            .collect::<Vec<_>>();
        let coeff = if y_count.is_multiple_of(4) { -1.0 } else { 1.0 };
        out.push((PauliString::new(labels).expect("n >= 1"), coeff));
    }
    out
}

/// The stabilizer-formalism GHZ witness: identity coefficient `2^(N-2)` minus
/// the permutation-summed Bell-operator terms. Nonnegative on every
/// k-separable state and `2^(N-2) - 2^(N-1)` on the GHZ state.
pub fn mermin_witness(n: usize) -> Result<Witness> {
    if n < 3 {
        return Err(Error::InvalidConfig(
            "the GHZ Bell-operator witness needs at least 3 qubits".into(),
        ));
    }
    let mut terms: BTreeMap<PauliString, f64> = mermin_terms(n).into_iter().collect();
    terms.insert(PauliString::identity(n), 2f64.powi(n as i32 - 2));
    Witness::new(n, terms)
}

/// The non-identity strings of [`mermin_witness`], in canonical order.
pub fn mermin_feature_subset(n: usize) -> Result<FeatureSet> {
    FeatureSet::new(mermin_witness(n)?.feature_strings())
}

/// How a noise tolerance was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ToleranceMethod {
    Scan,
    Analytic,
}

/// Result of a noise-tolerance computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseToleranceReport {
    pub p_star: f64,
    pub method: ToleranceMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step_size: Option<f64>,
    pub expectation_at_target: f64,
}

/// Scan `p = 0, step, 2 step, ..` and report the largest grid point with a
/// strictly negative expectation, stopping at the first nonnegative value or
/// at `p = 1`. A witness that does not detect the target has tolerance 0.
pub fn noise_tolerance_scan(
    w: &Witness,
    rho_e: &DensityMatrix,
    step: f64,
) -> Result<NoiseToleranceReport> {
    if step <= 0.0 || step > 1.0 {
        return Err(Error::InvalidConfig("scan step must be in (0, 1]".into()));
    }
    let at_target = evaluate(w, rho_e)?;
    let mut last_negative: Option<f64> = None;
    let mut k = 0usize;
    loop {
        let p = (k as f64 * step).min(1.0);
        let value = evaluate(w, &werner_state(rho_e, p)?)?;
        if value < 0.0 {
            last_negative = Some(p);
        } else {
            break;
        }
        if p >= 1.0 {
            break;
        }
        k += 1;
    }
    Ok(NoiseToleranceReport {
        p_star: last_negative.unwrap_or(0.0),
        method: ToleranceMethod::Scan,
        step_size: Some(step),
        expectation_at_target: at_target,
    })
}

/// Closed form of the scan: the expectation of a Werner state is affine in
/// `p`, falling from `Tr(rho_e W)` at `p = 0` to the identity coefficient at
/// `p = 1`, so the crossing is `e0 / (e0 - c_I)`, clamped to [0, 1].
pub fn noise_tolerance_analytic(w: &Witness, rho_e: &DensityMatrix) -> Result<NoiseToleranceReport> {
    let e0 = evaluate(w, rho_e)?;
    let c_i = w.identity_coefficient();
    let p_star = if e0 >= 0.0 {
        0.0
    } else if c_i <= 0.0 {
        // never becomes nonnegative along the Werner line
        1.0
    } else {
        (e0 / (e0 - c_i)).clamp(0.0, 1.0)
    };
    Ok(NoiseToleranceReport {
        p_star,
        method: ToleranceMethod::Analytic,
        step_size: None,
        expectation_at_target: e0,
    })
}

/// Noise tolerance of the fidelity-method W witness,
/// `2^N / (N (2^N - 1))`.
pub fn fidelity_noise_tolerance(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidConfig(
            "fidelity witnesses need at least 2 qubits".into(),
        ));
    }
    let pow = 2f64.powi(n as i32);
    Ok(pow / (n as f64 * (pow - 1.0)))
}

/// Normalization conventions: scale every coefficient by one positive
/// constant so the identity term hits a value or matches a reference.
#[derive(Debug, Clone)]
pub enum NormalizeMode<'a> {
    BiasTo(f64),
    MatchIdentityOf(&'a Witness),
}

pub fn normalize(w: &Witness, mode: NormalizeMode<'_>) -> Result<Witness> {
    let current = w.identity_coefficient();
    if current == 0.0 {
        return Err(Error::ZeroIdentityCoefficient);
    }
    let target = match mode {
        NormalizeMode::BiasTo(v) => v,
        NormalizeMode::MatchIdentityOf(reference) => reference.identity_coefficient(),
    };
    let scale = target / current;
    if scale <= 0.0 || !scale.is_finite() {
        return Err(Error::NegativeScale);
    }
    let mut out = w.clone();
    for c in out.terms.values_mut() {
        *c *= scale;
    }
    Ok(out)
}

/// Per-term comparison of two witnesses normalized to the same identity
/// coefficient.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoefficientComparison {
    /// Percent error `100 (c_w / c_ref - 1)` per shared non-identity term,
    /// sign retained.
    pub percent_error: BTreeMap<PauliString, f64>,
    /// Non-identity terms present in the witness but not the reference.
    pub only_in_witness: Vec<PauliString>,
    /// Non-identity terms present in the reference but not the witness.
    pub only_in_reference: Vec<PauliString>,
}

impl CoefficientComparison {
    pub fn max_abs_error(&self) -> f64 {
        self.percent_error
            .values()
            .fold(0.0f64, |acc, e| acc.max(e.abs()))
    }
}

/// Compare coefficients term by term. Both witnesses must already be
/// normalized to the same identity coefficient.
pub fn percent_error_vs(w: &Witness, reference: &Witness) -> Result<CoefficientComparison> {
    let a = w.identity_coefficient();
    let b = reference.identity_coefficient();
    if a == 0.0 || b == 0.0 || (a - b).abs() > 1e-9 * a.abs().max(b.abs()) {
        return Err(Error::UnnormalizedComparison);
    }
    let mut percent_error = BTreeMap::new();
    let mut only_in_witness = Vec::new();
    for (s, &c) in w.non_identity_terms() {
        match reference.terms.get(s) {
            Some(&r) if r != 0.0 => {
                percent_error.insert(s.clone(), 100.0 * (c / r - 1.0));
            }
            _ => only_in_witness.push(s.clone()),
        }
    }
    let only_in_reference = reference
        .non_identity_terms()
        .filter(|(s, _)| !w.terms.contains_key(s))
        .map(|(s, _)| s.clone())
        .collect();
    Ok(CoefficientComparison {
        percent_error,
        only_in_witness,
        only_in_reference,
    })
}

/// Drop non-identity terms with `|coefficient| < cutoff`. The witness must be
/// normalized so the identity coefficient is exactly 1 (the cutoff
/// convention); the identity term always survives.
pub fn prune_by_cutoff(w: &Witness, cutoff: f64) -> Result<Witness> {
    if (w.identity_coefficient() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidConfig(
            "prune cutoffs apply to witnesses normalized to identity = 1".into(),
        ));
    }
    let mut out = w.clone();
    out.terms
        .retain(|s, c| s.is_identity() || c.abs() >= cutoff);
    Ok(out)
}

/// Separability certificate over the Pauli eigenstates and Dirichlet-mixed
/// separable test states.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateReport {
    pub eigenstate_count: usize,
    pub min_eigenstate_expectation: f64,
    pub mixed_count: usize,
    pub min_mixed_expectation: f64,
    pub violations: usize,
    pub tolerance: f64,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Evaluate the witness on every Pauli eigenstate and on `mixed_count`
/// Dirichlet-mixed k-separable states; expectations below `-1e-9` count as
/// violations.
pub fn certify_separable_nonnegative(
    w: &Witness,
    mixed_count: usize,
    alpha: f64,
    fanout: &SeedFanout,
) -> Result<CertificateReport> {
    const TOL: f64 = 1e-9;
    let eigenstates = pauli_eigenstates(w.num_qubits);
    let eigen_values = batch::map_collect(&eigenstates, |psi| evaluate_pure(w, psi));
    let mut min_eigen = f64::INFINITY;
    let mut violations = 0usize;
    for v in eigen_values {
        let v = v?;
        min_eigen = min_eigen.min(v);
        if v < -TOL {
            violations += 1;
        }
    }
    let mixed = separable_test_states(w.num_qubits, mixed_count, alpha, fanout)?;
    let mixed_values = batch::map_collect(&mixed, |rho| evaluate(w, rho));
    let mut min_mixed = f64::INFINITY;
    for v in mixed_values {
        let v = v?;
        min_mixed = min_mixed.min(v);
        if v < -TOL {
            violations += 1;
        }
    }
    Ok(CertificateReport {
        eigenstate_count: eigenstates.len(),
        min_eigenstate_expectation: min_eigen,
        mixed_count,
        min_mixed_expectation: min_mixed,
        violations,
        tolerance: TOL,
    })
}

/// Smallest witness expectation over the `6^N` Pauli eigenstates. A cheap
/// upper bound on the true separable minimum.
pub fn min_eigenstate_expectation(w: &Witness) -> Result<f64> {
    let eigenstates = pauli_eigenstates(w.num_qubits);
    let values = batch::map_collect(&eigenstates, |psi| evaluate_pure(w, psi));
    let mut min = f64::INFINITY;
    for v in values {
        min = min.min(v?);
    }
    Ok(min)
}

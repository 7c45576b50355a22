//! Training and test data generation.
//!
//! Separable training data consists of the `6^N` product eigenstates of the
//! generalized Pauli operators — extreme points of the separable set in
//! feature space — plus a few perturbed neighbors of each, for a total of
//! `6^(N+1)` states at the default of five extras. Entangled training data is
//! a grid of Werner states between the target and `p_max`. Test data mixes
//! random k-separable pure states with symmetric-Dirichlet weights.
//!
//! Every generator takes an explicit RNG or derives per-item substreams from
//! a labeled fanout, so batches are reproducible at any thread count.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::batch;
use crate::error::{Error, Result};
use crate::features::{feature_vector, feature_vector_pure, FeatureSet, FeatureVector};
use crate::linalg::{CMatrix, CVector};
use crate::partitions::{build_catalog, fully_separable_spec, PermutationSpec};
use crate::rng::SeedFanout;
use crate::state::{werner_state, DensityMatrix, StateVector};

/// Where a training or test sample came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleOrigin {
    Eigenstate,
    Perturbed,
    Werner,
    DirichletMixed,
}

impl SampleOrigin {
    pub fn as_str(&self) -> &'static str {
        match self {
            SampleOrigin::Eigenstate => "eigenstate",
            SampleOrigin::Perturbed => "perturbed",
            SampleOrigin::Werner => "werner",
            SampleOrigin::DirichletMixed => "dirichlet-mixed",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "eigenstate" => Ok(SampleOrigin::Eigenstate),
            "perturbed" => Ok(SampleOrigin::Perturbed),
            "werner" => Ok(SampleOrigin::Werner),
            "dirichlet-mixed" => Ok(SampleOrigin::DirichletMixed),
            other => Err(Error::InvalidConfig(format!("unknown origin '{other}'"))),
        }
    }
}

/// Class label: +1 separable, -1 entangled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Label {
    Separable,
    Entangled,
}

impl Label {
    pub fn sign(&self) -> f64 {
        match self {
            Label::Separable => 1.0,
            Label::Entangled => -1.0,
        }
    }

    pub fn from_sign(v: f64) -> Result<Self> {
        if v > 0.0 {
            Ok(Label::Separable)
        } else if v < 0.0 {
            Ok(Label::Entangled)
        } else {
            Err(Error::InvalidConfig("sample label must be +1 or -1".into()))
        }
    }
}

/// One labeled feature vector.
#[derive(Debug, Clone)]
pub struct LabeledSample {
    pub features: FeatureVector,
    pub label: Label,
    pub origin: SampleOrigin,
}

/// A labeled sample collection sharing one feature set.
#[derive(Debug, Clone)]
pub struct TrainingSet {
    pub samples: Vec<LabeledSample>,
    pub feature_set: FeatureSet,
    pub num_qubits: usize,
    pub seed: u64,
}

impl TrainingSet {
    pub fn count_with_label(&self, label: Label) -> usize {
        self.samples.iter().filter(|s| s.label == label).count()
    }

    pub fn count_with_origin(&self, origin: SampleOrigin) -> usize {
        self.samples.iter().filter(|s| s.origin == origin).count()
    }
}

/// Target entangled state kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetKind {
    Ghz,
    W,
}

impl TargetKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ghz" => Ok(TargetKind::Ghz),
            "w" => Ok(TargetKind::W),
            other => Err(Error::InvalidTargetKind(other.to_string())),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            TargetKind::Ghz => "ghz",
            TargetKind::W => "w",
        }
    }
}

/// `|GHZ> = (|0..0> + |1..1>)/sqrt(2)` or `|W> =` the uniform superposition
/// of the single-excitation basis states.
pub fn target_state(kind: TargetKind, n: usize) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::InvalidConfig(
            "target states need at least 2 qubits".into(),
        ));
    }
    let dim = 1usize << n;
    let mut amps = CVector::zeros(dim);
    match kind {
        TargetKind::Ghz => {
            let w = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            amps[0] = w;
            amps[dim - 1] = w;
        }
        TargetKind::W => {
            let w = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
            for q in 0..n {
                amps[1 << q] = w;
            }
        }
    }
    StateVector::new(amps)
}

/// The six single-qubit eigenstates in canonical order
/// X+, X-, Y+, Y-, Z+, Z-.
fn single_qubit_eigenstates() -> [CVector; 6] {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let ih = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    [
        CVector::from_vec(vec![h, h]),   // X+
        CVector::from_vec(vec![h, -h]),  // X-
        CVector::from_vec(vec![h, ih]),  // Y+
        CVector::from_vec(vec![h, -ih]), // Y-
        CVector::from_vec(vec![one, zero]),
        CVector::from_vec(vec![zero, one]),
    ]
}

/// The Pauli string and eigenvalue sign an eigenstate was built from.
/// Index `e` is read as base-6 digits, qubit 1 most significant.
pub fn eigenstate_construction(e: usize, n: usize) -> (crate::pauli::PauliString, f64) {
    use crate::pauli::Pauli;
    let mut labels = Vec::with_capacity(n);
    let mut sign = 1.0;
    let mut rem = e;
    let mut digits = vec![0usize; n];
    for q in (0..n).rev() {
        digits[q] = rem % 6;
        rem /= 6;
    }
    for d in digits {
        labels.push(match d / 2 {
            0 => Pauli::X,
            1 => Pauli::Y,
            _ => Pauli::Z,
        });
        if d % 2 == 1 {
            sign = -sign;
        }
    }
    (crate::pauli::PauliString::new(labels).expect("n >= 1"), sign)
}

/// All `6^N` product eigenstates of the generalized Pauli operators, in
/// canonical order: index read as base-6 digits (qubit 1 most significant),
/// digit order X+, X-, Y+, Y-, Z+, Z-.
pub fn pauli_eigenstates(n: usize) -> Vec<StateVector> {
    let singles = single_qubit_eigenstates();
    let total = 6usize.pow(n as u32);
    batch::map_range(total, |e| {
        let mut rem = e;
        let mut digits = vec![0usize; n];
        for q in (0..n).rev() {
            digits[q] = rem % 6;
            rem /= 6;
        }
        let mut amps = singles[digits[0]].clone();
        for &d in &digits[1..] {
            amps = kron_vec(&amps, &singles[d]);
        }
        StateVector::new(amps).expect("eigenstates are normalized")
    })
}

fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    let mut out = CVector::zeros(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i * b.len() + j] = x * y;
        }
    }
    out
}

/// Single-qubit perturbation: a rotation whose polar angle follows the
/// `(1/2) sin(theta)` density and whose azimuthal angles are uniform on
/// `[0, 2pi)`, all scaled by `sigma`. At `sigma = 0` this is the identity.
fn perturbation_single(sigma: f64, rng: &mut impl Rng) -> CMatrix {
    let u: f64 = rng.gen();
    let theta = (1.0 - 2.0 * u).clamp(-1.0, 1.0).acos();
    let phi: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
    let omega: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
    let half_sum = sigma * (phi + omega) / 2.0;
    let half_diff = sigma * (phi - omega) / 2.0;
    let (s, c) = (sigma * theta / 2.0).sin_cos();
    let e = |x: f64| Complex64::new(0.0, x).exp();
    CMatrix::from_row_slice(
        2,
        2,
        &[
            e(-half_sum) * c,
            -e(half_diff) * s,
            e(-half_diff) * s,
            e(half_sum) * c,
        ],
    )
}

/// Product of independent single-qubit perturbations, one per qubit.
pub fn perturbation_unitary(n: usize, sigma: f64, rng: &mut impl Rng) -> CMatrix {
    let mut u = perturbation_single(sigma, rng);
    for _ in 1..n {
        u = crate::linalg::kron(&u, &perturbation_single(sigma, rng));
    }
    u
}

/// Apply independent single-qubit perturbations directly to a product state,
/// qubit by qubit, without materializing the `2^N x 2^N` unitary.
fn perturb_state(state: &StateVector, sigma: f64, rng: &mut impl Rng) -> StateVector {
    let n = state.num_qubits();
    let dim = state.dim();
    let mut amps = state.amplitudes().clone();
    for q in 0..n {
        let u = perturbation_single(sigma, rng);
        let stride = 1usize << (n - 1 - q);
        let mut next = CVector::zeros(dim);
        for j in 0..dim {
            let bit = (j >> (n - 1 - q)) & 1;
            let j0 = j & !stride;
            let j1 = j | stride;
            next[j] = u[(bit, 0)] * amps[j0] + u[(bit, 1)] * amps[j1];
        }
        amps = next;
    }
    StateVector::normalized(amps).expect("local unitaries preserve norm")
}

/// Every Pauli eigenstate plus `extras_per_eigenstate` perturbed copies;
/// `6^N * (1 + extras)` product states in total. Deterministic in the seed.
pub fn separable_training_states(
    n: usize,
    extras_per_eigenstate: usize,
    sigma: f64,
    fanout: &SeedFanout,
) -> Vec<(StateVector, SampleOrigin)> {
    let eigenstates = pauli_eigenstates(n);
    let indexed: Vec<(usize, StateVector)> = eigenstates.into_iter().enumerate().collect();
    let per_item: Vec<Vec<(StateVector, SampleOrigin)>> = batch::map_collect(&indexed, |(e, state)| {
        let mut group = Vec::with_capacity(1 + extras_per_eigenstate);
        group.push((state.clone(), SampleOrigin::Eigenstate));
        let mut rng = fanout.item_stream("separable-training", *e as u64);
        for _ in 0..extras_per_eigenstate {
            group.push((perturb_state(state, sigma, &mut rng), SampleOrigin::Perturbed));
        }
        group
    });
    per_item.into_iter().flatten().collect()
}

/// Werner states on a linear grid `p_j = p_max * j / (count - 1)`; a single
/// state sits at `p_max` when `count == 1`.
pub fn entangled_training_states(
    rho_e: &DensityMatrix,
    count: usize,
    p_max: f64,
) -> Result<Vec<DensityMatrix>> {
    if count < 1 {
        return Err(Error::InvalidConfig(
            "need at least one entangled state".into(),
        ));
    }
    if !(0.0 < p_max && p_max < 1.0) {
        return Err(Error::InvalidProbability(p_max));
    }
    (0..count)
        .map(|j| {
            let p = if count == 1 {
                p_max
            } else {
                p_max * j as f64 / (count - 1) as f64
            };
            werner_state(rho_e, p)
        })
        .collect()
}

/// Nonnegative weights summing to 1, distributed symmetric-Dirichlet(alpha),
/// via normalized Gamma(alpha, 1) draws.
pub fn dirichlet_weights(alpha: f64, count: usize, rng: &mut impl Rng) -> Result<Vec<f64>> {
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidAlpha(alpha));
    }
    if count == 0 {
        return Err(Error::InvalidConfig("weight count must be >= 1".into()));
    }
    if count == 1 {
        return Ok(vec![1.0]);
    }
    let gamma = Gamma::new(alpha, 1.0).map_err(|_| Error::InvalidAlpha(alpha))?;
    loop {
        let draws: Vec<f64> = (0..count).map(|_| gamma.sample(rng)).collect();
        let total: f64 = draws.iter().sum();
        // Gamma draws at tiny alpha can underflow to an all-zero vector.
        if total > 0.0 && total.is_finite() {
            return Ok(draws.into_iter().map(|g| g / total).collect());
        }
    }
}

/// Uniform random pure state on `dim` dimensions (normalized complex
/// Gaussian vector).
fn random_pure(dim: usize, rng: &mut impl Rng) -> CVector {
    loop {
        let amps = CVector::from_iterator(
            dim,
            (0..dim).map(|_| {
                Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
            }),
        );
        let norm = amps.norm();
        if norm > 1e-12 {
            return amps / Complex64::new(norm, 0.0);
        }
    }
}

/// Random pure state that is a product across the arrangement's parts:
/// a uniform random pure state per part, tensored in canonical order, then
/// moved into place by the recorded swap sequence.
pub fn random_kseparable_pure(
    n: usize,
    spec: &PermutationSpec,
    rng: &mut impl Rng,
) -> Result<StateVector> {
    if spec.num_qubits() != n {
        return Err(Error::DimensionMismatch {
            context: "arrangement vs qubit count",
            expected: n,
            actual: spec.num_qubits(),
        });
    }
    let mut amps = random_pure(1usize << spec.parts[0], rng);
    for &nu in &spec.parts[1..] {
        amps = kron_vec(&amps, &random_pure(1usize << nu, rng));
    }
    let mut state = StateVector::new(amps)?;
    for &(a, b) in &spec.swap_sequence {
        state = state.swap_qubits(a, b)?;
    }
    Ok(state)
}

/// Per-state mixture of `2^N` random k-separable pure states with
/// symmetric-Dirichlet weights; arrangements drawn uniformly from the
/// catalog plus the fully separable one.
pub fn separable_test_states(
    n: usize,
    count: usize,
    alpha: f64,
    fanout: &SeedFanout,
) -> Result<Vec<DensityMatrix>> {
    let catalog = build_catalog(n)?;
    let mut specs = catalog.entries.clone();
    specs.push(fully_separable_spec(n));
    let results = batch::map_range(count, |i| {
        let mut rng = fanout.item_stream("separable-test", i as u64);
        separable_test_state(n, alpha, &specs, &mut rng)
    });
    results.into_iter().collect()
}

fn separable_test_state(
    n: usize,
    alpha: f64,
    specs: &[PermutationSpec],
    rng: &mut ChaCha8Rng,
) -> Result<DensityMatrix> {
    let mixers = 1usize << n;
    let weights = dirichlet_weights(alpha, mixers, rng)?;
    let states = (0..mixers)
        .map(|_| {
            let spec = &specs[rng.gen_range(0..specs.len())];
            random_kseparable_pure(n, spec, rng)
        })
        .collect::<Result<Vec<_>>>()?;
    DensityMatrix::mixture(&states, &weights)
}

/// Assemble a training set: separable product states and entangled Werner
/// states mapped into feature space over `feature_set`.
#[allow(clippy::too_many_arguments)]
pub fn build_training_set(
    kind: TargetKind,
    n: usize,
    feature_set: &FeatureSet,
    extras_per_eigenstate: usize,
    sigma: f64,
    entangled_count: usize,
    entangled_p_max: f64,
    fanout: &SeedFanout,
) -> Result<TrainingSet> {
    let separable = separable_training_states(n, extras_per_eigenstate, sigma, fanout);
    let mut samples: Vec<LabeledSample> = batch::map_collect(&separable, |(state, origin)| {
        feature_vector_pure(state, feature_set).map(|features| LabeledSample {
            features,
            label: Label::Separable,
            origin: *origin,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let rho_e = target_state(kind, n)?.projector();
    let entangled = entangled_training_states(&rho_e, entangled_count, entangled_p_max)?;
    let entangled_samples: Vec<LabeledSample> = batch::map_collect(&entangled, |rho| {
        feature_vector(rho, feature_set).map(|features| LabeledSample {
            features,
            label: Label::Entangled,
            origin: SampleOrigin::Werner,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    samples.extend(entangled_samples);

    Ok(TrainingSet {
        samples,
        feature_set: feature_set.clone(),
        num_qubits: n,
        seed: fanout.master(),
    })
}

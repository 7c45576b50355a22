//! Cross-module property suites: convexity transport, operator identities,
//! relabeling invariance, scaling invariance, and separability smoke checks.

use proptest::prelude::*;
use rand::Rng;
use wforge_core::features::{feature_vector, FeatureSet};
use wforge_core::linalg::{unitarity_defect, CMatrix, CVector};
use wforge_core::pauli::{operator_of, PauliString};
use wforge_core::rng::SeedFanout;
use wforge_core::state::{conjugate_by, expectation, swap_operator, werner_state, DensityMatrix};
use wforge_core::statesets::{
    dirichlet_weights, pauli_eigenstates, separable_test_states, separable_training_states,
    target_state, TargetKind,
};
use wforge_core::witness::{
    evaluate, evaluate_pure, mermin_witness, noise_tolerance_analytic, noise_tolerance_scan,
    normalize, NormalizeMode,
};

fn random_density(n: usize, rng: &mut impl Rng) -> DensityMatrix {
    use num_complex::Complex64;
    use rand_distr::{Distribution, StandardNormal};
    let dim = 1usize << n;
    let mixers = 4;
    let states: Vec<_> = (0..mixers)
        .map(|_| {
            let amps = CVector::from_iterator(
                dim,
                (0..dim).map(|_| {
                    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
                }),
            );
            wforge_core::StateVector::normalized(amps).unwrap()
        })
        .collect();
    let weights = dirichlet_weights(1.0, mixers, rng).unwrap();
    DensityMatrix::mixture(&states, &weights).unwrap()
}

fn random_string(n: usize, rng: &mut impl Rng) -> PauliString {
    PauliString::from_index(rng.gen_range(0..4usize.pow(n as u32)), n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Mapping states to feature vectors commutes with convex mixing.
    #[test]
    fn convexity_transport(seed in 0u64..1000, p in 0.0f64..=1.0) {
        let mut rng = SeedFanout::new(seed).stream("convexity");
        let n = 3;
        let rho1 = random_density(n, &mut rng);
        let rho2 = random_density(n, &mut rng);
        let set = FeatureSet::new((0..10).map(|_| random_string(n, &mut rng)).collect()).unwrap();

        let mixed_entries = rho1.entries() * num_complex::Complex64::new(p, 0.0)
            + rho2.entries() * num_complex::Complex64::new(1.0 - p, 0.0);
        let mixed = DensityMatrix::new(mixed_entries).unwrap();

        let f1 = feature_vector(&rho1, &set).unwrap();
        let f2 = feature_vector(&rho2, &set).unwrap();
        let fm = feature_vector(&mixed, &set).unwrap();
        for i in 0..set.len() {
            let expected = p * f1.values[i] + (1.0 - p) * f2.values[i];
            prop_assert!((fm.values[i] - expected).abs() < 1e-9);
        }
    }

    /// Every Pauli string operator is Hermitian and an involution.
    #[test]
    fn operators_are_hermitian_involutions(seed in 0u64..1000, n in 1usize..=4) {
        let mut rng = SeedFanout::new(seed).stream("ops");
        let s = random_string(n, &mut rng);
        let op = operator_of(&s).unwrap();
        let dim = op.nrows();
        let herm = wforge_core::linalg::hermiticity_defect(&op);
        prop_assert!(herm < 1e-9);
        let sq = &op * &op;
        let id = CMatrix::identity(dim, dim);
        let defect = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .map(|(i, j)| (sq[(i, j)] - id[(i, j)]).norm())
            .fold(0.0f64, f64::max);
        prop_assert!(defect < 1e-9);
    }

    /// Expectations are invariant under simultaneous qubit relabeling.
    #[test]
    fn relabeling_invariance(seed in 0u64..1000) {
        let mut rng = SeedFanout::new(seed).stream("relabel");
        let n = 3;
        let rho = random_density(n, &mut rng);
        let s = random_string(n, &mut rng);
        let a = rng.gen_range(1..n);
        let b = rng.gen_range(a + 1..=n);
        let swap = swap_operator(a, b, n).unwrap();
        let moved = conjugate_by(&rho, &swap).unwrap();
        let permuted = s.swap_qubits(a, b).unwrap();
        let before = expectation(&rho, &s).unwrap();
        let after = expectation(&moved, &permuted).unwrap();
        prop_assert!((before - after).abs() < 1e-9);
    }

    /// Werner mixing always yields a valid density matrix.
    #[test]
    fn werner_stays_valid(seed in 0u64..1000, p in 0.0f64..=1.0) {
        let mut rng = SeedFanout::new(seed).stream("werner");
        let rho = random_density(2, &mut rng);
        let w = werner_state(&rho, p).unwrap();
        prop_assert!(DensityMatrix::new(w.entries().clone()).is_ok());
    }

    /// Positive scaling changes neither classification signs nor the noise
    /// tolerance (both scan and closed form).
    #[test]
    fn positive_scaling_invariance(seed in 0u64..200, scale in 0.05f64..20.0) {
        let mut rng = SeedFanout::new(seed).stream("scale");
        let w = mermin_witness(3).unwrap();
        let scaled = normalize(&w, NormalizeMode::BiasTo(w.identity_coefficient() * scale)).unwrap();
        for _ in 0..5 {
            let rho = random_density(3, &mut rng);
            let a = evaluate(&w, &rho).unwrap();
            let b = evaluate(&scaled, &rho).unwrap();
            prop_assert!((a.signum() - b.signum()).abs() < f64::EPSILON || a.abs() < 1e-12);
        }
        let ghz = target_state(TargetKind::Ghz, 3).unwrap().projector();
        let pa = noise_tolerance_analytic(&w, &ghz).unwrap().p_star;
        let pb = noise_tolerance_analytic(&scaled, &ghz).unwrap().p_star;
        prop_assert!((pa - pb).abs() < 1e-12);
        let sa = noise_tolerance_scan(&w, &ghz, 0.01).unwrap().p_star;
        let sb = noise_tolerance_scan(&scaled, &ghz, 0.01).unwrap().p_star;
        prop_assert!((sa - sb).abs() < 1e-12);
    }
}

#[test]
fn training_set_counting_identity() {
    for n in [3usize, 4, 5] {
        let fan = SeedFanout::new(99);
        let states = separable_training_states(n, 5, 0.05, &fan);
        assert_eq!(states.len(), 6usize.pow(n as u32 + 1), "N = {n}");
    }
}

#[test]
fn generated_separable_states_pass_the_bundled_witness() {
    // eigenstates, perturbed neighbors, and Dirichlet mixtures all evaluate
    // nonnegatively under the stabilizer GHZ witness
    let n = 3;
    let w = mermin_witness(n).unwrap();
    let fan = SeedFanout::new(7);
    for (state, _) in separable_training_states(n, 2, 0.05, &fan) {
        assert!(evaluate_pure(&w, &state).unwrap() >= -1e-9);
    }
    for rho in separable_test_states(n, 300, 0.1, &fan).unwrap() {
        assert!(evaluate(&w, &rho).unwrap() >= -1e-9);
    }
}

#[test]
fn perturbed_states_have_unit_schmidt_rank_on_every_cut() {
    let n = 3;
    let fan = SeedFanout::new(13);
    let states = separable_training_states(n, 2, 0.05, &fan);
    for (state, _) in states.iter().step_by(97) {
        for q in 1..=n {
            // reshape amplitudes into (qubit q) x (rest) and inspect the
            // singular values
            let mut m = CMatrix::zeros(2, 1 << (n - 1));
            for j in 0..state.dim() {
                let bit = (j >> (n - q)) & 1;
                let hi = j >> (n - q + 1);
                let lo = j & ((1 << (n - q)) - 1);
                let rest = (hi << (n - q)) | lo;
                m[(bit, rest)] = state.amplitudes()[j];
            }
            let sv = wforge_core::linalg::singular_values(&m);
            assert!(sv[1] < 1e-8, "cut at qubit {q}: {sv:?}");
        }
    }
}

#[test]
fn scan_and_analytic_agree_within_one_step_on_fixtures() {
    for (name, w) in wforge_core::fixtures::all().unwrap() {
        let rho = target_state(TargetKind::W, w.num_qubits).unwrap().projector();
        let scan = noise_tolerance_scan(&w, &rho, 0.001).unwrap();
        let analytic = noise_tolerance_analytic(&w, &rho).unwrap();
        assert!(
            (scan.p_star - analytic.p_star).abs() <= 0.001 + 1e-12,
            "{name}: scan {} vs analytic {}",
            scan.p_star,
            analytic.p_star
        );
    }
}

#[test]
fn eigenstates_are_extreme_points_of_the_feature_map() {
    // all coordinates of an eigenstate feature vector are -1, 0, or +1
    let set = FeatureSet::full(2);
    for state in pauli_eigenstates(2) {
        let f = wforge_core::features::feature_vector_pure(&state, &set).unwrap();
        for v in f.values {
            let nearest = [-1.0f64, 0.0, 1.0]
                .iter()
                .map(|t| (v - t).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-10, "coordinate {v}");
        }
    }
}

#[test]
fn swap_operators_are_unitary_permutations() {
    for n in 2..=4 {
        for a in 1..n {
            for b in (a + 1)..=n {
                let s = swap_operator(a, b, n).unwrap();
                assert!(unitarity_defect(&s) < 1e-12);
                let sq = &s * &s;
                let id = CMatrix::identity(s.nrows(), s.nrows());
                for i in 0..s.nrows() {
                    for j in 0..s.nrows() {
                        assert!((sq[(i, j)] - id[(i, j)]).norm() < 1e-12);
                    }
                }
            }
        }
    }
}

//! Linear entanglement witnesses for N-qubit target states.
//!
//! This crate constructs, bias-corrects, prunes, and verifies entanglement
//! witnesses written as sparse real combinations of generalized Pauli
//! observables. The pipeline:
//!
//! 1. **Data** ([`statesets`]): separable training states from the eigenstates
//!    of generalized Pauli operators (plus slightly perturbed neighbors) and
//!    entangled Werner states near a GHZ or W target.
//! 2. **Orientation** ([`svm`]): a soft-margin linear classifier over feature
//!    vectors of Pauli expectation values fixes every coefficient except the
//!    identity term.
//! 3. **Placement** ([`mso`]): gradient descent over a constrained
//!    parameterization of all k-separable mixed states finds the separable
//!    state with the lowest witness expectation; subtracting that value from
//!    the bias guarantees no separable state is misclassified while
//!    maximizing noise tolerance.
//! 4. **Pruning** ([`rfe`]): recursive feature elimination retrains on
//!    shrinking feature subsets, keeping the subset with the best noise
//!    tolerance at each step.
//! 5. **Analysis** ([`witness`]): evaluation, noise-tolerance scans and the
//!    closed form, reference stabilizer witnesses, normalization, coefficient
//!    comparison, and separability certificates.
//!
//! Systems up to 5 qubits are exercised end to end; dense `2^N x 2^N`
//! complex algebra keeps everything simple at that scale. Qubit indices are
//! 1-based in every interface and qubit 1 is the leftmost tensor factor.
//!
//! With the default `parallel` feature, batch generation and evaluation run
//! on rayon with order-preserving collection, so outputs are byte-identical
//! at any thread count. Disable default features for a fully sequential
//! build.

pub mod batch;
pub mod error;
pub mod features;
pub mod fixtures;
pub mod linalg;
pub mod mso;
pub mod partitions;
pub mod pauli;
pub mod rfe;
pub mod rng;
pub mod state;
pub mod statesets;
pub mod svm;
pub mod witness;

pub use error::{Error, Result};
pub use features::{feature_vector, feature_vector_pure, FeatureSet, FeatureVector};
pub use pauli::{all_strings, operator_of, pauli_matrix, Pauli, PauliString};
pub use state::{
    conjugate_by, expectation, expectation_pure, swap_operator, werner_state, DensityMatrix,
    StateVector,
};

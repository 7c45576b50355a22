//! State vectors, density matrices, expectation values, and qubit swaps.
//!
//! Expectation values never form the operator-state product matrix: a Pauli
//! string has exactly one nonzero entry per column, so `Tr(sigma rho)` reduces
//! to a single `O(2^N)` sweep over basis indices. The dense `operator_of`
//! route stays available as an independent cross-check in tests.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, hermiticity_defect, unitarity_defect, CMatrix, CVector};
use crate::pauli::{basis_phase, PauliString};

/// Construction tolerance for norms, Hermiticity, and trace.
pub const CONSTRUCTION_TOL: f64 = 1e-10;
/// Eigenvalues may dip this far below zero before a matrix is rejected.
pub const PSD_TOL: f64 = 1e-8;
/// Tolerance applied when checking a matrix claimed to be unitary.
pub const UNITARY_TOL: f64 = 1e-9;

/// A pure state of `N` qubits: `2^N` complex amplitudes with unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
    num_qubits: usize,
}

impl StateVector {
    pub fn new(amplitudes: CVector) -> Result<Self> {
        let dim = amplitudes.len();
        let n = qubits_for_dim(dim)?;
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::NotNormalized((norm - 1.0).abs()));
        }
        Ok(StateVector {
            amplitudes,
            num_qubits: n,
        })
    }

    /// Normalize an arbitrary nonzero vector into a state.
    pub fn normalized(mut amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(1.0));
        }
        amplitudes /= Complex64::new(norm, 0.0);
        StateVector::new(amplitudes)
    }

    /// Computational basis state `|index>`.
    pub fn basis(index: usize, n: usize) -> Self {
        let dim = 1usize << n;
        assert!(index < dim, "basis index out of range");
        let mut amps = CVector::zeros(dim);
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector {
            amplitudes: amps,
            num_qubits: n,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// `|psi><psi|` as a density matrix.
    pub fn projector(&self) -> DensityMatrix {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix {
            entries: m,
            num_qubits: self.num_qubits,
        }
    }

    /// Tensor product, `self` on the left (more significant qubits).
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let dim = self.dim() * other.dim();
        let mut amps = CVector::zeros(dim);
        for (i, a) in self.amplitudes.iter().enumerate() {
            for (j, b) in other.amplitudes.iter().enumerate() {
                amps[i * other.dim() + j] = a * b;
            }
        }
        StateVector {
            amplitudes: amps,
            num_qubits: self.num_qubits + other.num_qubits,
        }
    }

    /// Exchange qubits `a` and `b` (1-based) by relabeling basis indices.
    pub fn swap_qubits(&self, a: usize, b: usize) -> Result<StateVector> {
        let n = self.num_qubits;
        check_pair(a, b, n)?;
        let mut amps = CVector::zeros(self.dim());
        for j in 0..self.dim() {
            amps[transpose_bits(j, a, b, n)] = self.amplitudes[j];
        }
        Ok(StateVector {
            amplitudes: amps,
            num_qubits: n,
        })
    }

    /// Apply a unitary matrix.
    pub fn apply(&self, u: &CMatrix) -> Result<StateVector> {
        if u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                context: "operator applied to state",
                expected: self.dim(),
                actual: u.ncols(),
            });
        }
        StateVector::new(u * &self.amplitudes)
    }
}

/// A mixed state of `N` qubits: Hermitian, unit-trace, PSD `2^N x 2^N` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
    num_qubits: usize,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        let n = qubits_for_dim(entries.nrows())?;
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                context: "density matrix must be square",
                expected: entries.nrows(),
                actual: entries.ncols(),
            });
        }
        let herm = hermiticity_defect(&entries);
        if herm > CONSTRUCTION_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let trace: Complex64 = (0..entries.nrows()).map(|i| entries[(i, i)]).sum();
        if (trace.re - 1.0).abs() > CONSTRUCTION_TOL || trace.im.abs() > CONSTRUCTION_TOL {
            return Err(Error::BadTrace((trace - Complex64::new(1.0, 0.0)).norm()));
        }
        let min_eig = hermitian_eigenvalues(&entries)[0];
        if min_eig < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite(min_eig));
        }
        Ok(DensityMatrix {
            entries,
            num_qubits: n,
        })
    }

    /// Maximally mixed state `I / 2^N`.
    pub fn maximally_mixed(n: usize) -> Self {
        let dim = 1usize << n;
        let entries = CMatrix::identity(dim, dim) * Complex64::new(1.0 / dim as f64, 0.0);
        DensityMatrix {
            entries,
            num_qubits: n,
        }
    }

    /// Convex mixture of pure states. Weights must be nonnegative and sum to 1.
    pub fn mixture(states: &[StateVector], weights: &[f64]) -> Result<Self> {
        if states.is_empty() || states.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                context: "mixture states vs weights",
                expected: states.len(),
                actual: weights.len(),
            });
        }
        let n = states[0].num_qubits();
        let dim = states[0].dim();
        let mut entries = CMatrix::zeros(dim, dim);
        for (state, &w) in states.iter().zip(weights) {
            if state.num_qubits() != n {
                return Err(Error::DimensionMismatch {
                    context: "mixture state size",
                    expected: dim,
                    actual: state.dim(),
                });
            }
            if !(0.0..=1.0 + 1e-12).contains(&w) {
                return Err(Error::InvalidProbability(w));
            }
            let amps = state.amplitudes();
            let scaled = amps * Complex64::new(w, 0.0);
            entries += scaled * amps.adjoint();
        }
        DensityMatrix::new(entries)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.entries[(i, i)]).sum()
    }

    pub fn purity(&self) -> f64 {
        let sq = &self.entries * &self.entries;
        (0..self.dim()).map(|i| sq[(i, i)].re).sum()
    }
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::DimensionMismatch {
            context: "dimension must be a power of two >= 2",
            expected: 2,
            actual: dim,
        });
    }
    Ok(dim.trailing_zeros() as usize)
}

fn check_pair(a: usize, b: usize, n: usize) -> Result<()> {
    if a < 1 || b > n || a >= b {
        return Err(Error::InvalidQubitPair { a, b, n });
    }
    Ok(())
}

/// Basis index with the bits of qubits `a` and `b` (1-based, qubit 1 = msb)
/// exchanged.
fn transpose_bits(index: usize, a: usize, b: usize, n: usize) -> usize {
    let pa = n - a;
    let pb = n - b;
    let bit_a = (index >> pa) & 1;
    let bit_b = (index >> pb) & 1;
    if bit_a == bit_b {
        index
    } else {
        index ^ (1 << pa) ^ (1 << pb)
    }
}

/// Expectation value `Tr(sigma rho)` of a Pauli string on a mixed state.
pub fn expectation(rho: &DensityMatrix, pstring: &PauliString) -> Result<f64> {
    if pstring.num_qubits() != rho.num_qubits() {
        return Err(Error::DimensionMismatch {
            context: "Pauli string vs density matrix",
            expected: rho.num_qubits(),
            actual: pstring.num_qubits(),
        });
    }
    let x = pstring.x_mask();
    let z = pstring.z_mask();
    let y = pstring.y_count();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..rho.dim() {
        acc += basis_phase(j, z, y) * rho.entries[(j, j ^ x)];
    }
    finalize_expectation(acc)
}

/// Expectation value `<psi| sigma |psi>` of a Pauli string on a pure state.
pub fn expectation_pure(psi: &StateVector, pstring: &PauliString) -> Result<f64> {
    if pstring.num_qubits() != psi.num_qubits() {
        return Err(Error::DimensionMismatch {
            context: "Pauli string vs state vector",
            expected: psi.num_qubits(),
            actual: pstring.num_qubits(),
        });
    }
    let x = pstring.x_mask();
    let z = pstring.z_mask();
    let y = pstring.y_count();
    let amps = psi.amplitudes();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..psi.dim() {
        acc += amps[j ^ x].conj() * basis_phase(j, z, y) * amps[j];
    }
    finalize_expectation(acc)
}

fn finalize_expectation(value: Complex64) -> Result<f64> {
    if value.im.abs() > 1e-9 {
        return Err(Error::ComplexExpectation(value.im));
    }
    let re = value.re;
    if !(-1.0 - 1e-9..=1.0 + 1e-9).contains(&re) {
        return Err(Error::ExpectationOutOfRange(re));
    }
    Ok(re.clamp(-1.0, 1.0))
}

/// Werner mixture `(1-p) rho_e + p I/2^N`.
pub fn werner_state(rho_e: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let dim = rho_e.dim();
    let mut entries = rho_e.entries() * Complex64::new(1.0 - p, 0.0);
    let noise = p / dim as f64;
    for i in 0..dim {
        entries[(i, i)] += Complex64::new(noise, 0.0);
    }
    Ok(DensityMatrix {
        entries,
        num_qubits: rho_e.num_qubits(),
    })
}

/// Dense operator exchanging qubits `a` and `b` (1-based) of an `n`-qubit
/// system. Equal to the palindromic product of adjacent swaps
/// `S_a .. S_{b-2} S_{b-1} S_{b-2} .. S_a`; a permutation matrix, hence
/// unitary and Hermitian.
pub fn swap_operator(a: usize, b: usize, n: usize) -> Result<CMatrix> {
    check_pair(a, b, n)?;
    let dim = 1usize << n;
    let mut m = CMatrix::zeros(dim, dim);
    for j in 0..dim {
        m[(transpose_bits(j, a, b, n), j)] = Complex64::new(1.0, 0.0);
    }
    Ok(m)
}

/// Conjugation `U rho U^H` by a unitary.
pub fn conjugate_by(rho: &DensityMatrix, u: &CMatrix) -> Result<DensityMatrix> {
    if u.nrows() != rho.dim() || u.ncols() != rho.dim() {
        return Err(Error::DimensionMismatch {
            context: "unitary vs density matrix",
            expected: rho.dim(),
            actual: u.nrows(),
        });
    }
    let defect = unitarity_defect(u);
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    let entries = u * rho.entries() * u.adjoint();
    Ok(DensityMatrix {
        entries,
        num_qubits: rho.num_qubits(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::operator_of;
    use approx::assert_relative_eq;

    fn ghz(n: usize) -> StateVector {
        let dim = 1usize << n;
        let mut amps = CVector::zeros(dim);
        let w = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[0] = w;
        amps[dim - 1] = w;
        StateVector::new(amps).unwrap()
    }

    /// Oracle: expectation through the dense operator product.
    fn expectation_dense(rho: &DensityMatrix, s: &PauliString) -> f64 {
        let op = operator_of(s).unwrap();
        let prod = op * rho.entries();
        let tr: Complex64 = (0..prod.nrows()).map(|i| prod[(i, i)]).sum();
        assert!(tr.im.abs() < 1e-10);
        tr.re
    }

    #[test]
    fn z_on_ground_state() {
        let rho = StateVector::basis(0, 1).projector();
        assert_relative_eq!(expectation(&rho, &"Z".parse().unwrap()).unwrap(), 1.0);
    }

    #[test]
    fn maximally_mixed_kills_non_identity() {
        let rho = DensityMatrix::maximally_mixed(3);
        for s in ["XYZ", "ZZZ", "XXI"] {
            assert_relative_eq!(
                expectation(&rho, &s.parse().unwrap()).unwrap(),
                0.0,
                epsilon = 1e-12
            );
        }
        assert_relative_eq!(
            expectation(&rho, &"III".parse().unwrap()).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn ghz3_xxx_expectation_matches_dense_trace() {
        let rho = ghz(3).projector();
        let s: PauliString = "XXX".parse().unwrap();
        let fast = expectation(&rho, &s).unwrap();
        assert_relative_eq!(fast, 1.0, epsilon = 1e-12);
        assert_relative_eq!(fast, expectation_dense(&rho, &s), epsilon = 1e-12);
    }

    #[test]
    fn fast_expectation_agrees_with_dense_everywhere() {
        let rho = ghz(3).projector();
        for s in crate::pauli::all_strings(3) {
            let fast = expectation(&rho, &s).unwrap();
            assert_relative_eq!(fast, expectation_dense(&rho, &s), epsilon = 1e-10);
        }
    }

    #[test]
    fn pure_expectation_matches_mixed_path() {
        let psi = ghz(3);
        let rho = psi.projector();
        for s in ["XYY", "ZZI", "YXY", "XIZ"] {
            let s: PauliString = s.parse().unwrap();
            assert_relative_eq!(
                expectation_pure(&psi, &s).unwrap(),
                expectation(&rho, &s).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn werner_endpoints() {
        let rho = ghz(3).projector();
        let w0 = werner_state(&rho, 0.0).unwrap();
        assert_relative_eq!(
            expectation(&w0, &"XXX".parse().unwrap()).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        let w1 = werner_state(&rho, 1.0).unwrap();
        assert_relative_eq!(
            expectation(&w1, &"XXX".parse().unwrap()).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        let wh = werner_state(&rho, 0.5).unwrap();
        assert_relative_eq!(
            expectation(&wh, &"XXX".parse().unwrap()).unwrap(),
            0.5,
            epsilon = 1e-12
        );
        assert!(werner_state(&rho, 1.2).is_err());
    }

    #[test]
    fn werner_output_is_valid_density_matrix() {
        let rho = ghz(3).projector();
        let w = werner_state(&rho, 0.37).unwrap();
        assert!(DensityMatrix::new(w.entries().clone()).is_ok());
    }

    #[test]
    fn swap_is_unitary_and_acts_on_basis() {
        let s = swap_operator(1, 2, 2).unwrap();
        assert!(unitarity_defect(&s) < 1e-12);
        // |01> -> |10>
        let psi = StateVector::basis(0b01, 2).apply(&s).unwrap();
        assert_relative_eq!(psi.amplitudes()[0b10].re, 1.0);
    }

    #[test]
    fn non_adjacent_swap_on_basis_state() {
        let s = swap_operator(1, 3, 3).unwrap();
        let psi = StateVector::basis(0b100, 3).apply(&s).unwrap();
        assert_relative_eq!(psi.amplitudes()[0b001].re, 1.0);
        // and a state with the middle qubit set
        let psi = StateVector::basis(0b110, 3).apply(&s).unwrap();
        assert_relative_eq!(psi.amplitudes()[0b011].re, 1.0);
    }

    #[test]
    fn swap_rejects_bad_indices() {
        assert!(swap_operator(2, 2, 3).is_err());
        assert!(swap_operator(0, 1, 3).is_err());
        assert!(swap_operator(1, 4, 3).is_err());
    }

    #[test]
    fn conjugation_preserves_spectrum() {
        let rho = ghz(2).projector();
        let u = swap_operator(1, 2, 2).unwrap();
        let conj = conjugate_by(&rho, &u).unwrap();
        let before = hermitian_eigenvalues(rho.entries());
        let after = hermitian_eigenvalues(conj.entries());
        for (x, y) in before.iter().zip(after.iter()) {
            assert_relative_eq!(x, y, epsilon = 1e-8);
        }
        assert_relative_eq!(conj.trace().re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn conjugation_by_swap_moves_basis_projector() {
        let rho = StateVector::basis(0b01, 2).projector();
        let u = swap_operator(1, 2, 2).unwrap();
        let moved = conjugate_by(&rho, &u).unwrap();
        assert_relative_eq!(moved.entries()[(0b10, 0b10)].re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn conjugation_rejects_non_unitary() {
        let rho = DensityMatrix::maximally_mixed(1);
        let mut u = CMatrix::identity(2, 2);
        u[(0, 0)] = Complex64::new(2.0, 0.0);
        assert!(matches!(conjugate_by(&rho, &u), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn density_matrix_invariants_enforced() {
        // non-unit trace
        let m = CMatrix::identity(2, 2);
        assert!(DensityMatrix::new(m).is_err());
        // non-Hermitian
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        m[(0, 1)] = Complex64::new(0.5, 0.0);
        assert!(DensityMatrix::new(m).is_err());
        // negative eigenvalue
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = Complex64::new(1.5, 0.0);
        m[(1, 1)] = Complex64::new(-0.5, 0.0);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotPositiveSemidefinite(_))
        ));
    }
}

//! Generalized Pauli strings and their operators.
//!
//! A [`PauliString`] is a label over `{I, X, Y, Z}^N`; qubit 1 is the leftmost
//! symbol and the leftmost tensor factor. Strings order canonically by their
//! base-4 index (I=0, X=1, Y=2, Z=3, leftmost most significant), which is also
//! the coordinate order of the full feature space.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, CMatrix};

/// Largest qubit count for which dense operators may be materialized.
pub const MAX_QUBITS: usize = 6;

/// Single-qubit Pauli symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::InvalidPauliSymbol(other)),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn digit(self) -> usize {
        match self {
            Pauli::I => 0,
            Pauli::X => 1,
            Pauli::Y => 2,
            Pauli::Z => 3,
        }
    }
}

/// The standard 2x2 matrix of a single Pauli symbol.
pub fn pauli_matrix(symbol: Pauli) -> CMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match symbol {
        Pauli::I => CMatrix::from_row_slice(2, 2, &[one, z, z, one]),
        Pauli::X => CMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        Pauli::Y => CMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        Pauli::Z => CMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
    }
}

/// A tensor product of single-qubit Pauli symbols, qubit 1 leftmost.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(labels: Vec<Pauli>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyPauliString);
        }
        Ok(PauliString(labels))
    }

    /// The all-identity string on `n` qubits.
    pub fn identity(n: usize) -> Self {
        PauliString(vec![Pauli::I; n])
    }

    /// String from its canonical base-4 index.
    pub fn from_index(index: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPauliString);
        }
        let mut labels = vec![Pauli::I; n];
        let mut rem = index;
        for q in (0..n).rev() {
            labels[q] = Pauli::ALL[rem % 4];
            rem /= 4;
        }
        PauliString::new(labels)
    }

    /// Canonical index: base-4 digits, leftmost most significant.
    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, p| acc * 4 + p.digit())
    }

    pub fn num_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn labels(&self) -> &[Pauli] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// Bitmask with a set bit for every qubit carrying X or Y
    /// (qubit 1 maps to the most significant of the low `n` bits).
    pub fn x_mask(&self) -> usize {
        self.mask(|p| matches!(p, Pauli::X | Pauli::Y))
    }

    /// Bitmask with a set bit for every qubit carrying Z or Y.
    pub fn z_mask(&self) -> usize {
        self.mask(|p| matches!(p, Pauli::Z | Pauli::Y))
    }

    pub fn y_count(&self) -> usize {
        self.0.iter().filter(|&&p| p == Pauli::Y).count()
    }

    fn mask(&self, pred: impl Fn(Pauli) -> bool) -> usize {
        let n = self.0.len();
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &p)| pred(p))
            .fold(0usize, |acc, (q, _)| acc | (1 << (n - 1 - q)))
    }

    /// Relabel qubits: symbol at 1-based position `a` exchanged with `b`.
    pub fn swap_qubits(&self, a: usize, b: usize) -> Result<Self> {
        let n = self.0.len();
        if a < 1 || b < 1 || a > n || b > n {
            return Err(Error::InvalidQubitPair { a, b, n });
        }
        let mut labels = self.0.clone();
        labels.swap(a - 1, b - 1);
        PauliString::new(labels)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels = s.chars().map(Pauli::from_char).collect::<Result<Vec<_>>>()?;
        PauliString::new(labels)
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.index().cmp(&other.index()))
    }
}

impl Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Dense `2^N x 2^N` operator of a Pauli string, built as the Kronecker
/// product of the single-qubit matrices, left to right.
pub fn operator_of(pstring: &PauliString) -> Result<CMatrix> {
    let n = pstring.num_qubits();
    if n > MAX_QUBITS {
        return Err(Error::QubitLimit {
            requested: n,
            max: MAX_QUBITS,
        });
    }
    let mut op = pauli_matrix(pstring.labels()[0]);
    for &p in &pstring.labels()[1..] {
        op = kron(&op, &pauli_matrix(p));
    }
    Ok(op)
}

/// Phase of `sigma |j>` for a Pauli string with the given masks:
/// `sigma |j> = phase(j) |j XOR x_mask|`.
pub(crate) fn basis_phase(j: usize, z_mask: usize, y_count: usize) -> Complex64 {
    let i_pow = match y_count % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    if (z_mask & j).count_ones().is_multiple_of(2) {
        i_pow
    } else {
        -i_pow
    }
}

/// All `4^n` Pauli strings on `n` qubits in canonical index order.
pub fn all_strings(n: usize) -> Vec<PauliString> {
    (0..4usize.pow(n as u32))
        .map(|idx| PauliString::from_index(idx, n).expect("n >= 1"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::Complex;

    #[test]
    fn z_matrix_is_diag_1_m1() {
        let z = pauli_matrix(Pauli::Z);
        assert_eq!(z[(0, 0)], Complex::new(1.0, 0.0));
        assert_eq!(z[(1, 1)], Complex::new(-1.0, 0.0));
        assert_eq!(z[(0, 1)], Complex::new(0.0, 0.0));
    }

    #[test]
    fn x_squares_to_identity() {
        let x = pauli_matrix(Pauli::X);
        let xx = &x * &x;
        assert_relative_eq!(xx[(0, 0)].re, 1.0);
        assert_relative_eq!(xx[(1, 1)].re, 1.0);
        assert_relative_eq!(xx[(0, 1)].norm(), 0.0);
    }

    #[test]
    fn y_matrix_entries() {
        let y = pauli_matrix(Pauli::Y);
        assert_eq!(y[(0, 1)], Complex::new(0.0, -1.0));
        assert_eq!(y[(1, 0)], Complex::new(0.0, 1.0));
    }

    #[test]
    fn identity_string_operator() {
        let op = operator_of(&"II".parse().unwrap()).unwrap();
        assert_eq!(op.nrows(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_relative_eq!(op[(i, j)].re, expect);
                assert_relative_eq!(op[(i, j)].im, 0.0);
            }
        }
    }

    #[test]
    fn non_identity_strings_are_traceless() {
        let op = operator_of(&"XZ".parse().unwrap()).unwrap();
        let tr: Complex64 = (0..4).map(|i| op[(i, i)]).sum();
        assert_relative_eq!(tr.norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn xx_flips_00_to_11() {
        let op = operator_of(&"XX".parse().unwrap()).unwrap();
        // column of |00> is index 0; expect unit weight on |11> = index 3
        assert_relative_eq!(op[(3, 0)].re, 1.0);
        assert_relative_eq!(op[(0, 0)].norm(), 0.0);
        assert_relative_eq!(op[(1, 0)].norm(), 0.0);
        assert_relative_eq!(op[(2, 0)].norm(), 0.0);
    }

    #[test]
    fn index_round_trip() {
        for idx in 0..64 {
            let s = PauliString::from_index(idx, 3).unwrap();
            assert_eq!(s.index(), idx);
        }
        assert_eq!("ZYX".parse::<PauliString>().unwrap().index(), 3 * 16 + 2 * 4 + 1);
    }

    #[test]
    fn masks_follow_qubit_order() {
        let s: PauliString = "XIZ".parse().unwrap();
        // qubit 1 = X -> msb of 3 bits
        assert_eq!(s.x_mask(), 0b100);
        assert_eq!(s.z_mask(), 0b001);
        let s: PauliString = "YII".parse().unwrap();
        assert_eq!(s.x_mask(), 0b100);
        assert_eq!(s.z_mask(), 0b100);
        assert_eq!(s.y_count(), 1);
    }

    #[test]
    fn rejects_invalid_symbols() {
        assert!("XQZ".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
    }

    #[test]
    fn operator_respects_qubit_limit() {
        let s = PauliString::identity(7);
        assert!(matches!(operator_of(&s), Err(Error::QubitLimit { .. })));
    }
}

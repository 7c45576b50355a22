//! Catalog of qubit-group arrangements for k-separable pure states.
//!
//! A pure k-separable state factors into parts of `nu_1..nu_n` qubits with
//! `sum nu_i = N`. Parts are assembled on consecutive qubit positions in
//! declared size order and then moved into the target arrangement by a fixed
//! sequence of pairwise qubit swaps. Arrangements that merely reorder qubits
//! *inside* a part are not distinct (each part is an arbitrary pure state),
//! and at most one part of size 1 appears per partition family: a larger
//! fully-parameterized part already covers configurations where its qubits
//! happen to be unentangled.
//!
//! Each arrangement carries `alpha = max_j 2^{nu_j}` independent pure-state
//! slots so that a convex mixture over the slots can reach the maximally
//! mixed state of the largest part.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One qubit-group arrangement: part sizes, a display label such as
/// `"13|24"`, and the swap sequence that produces it from canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationSpec {
    /// Part sizes in canonical assembly order.
    pub parts: Vec<usize>,
    /// Arrangement label; groups of entangled qubits separated by `|`.
    pub label: String,
    /// Pairwise qubit swaps `(a, b)`, 1-based, applied in order.
    pub swap_sequence: Vec<(usize, usize)>,
}

impl PermutationSpec {
    pub fn num_qubits(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Independent pure-state slots needed for this arrangement.
    pub fn slot_count(&self) -> usize {
        self.parts.iter().map(|&nu| 1usize << nu).max().unwrap_or(1)
    }

    /// Qubit groups (1-based, sorted) occupied by each part after applying
    /// the swap sequence to the canonical layout.
    pub fn qubit_groups(&self) -> Vec<Vec<usize>> {
        let n = self.num_qubits();
        // position p holds content c: start with identity, apply transpositions
        let mut content_at: Vec<usize> = (0..n).collect();
        for &(a, b) in &self.swap_sequence {
            content_at.swap(a - 1, b - 1);
        }
        // canonical content index -> part
        let mut part_of_content = vec![0usize; n];
        let mut c = 0;
        for (pi, &nu) in self.parts.iter().enumerate() {
            for _ in 0..nu {
                part_of_content[c] = pi;
                c += 1;
            }
        }
        let mut groups = vec![Vec::new(); self.parts.len()];
        for (pos, &content) in content_at.iter().enumerate() {
            groups[part_of_content[content]].push(pos + 1);
        }
        for g in &mut groups {
            g.sort_unstable();
        }
        groups
    }

    /// Parse the arrangement label into sorted qubit groups.
    pub fn label_groups(&self) -> Result<Vec<Vec<usize>>> {
        self.label
            .split('|')
            .map(|part| {
                part.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::InvalidConfig(format!("bad label {}", self.label)))
                    })
                    .collect::<Result<Vec<usize>>>()
                    .map(|mut v| {
                        v.sort_unstable();
                        v
                    })
            })
            .collect()
    }
}

/// The full arrangement catalog for `N` qubits plus derived slot counts.
#[derive(Debug, Clone)]
pub struct PartitionCatalog {
    pub num_qubits: usize,
    pub entries: Vec<PermutationSpec>,
}

impl PartitionCatalog {
    /// Total pure-state slots across all arrangements.
    pub fn total_slots(&self) -> usize {
        self.entries.iter().map(|e| e.slot_count()).sum()
    }
}

fn spec(parts: &[usize], label: &str, swaps: &[(usize, usize)]) -> PermutationSpec {
    PermutationSpec {
        parts: parts.to_vec(),
        label: label.to_string(),
        // swaps are symmetric; store with a < b
        swap_sequence: swaps
            .iter()
            .map(|&(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect(),
    }
}

/// Build the arrangement catalog for `N` in {3, 4, 5}.
///
/// The tables are data, not derivation: 3 arrangements for 3 qubits, 7 for 4
/// qubits (four of `1|234` with 8 slots each, three of `12|34` with 4 each,
/// 44 slots total), 30 for 5 qubits (220 slots total).
pub fn build_catalog(n: usize) -> Result<PartitionCatalog> {
    let entries = match n {
        3 => vec![
            spec(&[1, 2], "1|23", &[]),
            spec(&[1, 2], "2|13", &[(1, 2)]),
            spec(&[1, 2], "3|12", &[(1, 3)]),
        ],
        4 => vec![
            spec(&[1, 3], "1|234", &[]),
            spec(&[1, 3], "2|134", &[(1, 2)]),
            spec(&[1, 3], "3|124", &[(1, 3)]),
            spec(&[1, 3], "4|123", &[(1, 4)]),
            spec(&[2, 2], "12|34", &[]),
            spec(&[2, 2], "13|24", &[(2, 3)]),
            spec(&[2, 2], "14|23", &[(2, 4)]),
        ],
        5 => vec![
            spec(&[1, 4], "1|2345", &[]),
            spec(&[1, 4], "2|1345", &[(1, 2)]),
            spec(&[1, 4], "3|1245", &[(1, 3)]),
            spec(&[1, 4], "4|1235", &[(1, 4)]),
            spec(&[1, 4], "5|1234", &[(1, 5)]),
            spec(&[2, 3], "12|345", &[]),
            spec(&[2, 3], "13|245", &[(2, 3)]),
            spec(&[2, 3], "14|325", &[(2, 4)]),
            spec(&[2, 3], "15|324", &[(2, 5)]),
            spec(&[2, 3], "23|145", &[(1, 3)]),
            spec(&[2, 3], "24|135", &[(1, 4)]),
            spec(&[2, 3], "25|134", &[(1, 5)]),
            spec(&[2, 3], "35|124", &[(2, 3), (1, 5)]),
            spec(&[2, 3], "45|123", &[(2, 4), (1, 5)]),
            spec(&[2, 3], "34|125", &[(2, 3), (1, 4)]),
            spec(&[2, 2, 1], "12|34|5", &[]),
            spec(&[2, 2, 1], "13|24|5", &[(2, 3)]),
            spec(&[2, 2, 1], "14|32|5", &[(2, 4)]),
            spec(&[2, 2, 1], "15|34|2", &[(2, 5)]),
            spec(&[2, 2, 1], "25|34|1", &[(1, 5)]),
            spec(&[2, 2, 1], "12|45|3", &[(3, 5)]),
            spec(&[2, 2, 1], "12|35|4", &[(4, 5)]),
            spec(&[2, 2, 1], "35|24|1", &[(2, 3), (1, 5)]),
            spec(&[2, 2, 1], "45|23|1", &[(2, 4), (1, 5)]),
            spec(&[2, 2, 1], "35|14|2", &[(2, 5), (3, 1)]),
            spec(&[2, 2, 1], "45|13|2", &[(2, 5), (4, 1)]),
            spec(&[2, 2, 1], "14|25|3", &[(3, 5), (2, 4)]),
            spec(&[2, 2, 1], "24|15|3", &[(3, 5), (1, 4)]),
            spec(&[2, 2, 1], "13|25|4", &[(4, 5), (2, 3)]),
            spec(&[2, 2, 1], "23|15|4", &[(4, 5), (1, 3)]),
        ],
        other => return Err(Error::UnsupportedCatalog(other)),
    };
    Ok(PartitionCatalog {
        num_qubits: n,
        entries,
    })
}

/// The fully separable arrangement (every qubit its own part).
pub fn fully_separable_spec(n: usize) -> PermutationSpec {
    let label = (1..=n)
        .map(|q| q.to_string())
        .collect::<Vec<_>>()
        .join("|");
    PermutationSpec {
        parts: vec![1; n],
        label,
        swap_sequence: vec![],
    }
}

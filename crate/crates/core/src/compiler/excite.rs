use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{BitMatrix, BitVec};
use crate::codes::CssCode;
use crate::error::{Error, Result};

/// X-string flipping exactly the z-cells in `cells`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionString {
    pub cells: Vec<usize>,
    pub qubits: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExcitationRecord {
    pub excited_cells: Vec<usize>,
    pub pairing: Vec<CorrectionString>,
}

impl ExcitationRecord {
    /// Qubits receiving an X, with multiplicity reduced mod 2.
    pub fn flips(&self, n: usize) -> Vec<usize> {
        let mut f = vec![false; n];
        for s in &self.pairing {
            for &q in &s.qubits {
                f[q] ^= true;
            }
        }
        (0..n).filter(|&q| f[q]).collect()
    }
}

struct Solver {
    /// Rows are qubits, columns z-cells.
    qubit_rows: BitMatrix,
    cells: usize,
}

impl Solver {
    fn solve(&self, cells: &[usize]) -> Option<Vec<usize>> {
        let target = BitVec::from_indices(self.cells, cells.iter().copied());
        self.qubit_rows.express(&target).map(|x| x.ones().collect())
    }
}

fn cell_distances(z_cells: &[Vec<usize>], n: usize, from: usize) -> Vec<usize> {
    let mut at = vec![Vec::new(); n];
    for (c, cell) in z_cells.iter().enumerate() {
        for &q in cell {
            at[q].push(c);
        }
    }
    let mut dist = vec![usize::MAX; z_cells.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(c) = queue.pop_front() {
        for &q in &z_cells[c] {
            for &d in &at[q] {
                if dist[d] == usize::MAX {
                    dist[d] = dist[c] + 1;
                    queue.push_back(d);
                }
            }
        }
    }
    dist
}

/// Pair the z-cells with sign −1 (outcome per z-cell of `code`) and find an
/// X-string for each pair. Cells pair greedily with the nearest unpaired cell
/// of the same color; whatever cannot be paired is fixed with single strings
/// ending on the boundary, or jointly. An inconsistent residue is a parity
/// error.
pub fn correct_excitations(code: &CssCode, outcomes: &[i8]) -> Result<ExcitationRecord> {
    if outcomes.len() != code.z_cells.len() {
        return Err(Error::Size { expected: code.z_cells.len(), got: outcomes.len() });
    }
    correct_cells(&code.z_cells, code.z_colors.as_deref(), code.n, outcomes)
}

pub(crate) fn correct_cells(
    z_cells: &[Vec<usize>],
    colors: Option<&[u8]>,
    n: usize,
    outcomes: &[i8],
) -> Result<ExcitationRecord> {
    let excited: Vec<usize> = (0..outcomes.len()).filter(|&c| outcomes[c] < 0).collect();
    let mut record = ExcitationRecord { excited_cells: excited.clone(), pairing: Vec::new() };
    if excited.is_empty() {
        return Ok(record);
    }
    let solver = Solver { qubit_rows: BitMatrix::from_supports(n, z_cells).transpose(), cells: z_cells.len() };
    let color = |c: usize| colors.map_or(0, |cs| cs[c]);
    let mut paired = vec![false; z_cells.len()];
    let mut leftover = Vec::new();
    for &c in &excited {
        if paired[c] {
            continue;
        }
        paired[c] = true;
        let dist = cell_distances(z_cells, n, c);
        let partner = excited
            .iter()
            .copied()
            .filter(|&d| !paired[d] && color(d) == color(c) && dist[d] != usize::MAX)
            .min_by_key(|&d| (dist[d], d));
        match partner.and_then(|d| solver.solve(&[c, d]).map(|q| (d, q))) {
            Some((d, qubits)) => {
                paired[d] = true;
                record.pairing.push(CorrectionString { cells: vec![c, d], qubits });
            }
            None => leftover.push(c),
        }
    }
    let mut stuck = Vec::new();
    for c in leftover {
        match solver.solve(&[c]) {
            Some(qubits) => record.pairing.push(CorrectionString { cells: vec![c], qubits }),
            None => stuck.push(c),
        }
    }
    if !stuck.is_empty() {
        match solver.solve(&stuck) {
            Some(qubits) => record.pairing.push(CorrectionString { cells: stuck, qubits }),
            None => return Err(Error::Parity(stuck)),
        }
    }
    Ok(record)
}

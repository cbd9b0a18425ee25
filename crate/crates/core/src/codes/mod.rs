//! CSS codes given by the supports of their Z-type and X-type generators.

mod color;
mod toric;

pub use color::{build_colex_3d, build_color_2d, check_colex_coloring, color_2d_loops, ColexColoring, ColexPreset};
pub use toric::{build_toric_2d, build_toric_3d, build_triangular, Topology};

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bits::{BitMatrix, BitVec};
use crate::error::{Error, Result};
use crate::pauli::{Pauli1, PauliString, Phase};
use crate::tableau::StabilizerTableau;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LogicalKind {
    Lz,
    Lx,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalOperator {
    pub kind: LogicalKind,
    pub direction: usize,
    pub color: Option<u8>,
    pub support: Vec<usize>,
}

impl LogicalOperator {
    pub fn pauli(&self, n: usize) -> PauliString {
        match self.kind {
            LogicalKind::Lz => PauliString::z_type(n, self.support.iter().copied()),
            LogicalKind::Lx => PauliString::x_type(n, self.support.iter().copied()),
        }
    }
}

/// Conjugate logical pairs: `z[i]` anticommutes with `x[partner[i]]` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalBasis {
    pub z: Vec<Vec<usize>>,
    pub x: Vec<Vec<usize>>,
    pub partner: Vec<usize>,
}

impl LogicalBasis {
    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CssCode {
    pub name: String,
    pub n: usize,
    pub z_cells: Vec<Vec<usize>>,
    pub x_cells: Vec<Vec<usize>>,
    pub z_colors: Option<Vec<u8>>,
    pub x_colors: Option<Vec<u8>>,
    pub geometry: Option<Vec<[f64; 3]>>,
    /// Hand-picked logical pairs (for example the torus loops); computed when absent.
    pub logicals: Option<LogicalBasis>,
}

/// Result of [`CssCode::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// `(z_cell, x_cell)` pairs with odd overlap.
    pub odd_pairs: Vec<(usize, usize)>,
    pub out_of_range: Vec<usize>,
    pub empty_cells: usize,
    pub repeated_qubits: Vec<usize>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.odd_pairs.is_empty()
            && self.out_of_range.is_empty()
            && self.empty_cells == 0
            && self.repeated_qubits.is_empty()
    }
}

/// Violated generators of a Pauli operator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Syndrome {
    pub z_cells: Vec<usize>,
    pub x_cells: Vec<usize>,
}

impl Syndrome {
    pub fn is_empty(&self) -> bool {
        self.z_cells.is_empty() && self.x_cells.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.z_cells.len() + self.x_cells.len()
    }

    pub fn symmetric_difference(&self, other: &Syndrome) -> Syndrome {
        let sd = |a: &[usize], b: &[usize]| {
            let a: BTreeSet<usize> = a.iter().copied().collect();
            let b: BTreeSet<usize> = b.iter().copied().collect();
            a.symmetric_difference(&b).copied().collect()
        };
        Syndrome { z_cells: sd(&self.z_cells, &other.z_cells), x_cells: sd(&self.x_cells, &other.x_cells) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnyonKind {
    /// Z-string; endpoints violate x-cells.
    E,
    /// X-string; endpoints violate z-cells.
    M,
    /// Y-string, both kinds at once.
    Eps,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringOperator {
    pub kind: AnyonKind,
    pub path: Vec<usize>,
    pub operator: PauliString,
    pub endpoints: Syndrome,
}

impl CssCode {
    pub fn new(name: impl Into<String>, n: usize, z_cells: Vec<Vec<usize>>, x_cells: Vec<Vec<usize>>) -> Self {
        CssCode {
            name: name.into(),
            n,
            z_cells,
            x_cells,
            z_colors: None,
            x_colors: None,
            geometry: None,
            logicals: None,
        }
    }

    pub fn hz(&self) -> BitMatrix {
        BitMatrix::from_supports(self.n, &self.z_cells)
    }

    pub fn hx(&self) -> BitMatrix {
        BitMatrix::from_supports(self.n, &self.x_cells)
    }

    pub fn z_stabilizer(&self, i: usize) -> PauliString {
        PauliString::z_type(self.n, self.z_cells[i].iter().copied())
    }

    pub fn x_stabilizer(&self, i: usize) -> PauliString {
        PauliString::x_type(self.n, self.x_cells[i].iter().copied())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        for cell in self.z_cells.iter().chain(&self.x_cells) {
            if cell.is_empty() {
                r.empty_cells += 1;
            }
            let mut seen = BTreeSet::new();
            for &q in cell {
                if q >= self.n {
                    r.out_of_range.push(q);
                } else if !seen.insert(q) {
                    r.repeated_qubits.push(q);
                }
            }
        }
        if !r.out_of_range.is_empty() {
            return r;
        }
        let hz = self.hz();
        let hx = self.hx();
        for (i, z) in hz.rows().iter().enumerate() {
            for (j, x) in hx.rows().iter().enumerate() {
                if z.dot(x) {
                    r.odd_pairs.push((i, j));
                }
            }
        }
        r
    }

    pub fn rank_z(&self) -> usize {
        self.hz().rank()
    }

    pub fn rank_x(&self) -> usize {
        self.hx().rank()
    }

    pub fn logical_qubits(&self) -> usize {
        self.n - self.rank_z() - self.rank_x()
    }

    /// Ground-space dimension `2^(n - rank)`.
    pub fn degeneracy(&self) -> u128 {
        1u128 << self.logical_qubits()
    }

    /// Index sets of z-cells (resp. x-cells) whose product is the identity.
    pub fn z_constraints(&self) -> Vec<Vec<usize>> {
        self.hz().row_dependencies().iter().map(|v| v.ones().collect()).collect()
    }

    pub fn x_constraints(&self) -> Vec<Vec<usize>> {
        self.hx().row_dependencies().iter().map(|v| v.ones().collect()).collect()
    }

    /// Qubit-wise Hadamard: exchanges the two cell families.
    pub fn dual(&self) -> CssCode {
        CssCode {
            name: self.name.clone(),
            n: self.n,
            z_cells: self.x_cells.clone(),
            x_cells: self.z_cells.clone(),
            z_colors: self.x_colors.clone(),
            x_colors: self.z_colors.clone(),
            geometry: self.geometry.clone(),
            logicals: self.logicals.as_ref().map(|l| LogicalBasis {
                z: l.x.clone(),
                x: l.z.clone(),
                partner: invert_permutation(&l.partner),
            }),
        }
    }

    pub fn syndrome(&self, p: &PauliString) -> Syndrome {
        let z_cells = (0..self.z_cells.len()).filter(|&i| !self.z_stabilizer(i).commutes(p)).collect();
        let x_cells = (0..self.x_cells.len()).filter(|&i| !self.x_stabilizer(i).commutes(p)).collect();
        Syndrome { z_cells, x_cells }
    }

    /// Pauli string along `path`. Consecutive qubits must share an x-cell for
    /// `E`, a z-cell for `M`, and any cell for `Eps`.
    pub fn anyon_string(&self, kind: AnyonKind, path: &[usize]) -> Result<StringOperator> {
        for &q in path {
            if q >= self.n {
                return Err(Error::OutOfRange { index: q, n: self.n });
            }
        }
        let shares = |cells: &[Vec<usize>], a: usize, b: usize| cells.iter().any(|c| c.contains(&a) && c.contains(&b));
        for w in path.windows(2) {
            let ok = match kind {
                AnyonKind::E => shares(&self.x_cells, w[0], w[1]),
                AnyonKind::M => shares(&self.z_cells, w[0], w[1]),
                AnyonKind::Eps => shares(&self.x_cells, w[0], w[1]) || shares(&self.z_cells, w[0], w[1]),
            };
            if !ok {
                return Err(Error::DisconnectedPath);
            }
        }
        let p1 = match kind {
            AnyonKind::E => Pauli1::Z,
            AnyonKind::M => Pauli1::X,
            AnyonKind::Eps => Pauli1::Y,
        };
        let operator = PauliString::uniform(self.n, path.iter().copied(), p1).with_phase(Phase::ONE);
        let endpoints = self.syndrome(&operator);
        Ok(StringOperator { kind, path: path.to_vec(), operator, endpoints })
    }

    /// Logical pairs, either the stored ones or a computed basis.
    pub fn logical_basis(&self) -> LogicalBasis {
        if let Some(l) = &self.logicals {
            return l.clone();
        }
        compute_logicals(self)
    }

    pub fn logical_operators(&self) -> Vec<LogicalOperator> {
        let b = self.logical_basis();
        let mut out = Vec::new();
        for (i, s) in b.z.iter().enumerate() {
            out.push(LogicalOperator { kind: LogicalKind::Lz, direction: i, color: None, support: s.clone() });
        }
        for (i, s) in b.x.iter().enumerate() {
            out.push(LogicalOperator { kind: LogicalKind::Lx, direction: i, color: None, support: s.clone() });
        }
        out
    }

    /// Stabilizer group of `∏_σ (L_z^σ)^{c_σ} ∏_cells (1 + C_z) |+…+⟩`: the z-cells,
    /// the x-cells and every `L_x`, with `L_x` signs set by `class`.
    pub fn stabilizer_state(&self, class: &[bool]) -> Result<StabilizerTableau> {
        let basis = self.logical_basis();
        if class.len() > basis.len() {
            return Err(Error::InvalidCode(format!(
                "class has {} bits but the code has {} logical qubits",
                class.len(),
                basis.len()
            )));
        }
        let mut gens = Vec::with_capacity(self.n);
        let hz = self.hz();
        for i in hz.independent_rows() {
            gens.push(self.z_stabilizer(i));
        }
        let hx = self.hx();
        for i in hx.independent_rows() {
            gens.push(self.x_stabilizer(i));
        }
        for lx in &basis.x {
            let xp = PauliString::x_type(self.n, lx.iter().copied());
            let mut negative = false;
            for (sigma, &bit) in class.iter().enumerate() {
                let zp = PauliString::z_type(self.n, basis.z[sigma].iter().copied());
                if bit && !zp.commutes(&xp) {
                    negative = !negative;
                }
            }
            gens.push(xp.with_phase(Phase::from_sign(negative)));
        }
        if gens.len() != self.n {
            return Err(Error::RankDeficient { rank: gens.len(), count: self.n });
        }
        StabilizerTableau::new(self.n, gens)
    }

    /// Target of cell insertion with all outcomes `+1`.
    pub fn code_state(&self) -> Result<StabilizerTableau> {
        self.stabilizer_state(&[])
    }

    /// Map each qubit to the z-cells containing it.
    pub fn z_cells_of_qubit(&self) -> Vec<Vec<usize>> {
        let mut out = alloc::vec![Vec::new(); self.n];
        for (i, c) in self.z_cells.iter().enumerate() {
            for &q in c {
                out[q].push(i);
            }
        }
        out
    }
}

fn invert_permutation(p: &[usize]) -> Vec<usize> {
    let mut inv = alloc::vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Vectors of `ker(a)` independent modulo the row space of `b`.
fn quotient_basis(a: &BitMatrix, b: &BitMatrix) -> Vec<BitVec> {
    let mut acc = BitMatrix::from_rows(b.cols(), b.rows().to_vec());
    let mut rank = acc.rank();
    let mut out = Vec::new();
    for v in a.nullspace() {
        acc.push(v.clone());
        let r = acc.rank();
        if r > rank {
            rank = r;
            out.push(v);
        }
    }
    out
}

fn compute_logicals(code: &CssCode) -> LogicalBasis {
    let hz = code.hz();
    let hx = code.hx();
    let mut xs = quotient_basis(&hz, &hx);
    let mut zs = quotient_basis(&hx, &hz);
    let k = xs.len().min(zs.len());
    for i in 0..k {
        let j = (i..k).find(|&j| zs[i].dot(&xs[j])).expect("logical pairing");
        xs.swap(i, j);
        for l in 0..k {
            if l != i && zs[i].dot(&xs[l]) {
                let xi = xs[i].clone();
                xs[l].xor_assign(&xi);
            }
        }
        for l in 0..k {
            if l != i && zs[l].dot(&xs[i]) {
                let zi = zs[i].clone();
                zs[l].xor_assign(&zi);
            }
        }
    }
    LogicalBasis {
        z: zs.iter().map(|v| v.ones().collect()).collect(),
        x: xs.iter().map(|v| v.ones().collect()).collect(),
        partner: (0..k).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn repetition() -> CssCode {
        // three-qubit code: Z0Z1, Z1Z2 and X0X1X2
        CssCode::new("rep", 3, alloc::vec![alloc::vec![0, 1], alloc::vec![1, 2]], alloc::vec![alloc::vec![0, 1, 2]])
    }

    #[test]
    fn validation_names_the_odd_pair() {
        let mut c = repetition();
        assert!(c.validate().is_ok());
        c.x_cells.push(alloc::vec![0]);
        let r = c.validate();
        assert_eq!(r.odd_pairs, [(0, 1)]);
    }

    #[test]
    fn logical_pairing() {
        let c = repetition();
        assert_eq!(c.logical_qubits(), 0);
        let c = CssCode::new("pair", 2, alloc::vec![alloc::vec![0, 1]], alloc::vec![]);
        let b = c.logical_basis();
        assert_eq!(b.len(), 1);
        let z = PauliString::z_type(2, b.z[0].iter().copied());
        let x = PauliString::x_type(2, b.x[0].iter().copied());
        assert!(!z.commutes(&x));
        let t = c.stabilizer_state(&[true]).unwrap();
        assert_eq!(t.sign_of(&x), Some(-1));
        assert_eq!(t.sign_of(&PauliString::z_type(2, [0, 1])), Some(1));
    }

    #[test]
    fn dual_twice_is_identity() {
        let c = repetition();
        assert_eq!(c.dual().dual(), c);
    }
}

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use super::excite::{correct_cells, ExcitationRecord};
use super::{basis_mismatches, corrections_by_step, MeasurementPattern};
use crate::bits::{BitMatrix, BitVec};
use crate::codes::CssCode;
use crate::error::{Error, Result};
use crate::local::Gate1;
use crate::pauli::PauliString;
use crate::sparse::SparseTableau;
use crate::tableau::StabilizerTableau;

/// Signs of every z-cell implied by the measured (independent) cells.
fn all_cell_signs(p: &MeasurementPattern, measured: &[(usize, i8)]) -> Result<Vec<i8>> {
    let n = p.output_map.len();
    let rows: Vec<BitVec> =
        measured.iter().map(|&(c, _)| BitVec::from_indices(n, p.z_cells[c].iter().copied())).collect();
    let basis = BitMatrix::from_rows(n, rows);
    let mut signs = alloc::vec![1i8; p.z_cells.len()];
    for (c, cell) in p.z_cells.iter().enumerate() {
        if let Some(&(_, o)) = measured.iter().find(|m| m.0 == c) {
            signs[c] = o;
            continue;
        }
        let combo = basis
            .express(&BitVec::from_indices(n, cell.iter().copied()))
            .ok_or_else(|| Error::InvalidCode(format!("z-cell {c} is not generated by the measured cells")))?;
        signs[c] = combo.ones().map(|i| measured[i].1).product();
    }
    Ok(signs)
}

/// Run the pattern on a fresh grid cluster. `forced[i]`, when given, fixes
/// the outcome of step `i`.
pub fn execute(
    pattern: &MeasurementPattern,
    seed: u64,
    forced: Option<&[i8]>,
) -> Result<(StabilizerTableau, ExcitationRecord)> {
    if let Some(f) = forced {
        if f.len() != pattern.steps.len() {
            return Err(Error::Size { expected: pattern.steps.len(), got: f.len() });
        }
    }
    let mut rng = crate::rng_from_seed(seed);
    let mut t = SparseTableau::graph_state(pattern.num_vertices(), pattern.grid_edges())?;
    let fire = corrections_by_step(pattern);
    let mut outcomes = Vec::with_capacity(pattern.steps.len());
    for (i, s) in pattern.steps.iter().enumerate() {
        let o = t.measure(s.vertex, s.basis.pauli(), forced.map(|f| f[i]), &mut rng)?;
        outcomes.push(o);
        if let Some(list) = fire.get(&i) {
            for &ci in list {
                let c = &pattern.corrections[ci];
                let k = c.depends.iter().enumerate().map(|(b, &d)| usize::from(outcomes[d] < 0) << b).sum::<usize>();
                for &(q, g) in &c.table[k] {
                    t.apply_gate(g, q)?;
                }
            }
        }
    }
    let measured: Vec<(usize, i8)> = pattern.cell_steps.iter().map(|m| (m.cell, outcomes[m.step])).collect();
    let signs = all_cell_signs(pattern, &measured)?;
    let record = correct_cells(&pattern.z_cells, pattern.z_colors.as_deref(), pattern.output_map.len(), &signs)?;
    for q in record.flips(pattern.output_map.len()) {
        t.apply_gate(Gate1::X, pattern.output_map[q])?;
    }
    Ok((t.to_tableau(&pattern.output_map)?, record))
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub code: String,
    pub seeds: usize,
    /// `(seed, reason)` for every failing seed.
    pub failures: Vec<(u64, String)>,
    pub basis_errors: Vec<String>,
    pub grid_vertices: usize,
    pub n: usize,
    /// `grid_vertices / n²`.
    pub size_constant: f64,
    /// Seeds whose logical X signs differed from +1.
    pub sector_flips: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.basis_errors.is_empty()
    }
}

/// `Ok(None)` when the seed reproduces `target`, otherwise the reason.
pub fn verify_seed(pattern: &MeasurementPattern, target: &StabilizerTableau, seed: u64) -> Result<Option<String>> {
    let (state, _) = match execute(pattern, seed, None) {
        Ok(r) => r,
        Err(e) => return Ok(Some(format!("{e}"))),
    };
    if state.canonical_form()? == *target {
        Ok(None)
    } else if state.same_group(target) {
        Ok(Some("stabilizer signs differ from the code state".into()))
    } else {
        Ok(Some("stabilizer group differs from the code state".into()))
    }
}

pub fn verify(pattern: &MeasurementPattern, code: &CssCode, seeds: Range<u64>) -> Result<VerifyReport> {
    let target = code.code_state()?.canonical_form()?;
    let logicals = code.logical_basis();
    let mut failures = Vec::new();
    let mut sector_flips = 0;
    let count = seeds.clone().count();
    for seed in seeds {
        match execute(pattern, seed, None) {
            Err(e) => failures.push((seed, format!("{e}"))),
            Ok((state, _)) => {
                let canon = state.canonical_form()?;
                if canon != target {
                    let why = if state.same_group(&target) { "signs differ" } else { "group differs" };
                    failures.push((seed, format!("stabilizer {why} from the code state")));
                }
                if logicals.x.iter().any(|l| state.sign_of(&PauliString::x_type(code.n, l.iter().copied())) != Some(1)) {
                    sector_flips += 1;
                }
            }
        }
    }
    let grid_vertices = pattern.num_vertices();
    Ok(VerifyReport {
        code: code.name.clone(),
        seeds: count,
        failures,
        basis_errors: basis_mismatches(pattern).into_iter().map(|(_, m)| m).collect(),
        grid_vertices,
        n: code.n,
        size_constant: grid_vertices as f64 / (code.n * code.n) as f64,
        sector_flips,
    })
}

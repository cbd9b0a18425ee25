//! Sparse stabilizer tableau with destabilizers, tuned for low-degree graph
//! states measured one qubit at a time. Measured qubits are discarded.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::local::{Gate1, LocalClifford};
use crate::pauli::{Pauli1, PauliString, Phase};
use crate::tableau::StabilizerTableau;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Row {
    /// Phase exponent `k` of `i^k`.
    phase: u8,
    terms: Vec<(u32, Pauli1)>,
}

impl Row {
    fn get(&self, q: u32) -> Pauli1 {
        match self.terms.binary_search_by_key(&q, |t| t.0) {
            Ok(i) => self.terms[i].1,
            Err(_) => Pauli1::I,
        }
    }

    /// `self ← self · other`.
    fn mul_assign(&mut self, other: &Row) {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut phase = self.phase + other.phase;
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let (ph, p) = a[i].1.mul(b[j].1);
                phase += ph.exponent();
                if p != Pauli1::I {
                    out.push((a[i].0, p));
                }
                i += 1;
                j += 1;
            }
        }
        self.phase = phase % 4;
        self.terms = out;
    }
}

#[derive(Clone, Debug)]
pub struct SparseTableau {
    n: usize,
    stabs: Vec<Row>,
    destabs: Vec<Row>,
    live: Vec<bool>,
    stab_at: Vec<Vec<u32>>,
    destab_at: Vec<Vec<u32>>,
    measured: Vec<bool>,
}

impl SparseTableau {
    /// `∏ CZ |+⟩^n` with destabilizers `Z_v`.
    pub fn graph_state(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut nb = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::OutOfRange { index: a.max(b), n });
            }
            if a == b {
                return Err(Error::Precondition(alloc::format!("self-loop at {a}")));
            }
            nb[a].push(b as u32);
            nb[b].push(a as u32);
        }
        let mut t = SparseTableau {
            n,
            stabs: Vec::with_capacity(n),
            destabs: Vec::with_capacity(n),
            live: vec![true; n],
            stab_at: vec![Vec::new(); n],
            destab_at: vec![Vec::new(); n],
            measured: vec![false; n],
        };
        for (v, list) in nb.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            let mut terms: Vec<(u32, Pauli1)> = list.iter().map(|&u| (u, Pauli1::Z)).collect();
            let at = terms.partition_point(|t| t.0 < v as u32);
            terms.insert(at, (v as u32, Pauli1::X));
            for &(q, _) in &terms {
                t.stab_at[q as usize].push(v as u32);
            }
            t.stabs.push(Row { phase: 0, terms });
            t.destabs.push(Row { phase: 0, terms: vec![(v as u32, Pauli1::Z)] });
            t.destab_at[v].push(v as u32);
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_measured(&self, q: usize) -> bool {
        self.measured[q]
    }

    pub fn live_generators(&self) -> usize {
        self.live.iter().filter(|&&l| l).count()
    }

    fn check(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::OutOfRange { index: q, n: self.n });
        }
        if self.measured[q] {
            return Err(Error::AlreadyMeasured(q));
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, g: Gate1, q: usize) -> Result<()> {
        self.check(q)?;
        let u = LocalClifford::from_gate(g);
        for (rows, at) in [(&mut self.stabs, &self.stab_at[q]), (&mut self.destabs, &self.destab_at[q])] {
            for &r in at {
                let row = &mut rows[r as usize];
                if let Ok(i) = row.terms.binary_search_by_key(&(q as u32), |t| t.0) {
                    let (ph, p) = u.image(row.terms[i].1);
                    row.terms[i].1 = p;
                    row.phase = (row.phase + ph.exponent()) % 4;
                }
            }
        }
        Ok(())
    }

    fn set_stab(&mut self, r: usize, row: Row) {
        update_index(&mut self.stab_at, r, &self.stabs[r], &row);
        self.stabs[r] = row;
    }

    fn set_destab(&mut self, r: usize, row: Row) {
        update_index(&mut self.destab_at, r, &self.destabs[r], &row);
        self.destabs[r] = row;
    }

    fn mul_stab(&mut self, r: usize, by: &Row) {
        let mut row = self.stabs[r].clone();
        row.mul_assign(by);
        self.set_stab(r, row);
    }

    fn mul_destab(&mut self, r: usize, by: &Row) {
        let mut row = self.destabs[r].clone();
        row.mul_assign(by);
        self.set_destab(r, row);
    }

    /// Outcome of measuring `p` on `q` if the state fixes it.
    pub fn deterministic_outcome(&self, q: usize, p: Pauli1) -> Result<Option<i8>> {
        self.check(q)?;
        if self.stab_at[q].iter().any(|&r| !self.stabs[r as usize].get(q as u32).commutes(p)) {
            return Ok(None);
        }
        let mut acc = Row::default();
        for &r in &self.destab_at[q] {
            if !self.destabs[r as usize].get(q as u32).commutes(p) {
                acc.mul_assign(&self.stabs[r as usize]);
            }
        }
        Ok(Some(outcome_of(&acc, q as u32, p)))
    }

    /// Measure the single-qubit Pauli `p` on `q` and discard the qubit.
    pub fn measure<R: RngCore + ?Sized>(&mut self, q: usize, p: Pauli1, forced: Option<i8>, rng: &mut R) -> Result<i8> {
        self.check(q)?;
        if p == Pauli1::I {
            return Err(Error::IdentityMeasurement);
        }
        let qq = q as u32;
        let anti: Vec<usize> = self.stab_at[q]
            .iter()
            .map(|&r| r as usize)
            .filter(|&r| !self.stabs[r].get(qq).commutes(p))
            .collect();
        let (pivot, outcome) = if let Some(&pivot) = anti.iter().min_by_key(|&&r| self.stabs[r].terms.len()) {
            let o = match forced {
                Some(o) => o,
                None if rng.next_u32() & 1 == 0 => 1,
                None => -1,
            };
            let gp = self.stabs[pivot].clone();
            for &r in &anti {
                if r != pivot {
                    self.mul_stab(r, &gp);
                }
            }
            let danti: Vec<usize> = self.destab_at[q]
                .iter()
                .map(|&r| r as usize)
                .filter(|&r| r != pivot && !self.destabs[r].get(qq).commutes(p))
                .collect();
            for r in danti {
                self.mul_destab(r, &gp);
            }
            self.set_destab(pivot, gp);
            self.set_stab(pivot, single(qq, p, o));
            (pivot, o)
        } else {
            let members: Vec<usize> = self.destab_at[q]
                .iter()
                .map(|&r| r as usize)
                .filter(|&r| !self.destabs[r].get(qq).commutes(p))
                .collect();
            let mut acc = Row::default();
            for &r in &members {
                acc.mul_assign(&self.stabs[r]);
            }
            let actual = outcome_of(&acc, qq, p);
            if let Some(f) = forced {
                if f != actual {
                    return Err(Error::Contradiction { forced: f, actual });
                }
            }
            let pivot = *members.iter().min_by_key(|&&r| self.stabs[r].terms.len()).expect("pure state");
            let dp = self.destabs[pivot].clone();
            for &r in &members {
                if r != pivot {
                    self.mul_destab(r, &dp);
                }
            }
            self.set_stab(pivot, single(qq, p, actual));
            (pivot, actual)
        };
        let gp = self.stabs[pivot].clone();
        for r in self.stab_at[q].clone() {
            if r as usize != pivot {
                self.mul_stab(r as usize, &gp);
            }
        }
        for r in self.destab_at[q].clone() {
            if r as usize != pivot {
                self.mul_destab(r as usize, &gp);
            }
        }
        self.set_stab(pivot, Row::default());
        self.set_destab(pivot, Row::default());
        self.live[pivot] = false;
        self.measured[q] = true;
        Ok(outcome)
    }

    /// Remaining stabilizer group on `order` (qubit `order[i]` becomes `i`).
    /// Every unmeasured qubit must appear in `order`.
    pub fn to_tableau(&self, order: &[usize]) -> Result<StabilizerTableau> {
        let mut map = vec![usize::MAX; self.n];
        for (i, &q) in order.iter().enumerate() {
            self.check(q)?;
            map[q] = i;
        }
        let mut gens = Vec::new();
        for (r, row) in self.stabs.iter().enumerate() {
            if !self.live[r] {
                continue;
            }
            let mut p = PauliString::identity(order.len());
            for &(q, pq) in &row.terms {
                let i = map[q as usize];
                if i == usize::MAX {
                    return Err(Error::UnsupportedLocation(q as usize));
                }
                p.set(i, pq);
            }
            gens.push(p.with_phase(Phase::new(row.phase)));
        }
        StabilizerTableau::new(order.len(), gens)
    }
}

fn single(q: u32, p: Pauli1, o: i8) -> Row {
    Row { phase: if o < 0 { 2 } else { 0 }, terms: vec![(q, p)] }
}

fn outcome_of(row: &Row, q: u32, p: Pauli1) -> i8 {
    debug_assert!(row.terms.len() == 1 && row.terms[0] == (q, p), "not a single-qubit stabilizer");
    if row.phase == 2 {
        -1
    } else {
        1
    }
}

fn update_index(at: &mut [Vec<u32>], r: usize, old: &Row, new: &Row) {
    let r = r as u32;
    let (a, b) = (&old.terms, &new.terms);
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            let list = &mut at[a[i].0 as usize];
            if let Some(k) = list.iter().position(|&x| x == r) {
                list.swap_remove(k);
            }
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            at[b[j].0 as usize].push(r);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_measurements() {
        let mut rng = crate::rng_from_seed(1);
        let mut t = SparseTableau::graph_state(3, [(0, 1), (1, 2)]).unwrap();
        t.measure(1, Pauli1::Z, Some(1), &mut rng).unwrap();
        let r = t.to_tableau(&[0, 2]).unwrap();
        assert!(r.same_group(&StabilizerTableau::from_literals(&["+XI", "+IX"]).unwrap()));
        assert_eq!(t.deterministic_outcome(0, Pauli1::X).unwrap(), Some(1));
        assert!(matches!(t.measure(0, Pauli1::X, Some(-1), &mut rng), Err(Error::Contradiction { .. })));
        assert_eq!(t.measure(0, Pauli1::X, None, &mut rng).unwrap(), 1);
        assert!(matches!(t.measure(0, Pauli1::X, None, &mut rng), Err(Error::AlreadyMeasured(0))));
    }
}

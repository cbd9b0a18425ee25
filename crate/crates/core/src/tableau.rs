//! Stabilizer tableaux: validated lists of commuting, independent Pauli generators.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::bits::BitMatrix;
use crate::clifford::CliffordGate;
use crate::error::{Error, Result};
use crate::pauli::{Pauli1, PauliString, Phase};

/// Generators of a stabilizer group on `n` qubits. A tableau with `n`
/// generators defines a pure state; fewer generators define a code space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StabilizerTableau {
    n: usize,
    gens: Vec<PauliString>,
}

impl StabilizerTableau {
    pub fn new(n: usize, gens: Vec<PauliString>) -> Result<Self> {
        let t = StabilizerTableau { n, gens };
        t.validate()?;
        Ok(t)
    }

    pub fn empty(n: usize) -> Self {
        StabilizerTableau { n, gens: Vec::new() }
    }

    /// `|0…0⟩`.
    pub fn zero_state(n: usize) -> Self {
        let gens = (0..n).map(|q| PauliString::single(n, q, Pauli1::Z)).collect();
        StabilizerTableau { n, gens }
    }

    /// `|+…+⟩`.
    pub fn plus_state(n: usize) -> Self {
        let gens = (0..n).map(|q| PauliString::single(n, q, Pauli1::X)).collect();
        StabilizerTableau { n, gens }
    }

    pub fn from_literals(lits: &[&str]) -> Result<Self> {
        let gens: Vec<PauliString> = lits.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        let n = gens.first().map_or(0, |g| g.n());
        Self::new(n, gens)
    }

    /// Construct without validation; callers guarantee the invariants.
    pub(crate) fn from_parts(n: usize, gens: Vec<PauliString>) -> Self {
        StabilizerTableau { n, gens }
    }

    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.gens.iter().enumerate() {
            if g.n() != self.n {
                return Err(Error::Size { expected: self.n, got: g.n() });
            }
            if !g.is_hermitian() {
                return Err(Error::NonHermitian(i));
            }
            if g.is_identity() && g.phase() == Phase::MINUS_ONE {
                return Err(Error::MinusIdentity);
            }
        }
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                if !self.gens[i].commutes(&self.gens[j]) {
                    return Err(Error::Anticommuting(i, j));
                }
            }
        }
        let rank = self.rank();
        if rank < self.gens.len() {
            return Err(Error::RankDeficient { rank, count: self.gens.len() });
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_pure(&self) -> bool {
        self.gens.len() == self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.gens
    }

    pub fn into_generators(self) -> Vec<PauliString> {
        self.gens
    }

    pub fn symplectic_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(2 * self.n, self.gens.iter().map(|g| g.symplectic()).collect())
    }

    pub fn rank(&self) -> usize {
        self.symplectic_matrix().rank()
    }

    /// Row-reduced echelon form over the columns `x_0…x_{n-1}, z_0…z_{n-1}`,
    /// signs carried along. Equal groups have identical canonical forms.
    pub fn canonical_form(&self) -> Result<StabilizerTableau> {
        let (rows, _) = reduce(self.n, self.gens.clone());
        if rows.len() < self.gens.len() {
            return Err(Error::RankDeficient { rank: rows.len(), count: self.gens.len() });
        }
        Ok(StabilizerTableau { n: self.n, gens: rows })
    }

    /// Same signed group.
    pub fn same_group(&self, other: &StabilizerTableau) -> bool {
        if self.n != other.n || self.gens.len() != other.gens.len() {
            return false;
        }
        match (self.canonical_form(), other.canonical_form()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// `Some(s)` when `s·p` is a group element.
    pub fn contains(&self, p: &PauliString) -> Option<Phase> {
        Membership::new(self).contains(p)
    }

    /// `±1` when `p` or `-p` is in the group.
    pub fn sign_of(&self, p: &PauliString) -> Option<i8> {
        self.contains(p).and_then(Phase::sign)
    }

    pub fn apply_clifford(&mut self, g: CliffordGate) -> Result<()> {
        g.check(self.n)?;
        for p in &mut self.gens {
            g.conjugate(p);
        }
        Ok(())
    }

    pub fn apply_pauli(&mut self, p: &PauliString) {
        for g in &mut self.gens {
            if !g.commutes(p) {
                *g = g.clone().negated();
            }
        }
    }

    /// Projective measurement of the Hermitian Pauli `p`.
    pub fn measure<R: RngCore + ?Sized>(
        &mut self,
        p: &PauliString,
        forced: Option<i8>,
        rng: &mut R,
    ) -> Result<i8> {
        if p.n() != self.n {
            return Err(Error::Size { expected: self.n, got: p.n() });
        }
        if p.is_identity() {
            return Err(Error::IdentityMeasurement);
        }
        if !p.is_hermitian() {
            return Err(Error::Precondition(format!("measured operator {p} is not Hermitian")));
        }
        let pivot = self.gens.iter().position(|g| !g.commutes(p));
        if let Some(k) = pivot {
            let pk = self.gens[k].clone();
            for j in k + 1..self.gens.len() {
                if !self.gens[j].commutes(p) {
                    self.gens[j].mul_assign(&pk);
                }
            }
            let o = forced.unwrap_or_else(|| random_outcome(rng));
            self.gens[k] = p.clone().times_phase(Phase::from_outcome(o));
            return Ok(o);
        }
        match self.contains(p) {
            Some(s) => {
                let actual = s.sign().expect("Hermitian group element");
                match forced {
                    Some(f) if f != actual => Err(Error::Contradiction { forced: f, actual }),
                    _ => Ok(actual),
                }
            }
            None => {
                let o = forced.unwrap_or_else(|| random_outcome(rng));
                self.gens.push(p.clone().times_phase(Phase::from_outcome(o)));
                Ok(o)
            }
        }
    }

    /// Pure version of [`measure`](Self::measure).
    pub fn measure_pauli<R: RngCore + ?Sized>(
        &self,
        p: &PauliString,
        forced: Option<i8>,
        rng: &mut R,
    ) -> Result<(i8, StabilizerTableau)> {
        let mut t = self.clone();
        let o = t.measure(p, forced, rng)?;
        Ok((o, t))
    }

    /// Drop qubit `q`, which must be fixed by a single-qubit generator.
    /// Returns that generator's restriction.
    pub fn discard_qubit(&mut self, q: usize) -> Result<PauliString> {
        if q >= self.n {
            return Err(Error::OutOfRange { index: q, n: self.n });
        }
        let k = match self.gens.iter().position(|g| g.weight() == 1 && g.get(q) != Pauli1::I) {
            Some(k) => k,
            None => self.expose_single(q)?,
        };
        let local = self.gens.remove(k);
        for g in &mut self.gens {
            if g.get(q) != Pauli1::I {
                g.mul_assign(&local);
            }
        }
        for g in &mut self.gens {
            *g = g.remove_qubit(q);
        }
        self.n -= 1;
        Ok(local)
    }

    /// Swap a group element `±P_q` into the generator list, replacing a
    /// generator it depends on. Returns its index.
    fn expose_single(&mut self, q: usize) -> Result<usize> {
        let local = [Pauli1::X, Pauli1::Y, Pauli1::Z]
            .into_iter()
            .map(|p| PauliString::single(self.n, q, p))
            .find_map(|p| self.contains(&p).map(|ph| p.times_phase(ph)))
            .ok_or_else(|| Error::Precondition(format!("qubit {q} is entangled")))?;
        let rank = self.rank();
        for k in 0..self.gens.len() {
            let mut trial = self.gens.clone();
            trial[k] = local.clone();
            if BitMatrix::from_rows(2 * self.n, trial.iter().map(|g| g.symplectic()).collect()).rank() == rank {
                self.gens = trial;
                return Ok(k);
            }
        }
        Err(Error::Precondition(format!("qubit {q} is entangled")))
    }

    /// Replace every generator by its restriction to `qubits`; valid when
    /// every generator is supported inside `qubits`.
    pub fn restrict(&self, qubits: &[usize]) -> Result<StabilizerTableau> {
        let mut inside = alloc::vec![false; self.n];
        for &q in qubits {
            inside[q] = true;
        }
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            if g.support().iter().any(|&q| !inside[q]) {
                return Err(Error::Precondition(format!("generator {g} leaves the kept region")));
            }
            gens.push(g.restrict(qubits));
        }
        StabilizerTableau::new(qubits.len(), gens)
    }

    pub fn push(&mut self, p: PauliString) -> Result<()> {
        self.gens.push(p);
        let r = self.validate();
        if r.is_err() {
            self.gens.pop();
        }
        r
    }
}

impl fmt::Debug for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl fmt::Display for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gens {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

fn random_outcome<R: RngCore + ?Sized>(rng: &mut R) -> i8 {
    if rng.next_u32() & 1 == 0 {
        1
    } else {
        -1
    }
}

#[inline]
fn column_bit(p: &PauliString, c: usize, n: usize) -> bool {
    if c < n {
        p.x_bits().get(c)
    } else {
        p.z_bits().get(c - n)
    }
}

fn first_column(p: &PauliString, n: usize) -> Option<usize> {
    p.x_bits().first_one_from(0).or_else(|| p.z_bits().first_one_from(0).map(|c| c + n))
}

/// Full reduction with signs; returns the nonzero rows and their pivots.
fn reduce(n: usize, mut rows: Vec<PauliString>) -> (Vec<PauliString>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..2 * n {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| column_bit(&rows[i], c, n)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && column_bit(row, c, n) {
                row.mul_assign(&pivot);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Precomputed echelon basis for repeated membership queries.
#[derive(Clone, Debug)]
pub struct Membership {
    n: usize,
    rows: Vec<PauliString>,
    pivots: Vec<usize>,
}

impl Membership {
    pub fn new(t: &StabilizerTableau) -> Self {
        let (rows, pivots) = reduce(t.n, t.gens.clone());
        Membership { n: t.n, rows, pivots }
    }

    pub fn contains(&self, p: &PauliString) -> Option<Phase> {
        if p.n() != self.n {
            return None;
        }
        let mut residual = p.clone();
        let mut product = PauliString::identity(self.n);
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if column_bit(&residual, c, self.n) {
                residual.mul_assign(row);
                product.mul_assign(row);
            }
        }
        if first_column(&residual, self.n).is_some() {
            return None;
        }
        debug_assert!(product.same_operator(p));
        Some(Phase::new(product.phase().exponent() + p.phase().conj().exponent()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t(lits: &[&str]) -> StabilizerTableau {
        StabilizerTableau::from_literals(lits).unwrap()
    }

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            StabilizerTableau::from_literals(&["+XX", "+XX"]),
            Err(Error::RankDeficient { .. })
        ));
        assert!(matches!(
            StabilizerTableau::from_literals(&["+XI", "+ZI"]),
            Err(Error::Anticommuting(0, 1))
        ));
        assert!(matches!(StabilizerTableau::from_literals(&["+iX"]), Err(Error::NonHermitian(0))));
        assert!(matches!(StabilizerTableau::from_literals(&["-II"]), Err(Error::MinusIdentity)));
    }

    #[test]
    fn canonical_form_examples() {
        let c = t(&["+ZI", "+ZZ"]).canonical_form().unwrap();
        let lits: Vec<_> = c.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(lits, ["+ZI", "+IZ"]);
        assert!(t(&["+XX", "+ZZ"]).same_group(&t(&["-YY", "+XX"])));
        assert!(!t(&["+XX", "+ZZ"]).same_group(&t(&["+YY", "+XX"])));
    }

    #[test]
    fn contains_reports_sign() {
        let s = t(&["+XX", "+ZZ"]);
        assert_eq!(s.contains(&p("+YY")), Some(Phase::MINUS_ONE));
        assert_eq!(s.contains(&p("+II")), Some(Phase::ONE));
        assert_eq!(s.contains(&p("+XI")), None);
        assert_eq!(t(&["+Z"]).contains(&p("+X")), None);
    }

    #[test]
    fn measurement_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let plus = t(&["+X"]);
        let (o, post) = plus.measure_pauli(&p("+X"), None, &mut rng).unwrap();
        assert_eq!((o, &post), (1, &plus));
        assert!(matches!(
            plus.measure_pauli(&p("+X"), Some(-1), &mut rng),
            Err(Error::Contradiction { forced: -1, actual: 1 })
        ));
        let (o, post) = plus.measure_pauli(&p("+Z"), Some(-1), &mut rng).unwrap();
        assert_eq!(o, -1);
        assert_eq!(post, t(&["-Z"]));
        let mut partial = StabilizerTableau::empty(2);
        let o = partial.measure(&p("+ZZ"), None, &mut rng).unwrap();
        assert_eq!(partial.len(), 1);
        assert_eq!(partial.sign_of(&p("+ZZ")), Some(o));
    }

    #[test]
    fn clifford_examples() {
        let mut s = t(&["+XI", "+IX"]);
        s.apply_clifford(CliffordGate::CZ(0, 1)).unwrap();
        assert_eq!(s, t(&["+XZ", "+ZX"]));
        let mut s = t(&["+Z"]);
        s.apply_clifford(CliffordGate::H(0)).unwrap();
        assert_eq!(s, t(&["+X"]));
        assert!(s.apply_clifford(CliffordGate::H(1)).is_err());
    }

    #[test]
    fn discard_measured_qubit() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut s = t(&["+XZ", "+ZX"]);
        let o = s.measure(&p("+ZI"), None, &mut rng).unwrap();
        let local = s.discard_qubit(0).unwrap();
        assert_eq!(local.to_string(), if o == 1 { "+ZI" } else { "-ZI" });
        assert_eq!(s.n(), 1);
        let expected = if o == 1 { t(&["+X"]) } else { t(&["-X"]) };
        assert!(s.same_group(&expected));
    }
}

//! Signed Pauli strings with exact mod-4 phase tracking.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Power of `i`: the operator carries a factor `i^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub const fn new(k: u8) -> Phase {
        Phase(k & 3)
    }

    pub const fn from_sign(negative: bool) -> Phase {
        if negative {
            Phase::MINUS_ONE
        } else {
            Phase::ONE
        }
    }

    /// `+1` / `-1` as a phase.
    pub fn from_outcome(o: i8) -> Phase {
        Phase::from_sign(o < 0)
    }

    pub const fn exponent(self) -> u8 {
        self.0
    }

    pub const fn is_real(self) -> bool {
        self.0 & 1 == 0
    }

    /// `Some(±1)` for real phases.
    pub fn sign(self) -> Option<i8> {
        match self.0 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub const fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) & 3)
    }

    pub const fn conj(self) -> Phase {
        Phase((4 - self.0) & 3)
    }

    pub const fn neg(self) -> Phase {
        Phase((self.0 + 2) & 3)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })
    }
}

/// Single-qubit Pauli `{I, X, Y, Z}` without phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli1 {
    I,
    X,
    Y,
    Z,
}

impl Pauli1 {
    pub const fn from_bits(x: bool, z: bool) -> Pauli1 {
        match (x, z) {
            (false, false) => Pauli1::I,
            (true, false) => Pauli1::X,
            (true, true) => Pauli1::Y,
            (false, true) => Pauli1::Z,
        }
    }

    pub const fn bits(self) -> (bool, bool) {
        match self {
            Pauli1::I => (false, false),
            Pauli1::X => (true, false),
            Pauli1::Y => (true, true),
            Pauli1::Z => (false, true),
        }
    }

    pub fn commutes(self, other: Pauli1) -> bool {
        self == Pauli1::I || other == Pauli1::I || self == other
    }

    /// `self · other = i^k · result`.
    pub fn mul(self, other: Pauli1) -> (Phase, Pauli1) {
        use Pauli1::*;
        let (ax, az) = self.bits();
        let (bx, bz) = other.bits();
        let out = Pauli1::from_bits(ax ^ bx, az ^ bz);
        let k = match (self, other) {
            (X, Y) | (Y, Z) | (Z, X) => 1,
            (X, Z) | (Y, X) | (Z, Y) => 3,
            _ => 0,
        };
        (Phase::new(k), out)
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli1::I => 'I',
            Pauli1::X => 'X',
            Pauli1::Y => 'Y',
            Pauli1::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Pauli1> {
        match c {
            'I' | '_' => Some(Pauli1::I),
            'X' => Some(Pauli1::X),
            'Y' => Some(Pauli1::Y),
            'Z' => Some(Pauli1::Z),
            _ => None,
        }
    }
}

/// `i^phase · ⊗_q σ(x_q, z_q)` with `σ(1,1) = Y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: BitVec,
    z: BitVec,
    phase: Phase,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString { x: BitVec::zeros(n), z: BitVec::zeros(n), phase: Phase::ONE }
    }

    pub fn from_bits(x: BitVec, z: BitVec, phase: Phase) -> Self {
        assert_eq!(x.len(), z.len(), "x and z parts must have equal length");
        PauliString { x, z, phase }
    }

    pub fn single(n: usize, q: usize, p: Pauli1) -> Self {
        let mut s = Self::identity(n);
        s.set(q, p);
        s
    }

    /// Product of `p` over `support` (repeated indices cancel).
    pub fn uniform(n: usize, support: impl IntoIterator<Item = usize>, p: Pauli1) -> Self {
        let mut s = Self::identity(n);
        for q in support {
            let cur = s.get(q);
            let (k, r) = cur.mul(p);
            s.phase = s.phase.mul(k);
            s.set(q, r);
        }
        s
    }

    pub fn x_type(n: usize, support: impl IntoIterator<Item = usize>) -> Self {
        Self::uniform(n, support, Pauli1::X)
    }

    pub fn z_type(n: usize, support: impl IntoIterator<Item = usize>) -> Self {
        Self::uniform(n, support, Pauli1::Z)
    }

    pub fn from_terms(n: usize, terms: &[(usize, Pauli1)]) -> Self {
        let mut s = Self::identity(n);
        for &(q, p) in terms {
            s.mul_assign(&Self::single(n, q, p));
        }
        s
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn set_phase(&mut self, p: Phase) {
        self.phase = p;
    }

    pub fn with_phase(mut self, p: Phase) -> Self {
        self.phase = p;
        self
    }

    pub fn times_phase(mut self, p: Phase) -> Self {
        self.phase = self.phase.mul(p);
        self
    }

    pub fn negated(self) -> Self {
        self.times_phase(Phase::MINUS_ONE)
    }

    #[inline]
    pub fn get(&self, q: usize) -> Pauli1 {
        Pauli1::from_bits(self.x.get(q), self.z.get(q))
    }

    #[inline]
    pub fn set(&mut self, q: usize, p: Pauli1) {
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// True for `±` phases; every Pauli tensor with a real phase is Hermitian.
    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    pub fn weight(&self) -> usize {
        self.x.words().iter().zip(self.z.words()).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&q| self.x.get(q) || self.z.get(q)).collect()
    }

    pub fn terms(&self) -> Vec<(usize, Pauli1)> {
        self.support().into_iter().map(|q| (q, self.get(q))).collect()
    }

    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    pub fn commutes(&self, other: &PauliString) -> bool {
        debug_assert_eq!(self.n(), other.n());
        let mut parity = 0u32;
        for i in 0..self.x.words().len() {
            parity ^= ((self.x.words()[i] & other.z.words()[i])
                ^ (self.z.words()[i] & other.x.words()[i]))
                .count_ones();
        }
        parity & 1 == 0
    }

    /// Same tensor factors, ignoring the phase.
    pub fn same_operator(&self, other: &PauliString) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// `self ← self · other`.
    pub fn mul_assign(&mut self, other: &PauliString) {
        debug_assert_eq!(self.n(), other.n());
        let mut plus = 0u32;
        let mut minus = 0u32;
        let xs = self.x.words_mut();
        let zs = self.z.words_mut();
        for i in 0..xs.len() {
            let (x1, z1) = (xs[i], zs[i]);
            let (x2, z2) = (other.x.words()[i], other.z.words()[i]);
            let (ox1, oy1, oz1) = (x1 & !z1, x1 & z1, !x1 & z1);
            let (ox2, oy2, oz2) = (x2 & !z2, x2 & z2, !x2 & z2);
            plus += ((ox1 & oy2) | (oy1 & oz2) | (oz1 & ox2)).count_ones();
            minus += ((ox1 & oz2) | (oy1 & ox2) | (oz1 & oy2)).count_ones();
            xs[i] = x1 ^ x2;
            zs[i] = z1 ^ z2;
        }
        // each `minus` qubit contributes i^{-1} = i^3
        let k = self.phase.0 as u32 + other.phase.0 as u32 + plus + 3 * minus;
        self.phase = Phase::new((k % 4) as u8);
    }

    /// `a · b`, checking sizes.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        if self.n() != other.n() {
            return Err(Error::Size { expected: self.n(), got: other.n() });
        }
        let mut out = self.clone();
        out.mul_assign(other);
        Ok(out)
    }

    /// Restriction to the listed qubits, in that order; phase kept.
    pub fn restrict(&self, qubits: &[usize]) -> PauliString {
        let mut out = PauliString::identity(qubits.len());
        for (i, &q) in qubits.iter().enumerate() {
            out.set(i, self.get(q));
        }
        out.phase = self.phase;
        out
    }

    /// Embed into `n` qubits, mapping local qubit `i` to `map[i]`.
    pub fn embed(&self, n: usize, map: &[usize]) -> PauliString {
        let mut out = PauliString::identity(n);
        for q in self.support() {
            out.set(map[q], self.get(q));
        }
        out.phase = self.phase;
        out
    }

    /// Remove qubit `q` (which must carry identity).
    pub fn remove_qubit(&self, q: usize) -> PauliString {
        debug_assert_eq!(self.get(q), Pauli1::I);
        PauliString { x: self.x.without(q), z: self.z.without(q), phase: self.phase }
    }

    /// `[x | z]` as a single `2n` bit vector.
    pub fn symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase)?;
        for q in 0..self.n() {
            write!(f, "{}", self.get(q).to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(r) = s.strip_prefix("+i") {
            (Phase::I, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (Phase::MINUS_I, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (Phase::ONE, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (Phase::MINUS_ONE, r)
        } else {
            return Err(Error::Parse(String::from(s)));
        };
        let mut out = PauliString::identity(body.chars().count());
        for (q, c) in body.chars().enumerate() {
            let p = Pauli1::from_char(c).ok_or_else(|| Error::Parse(String::from(s)))?;
            out.set(q, p);
        }
        out.phase = phase;
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn xz_is_minus_i_y() {
        assert_eq!(p("+X").multiply(&p("+Z")).unwrap(), p("-iY"));
        assert_eq!(p("+Z").multiply(&p("+X")).unwrap(), p("+iY"));
        assert_eq!(p("+Y").multiply(&p("+Y")).unwrap(), p("+I"));
    }

    #[test]
    fn literal_round_trip() {
        for s in ["+I", "-iYXZI", "+iZZ", "-XYZ", "+"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert!("XZ".parse::<PauliString>().is_err());
        assert!("+XQ".parse::<PauliString>().is_err());
    }

    #[test]
    fn size_mismatch_is_error() {
        assert!(matches!(p("+X").multiply(&p("+XX")), Err(Error::Size { .. })));
    }

    #[test]
    fn commutation() {
        assert!(p("+XX").commutes(&p("+ZZ")));
        assert!(!p("+XI").commutes(&p("+ZI")));
        assert!(p("+XYZ").commutes(&p("+XYZ")));
    }

    #[test]
    fn wide_strings_cross_word_boundary() {
        let a = PauliString::x_type(130, [0, 64, 129]);
        let b = PauliString::z_type(130, [64, 129]);
        let ab = a.multiply(&b).unwrap();
        assert_eq!(ab.get(64), Pauli1::Y);
        assert_eq!(ab.phase(), Phase::MINUS_ONE);
        assert!(a.commutes(&b));
        assert_eq!(ab.weight(), 3);
    }
}

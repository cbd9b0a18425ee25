//! Brute-force statevector simulation for small systems. Qubit `q` is bit `q`
//! of the basis index.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_complex::Complex64;
use rand_core::RngCore;

use crate::clifford::CliffordGate;
use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::tableau::StabilizerTableau;

pub const MAX_QUBITS: usize = 14;

type C = Complex64;

const I_POW: [C; 4] = [C::new(1.0, 0.0), C::new(0.0, 1.0), C::new(-1.0, 0.0), C::new(0.0, -1.0)];

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amp: Vec<C>,
}

struct Masks {
    x: usize,
    z: usize,
    base: u8,
}

fn masks(p: &PauliString) -> Masks {
    let mut x = 0usize;
    let mut z = 0usize;
    for q in 0..p.n() {
        if p.x_bits().get(q) {
            x |= 1 << q;
        }
        if p.z_bits().get(q) {
            z |= 1 << q;
        }
    }
    let y = (x & z).count_ones() as u8;
    Masks { x, z, base: (p.phase().exponent() + y) & 3 }
}

impl DenseState {
    pub fn zero(n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooLarge(n));
        }
        let mut amp = vec![C::new(0.0, 0.0); 1 << n];
        amp[0] = C::new(1.0, 0.0);
        Ok(DenseState { n, amp })
    }

    pub fn from_amplitudes(n: usize, amp: Vec<C>) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooLarge(n));
        }
        if amp.len() != 1 << n {
            return Err(Error::Size { expected: 1 << n, got: amp.len() });
        }
        let mut s = DenseState { n, amp };
        s.normalize()?;
        Ok(s)
    }

    pub fn from_circuit(n: usize, gates: &[CliffordGate]) -> Result<Self> {
        let mut s = Self::zero(n)?;
        for g in gates {
            s.apply_gate(*g)?;
        }
        Ok(s)
    }

    /// Graph state `∏ CZ |+…+⟩`.
    pub fn graph_state(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut gates: Vec<CliffordGate> = (0..n).map(CliffordGate::H).collect();
        gates.extend(edges.iter().map(|&(a, b)| CliffordGate::CZ(a, b)));
        Self::from_circuit(n, &gates)
    }

    /// A state stabilized by every generator of `t`, obtained by projecting a
    /// fixed generic vector. For a pure tableau this is the unique state.
    pub fn from_tableau(t: &StabilizerTableau) -> Result<Self> {
        let n = t.n();
        if n > MAX_QUBITS {
            return Err(Error::TooLarge(n));
        }
        let mut seed = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let amp: Vec<C> = (0..1usize << n).map(|_| C::new(next(), next())).collect();
        let mut s = DenseState { n, amp };
        for g in t.generators() {
            s.project(g, 1)?;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C] {
        &self.amp
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    fn normalize(&mut self) -> Result<()> {
        let nrm = libm::sqrt(self.norm_sqr());
        if nrm < 1e-12 {
            return Err(Error::Precondition(String::from("zero-norm state")));
        }
        for a in &mut self.amp {
            *a /= nrm;
        }
        Ok(())
    }

    fn check(&self, p: &PauliString) -> Result<()> {
        if p.n() != self.n {
            Err(Error::Size { expected: self.n, got: p.n() })
        } else {
            Ok(())
        }
    }

    /// `P|ψ⟩` (not renormalized; Paulis are unitary).
    pub fn apply_pauli(&self, p: &PauliString) -> Result<DenseState> {
        self.check(p)?;
        let m = masks(p);
        let mut out = vec![C::new(0.0, 0.0); self.amp.len()];
        for (b, &a) in self.amp.iter().enumerate() {
            let k = m.base + 2 * ((m.z & b).count_ones() as u8 & 1);
            out[b ^ m.x] = a * I_POW[(k & 3) as usize];
        }
        Ok(DenseState { n: self.n, amp: out })
    }

    pub fn apply_gate(&mut self, g: CliffordGate) -> Result<()> {
        g.check(self.n)?;
        let r = core::f64::consts::FRAC_1_SQRT_2;
        match g {
            CliffordGate::H(q) => {
                let bit = 1 << q;
                for b in 0..self.amp.len() {
                    if b & bit == 0 {
                        let (a0, a1) = (self.amp[b], self.amp[b | bit]);
                        self.amp[b] = (a0 + a1) * r;
                        self.amp[b | bit] = (a0 - a1) * r;
                    }
                }
            }
            CliffordGate::S(q) | CliffordGate::Sdg(q) => {
                let ph = if matches!(g, CliffordGate::S(_)) { I_POW[1] } else { I_POW[3] };
                for (b, a) in self.amp.iter_mut().enumerate() {
                    if b >> q & 1 == 1 {
                        *a *= ph;
                    }
                }
            }
            CliffordGate::X(q) | CliffordGate::Y(q) | CliffordGate::Z(q) => {
                let p1 = match g {
                    CliffordGate::X(_) => crate::Pauli1::X,
                    CliffordGate::Y(_) => crate::Pauli1::Y,
                    _ => crate::Pauli1::Z,
                };
                *self = self.apply_pauli(&PauliString::single(self.n, q, p1))?;
            }
            CliffordGate::CZ(a, b) => {
                let m = (1 << a) | (1 << b);
                for (i, v) in self.amp.iter_mut().enumerate() {
                    if i & m == m {
                        *v = -*v;
                    }
                }
            }
            CliffordGate::CX(c, t) => {
                for i in 0..self.amp.len() {
                    if i >> c & 1 == 1 && i >> t & 1 == 0 {
                        self.amp.swap(i, i | 1 << t);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn inner(&self, other: &DenseState) -> Result<C> {
        if self.n != other.n {
            return Err(Error::Size { expected: self.n, got: other.n });
        }
        Ok(self.amp.iter().zip(&other.amp).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn expectation_complex(&self, p: &PauliString) -> Result<C> {
        self.inner(&self.apply_pauli(p)?)
    }

    /// `⟨ψ|P|ψ⟩`; real for Hermitian `P`.
    pub fn expectation(&self, p: &PauliString) -> Result<f64> {
        Ok(self.expectation_complex(p)?.re)
    }

    /// `ψ ← (1 + o·P)/2 ψ`, renormalized. Fails on a zero-norm projection.
    pub fn project(&mut self, p: &PauliString, o: i8) -> Result<()> {
        let pp = self.apply_pauli(p)?;
        let s = if o < 0 { -1.0 } else { 1.0 };
        for (a, b) in self.amp.iter_mut().zip(&pp.amp) {
            *a = (*a + b * s) * 0.5;
        }
        self.normalize()
    }

    /// Born-rule measurement of a Hermitian Pauli.
    pub fn measure<R: RngCore + ?Sized>(
        &self,
        p: &PauliString,
        forced: Option<i8>,
        rng: &mut R,
    ) -> Result<(i8, DenseState)> {
        let e = self.expectation(p)?;
        let p_plus = ((1.0 + e) / 2.0).clamp(0.0, 1.0);
        let o = match forced {
            Some(o) => o,
            None => {
                let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
                if u < p_plus {
                    1
                } else {
                    -1
                }
            }
        };
        let prob = if o > 0 { p_plus } else { 1.0 - p_plus };
        if prob < 1e-12 {
            return Err(Error::Contradiction { forced: o, actual: -o });
        }
        let mut post = self.clone();
        post.project(p, o)?;
        Ok((o, post))
    }

    pub fn fidelity(&self, other: &DenseState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// `index re im` per line.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (i, a) in self.amp.iter().enumerate() {
            let _ = writeln!(s, "{i} {:.12} {:.12}", a.re, a.im);
        }
        s
    }
}

/// Dense `2^n × 2^n` operator, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    m: Vec<C>,
}

impl DenseOperator {
    pub fn zeros(n: usize) -> Result<Self> {
        if n > MAX_QUBITS / 2 {
            return Err(Error::TooLarge(n));
        }
        let dim = 1 << n;
        Ok(DenseOperator { dim, m: vec![C::new(0.0, 0.0); dim * dim] })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut o = Self::zeros(n)?;
        for i in 0..o.dim {
            o.m[i * o.dim + i] = C::new(1.0, 0.0);
        }
        Ok(o)
    }

    pub fn from_pauli(p: &PauliString) -> Result<Self> {
        let mut o = Self::zeros(p.n())?;
        let mk = masks(p);
        for b in 0..o.dim {
            let k = mk.base + 2 * ((mk.z & b).count_ones() as u8 & 1);
            o.m[(b ^ mk.x) * o.dim + b] = I_POW[(k & 3) as usize];
        }
        Ok(o)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> C {
        self.m[r * self.dim + c]
    }

    pub fn add(&self, other: &DenseOperator) -> DenseOperator {
        let m = self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect();
        DenseOperator { dim: self.dim, m }
    }

    pub fn scale(&self, s: C) -> DenseOperator {
        DenseOperator { dim: self.dim, m: self.m.iter().map(|a| a * s).collect() }
    }

    pub fn matmul(&self, other: &DenseOperator) -> DenseOperator {
        let d = self.dim;
        let mut m = vec![C::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.m[i * d + k];
                if a == C::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    m[i * d + j] += a * other.m[k * d + j];
                }
            }
        }
        DenseOperator { dim: d, m }
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        self.m.iter().zip(&other.m).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    fn max_abs(&self) -> f64 {
        self.m.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Matrix exponential by scaling and squaring with a Taylor core.
    pub fn expm(&self) -> DenseOperator {
        let norm = self.max_abs() * self.dim as f64;
        let mut squarings = 0;
        let mut scale = 1.0;
        while norm * scale > 0.5 {
            scale *= 0.5;
            squarings += 1;
        }
        let a = self.scale(C::new(scale, 0.0));
        let mut id = DenseOperator { dim: self.dim, m: vec![C::new(0.0, 0.0); self.m.len()] };
        for i in 0..self.dim {
            id.m[i * self.dim + i] = C::new(1.0, 0.0);
        }
        let mut sum = id.clone();
        let mut term = id;
        for k in 1..=24 {
            term = term.matmul(&a).scale(C::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
        }
        for _ in 0..squarings {
            sum = sum.matmul(&sum);
        }
        sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng_from_seed;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn hadamard_gives_plus() {
        let s = DenseState::from_circuit(1, &[CliffordGate::H(0)]).unwrap();
        let r = core::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitudes()[0].re - r).abs() < 1e-15);
        assert!((s.amplitudes()[1].re - r).abs() < 1e-15);
        assert!((s.expectation(&p("+X")).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn graph_state_stabilizers() {
        let s = DenseState::graph_state(2, &[(0, 1)]).unwrap();
        assert!((s.expectation(&p("+XZ")).unwrap() - 1.0).abs() < 1e-12);
        let tri = DenseState::graph_state(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        for lit in ["+XZZ", "+ZXZ", "+ZZX"] {
            assert!((tri.expectation(&p(lit)).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn too_large_rejected() {
        assert!(matches!(DenseState::zero(15), Err(Error::TooLarge(15))));
    }

    #[test]
    fn z_on_plus_is_fair() {
        let plus = DenseState::from_circuit(1, &[CliffordGate::H(0)]).unwrap();
        let mut ups = 0;
        for seed in 0..1000 {
            let (o, post) = plus.measure(&p("+Z"), None, &mut rng_from_seed(seed)).unwrap();
            assert!((post.expectation(&p("+Z")).unwrap() - o as f64).abs() < 1e-12);
            if o == 1 {
                ups += 1;
            }
        }
        assert!((ups as f64 / 1000.0 - 0.5).abs() < 0.05);
        let (o, post) = plus.measure(&p("+X"), None, &mut rng_from_seed(0)).unwrap();
        assert_eq!(o, 1);
        assert!((post.fidelity(&plus).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fidelity_of_basis_states() {
        let a = DenseState::zero(2).unwrap();
        let b = DenseState::from_circuit(2, &[CliffordGate::X(0)]).unwrap();
        assert!((a.fidelity(&a).unwrap() - 1.0).abs() < 1e-15);
        assert!(a.fidelity(&b).unwrap().abs() < 1e-15);
    }

    #[test]
    fn tableau_reconstruction() {
        let t = StabilizerTableau::from_literals(&["+XZ", "+ZX"]).unwrap();
        let s = DenseState::from_tableau(&t).unwrap();
        let g = DenseState::graph_state(2, &[(0, 1)]).unwrap();
        assert!((s.fidelity(&g).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expm_of_pauli_rotation() {
        // exp(iπ/2 · Z) = iZ
        let z = DenseOperator::from_pauli(&p("+Z")).unwrap();
        let e = z.scale(C::new(0.0, core::f64::consts::FRAC_PI_2)).expm();
        let iz = DenseOperator::from_pauli(&p("+iZ")).unwrap();
        assert!(e.max_abs_diff(&iz) < 1e-12);
    }
}

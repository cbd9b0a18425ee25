//! Elementary Clifford gates and their action on Pauli strings by conjugation.

use core::fmt;

use crate::error::{Error, Result};
use crate::pauli::{Phase, PauliString};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    H(usize),
    /// `√Z = diag(1, i)`.
    S(usize),
    /// `√Z† = diag(1, -i)`.
    Sdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    CZ(usize, usize),
    /// Control, target.
    CX(usize, usize),
}

impl CliffordGate {
    pub fn qubits(&self) -> (usize, Option<usize>) {
        use CliffordGate::*;
        match *self {
            H(q) | S(q) | Sdg(q) | X(q) | Y(q) | Z(q) => (q, None),
            CZ(a, b) | CX(a, b) => (a, Some(b)),
        }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        let (a, b) = self.qubits();
        for q in core::iter::once(a).chain(b) {
            if q >= n {
                return Err(Error::OutOfRange { index: q, n });
            }
        }
        if b == Some(a) {
            return Err(Error::Precondition(alloc::format!("gate {self} has repeated target")));
        }
        Ok(())
    }

    pub fn inverse(&self) -> CliffordGate {
        match *self {
            CliffordGate::S(q) => CliffordGate::Sdg(q),
            CliffordGate::Sdg(q) => CliffordGate::S(q),
            g => g,
        }
    }

    /// `P ← g P g†`. Targets are assumed in range.
    pub fn conjugate(&self, p: &mut PauliString) {
        use crate::pauli::Pauli1;
        let two = Phase::MINUS_ONE;
        match *self {
            CliffordGate::H(q) => {
                let (x, z) = p.get(q).bits();
                if x && z {
                    *p = p.clone().times_phase(two);
                }
                p.set(q, Pauli1::from_bits(z, x));
            }
            CliffordGate::S(q) => {
                let (x, z) = p.get(q).bits();
                if x && z {
                    *p = p.clone().times_phase(two);
                }
                p.set(q, Pauli1::from_bits(x, z ^ x));
            }
            CliffordGate::Sdg(q) => {
                let (x, z) = p.get(q).bits();
                if x && !z {
                    *p = p.clone().times_phase(two);
                }
                p.set(q, Pauli1::from_bits(x, z ^ x));
            }
            CliffordGate::X(q) => {
                if p.z_bits().get(q) {
                    *p = p.clone().times_phase(two);
                }
            }
            CliffordGate::Z(q) => {
                if p.x_bits().get(q) {
                    *p = p.clone().times_phase(two);
                }
            }
            CliffordGate::Y(q) => {
                if p.x_bits().get(q) ^ p.z_bits().get(q) {
                    *p = p.clone().times_phase(two);
                }
            }
            CliffordGate::CX(c, t) => {
                let (xc, zc) = p.get(c).bits();
                let (xt, zt) = p.get(t).bits();
                if xc && zt && !(xt ^ zc) {
                    *p = p.clone().times_phase(two);
                }
                p.set(c, Pauli1::from_bits(xc, zc ^ zt));
                p.set(t, Pauli1::from_bits(xt ^ xc, zt));
            }
            CliffordGate::CZ(a, b) => {
                let (xa, za) = p.get(a).bits();
                let (xb, zb) = p.get(b).bits();
                if xa && xb && (za ^ zb) {
                    *p = p.clone().times_phase(two);
                }
                p.set(a, Pauli1::from_bits(xa, za ^ xb));
                p.set(b, Pauli1::from_bits(xb, zb ^ xa));
            }
        }
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CliffordGate::H(q) => write!(f, "H@{q}"),
            CliffordGate::S(q) => write!(f, "S@{q}"),
            CliffordGate::Sdg(q) => write!(f, "Sdg@{q}"),
            CliffordGate::X(q) => write!(f, "X@{q}"),
            CliffordGate::Y(q) => write!(f, "Y@{q}"),
            CliffordGate::Z(q) => write!(f, "Z@{q}"),
            CliffordGate::CZ(a, b) => write!(f, "CZ@{a},{b}"),
            CliffordGate::CX(a, b) => write!(f, "CX@{a},{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn conj(g: CliffordGate, s: &str) -> PauliString {
        let mut p: PauliString = s.parse().unwrap();
        g.conjugate(&mut p);
        p
    }

    #[test]
    fn single_qubit_images() {
        assert_eq!(conj(CliffordGate::H(0), "+Z").to_string(), "+X");
        assert_eq!(conj(CliffordGate::H(0), "+Y").to_string(), "-Y");
        assert_eq!(conj(CliffordGate::S(0), "+X").to_string(), "+Y");
        assert_eq!(conj(CliffordGate::S(0), "+Y").to_string(), "-X");
        assert_eq!(conj(CliffordGate::Sdg(0), "+X").to_string(), "-Y");
        assert_eq!(conj(CliffordGate::Y(0), "+Z").to_string(), "-Z");
    }

    #[test]
    fn two_qubit_images() {
        assert_eq!(conj(CliffordGate::CZ(0, 1), "+XI").to_string(), "+XZ");
        assert_eq!(conj(CliffordGate::CZ(0, 1), "+XX").to_string(), "+YY");
        assert_eq!(conj(CliffordGate::CX(0, 1), "+YY").to_string(), "-XZ");
        assert_eq!(conj(CliffordGate::CX(0, 1), "+IZ").to_string(), "+ZZ");
    }

    #[test]
    fn check_rejects_bad_targets() {
        assert!(CliffordGate::CZ(1, 1).check(3).is_err());
        assert!(CliffordGate::H(3).check(3).is_err());
        assert!(CliffordGate::CX(0, 2).check(3).is_ok());
    }
}

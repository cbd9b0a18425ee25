//! Single-qubit Clifford operators up to global phase, stored by their action
//! on `X` and `Z` under conjugation.

use alloc::vec::Vec;
use core::fmt;

use crate::clifford::CliffordGate;
use crate::pauli::{Pauli1, PauliString, Phase};

/// Signed single-qubit Pauli `±P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPauli {
    pub negative: bool,
    pub pauli: Pauli1,
}

impl SignedPauli {
    pub const fn plus(pauli: Pauli1) -> Self {
        SignedPauli { negative: false, pauli }
    }

    pub const fn minus(pauli: Pauli1) -> Self {
        SignedPauli { negative: true, pauli }
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

/// Elementary one-qubit gates appearing in correction layers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate1 {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
}

impl Gate1 {
    pub const ALL: [Gate1; 6] = [Gate1::H, Gate1::S, Gate1::Sdg, Gate1::X, Gate1::Y, Gate1::Z];

    pub fn on(self, q: usize) -> CliffordGate {
        match self {
            Gate1::H => CliffordGate::H(q),
            Gate1::S => CliffordGate::S(q),
            Gate1::Sdg => CliffordGate::Sdg(q),
            Gate1::X => CliffordGate::X(q),
            Gate1::Y => CliffordGate::Y(q),
            Gate1::Z => CliffordGate::Z(q),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gate1::H => "H",
            Gate1::S => "S",
            Gate1::Sdg => "Sdg",
            Gate1::X => "X",
            Gate1::Y => "Y",
            Gate1::Z => "Z",
        }
    }

    pub fn from_name(s: &str) -> Option<Gate1> {
        Gate1::ALL.into_iter().find(|g| g.name() == s)
    }

    pub fn local(self) -> LocalClifford {
        LocalClifford::from_gate(self)
    }
}

impl fmt::Display for Gate1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `U` with `U X U† = x_image`, `U Z U† = z_image`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalClifford {
    x_image: SignedPauli,
    z_image: SignedPauli,
}

impl Default for LocalClifford {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl LocalClifford {
    pub const IDENTITY: LocalClifford = LocalClifford {
        x_image: SignedPauli::plus(Pauli1::X),
        z_image: SignedPauli::plus(Pauli1::Z),
    };

    /// `U = exp(-iπ/4 Z) ∝ S`.
    pub const SQRT_MINUS_IZ: LocalClifford = LocalClifford {
        x_image: SignedPauli::plus(Pauli1::Y),
        z_image: SignedPauli::plus(Pauli1::Z),
    };

    /// `U = exp(+iπ/4 Z) ∝ S†`.
    pub const SQRT_PLUS_IZ: LocalClifford = LocalClifford {
        x_image: SignedPauli::minus(Pauli1::Y),
        z_image: SignedPauli::plus(Pauli1::Z),
    };

    /// `U = exp(+iπ/4 Y)`.
    pub const SQRT_PLUS_IY: LocalClifford = LocalClifford {
        x_image: SignedPauli::plus(Pauli1::Z),
        z_image: SignedPauli::minus(Pauli1::X),
    };

    /// `U = exp(-iπ/4 Y)`.
    pub const SQRT_MINUS_IY: LocalClifford = LocalClifford {
        x_image: SignedPauli::minus(Pauli1::Z),
        z_image: SignedPauli::plus(Pauli1::X),
    };

    pub fn new(x_image: SignedPauli, z_image: SignedPauli) -> Option<Self> {
        let ok = x_image.pauli != Pauli1::I
            && z_image.pauli != Pauli1::I
            && x_image.pauli != z_image.pauli;
        ok.then_some(LocalClifford { x_image, z_image })
    }

    pub fn from_gate(g: Gate1) -> Self {
        let mut x = PauliString::single(1, 0, Pauli1::X);
        let mut z = PauliString::single(1, 0, Pauli1::Z);
        g.on(0).conjugate(&mut x);
        g.on(0).conjugate(&mut z);
        let sp = |p: &PauliString| SignedPauli { negative: p.phase() == Phase::MINUS_ONE, pauli: p.get(0) };
        LocalClifford { x_image: sp(&x), z_image: sp(&z) }
    }

    pub fn pauli(p: Pauli1) -> Self {
        let flip = |q: Pauli1| !p.commutes(q);
        LocalClifford {
            x_image: SignedPauli { negative: flip(Pauli1::X), pauli: Pauli1::X },
            z_image: SignedPauli { negative: flip(Pauli1::Z), pauli: Pauli1::Z },
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn is_pauli(&self) -> bool {
        self.x_image.pauli == Pauli1::X && self.z_image.pauli == Pauli1::Z
    }

    pub fn x_image(&self) -> SignedPauli {
        self.x_image
    }

    pub fn z_image(&self) -> SignedPauli {
        self.z_image
    }

    /// `U P U†` as `(phase, Pauli)`.
    pub fn image(&self, p: Pauli1) -> (Phase, Pauli1) {
        let sp = |s: SignedPauli| (Phase::from_sign(s.negative), s.pauli);
        match p {
            Pauli1::I => (Phase::ONE, Pauli1::I),
            Pauli1::X => sp(self.x_image),
            Pauli1::Z => sp(self.z_image),
            Pauli1::Y => {
                // Y = iXZ
                let (k, r) = self.x_image.pauli.mul(self.z_image.pauli);
                let sign = Phase::from_sign(self.x_image.negative ^ self.z_image.negative);
                (Phase::I.mul(k).mul(sign), r)
            }
        }
    }

    /// The `(P, s)` with `U P U† = s·target`.
    pub fn preimage(&self, target: Pauli1) -> (Pauli1, i8) {
        for p in [Pauli1::X, Pauli1::Y, Pauli1::Z] {
            let (ph, q) = self.image(p);
            if q == target {
                return (p, ph.sign().expect("Hermitian image"));
            }
        }
        (Pauli1::I, 1)
    }

    /// `other · self`: apply `self` first, then `other`.
    pub fn then(&self, other: &LocalClifford) -> LocalClifford {
        let map = |s: SignedPauli| {
            let (ph, q) = other.image(s.pauli);
            let neg = (ph == Phase::MINUS_ONE) ^ s.negative;
            SignedPauli { negative: neg, pauli: q }
        };
        LocalClifford { x_image: map(self.x_image), z_image: map(self.z_image) }
    }

    pub fn inverse(&self) -> LocalClifford {
        all_elements().find(|c| self.then(c).is_identity()).expect("group element")
    }

    /// Conjugate the factor of `p` on qubit `q`.
    pub fn conjugate_at(&self, p: &mut PauliString, q: usize) {
        let (ph, r) = self.image(p.get(q));
        p.set(q, r);
        let cur = p.phase();
        p.set_phase(cur.mul(ph));
    }

    /// Shortest gate word `g_1 … g_k` (applied in order) realizing `self`.
    pub fn gates(&self) -> Vec<Gate1> {
        let mut word = Vec::new();
        for len in 0..=4 {
            word.clear();
            word.resize(len, Gate1::H);
            let mut counter = alloc::vec![0usize; len];
            loop {
                for (w, &c) in word.iter_mut().zip(&counter) {
                    *w = Gate1::ALL[c];
                }
                if word_value(&word) == *self {
                    return word;
                }
                let Some(i) = counter.iter().rposition(|&c| c + 1 < Gate1::ALL.len()) else {
                    break;
                };
                counter[i] += 1;
                for c in &mut counter[i + 1..] {
                    *c = 0;
                }
            }
        }
        unreachable!("every single-qubit Clifford has a word of length at most 4")
    }

    pub fn all() -> Vec<LocalClifford> {
        all_elements().collect()
    }
}

impl fmt::Display for LocalClifford {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |p: SignedPauli| if p.negative { '-' } else { '+' };
        write!(
            f,
            "X->{}{} Z->{}{}",
            s(self.x_image),
            self.x_image.pauli.to_char(),
            s(self.z_image),
            self.z_image.pauli.to_char()
        )
    }
}

fn all_elements() -> impl Iterator<Item = LocalClifford> {
    let ps = [Pauli1::X, Pauli1::Y, Pauli1::Z];
    ps.into_iter().flat_map(move |xp| {
        ps.into_iter().filter(move |&zp| zp != xp).flat_map(move |zp| {
            (0..4u8).map(move |s| LocalClifford {
                x_image: SignedPauli { negative: s & 1 == 1, pauli: xp },
                z_image: SignedPauli { negative: s & 2 == 2, pauli: zp },
            })
        })
    })
}

fn word_value(word: &[Gate1]) -> LocalClifford {
    word.iter().fold(LocalClifford::IDENTITY, |acc, g| acc.then(&g.local()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_has_24_distinct_elements() {
        let all = LocalClifford::all();
        assert_eq!(all.len(), 24);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
            assert!(a.then(&a.inverse()).is_identity());
            assert_eq!(word_value(&a.gates()), *a);
        }
    }

    #[test]
    fn named_roots() {
        assert_eq!(Gate1::S.local(), LocalClifford::SQRT_MINUS_IZ);
        assert_eq!(Gate1::Sdg.local(), LocalClifford::SQRT_PLUS_IZ);
        assert_eq!(LocalClifford::SQRT_PLUS_IY.inverse(), LocalClifford::SQRT_MINUS_IY);
        assert_eq!(LocalClifford::pauli(Pauli1::Y), Gate1::Y.local());
    }

    #[test]
    fn y_image_is_consistent() {
        // S: Y -> -X
        assert_eq!(Gate1::S.local().image(Pauli1::Y), (Phase::MINUS_ONE, Pauli1::X));
        assert_eq!(Gate1::H.local().image(Pauli1::Y), (Phase::MINUS_ONE, Pauli1::Y));
        assert_eq!(Gate1::S.local().preimage(Pauli1::X), (Pauli1::Y, -1));
    }
}

#![allow(dead_code)]

use csscluster_core::{CliffordGate, Pauli1, PauliString, Phase, StabilizerTableau};
use proptest::prelude::*;

pub fn gate_strategy(n: usize) -> impl Strategy<Value = CliffordGate> {
    let one = (0..n, 0..6u8).prop_map(|(q, k)| match k {
        0 => CliffordGate::H(q),
        1 => CliffordGate::S(q),
        2 => CliffordGate::Sdg(q),
        3 => CliffordGate::X(q),
        4 => CliffordGate::Y(q),
        _ => CliffordGate::Z(q),
    });
    let two = (0..n, 1..n.max(2), any::<bool>()).prop_map(move |(a, d, cz)| {
        let b = (a + d) % n;
        if cz {
            CliffordGate::CZ(a, b)
        } else {
            CliffordGate::CX(a, b)
        }
    });
    prop_oneof![one, two].prop_filter("distinct targets", move |g| g.check(n).is_ok())
}

pub fn circuit_strategy(max_n: usize, max_depth: usize) -> impl Strategy<Value = (usize, Vec<CliffordGate>)> {
    (2..=max_n).prop_flat_map(move |n| (Just(n), prop::collection::vec(gate_strategy(n), 0..=max_depth)))
}

pub fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliString> {
    (prop::collection::vec(0..4u8, n), 0..4u8).prop_map(|(ks, ph)| {
        let mut p = PauliString::identity(ks.len());
        for (q, k) in ks.into_iter().enumerate() {
            p.set(q, [Pauli1::I, Pauli1::X, Pauli1::Y, Pauli1::Z][k as usize]);
        }
        p.with_phase(Phase::new(ph))
    })
}

pub fn hermitian_pauli_strategy(n: usize) -> impl Strategy<Value = PauliString> {
    pauli_strategy(n)
        .prop_filter("non-identity", |p| !p.is_identity())
        .prop_map(|p| {
            let ph = Phase::new(p.phase().exponent() & 2);
            p.with_phase(ph)
        })
}

/// Tableau of `gates |0…0⟩`.
pub fn circuit_tableau(n: usize, gates: &[CliffordGate]) -> StabilizerTableau {
    let mut t = StabilizerTableau::zero_state(n);
    for g in gates {
        t.apply_clifford(*g).unwrap();
    }
    t
}

use csscluster_core::dense::DenseState;
use csscluster_core::graph::Graph;
use csscluster_core::graph_state::{Basis, GraphStateRep};
use csscluster_core::local::{Gate1, LocalClifford};
use csscluster_core::Error;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Direct tableau simulation of a sequence of measurements and corrections on
/// a graph state whose vertices are `0..n`.
pub struct Oracle {
    pub t: StabilizerTableau,
    measured: Vec<usize>,
}

impl Oracle {
    pub fn new(g: &GraphStateRep) -> Self {
        let order = g.qubit_order();
        assert!(order.iter().enumerate().all(|(i, &v)| i == v), "vertices must be 0..n");
        Oracle { t: g.to_tableau(), measured: Vec::new() }
    }

    pub fn measure(&mut self, v: usize, basis: Basis, o: i8) -> Result<i8, Error> {
        let p = PauliString::single(self.t.n(), v, basis.pauli());
        let r = self.t.measure(&p, Some(o), &mut csscluster_core::rng_from_seed(0))?;
        self.measured.push(v);
        Ok(r)
    }

    pub fn apply(&mut self, corrections: &[(usize, Gate1)]) {
        for &(v, g) in corrections {
            self.t.apply_clifford(g.on(v)).unwrap();
        }
    }

    pub fn finish(mut self) -> StabilizerTableau {
        self.measured.sort_unstable();
        for &v in self.measured.iter().rev() {
            self.t.discard_qubit(v).unwrap();
        }
        self.t
    }
}

/// Group equality plus dense fidelity between a rewritten graph state and the
/// directly simulated tableau. Returns the fidelity.
pub fn check_equivalent(g: &GraphStateRep, t: &StabilizerTableau) -> f64 {
    let got = g.to_tableau();
    assert!(got.validate().is_ok(), "rewritten tableau invalid");
    assert!(got.same_group(t), "groups differ:\nrule:\n{got}\noracle:\n{t}");
    if t.n() == 0 {
        return 1.0;
    }
    let a = DenseState::from_tableau(&got).unwrap();
    let b = DenseState::from_tableau(t).unwrap();
    a.fidelity(&b).unwrap()
}

pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut g = Graph::from_edges(n, &[]).unwrap();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

pub fn random_rep(seed: u64, n: usize, with_byproducts: bool) -> GraphStateRep {
    let mut rng = StdRng::seed_from_u64(seed);
    let p = rng.gen_range(0.15..0.7);
    let mut g = GraphStateRep::new(random_graph(&mut rng, n, p));
    if with_byproducts {
        let all = LocalClifford::all();
        for v in 0..n {
            if rng.gen_bool(0.5) {
                g.apply_local(v, all[rng.gen_range(0..all.len())]);
            }
        }
    }
    g
}

pub fn outcome_branches(k: usize) -> impl Iterator<Item = Vec<i8>> {
    (0..1u32 << k).map(move |m| (0..k).map(|i| if m >> i & 1 == 0 { 1 } else { -1 }).collect())
}

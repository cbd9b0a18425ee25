mod common;

use common::*;
use csscluster_core::dense::DenseState;
use csscluster_core::{rng_from_seed, PauliString, Phase, StabilizerTableau};
use proptest::prelude::*;

fn random_vector(n: usize, seed: u64) -> DenseState {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let amp = (0..1usize << n)
        .map(|_| num_complex::Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    DenseState::from_amplitudes(n, amp).unwrap()
}

fn pair_strategy() -> impl Strategy<Value = (PauliString, PauliString, u64)> {
    (1..=8usize).prop_flat_map(|n| (pauli_strategy(n), pauli_strategy(n), any::<u64>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn product_matches_dense_action((a, b, seed) in pair_strategy()) {
        let v = random_vector(a.n(), seed);
        let ab = a.multiply(&b).unwrap();
        let lhs = v.apply_pauli(&b).unwrap();
        let lhs = lhs.apply_pauli(&a).unwrap();
        let rhs = v.apply_pauli(&ab).unwrap();
        for (x, y) in lhs.amplitudes().iter().zip(rhs.amplitudes()) {
            prop_assert!((x - y).norm() < 1e-12);
        }
        let ba = b.multiply(&a).unwrap();
        prop_assert_eq!(a.commutes(&b), ab == ba);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn circuits_agree_with_dense((n, gates) in circuit_strategy(10, 40), probes in prop::collection::vec(any::<u64>(), 8)) {
        let t = circuit_tableau(n, &gates);
        let d = DenseState::from_circuit(n, &gates).unwrap();
        for g in t.generators() {
            prop_assert!((d.expectation(g).unwrap() - 1.0).abs() < 1e-10);
        }
        for seed in probes {
            let p = random_hermitian(n, seed);
            let expected = t.sign_of(&p).map_or(0.0, f64::from);
            prop_assert!((d.expectation(&p).unwrap() - expected).abs() < 1e-10, "{p}");
        }
    }

    #[test]
    fn measurement_matches_dense_projection(
        (n, gates) in circuit_strategy(10, 30),
        seed in any::<u64>(),
        forced in prop::option::of(prop_oneof![Just(1i8), Just(-1i8)]),
    ) {
        let t = circuit_tableau(n, &gates);
        let d = DenseState::from_circuit(n, &gates).unwrap();
        let p = random_hermitian(n, seed);
        let e = d.expectation(&p).unwrap();
        let mut rng = rng_from_seed(seed);
        match t.measure_pauli(&p, forced, &mut rng) {
            Ok((o, post)) => {
                if t.sign_of(&p).is_some() {
                    prop_assert!((e - o as f64).abs() < 1e-10);
                    prop_assert_eq!(&post, &t);
                } else {
                    prop_assert!(e.abs() < 1e-10);
                }
                post.validate().unwrap();
                prop_assert_eq!(post.sign_of(&p), Some(o));
                let (_, dpost) = d.measure(&p, Some(o), &mut rng).unwrap();
                let tpost = DenseState::from_tableau(&post).unwrap();
                prop_assert!((dpost.fidelity(&tpost).unwrap() - 1.0).abs() < 1e-10);
            }
            Err(_) => {
                let f = forced.unwrap();
                prop_assert!((e + f as f64).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn canonical_form_is_order_free((n, gates) in circuit_strategy(8, 30), mix in prop::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 0..20), shuffle_seed in any::<u64>()) {
        let t = circuit_tableau(n, &gates);
        let c = t.canonical_form().unwrap();
        prop_assert_eq!(&c.canonical_form().unwrap(), &c);
        let mut gens = t.generators().to_vec();
        for (i, j) in mix {
            let (i, j) = (i.index(n), j.index(n));
            if i != j {
                let gj = gens[j].clone();
                gens[i].mul_assign(&gj);
            }
        }
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        gens.shuffle(&mut rand::rngs::StdRng::seed_from_u64(shuffle_seed));
        let u = StabilizerTableau::new(n, gens).unwrap();
        prop_assert_eq!(u.canonical_form().unwrap(), c);
    }

    #[test]
    fn clifford_preserves_validity((n, gates) in circuit_strategy(10, 40), extra in prop::collection::vec(gate_strategy(10), 0..20)) {
        let mut t = circuit_tableau(n, &gates);
        for g in extra.into_iter().filter(|g| g.check(n).is_ok()) {
            t.apply_clifford(g).unwrap();
        }
        prop_assert!(t.validate().is_ok());
        prop_assert_eq!(t.rank(), n);
    }
}

fn random_hermitian(n: usize, seed: u64) -> PauliString {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    loop {
        let mut p = PauliString::identity(n);
        for q in 0..n {
            p.set(q, [csscluster_core::Pauli1::I, csscluster_core::Pauli1::X, csscluster_core::Pauli1::Y, csscluster_core::Pauli1::Z][rng.gen_range(0..4)]);
        }
        if !p.is_identity() {
            return p.with_phase(if rng.gen() { Phase::ONE } else { Phase::MINUS_ONE });
        }
    }
}

#[test]
fn sqrt_z_maps_x_to_y_like_dense() {
    let mut t = StabilizerTableau::plus_state(1);
    t.apply_clifford(csscluster_core::CliffordGate::S(0)).unwrap();
    assert_eq!(t.generators()[0].to_string(), "+Y");
    let d = DenseState::from_circuit(1, &[csscluster_core::CliffordGate::H(0), csscluster_core::CliffordGate::S(0)]).unwrap();
    assert!((d.expectation(&"+Y".parse().unwrap()).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn z_on_plus_post_state_is_signed_z() {
    let plus = StabilizerTableau::plus_state(1);
    let mut seen = [false, false];
    for seed in 0..64 {
        let (o, post) = plus.measure_pauli(&"+Z".parse().unwrap(), None, &mut rng_from_seed(seed)).unwrap();
        let want = if o == 1 { "+Z" } else { "-Z" };
        assert_eq!(post.generators()[0].to_string(), want);
        seen[(o == 1) as usize] = true;
    }
    assert_eq!(seen, [true, true]);
}

use csscluster_core::codes::*;
use csscluster_core::dense::DenseState;
use csscluster_core::{CliffordGate, Pauli1, PauliString, StabilizerTableau};
use proptest::prelude::*;

/// Independent GF(2) rank over `u128` rows (symplectic vectors up to 64 qubits).
fn oracle_rank(mut rows: Vec<u128>) -> usize {
    let mut rank = 0;
    for bit in 0..128 {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && *r >> bit & 1 == 1 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

fn oracle_degeneracy(code: &CssCode) -> u128 {
    assert!(code.n <= 64);
    let mut rows = Vec::new();
    for c in &code.z_cells {
        rows.push(c.iter().fold(0u128, |a, &q| a | 1 << (64 + q)));
    }
    for c in &code.x_cells {
        rows.push(c.iter().fold(0u128, |a, &q| a | 1 << q));
    }
    1 << (code.n - oracle_rank(rows))
}

fn all_builders() -> Vec<CssCode> {
    let mut v = vec![
        build_toric_2d(2, Topology::Torus, &[]).unwrap(),
        build_toric_2d(3, Topology::Torus, &[]).unwrap(),
        build_toric_2d(3, Topology::Torus, &[0, 4]).unwrap(),
        build_toric_2d(2, Topology::Planar, &[]).unwrap(),
        build_toric_2d(3, Topology::Planar, &[4]).unwrap(),
        build_triangular(2, &[3]).unwrap(),
        build_triangular(3, &[]).unwrap(),
        build_toric_3d(2, 2, 2, false).unwrap(),
        build_toric_3d(2, 2, 2, true).unwrap(),
        build_color_2d(3).unwrap(),
    ];
    v.push(build_colex_3d(ColexPreset::ThreeCell).0);
    v.push(build_colex_3d(ColexPreset::SixCell).0);
    v
}

fn stabilizers(code: &CssCode) -> StabilizerTableau {
    let mut gens: Vec<PauliString> = (0..code.z_cells.len()).map(|i| code.z_stabilizer(i)).collect();
    gens.extend((0..code.x_cells.len()).map(|i| code.x_stabilizer(i)));
    let mut t = StabilizerTableau::empty(code.n);
    for g in gens {
        if t.contains(&g).is_none() {
            t.push(g).unwrap();
        }
    }
    t
}

#[test]
fn every_builder_validates_and_matches_rank_oracle() {
    for code in all_builders() {
        assert!(code.validate().is_ok(), "{}", code.name);
        assert_eq!(code.degeneracy(), oracle_degeneracy(&code), "{}", code.name);
        assert_eq!(code.geometry.as_ref().map(|g| g.len()), Some(code.n));
    }
}

#[test]
fn toric_2d_counts() {
    let c = build_toric_2d(2, Topology::Torus, &[]).unwrap();
    assert_eq!((c.n, c.z_cells.len(), c.x_cells.len(), c.degeneracy()), (8, 4, 4, 4));
    assert_eq!(c.z_constraints(), vec![vec![0, 1, 2, 3]]);
    assert_eq!(c.x_constraints(), vec![vec![0, 1, 2, 3]]);
    assert_eq!(build_toric_2d(3, Topology::Torus, &[]).unwrap().degeneracy(), 4);
    assert_eq!(build_toric_2d(3, Topology::Planar, &[]).unwrap().degeneracy(), 2);
    assert!(matches!(
        build_toric_2d(3, Topology::Torus, &[9]),
        Err(csscluster_core::Error::HoleOutOfRange { index: 9, count: 9 })
    ));
}

#[test]
fn torus_holes_degeneracy() {
    // The first hole on a closed surface only breaks the plaquette constraint;
    // each further hole adds a logical qubit.
    let one = build_toric_2d(3, Topology::Torus, &[0]).unwrap();
    let two = build_toric_2d(3, Topology::Torus, &[0, 4]).unwrap();
    assert_eq!(one.degeneracy(), oracle_degeneracy(&one));
    assert_eq!(one.degeneracy(), 4);
    assert_eq!(two.degeneracy(), oracle_degeneracy(&two));
    assert_eq!(two.degeneracy(), 8);
}

#[test]
fn triangular_patch_with_hole() {
    let full = build_triangular(2, &[]).unwrap();
    let holed = build_triangular(2, &[3]).unwrap();
    assert_eq!((full.n, full.z_cells.len(), full.x_cells.len()), (9, 4, 6));
    assert_eq!(holed.z_cells.len(), 3);
    assert!(!holed.z_cells.contains(&full.z_cells[3]));
    assert_eq!(full.degeneracy(), 1);
    assert_eq!(holed.degeneracy(), 2);
}

#[test]
fn toric_3d_golden() {
    let c = build_toric_3d(2, 2, 2, false).unwrap();
    assert_eq!(c.n, 24);
    assert_eq!(oracle_degeneracy(&c), 8);
    assert_eq!(c.degeneracy(), 8);
    let d = build_toric_3d(2, 2, 2, true).unwrap();
    assert_eq!(d.z_cells, c.x_cells);
    assert_eq!(d.x_cells, c.z_cells);
    assert!(d.z_cells.iter().all(|v| v.len() == 6));
    assert_eq!(c.dual().dual(), c);
}

#[test]
fn color_2d_torus() {
    let c = build_color_2d(3).unwrap();
    assert_eq!(c.n, 18);
    assert_eq!(c.degeneracy(), 16);
    assert!(build_color_2d(4).is_err());
    let colors = c.z_colors.as_ref().unwrap();
    for (i, a) in c.z_cells.iter().enumerate() {
        for (j, b) in c.z_cells.iter().enumerate() {
            if i != j && a.iter().any(|q| b.contains(q)) {
                assert_ne!(colors[i], colors[j], "neighboring plaquettes {i} {j}");
            }
        }
    }
    let t = stabilizers(&c);
    let loops = color_2d_loops(3).unwrap();
    assert_eq!(loops.len(), 12);
    for l in &loops {
        let p = l.pauli(c.n);
        assert!(c.syndrome(&p).is_empty(), "{l:?}");
        assert!(t.contains(&p).is_none(), "{l:?} is a stabilizer");
    }
    // each direction carries three colored loops, any two of which are independent
    for kind in [LogicalKind::Lz, LogicalKind::Lx] {
        for dir in 0..2 {
            let same: Vec<_> = loops.iter().filter(|l| l.kind == kind && l.direction == dir).collect();
            assert_eq!(same.len(), 3);
            let mut prod = PauliString::identity(c.n);
            for l in &same {
                prod.mul_assign(&l.pauli(c.n));
            }
            assert!(t.contains(&prod).is_some(), "three colors multiply to a stabilizer");
        }
    }
}

#[test]
fn colex_presets() {
    let (c, coloring) = build_colex_3d(ColexPreset::ThreeCell);
    let sizes: Vec<usize> = c.z_cells.iter().map(|z| z.len()).collect();
    assert_eq!(sizes, [32, 8, 8]);
    assert_eq!(c.n, 40);
    assert!(c.validate().is_ok());
    check_colex_coloring(&c, &coloring).unwrap();
    let (six, coloring) = build_colex_3d(ColexPreset::SixCell);
    assert_eq!(six.z_cells.len(), 6);
    check_colex_coloring(&six, &coloring).unwrap();
    let mut bad = coloring.clone();
    bad.cell_colors[1] = 0;
    assert!(check_colex_coloring(&six, &bad).is_err());
    let mut bad = coloring;
    bad.edges[0].2 = 3;
    assert!(check_colex_coloring(&six, &bad).is_err());
    assert!(matches!(ColexPreset::from_name("nine_cell"), Err(csscluster_core::Error::UnknownPreset(_))));
}

#[test]
fn logical_bases_pair_up() {
    for code in all_builders() {
        let b = code.logical_basis();
        assert_eq!(1u128 << b.len(), code.degeneracy(), "{}", code.name);
        let t = stabilizers(&code);
        for (i, z) in b.z.iter().enumerate() {
            let zp = PauliString::z_type(code.n, z.iter().copied());
            assert!(code.syndrome(&zp).is_empty());
            assert!(t.contains(&zp).is_none());
            for (j, x) in b.x.iter().enumerate() {
                let xp = PauliString::x_type(code.n, x.iter().copied());
                assert_eq!(!zp.commutes(&xp), b.partner[i] == j, "{} L_z{i} L_x{j}", code.name);
            }
        }
        for x in &b.x {
            let xp = PauliString::x_type(code.n, x.iter().copied());
            assert!(code.syndrome(&xp).is_empty());
            assert!(t.contains(&xp).is_none());
        }
    }
}

#[test]
fn degenerate_state_sign_table() {
    let c = build_toric_2d(2, Topology::Torus, &[]).unwrap();
    let b = c.logical_basis();
    let lx: Vec<PauliString> = b.x.iter().map(|s| PauliString::x_type(8, s.iter().copied())).collect();
    let table = [((false, false), (1, 1)), ((false, true), (-1, 1)), ((true, false), (1, -1)), ((true, true), (-1, -1))];
    for ((i, j), (s0, s1)) in table {
        let t = c.stabilizer_state(&[i, j]).unwrap();
        assert_eq!(t.sign_of(&lx[0]), Some(s0), "class ({i},{j})");
        assert_eq!(t.sign_of(&lx[1]), Some(s1), "class ({i},{j})");
        // the same state built densely as (L_z⁰)^i (L_z¹)^j ∏(1+B_p)|+…+⟩
        let mut d = DenseState::from_circuit(8, &(0..8).map(CliffordGate::H).collect::<Vec<_>>()).unwrap();
        for p in 0..4 {
            d.project(&c.z_stabilizer(p), 1).unwrap();
        }
        for (bit, z) in [(i, &b.z[0]), (j, &b.z[1])] {
            if bit {
                d = d.apply_pauli(&PauliString::z_type(8, z.iter().copied())).unwrap();
            }
        }
        let f = DenseState::from_tableau(&t).unwrap().fidelity(&d).unwrap();
        assert!((f - 1.0).abs() < 1e-10);
        assert!((d.expectation(&lx[0]).unwrap() - s0 as f64).abs() < 1e-10);
    }
}

#[test]
fn anyon_strings() {
    let c = build_toric_2d(3, Topology::Torus, &[]).unwrap();
    let x = c.syndrome(&PauliString::single(c.n, 4, Pauli1::X));
    assert_eq!((x.z_cells.len(), x.x_cells.len()), (2, 0));
    let y = c.syndrome(&PauliString::single(c.n, 4, Pauli1::Y));
    assert_eq!((y.z_cells.len(), y.x_cells.len()), (2, 2));
    // horizontal edges 0,1 share vertex 1, so they form a Z path
    let e = c.anyon_string(AnyonKind::E, &[0, 1]).unwrap();
    assert_eq!(e.endpoints.x_cells.len(), 2);
    assert!(e.endpoints.z_cells.is_empty());
    let m = c.anyon_string(AnyonKind::M, &[0, 3]).unwrap();
    assert_eq!(m.endpoints.z_cells.len(), 2);
    let closed = c.anyon_string(AnyonKind::E, &[0, 1, 2]).unwrap();
    assert!(closed.endpoints.is_empty());
    assert!(matches!(c.anyon_string(AnyonKind::E, &[0, 4]), Err(csscluster_core::Error::DisconnectedPath)));
}

#[test]
fn e_loop_around_m_anyon_flips_sign() {
    let c = build_toric_2d(2, Topology::Torus, &[]).unwrap();
    let t = c.code_state().unwrap();
    let psi = DenseState::from_tableau(&t).unwrap();
    let x = PauliString::single(8, 0, Pauli1::X);
    let psi_m = psi.apply_pauli(&x).unwrap();
    let excited = c.syndrome(&x).z_cells;
    assert_eq!(excited.len(), 2);
    let loop_op = c.z_stabilizer(excited[0]);
    assert!((psi_m.expectation(&loop_op).unwrap() + 1.0).abs() < 1e-12);
    assert!((psi.expectation(&loop_op).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn odd_overlap_is_named() {
    let mut c = build_toric_2d(2, Topology::Torus, &[]).unwrap();
    c.x_cells[2] = vec![0, 1, 2];
    let r = c.validate();
    let expect: Vec<(usize, usize)> = (0..4)
        .filter(|&p| c.z_cells[p].iter().filter(|q| [0, 1, 2].contains(q)).count() % 2 == 1)
        .map(|p| (p, 2))
        .collect();
    assert!(!expect.is_empty());
    assert_eq!(r.odd_pairs, expect);
}

fn pauli(n: usize) -> impl Strategy<Value = PauliString> {
    prop::collection::vec(0..4usize, n).prop_map(|ks| {
        let mut p = PauliString::identity(ks.len());
        for (q, k) in ks.into_iter().enumerate() {
            p.set(q, [Pauli1::I, Pauli1::X, Pauli1::Y, Pauli1::Z][k]);
        }
        p
    })
}

proptest! {
    #[test]
    fn syndrome_is_linear(p in pauli(18), q in pauli(18)) {
        for code in [build_toric_2d(3, Topology::Torus, &[]).unwrap(), build_color_2d(3).unwrap()] {
            let lhs = code.syndrome(&p.multiply(&q).unwrap());
            let rhs = code.syndrome(&p).symmetric_difference(&code.syndrome(&q));
            prop_assert_eq!(lhs, rhs);
        }
    }
}

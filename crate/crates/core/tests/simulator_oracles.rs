mod common;

use approx::assert_abs_diff_eq;
use common::{c, qubit_circuit, to_nalgebra};
use nalgebra::DMatrix;
use num_complex::Complex;
use proptest::prelude::*;
use qudit_compress::library::{cluster_state_circuit, controlled_on_level_gate, cpf4_barenco_circuit, cpf_unitary, grid_edges};
use qudit_compress::simulator::{circuit_unitary, operator_schmidt_rank, state_entropy, verify_equivalence};
use qudit_compress::{
    compress, make_encoding, merge_pass, Circuit64, Encoding, Gate, Matrix64, MergeOptions, Partition, StateVector64,
};

/// Rank across `(da, db)` from an independent reshuffle and nalgebra's SVD.
fn oracle_schmidt_rank(u: &Matrix64, da: usize, db: usize) -> usize {
    let r = DMatrix::from_fn(da * da, db * db, |row, col| {
        let (ia, ja) = (row / da, row % da);
        let (ib, jb) = (col / db, col % db);
        u[(ia * db + ib, ja * db + jb)]
    });
    let sv = r.singular_values();
    let top = sv.max();
    sv.iter().filter(|&&s| s > 1e-9 * top).count()
}

/// Entropy in bits of the first `da` digit block, via the reduced density matrix.
fn oracle_entropy(amps: &[Complex<f64>], da: usize) -> f64 {
    let db = amps.len() / da;
    let m = DMatrix::from_fn(da, db, |i, j| amps[i * db + j]);
    let rho = &m * m.adjoint();
    rho.symmetric_eigenvalues().iter().filter(|&&p| p > 1e-12).map(|&p| -p * p.log2()).sum()
}

fn two_ququart_gates(c: &Circuit64) -> Vec<Matrix64> {
    c.gates().iter().enumerate().filter(|(_, g)| g.is_nonlocal()).map(|(i, _)| c.gate_unitary(i).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn schmidt_rank_matches_nalgebra(circuit in qubit_circuit(4, 16), absorb in any::<bool>()) {
        let e = make_encoding(&Partition::new(vec![vec![0, 1], vec![2, 3]]).unwrap(), None).unwrap();
        let merged = merge_pass(&compress(&circuit, &e).unwrap(), &MergeOptions { absorb_local: absorb }).unwrap();
        for u in two_ququart_gates(&merged) {
            prop_assert_eq!(operator_schmidt_rank(&u, (4, 4), 1e-9).unwrap(), oracle_schmidt_rank(&u, 4, 4));
        }
        let whole = circuit_unitary(&circuit).unwrap();
        prop_assert_eq!(operator_schmidt_rank(&whole, (4, 4), 1e-9).unwrap(), oracle_schmidt_rank(&whole, 4, 4));
        prop_assert_eq!(operator_schmidt_rank(&whole, (2, 8), 1e-9).unwrap(), oracle_schmidt_rank(&whole, 2, 8));
    }

    #[test]
    fn entropy_matches_reduced_density_matrix(circuit in qubit_circuit(4, 16), split in 1usize..4) {
        let psi = StateVector64::zero(vec![2; 4]).evolve(&circuit).unwrap();
        let cut: Vec<usize> = (0..split).collect();
        let s = state_entropy(&psi, &cut).unwrap();
        assert_abs_diff_eq!(s, oracle_entropy(psi.amplitudes(), 1 << split), epsilon = 1e-9);
    }

    #[test]
    fn composition_is_matrix_product(a in qubit_circuit(3, 10), b in qubit_circuit(3, 10)) {
        let joined = Circuit64::from_parts(&[2; 3], a.gates().iter().chain(b.gates()).cloned().collect()).unwrap();
        let product = circuit_unitary(&b).unwrap().mul(&circuit_unitary(&a).unwrap()).unwrap();
        prop_assert!(circuit_unitary(&joined).unwrap().max_abs_diff(&product).unwrap() < 1e-12);
    }

    #[test]
    fn cz_order_does_not_change_the_cluster_state(order in Just((0..17).collect::<Vec<usize>>()).prop_shuffle()) {
        let edges = grid_edges(3, 4);
        assert_eq!(edges.len(), 17);
        let mut gates: Vec<Gate<f64>> = (0..12).map(Gate::h).collect();
        gates.extend(order.iter().map(|&i| Gate::cz(edges[i].0, edges[i].1)));
        let shuffled = Circuit64::from_parts(&[2; 12], gates).unwrap();
        let reference = cluster_state_circuit::<f64>(3, 4).unwrap();
        let (psi, phi) = (
            StateVector64::zero(vec![2; 12]).evolve(&reference).unwrap(),
            StateVector64::zero(vec![2; 12]).evolve(&shuffled).unwrap(),
        );
        prop_assert!(psi.max_abs_diff(&phi).unwrap() < 1e-12);
        let cut: Vec<usize> = (0..4).collect();
        assert_abs_diff_eq!(state_entropy(&psi, &cut).unwrap(), state_entropy(&phi, &cut).unwrap(), epsilon = 1e-12);
    }
}

#[test]
fn cz_order_does_not_change_the_unitary() {
    let edges = grid_edges(2, 2);
    let forward = Circuit64::from_parts(&[2; 4], edges.iter().map(|&(a, b)| Gate::cz(a, b)).collect()).unwrap();
    let backward = Circuit64::from_parts(&[2; 4], edges.iter().rev().map(|&(a, b)| Gate::cz(b, a)).collect()).unwrap();
    assert_eq!(circuit_unitary(&forward).unwrap(), circuit_unitary(&backward).unwrap());
}

#[test]
fn cluster_entropy_against_oracle() {
    let psi = StateVector64::zero(vec![2; 4]).evolve(&cluster_state_circuit(2, 2).unwrap()).unwrap();
    let oracle = oracle_entropy(psi.amplitudes(), 4);
    assert_abs_diff_eq!(oracle, 2.0, epsilon = 1e-9);
    assert_abs_diff_eq!(state_entropy(&psi, &[0, 1]).unwrap(), oracle, epsilon = 1e-9);
}

#[test]
fn named_entropies() {
    let product = StateVector64::plus(3);
    assert_abs_diff_eq!(state_entropy(&product, &[0]).unwrap(), 0.0, epsilon = 1e-12);
    let bell = StateVector64::zero(vec![2, 2])
        .evolve(&Circuit64::from_parts(&[2, 2], vec![Gate::h(0), Gate::cnot(0, 1)]).unwrap())
        .unwrap();
    assert_abs_diff_eq!(state_entropy(&bell, &[0]).unwrap(), 1.0, epsilon = 1e-12);
    assert!(state_entropy(&bell, &[2]).is_err());
}

#[test]
fn controlled_on_level_ranks() {
    let cz = Matrix64::from_diagonal(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
    let u = controlled_on_level_gate(4, 3, &cz).unwrap();
    assert_eq!(oracle_schmidt_rank(&u, 4, 4), 2);
    assert_eq!(operator_schmidt_rank(&u, (4, 4), 1e-9).unwrap(), 2);
    assert_eq!(operator_schmidt_rank(&Matrix64::identity(16), (4, 4), 1e-9).unwrap(), 1);
    assert!(operator_schmidt_rank(&u, (3, 5), 1e-9).is_err());
}

#[test]
fn recipes_match_reference_unitaries() {
    let recipe = cpf4_barenco_circuit::<f64>();
    assert!(recipe.verify(1e-9).unwrap());
    assert_eq!(recipe.circuit.stats().n_nonlocal, recipe.claimed_nonlocal_count);
    let u = circuit_unitary(&recipe.circuit).unwrap();
    let target = cpf_unitary::<f64>(4).unwrap();
    let id = make_encoding(&Partition::new(vec![vec![0, 1, 2, 3]]).unwrap(), None).unwrap();
    assert!(verify_equivalence(&target, &u, &id, 1e-9).unwrap().equal);
    let n_oracle = to_nalgebra(&u);
    assert!((&n_oracle * n_oracle.adjoint() - DMatrix::identity(16, 16)).norm() < 1e-12);
}

#[test]
fn equivalence_quotients_global_phase_only() {
    let e = Encoding::new(vec![vec![0, 1], vec![2, 3]], vec![4, 4]).unwrap();
    let target = cpf_unitary::<f64>(4).unwrap();
    let phase = Complex::from_polar(1.0, 0.7);
    assert!(verify_equivalence(&target, &target.scale(phase), &e, 1e-12).unwrap().equal);
    let wrong = verify_equivalence(&target, &Matrix64::identity(16), &e, 1e-9).unwrap();
    assert!(!wrong.equal);
    assert_abs_diff_eq!(wrong.residual, 2.0, epsilon = 1e-12);
    assert!(verify_equivalence(&target, &Matrix64::identity(8), &e, 1e-9).is_err());
}

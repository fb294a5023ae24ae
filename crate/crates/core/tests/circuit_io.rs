mod common;

use common::{c, qubit_circuit};
use proptest::prelude::*;
use qudit_compress::{Circuit64, Error, Gate, Matrix64};

proptest! {
    #[test]
    fn json_round_trip_is_exact(circuit in (2usize..6).prop_flat_map(|n| qubit_circuit(n, 20))) {
        let text = circuit.to_json();
        let back = Circuit64::from_json(&text).unwrap();
        prop_assert_eq!(&back, &circuit);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn perturbed_custom_matrices_are_rejected(entry in 0usize..16, size in 1e-6..0.5f64, imaginary in any::<bool>()) {
        let mut rows = Matrix64::identity(4).to_rows();
        let delta = if imaginary { c(0.0, size) } else { c(size, 0.0) };
        rows[entry / 4][entry % 4] += delta;
        let m = Matrix64::from_rows(rows).unwrap();
        let mut circuit = Circuit64::qubits(2);
        circuit.push(Gate::h(0)).unwrap();
        let err = circuit.push(Gate::custom(vec![0, 1], m)).unwrap_err();
        prop_assert!(matches!(err, Error::Schema { gate: Some(1), .. } | Error::Semantic { gate: Some(1), .. }), "{err:?}");
    }
}

#[test]
fn custom_matrix_survives_the_file_format() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let m = Matrix64::from_rows(vec![vec![c(h, 0.0), c(0.0, h)], vec![c(0.0, h), c(h, 0.0)]]).unwrap();
    let circuit = Circuit64::from_parts(&[3, 2], vec![Gate::custom(vec![1], m)]).unwrap();
    let back = Circuit64::from_json(&circuit.to_json()).unwrap();
    assert_eq!(back, circuit);
    assert_eq!(back.dims(), vec![3, 2]);
}

#[test]
fn malformed_documents() {
    assert!(matches!(Circuit64::from_json("{"), Err(Error::Syntax(_))));
    assert!(matches!(Circuit64::from_json("[]"), Err(Error::Schema { .. })));
    let dim_one = r#"{"wires":[{"index":0,"dim":1}],"gates":[]}"#;
    assert!(Circuit64::from_json(dim_one).is_err());
    let arity = r#"{"wires":[{"index":0,"dim":2},{"index":1,"dim":2}],"gates":[{"kind":"CZ","wires":[0]}]}"#;
    assert!(matches!(Circuit64::from_json(arity), Err(Error::Schema { gate: Some(0), .. } | Error::Semantic { gate: Some(0), .. })));
    let repeated = r#"{"wires":[{"index":0,"dim":2},{"index":1,"dim":2}],"gates":[{"kind":"CZ","wires":[1,1]}]}"#;
    assert!(Circuit64::from_json(repeated).is_err());
    let qubit_only = r#"{"wires":[{"index":0,"dim":3},{"index":1,"dim":2}],"gates":[{"kind":"CNOT","wires":[0,1]}]}"#;
    assert!(Circuit64::from_json(qubit_only).is_err());
}

#[test]
fn stats_count_nonlocal_pairs() {
    let circuit = Circuit64::from_parts(
        &[2, 2, 2],
        vec![Gate::h(0), Gate::cz(0, 1), Gate::cnot(1, 0), Gate::cz(1, 2)],
    )
    .unwrap();
    let s = circuit.stats();
    assert_eq!((s.n_local, s.n_nonlocal), (1, 3));
    assert_eq!(s.per_pair.get(&(0, 1)), Some(&2));
    assert_eq!(s.per_pair.get(&(1, 2)), Some(&1));
}

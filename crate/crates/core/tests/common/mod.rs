#![allow(dead_code)]

use num_complex::Complex;
use proptest::prelude::*;
use qudit_compress::{Circuit64, Gate, GateKind, Matrix64, WeightedGraph};

/// Random qubit gate on `n` wires from a mixed entangling/local alphabet.
pub fn qubit_gate(n: usize) -> impl Strategy<Value = Gate<f64>> {
    (0..n, 0..n.max(2) - 1, 0..9u8, -3.0..3.0f64).prop_map(move |(a, b, kind, theta)| {
        let b = if b >= a { b + 1 } else { b };
        match kind {
            0 => Gate::cz(a, b),
            1 => Gate::cnot(a, b),
            2 => Gate::ct(a, b),
            3 => Gate::ctdag(a, b),
            4 => Gate::h(a),
            5 => Gate::new(GateKind::T, vec![a]),
            6 => Gate::with_params(GateKind::RX, vec![a], vec![theta]),
            7 => Gate::with_params(GateKind::RY, vec![a], vec![theta]),
            _ => Gate::new(GateKind::X, vec![a]),
        }
    })
}

pub fn qubit_circuit(n: usize, max_gates: usize) -> impl Strategy<Value = Circuit64> {
    prop::collection::vec(qubit_gate(n), 0..=max_gates)
        .prop_map(move |gates| Circuit64::from_parts(&vec![2; n], gates).expect("generated gates are valid"))
}

/// Circuit of diagonal gates only (CZ, CT, CT†, T, Z).
pub fn diagonal_circuit(n: usize, max_gates: usize) -> impl Strategy<Value = Circuit64> {
    let gate = (0..n, 0..n - 1, 0..5u8).prop_map(move |(a, b, kind)| {
        let b = if b >= a { b + 1 } else { b };
        match kind {
            0 => Gate::cz(a, b),
            1 => Gate::ct(a, b),
            2 => Gate::ctdag(a, b),
            3 => Gate::new(GateKind::T, vec![a]),
            _ => Gate::new(GateKind::Z, vec![a]),
        }
    });
    prop::collection::vec(gate, 0..=max_gates)
        .prop_map(move |gates| Circuit64::from_parts(&vec![2; n], gates).expect("generated gates are valid"))
}

pub fn weighted_graph(n: usize) -> impl Strategy<Value = WeightedGraph> {
    prop::collection::vec(0..4u64, n * (n - 1) / 2).prop_map(move |ws| {
        let mut g = WeightedGraph::new(n);
        let mut it = ws.into_iter();
        for u in 0..n {
            for v in u + 1..n {
                let w = it.next().expect("one weight per pair");
                if w > 0 {
                    g.add_weight(u, v, w).expect("valid edge");
                }
            }
        }
        g
    })
}

pub fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

pub fn to_nalgebra(m: &Matrix64) -> nalgebra::DMatrix<Complex<f64>> {
    nalgebra::DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

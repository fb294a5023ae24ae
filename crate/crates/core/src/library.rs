//! Reference unitaries and benchmark circuits.

use num_complex::Complex;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::simulator::{circuit_unitary, Matrix};

/// Largest `N` accepted by [`cpf_unitary`].
pub const MAX_CPF_QUBITS: usize = 12;

/// Largest number of cluster sites accepted by [`cluster_state_circuit`].
pub const MAX_CLUSTER_SITES: usize = 12;

/// Two-qubit gate count of the best known qubit decomposition of the
/// six-qubit phase flip. Quoted, not reconstructed.
pub const CPF6_QUBIT_GATES_QUOTED: usize = 61;

/// Two-ququart gate count quoted for the six-qubit phase flip on three
/// ququarts. Quoted, not reconstructed.
pub const CPF6_QUQUART_GATES_QUOTED: usize = 9;

/// `N`-qubit controlled phase flip: the identity with `-1` on `|1…1⟩`.
pub fn cpf_unitary<T: Real>(n: usize) -> Result<Matrix<T>> {
    if !(2..=MAX_CPF_QUBITS).contains(&n) {
        return Err(Error::InvalidArgument(format!("CPF size {n} outside 2..={MAX_CPF_QUBITS}")));
    }
    let dim = 1usize << n;
    let mut u = Matrix::identity(dim);
    u[(dim - 1, dim - 1)] = Complex::new(-T::one(), T::zero());
    Ok(u)
}

/// Block-diagonal gate applying `v` to the target iff the control qudit of
/// dimension `d_c` is at `level`.
pub fn controlled_on_level_gate<T: Real>(d_c: usize, level: usize, v: &Matrix<T>) -> Result<Matrix<T>> {
    if level >= d_c {
        return Err(Error::ShapeMismatch(format!("level {level} is not below control dimension {d_c}")));
    }
    if !v.is_square() {
        return Err(Error::ShapeMismatch("target operator must be square".into()));
    }
    let dt = v.rows();
    let mut u = Matrix::identity(d_c * dt);
    for r in 0..dt {
        for c in 0..dt {
            u[(level * dt + r, level * dt + c)] = v[(r, c)];
        }
    }
    Ok(u)
}

/// Permutation `|n⟩ → |(n + s) mod d⟩`.
pub fn cyclic_shift<T: Real>(d: usize, s: i64) -> Result<Matrix<T>> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("dimension {d} is below 2")));
    }
    Ok(crate::circuit::shift(d, s))
}

/// A circuit claimed to realise a reference unitary.
#[derive(Debug, Clone)]
pub struct DecompositionRecipe<T: Real = f64> {
    pub name: String,
    pub target: String,
    pub circuit: Circuit<T>,
    pub claimed_nonlocal_count: usize,
}

impl<T: Real> DecompositionRecipe<T> {
    pub fn target_unitary(&self) -> Result<Matrix<T>> {
        match self.target.strip_prefix("cpf") {
            Some(n) => cpf_unitary(n.parse().map_err(|_| Error::InvalidArgument(self.target.clone()))?),
            None => Err(Error::InvalidArgument(format!("unknown target {}", self.target))),
        }
    }

    /// Largest entrywise deviation between the recipe's unitary and its
    /// target after aligning the global phase at the target's largest entry.
    pub fn residual(&self) -> Result<T> {
        let target = self.target_unitary()?;
        let actual = circuit_unitary(&self.circuit)?;
        let at = target.argmax_abs().expect("non-empty target");
        let ratio = actual[at] / target[at];
        let phase = if ratio.norm() > T::zero() { ratio / ratio.norm() } else { Complex::new(T::one(), T::zero()) };
        target.scale(phase).max_abs_diff(&actual)
    }

    pub fn verify(&self, tol: T) -> Result<bool> {
        Ok(self.residual()? < tol && self.circuit.stats().n_nonlocal == self.claimed_nonlocal_count)
    }
}

/// Thirteen-gate relative-phase ladder for the four-qubit phase flip.
///
/// Qubit 3 is the target of seven controlled-`T^{±1}` gates whose controls
/// walk a Gray code over the parities of qubits 0..3, giving the phase
/// `(π/4)·x₃·(x₀ + x₁ + x₂ − x₀⊕x₁ − x₁⊕x₂ − x₀⊕x₂ + x₀⊕x₁⊕x₂) = π·x₀x₁x₂x₃`.
/// Six CNOTs move between the parities and restore the controls.
pub fn cpf4_barenco_circuit<T: Real>() -> DecompositionRecipe<T> {
    let gates = vec![
        Gate::ct(0, 3),     // x0
        Gate::cnot(0, 1),   // q1 = x0^x1
        Gate::ctdag(1, 3),
        Gate::cnot(0, 1),   // q1 = x1
        Gate::ct(1, 3),
        Gate::cnot(1, 2),   // q2 = x1^x2
        Gate::ctdag(2, 3),
        Gate::cnot(0, 2),   // q2 = x0^x1^x2
        Gate::ct(2, 3),
        Gate::cnot(1, 2),   // q2 = x0^x2
        Gate::ctdag(2, 3),
        Gate::cnot(0, 2),   // q2 = x2
        Gate::ct(2, 3),
    ];
    let mut circuit = Circuit::from_parts(&[2; 4], gates).expect("static recipe is valid");
    circuit.metadata.insert("name".into(), "cpf4-barenco".into());
    DecompositionRecipe { name: "cpf4-barenco".into(), target: "cpf4".into(), circuit, claimed_nonlocal_count: 13 }
}

/// One `CZ` on two qubits.
pub fn cz_circuit<T: Real>() -> Circuit<T> {
    let mut c = Circuit::from_parts(&[2, 2], vec![Gate::cz(0, 1)]).expect("valid");
    c.metadata.insert("name".into(), "cpf2".into());
    c
}

/// The phase flip on `n` (even) qubits as a single gate on two qudits of
/// dimension `2^{n/2}`, conditioned on the top level of the first.
pub fn cpf_qudit_circuit<T: Real>(n: usize) -> Result<Circuit<T>> {
    if n < 2 || !n.is_multiple_of(2) || n > MAX_CPF_QUBITS {
        return Err(Error::InvalidArgument(format!("qudit CPF realisation needs even n in 2..={MAX_CPF_QUBITS}, got {n}")));
    }
    let d = 1usize << (n / 2);
    let mut c = Circuit::from_parts(&[d, d], vec![Gate::controlled_on_level(0, 1, d - 1)])?;
    c.metadata.insert("name".into(), format!("cpf{n}-qudit").into());
    if n == 6 {
        c.metadata.insert("quoted_qubit_two_qubit_gates".into(), CPF6_QUBIT_GATES_QUOTED.into());
        c.metadata.insert("quoted_ququart_two_qudit_gates".into(), CPF6_QUQUART_GATES_QUOTED.into());
    }
    Ok(c)
}

/// Grid graph state preparation: `H` on every site, then `CZ` on every
/// nearest-neighbour edge (horizontal edges row by row, then vertical).
pub fn cluster_state_circuit<T: Real>(rows: usize, cols: usize) -> Result<Circuit<T>> {
    let n = rows * cols;
    if n == 0 || n > MAX_CLUSTER_SITES {
        return Err(Error::InvalidArgument(format!(
            "cluster of {rows}x{cols} sites outside 1..={MAX_CLUSTER_SITES}"
        )));
    }
    let mut gates: Vec<Gate<T>> = (0..n).map(Gate::h).collect();
    for (a, b) in grid_edges(rows, cols) {
        gates.push(Gate::cz(a, b));
    }
    let mut c = Circuit::from_parts(&vec![2; n], gates)?;
    c.metadata.insert("name".into(), format!("cluster-{rows}x{cols}").into());
    Ok(c)
}

/// Open-boundary four-neighbour grid edges, horizontal first.
pub fn grid_edges(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let site = |r: usize, c: usize| r * cols + c;
    let horizontal = (0..rows).flat_map(|r| (0..cols.saturating_sub(1)).map(move |c| (site(r, c), site(r, c + 1))));
    let vertical = (0..rows.saturating_sub(1)).flat_map(|r| (0..cols).map(move |c| (site(r, c), site(r + 1, c))));
    horizontal.chain(vertical).collect()
}

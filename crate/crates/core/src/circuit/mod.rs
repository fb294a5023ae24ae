//! Mixed-dimension circuit representation.
//!
//! A [`Circuit`] is an ordered list of one- and two-wire gates over wires of
//! declared dimension. Every gate resolves to a concrete unitary through
//! [`Gate::unitary`]; two-wire matrices are ordered with the first listed wire
//! as the more significant tensor factor.

mod json;

use std::collections::BTreeMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::simulator::Matrix;

pub use json::{parse_circuit, serialize_circuit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WireSpec {
    pub index: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    /// Discrete Fourier transform on `d` levels; Hadamard for qubits.
    H,
    /// Cyclic shift `|n⟩ → |n+1 mod d⟩`.
    X,
    /// Clock `|n⟩ → ω^n |n⟩`, `ω = e^{2πi/d}`.
    Z,
    T,
    Tdag,
    /// `params = [θ]` on a qubit, `[θ, i, j]` on levels `i, j` of a qudit.
    RX,
    RY,
    /// `params = [φ]` (top level) or `[φ, level]`.
    #[serde(rename = "phase")]
    Phase,
    /// `params` lists the image of every level.
    #[serde(rename = "permutation")]
    Permutation,
    CNOT,
    CZ,
    /// Controlled `T = diag(1, e^{iπ/4})`, control on the first wire.
    CT,
    CTdag,
    /// Applies `diag(1, …, 1, e^{iφ})` to the target iff the control is at
    /// `control_level`; `params = []` means `φ = π`.
    #[serde(rename = "controlled-on-level")]
    ControlledOnLevel,
    #[serde(rename = "custom-matrix")]
    CustomMatrix,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::T => "T",
            GateKind::Tdag => "Tdag",
            GateKind::RX => "RX",
            GateKind::RY => "RY",
            GateKind::Phase => "phase",
            GateKind::Permutation => "permutation",
            GateKind::CNOT => "CNOT",
            GateKind::CZ => "CZ",
            GateKind::CT => "CT",
            GateKind::CTdag => "CTdag",
            GateKind::ControlledOnLevel => "controlled-on-level",
            GateKind::CustomMatrix => "custom-matrix",
        }
    }

    /// Number of wires the kind acts on, `None` for custom matrices.
    pub fn arity(self) -> Option<usize> {
        match self {
            GateKind::CNOT
            | GateKind::CZ
            | GateKind::CT
            | GateKind::CTdag
            | GateKind::ControlledOnLevel => Some(2),
            GateKind::CustomMatrix => None,
            _ => Some(1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate<T: Real = f64> {
    pub kind: GateKind,
    pub wires: Vec<usize>,
    pub params: Vec<T>,
    pub control_level: Option<usize>,
    pub matrix: Option<Matrix<T>>,
}

impl<T: Real> Gate<T> {
    pub fn new(kind: GateKind, wires: Vec<usize>) -> Self {
        Gate { kind, wires, params: Vec::new(), control_level: None, matrix: None }
    }

    pub fn with_params(kind: GateKind, wires: Vec<usize>, params: Vec<T>) -> Self {
        Gate { params, ..Gate::new(kind, wires) }
    }

    pub fn custom(wires: Vec<usize>, matrix: Matrix<T>) -> Self {
        Gate { matrix: Some(matrix), ..Gate::new(GateKind::CustomMatrix, wires) }
    }

    pub fn controlled_on_level(control: usize, target: usize, level: usize) -> Self {
        Gate { control_level: Some(level), ..Gate::new(GateKind::ControlledOnLevel, vec![control, target]) }
    }

    pub fn h(w: usize) -> Self {
        Gate::new(GateKind::H, vec![w])
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::new(GateKind::CNOT, vec![control, target])
    }

    pub fn cz(a: usize, b: usize) -> Self {
        Gate::new(GateKind::CZ, vec![a, b])
    }

    pub fn ct(control: usize, target: usize) -> Self {
        Gate::new(GateKind::CT, vec![control, target])
    }

    pub fn ctdag(control: usize, target: usize) -> Self {
        Gate::new(GateKind::CTdag, vec![control, target])
    }

    pub fn is_nonlocal(&self) -> bool {
        self.wires.len() == 2
    }

    /// Resolves the gate to its unitary given the dimensions of its wires,
    /// validating parameters on the way.
    pub fn unitary(&self, dims: &[usize]) -> Result<Matrix<T>> {
        let bad = |msg: String| Error::semantic(None, msg);
        if let Some(arity) = self.kind.arity() {
            if self.wires.len() != arity {
                return Err(bad(format!("{} acts on {arity} wire(s), got {}", self.kind.name(), self.wires.len())));
            }
        } else if !(1..=2).contains(&self.wires.len()) {
            return Err(bad(format!("custom-matrix acts on 1 or 2 wires, got {}", self.wires.len())));
        }
        if dims.len() != self.wires.len() {
            return Err(bad("wire dimension list does not match gate wires".into()));
        }
        if self.kind != GateKind::ControlledOnLevel && self.control_level.is_some() {
            return Err(bad(format!("{} does not take a control level", self.kind.name())));
        }
        if self.kind != GateKind::CustomMatrix && self.matrix.is_some() {
            return Err(bad(format!("{} does not take a matrix", self.kind.name())));
        }
        let expect_params = |allowed: &[usize]| -> Result<()> {
            if allowed.contains(&self.params.len()) {
                Ok(())
            } else {
                Err(bad(format!(
                    "{} expects {allowed:?} parameters, got {}",
                    self.kind.name(),
                    self.params.len()
                )))
            }
        };
        let qubits_only = || -> Result<()> {
            if dims.iter().all(|&d| d == 2) {
                Ok(())
            } else {
                Err(bad(format!("{} is defined on qubit wires only", self.kind.name())))
            }
        };

        let d = dims[0];
        let m = match self.kind {
            GateKind::H => {
                expect_params(&[0])?;
                fourier(d)
            }
            GateKind::X => {
                expect_params(&[0])?;
                shift(d, 1)
            }
            GateKind::Z => {
                expect_params(&[0])?;
                if d == 2 {
                    Matrix::from_diagonal(&[one(), -one::<T>()])
                } else {
                    let w = T::TAU() / T::from_usize(d).unwrap();
                    let diag: Vec<_> =
                        (0..d).map(|n| Complex::from_polar(T::one(), w * T::from_usize(n).unwrap())).collect();
                    Matrix::from_diagonal(&diag)
                }
            }
            GateKind::T | GateKind::Tdag => {
                expect_params(&[0])?;
                qubits_only()?;
                let sign = if self.kind == GateKind::T { T::one() } else { -T::one() };
                Matrix::from_diagonal(&[one(), Complex::from_polar(T::one(), sign * T::FRAC_PI_4())])
            }
            GateKind::RX | GateKind::RY => {
                let (theta, i, j) = if d == 2 {
                    expect_params(&[1, 3])?;
                    if self.params.len() == 3 {
                        (self.params[0], level(self.params[1], d)?, level(self.params[2], d)?)
                    } else {
                        (self.params[0], 0, 1)
                    }
                } else {
                    expect_params(&[3])?;
                    (self.params[0], level(self.params[1], d)?, level(self.params[2], d)?)
                };
                if i == j {
                    return Err(bad("rotation levels must differ".into()));
                }
                givens(self.kind, d, theta, i, j)
            }
            GateKind::Phase => {
                expect_params(&[1, 2])?;
                let lvl = if self.params.len() == 2 { level(self.params[1], d)? } else { d - 1 };
                let mut m = Matrix::identity(d);
                m[(lvl, lvl)] = Complex::from_polar(T::one(), self.params[0]);
                m
            }
            GateKind::Permutation => {
                expect_params(&[d])?;
                let image = self.params.iter().map(|&p| level(p, d)).collect::<Result<Vec<_>>>()?;
                let mut seen = vec![false; d];
                for &p in &image {
                    if std::mem::replace(&mut seen[p], true) {
                        return Err(bad(format!("permutation image {image:?} is not a bijection")));
                    }
                }
                let mut m = Matrix::zeros(d, d);
                for (n, &p) in image.iter().enumerate() {
                    m[(p, n)] = one();
                }
                m
            }
            GateKind::CNOT => {
                expect_params(&[0])?;
                qubits_only()?;
                let mut m = Matrix::zeros(4, 4);
                for (r, c) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
                    m[(r, c)] = one();
                }
                m
            }
            GateKind::CZ => {
                expect_params(&[0])?;
                qubits_only()?;
                Matrix::from_diagonal(&[one(), one(), one(), -one::<T>()])
            }
            GateKind::CT | GateKind::CTdag => {
                expect_params(&[0])?;
                qubits_only()?;
                let sign = if self.kind == GateKind::CT { T::one() } else { -T::one() };
                Matrix::from_diagonal(&[one(), one(), one(), Complex::from_polar(T::one(), sign * T::FRAC_PI_4())])
            }
            GateKind::ControlledOnLevel => {
                expect_params(&[0, 1])?;
                let lvl = self
                    .control_level
                    .ok_or_else(|| bad("controlled-on-level requires control_level".into()))?;
                if lvl >= d {
                    return Err(bad(format!("control level {lvl} out of range for dimension {d}")));
                }
                let phi = self.params.first().copied().unwrap_or_else(T::PI);
                let dt = dims[1];
                let mut target = Matrix::identity(dt);
                target[(dt - 1, dt - 1)] = Complex::from_polar(T::one(), phi);
                crate::library::controlled_on_level_gate(d, lvl, &target)?
            }
            GateKind::CustomMatrix => {
                expect_params(&[0])?;
                let m = self.matrix.as_ref().ok_or_else(|| bad("custom-matrix requires a matrix".into()))?;
                let total: usize = dims.iter().product();
                if m.rows() != total || m.cols() != total {
                    return Err(bad(format!(
                        "matrix is {}x{}, wires require {total}x{total}",
                        m.rows(),
                        m.cols()
                    )));
                }
                let defect = m.unitarity_defect();
                if !(defect < T::unitarity_tol()) {
                    return Err(bad(format!("matrix is not unitary (max |U†U - I| = {defect})")));
                }
                m.clone()
            }
        };
        Ok(m)
    }
}

fn one<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

fn level<T: Real>(p: T, d: usize) -> Result<usize> {
    let l = p.to_usize().filter(|&l| T::from_usize(l) == Some(p) && l < d);
    l.ok_or_else(|| Error::semantic(None, format!("{p} is not a level below {d}")))
}

fn fourier<T: Real>(d: usize) -> Matrix<T> {
    let norm = T::one() / T::from_usize(d).unwrap().sqrt();
    let w = T::TAU() / T::from_usize(d).unwrap();
    Matrix::from_fn(d, d, |j, k| {
        if d == 2 {
            // Exact Hadamard entries.
            let h = T::FRAC_1_SQRT_2();
            let s = if j == 1 && k == 1 { -h } else { h };
            Complex::new(s, T::zero())
        } else {
            Complex::from_polar(norm, w * T::from_usize((j * k) % d).unwrap())
        }
    })
}

pub(crate) fn shift<T: Real>(d: usize, s: i64) -> Matrix<T> {
    let mut m = Matrix::zeros(d, d);
    let d_i = d as i64;
    for n in 0..d {
        let to = ((n as i64 + s) % d_i + d_i) % d_i;
        m[(to as usize, n)] = one();
    }
    m
}

fn givens<T: Real>(kind: GateKind, d: usize, theta: T, i: usize, j: usize) -> Matrix<T> {
    let half = theta / (T::one() + T::one());
    let (c, s) = (half.cos(), half.sin());
    let mut m = Matrix::identity(d);
    m[(i, i)] = Complex::new(c, T::zero());
    m[(j, j)] = Complex::new(c, T::zero());
    if kind == GateKind::RX {
        m[(i, j)] = Complex::new(T::zero(), -s);
        m[(j, i)] = Complex::new(T::zero(), -s);
    } else {
        m[(i, j)] = Complex::new(-s, T::zero());
        m[(j, i)] = Complex::new(s, T::zero());
    }
    m
}

/// An ordered gate list over declared wires.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit<T: Real = f64> {
    wires: Vec<WireSpec>,
    gates: Vec<Gate<T>>,
    pub metadata: serde_json::Map<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CircuitStats {
    pub n_wires: usize,
    pub n_local: usize,
    pub n_nonlocal: usize,
    /// Non-local gate count per unordered wire pair `(low, high)`.
    pub per_pair: BTreeMap<(usize, usize), usize>,
}

impl<T: Real> Circuit<T> {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::semantic(None, format!("wire dimension {d} is below 2")));
        }
        dims.iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::semantic(None, "total dimension overflows"))?;
        Ok(Circuit {
            wires: dims.iter().enumerate().map(|(index, &dim)| WireSpec { index, dim }).collect(),
            gates: Vec::new(),
            metadata: serde_json::Map::new(),
        })
    }

    pub fn qubits(n: usize) -> Self {
        Self::new(&vec![2; n]).expect("qubit register")
    }

    /// Builds a circuit from parts, validating every gate.
    pub fn from_parts(dims: &[usize], gates: Vec<Gate<T>>) -> Result<Self> {
        let mut c = Self::new(dims)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn wires(&self) -> &[WireSpec] {
        &self.wires
    }

    pub fn dims(&self) -> Vec<usize> {
        self.wires.iter().map(|w| w.dim).collect()
    }

    pub fn n_wires(&self) -> usize {
        self.wires.len()
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn is_all_qubit(&self) -> bool {
        self.wires.iter().all(|w| w.dim == 2)
    }

    /// Product of wire dimensions.
    pub fn total_dim(&self) -> usize {
        self.wires.iter().map(|w| w.dim).product()
    }

    /// Appends a gate after validating it against the declared wires.
    pub fn push(&mut self, gate: Gate<T>) -> Result<()> {
        let index = self.gates.len();
        self.check_gate(&gate).map_err(|e| with_gate_index(e, index))?;
        self.gates.push(gate);
        Ok(())
    }

    /// Unitary of gate `i` on its own wires.
    pub fn gate_unitary(&self, i: usize) -> Result<Matrix<T>> {
        let g = &self.gates[i];
        g.unitary(&self.gate_dims(g)).map_err(|e| with_gate_index(e, i))
    }

    pub(crate) fn gate_dims(&self, g: &Gate<T>) -> Vec<usize> {
        g.wires.iter().map(|&w| self.wires[w].dim).collect()
    }

    fn check_gate(&self, gate: &Gate<T>) -> Result<()> {
        for &w in &gate.wires {
            if w >= self.wires.len() {
                return Err(Error::semantic(None, format!("wire {w} is not declared")));
            }
        }
        if gate.wires.len() == 2 && gate.wires[0] == gate.wires[1] {
            return Err(Error::semantic(None, format!("duplicate wire {} in gate", gate.wires[0])));
        }
        gate.unitary(&self.gate_dims(gate)).map(|_| ())
    }

    pub fn stats(&self) -> CircuitStats {
        circuit_stats(self)
    }
}

fn with_gate_index(e: Error, index: usize) -> Error {
    match e {
        Error::Semantic { gate: None, message } => Error::Semantic { gate: Some(index), message },
        Error::Schema { gate: None, message } => Error::Schema { gate: Some(index), message },
        other => other,
    }
}

pub fn circuit_stats<T: Real>(c: &Circuit<T>) -> CircuitStats {
    let mut stats = CircuitStats { n_wires: c.n_wires(), ..Default::default() };
    for g in c.gates() {
        if g.is_nonlocal() {
            stats.n_nonlocal += 1;
            let (a, b) = (g.wires[0].min(g.wires[1]), g.wires[0].max(g.wires[1]));
            *stats.per_pair.entry((a, b)).or_insert(0) += 1;
        } else {
            stats.n_local += 1;
        }
    }
    stats
}

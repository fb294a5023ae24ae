//! Exact dense simulation of mixed-dimension circuits.
//!
//! Register basis states are indexed with wire 0 as the most significant
//! digit. Unitaries are assembled column by column by running the circuit on
//! every basis state; gate application skips exact zeros of the gate matrix
//! but otherwise sums in a fixed order, so results are bitwise reproducible.

mod matrix;
pub mod svd;

use num_complex::Complex;

use crate::circuit::Circuit;
use crate::compress::Encoding;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub use matrix::{swap_factors, DenseUnitary, Matrix};

/// Largest total register dimension the dense simulator accepts.
pub const SIM_DIM_CAP: usize = 1 << 12;

/// A gate matrix prepared for application to a register.
struct LocalOp<T: Real> {
    /// Non-zero entries of each row, as `(column, value)`.
    rows: Vec<Vec<(usize, Complex<T>)>>,
    /// Register offset of each local basis state.
    offsets: Vec<usize>,
    /// Register indices whose digits on the gate wires are all zero.
    bases: Vec<usize>,
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

impl<T: Real> LocalOp<T> {
    fn new(m: &Matrix<T>, wires: &[usize], dims: &[usize]) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        let st = strides(dims);
        let local_dims: Vec<usize> = wires.iter().map(|&w| dims[w]).collect();
        let local_dim: usize = local_dims.iter().product();
        let offsets = (0..local_dim)
            .map(|l| {
                let mut rem = l;
                let mut off = 0;
                for (k, &w) in wires.iter().enumerate().rev() {
                    off += (rem % local_dims[k]) * st[w];
                    rem /= local_dims[k];
                }
                off
            })
            .collect();
        let total: usize = dims.iter().product();
        let bases = (0..total)
            .filter(|&idx| wires.iter().all(|&w| (idx / st[w]).is_multiple_of(dims[w])))
            .collect();
        let rows = (0..m.rows())
            .map(|r| {
                m.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, &z)| z != zero)
                    .map(|(c, &z)| (c, z))
                    .collect()
            })
            .collect();
        LocalOp { rows, offsets, bases }
    }

    fn apply(&self, state: &mut [Complex<T>], scratch: &mut Vec<Complex<T>>) {
        let zero = Complex::new(T::zero(), T::zero());
        for &base in &self.bases {
            scratch.clear();
            scratch.extend(self.offsets.iter().map(|&o| state[base + o]));
            for (r, row) in self.rows.iter().enumerate() {
                state[base + self.offsets[r]] = row.iter().fold(zero, |acc, &(c, v)| acc + v * scratch[c]);
            }
        }
    }
}

fn prepare<T: Real>(c: &Circuit<T>) -> Result<Vec<LocalOp<T>>> {
    let dims = c.dims();
    (0..c.gates().len())
        .map(|i| Ok(LocalOp::new(&c.gate_unitary(i)?, &c.gates()[i].wires, &dims)))
        .collect()
}

fn check_cap(dim: usize) -> Result<()> {
    if dim > SIM_DIM_CAP {
        Err(Error::DimensionCap { dim, cap: SIM_DIM_CAP })
    } else {
        Ok(())
    }
}

/// Ordered product of all gate embeddings; the identity for an empty circuit.
pub fn circuit_unitary<T: Real>(c: &Circuit<T>) -> Result<Matrix<T>> {
    let dim = c.total_dim();
    check_cap(dim)?;
    let ops = prepare(c)?;
    let mut u = Matrix::zeros(dim, dim);
    let mut column = vec![Complex::new(T::zero(), T::zero()); dim];
    let mut scratch = Vec::new();
    for j in 0..dim {
        column.iter_mut().for_each(|z| *z = Complex::new(T::zero(), T::zero()));
        column[j] = Complex::new(T::one(), T::zero());
        for op in &ops {
            op.apply(&mut column, &mut scratch);
        }
        for (i, &z) in column.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    Ok(u)
}

/// Pure state on a register of mixed dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real = f64> {
    dims: Vec<usize>,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn new(dims: Vec<usize>, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let total: usize = dims.iter().product();
        if amplitudes.len() != total {
            return Err(Error::ShapeMismatch(format!("{} amplitudes for dimension {total}", amplitudes.len())));
        }
        let norm = amplitudes.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
        if !((norm - T::one()).abs() < T::unitarity_tol()) {
            return Err(Error::InvalidArgument(format!("state norm {norm} differs from 1")));
        }
        Ok(StateVector { dims, amplitudes })
    }

    /// `|0…0⟩` on the given register.
    pub fn zero(dims: Vec<usize>) -> Self {
        let total: usize = dims.iter().product();
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); total];
        amplitudes[0] = Complex::new(T::one(), T::zero());
        StateVector { dims, amplitudes }
    }

    /// `|+⟩^{⊗n}`.
    pub fn plus(n: usize) -> Self {
        let total = 1usize << n;
        let a = T::one() / T::from_usize(total).unwrap().sqrt();
        StateVector { dims: vec![2; n], amplitudes: vec![Complex::new(a, T::zero()); total] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm(&self) -> T {
        self.amplitudes.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    /// Runs `c` on this state.
    pub fn evolve(&self, c: &Circuit<T>) -> Result<Self> {
        if c.dims() != self.dims {
            return Err(Error::ShapeMismatch("circuit register differs from state register".into()));
        }
        let ops = prepare(c)?;
        let mut amplitudes = self.amplitudes.clone();
        let mut scratch = Vec::new();
        for op in &ops {
            op.apply(&mut amplitudes, &mut scratch);
        }
        Ok(StateVector { dims: self.dims.clone(), amplitudes })
    }

    /// Maps a qubit state into the qudit register of `e`.
    pub fn encode(&self, e: &Encoding) -> Result<Self> {
        let iso = encoding_isometry::<T>(e);
        if iso.cols() != self.amplitudes.len() {
            return Err(Error::ShapeMismatch("encoding does not match state size".into()));
        }
        Ok(StateVector { dims: e.qudit_dims().to_vec(), amplitudes: iso.mul_vec(&self.amplitudes)? })
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.dims != other.dims {
            return Err(Error::ShapeMismatch("states live on different registers".into()));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }
}

/// Isometry from the `2^n` qubit basis into the qudit register of `e`.
///
/// Column `x` (qubit wire 0 most significant) holds a single 1 at the qudit
/// basis state given by the canonical binary encoding of each group.
pub fn encoding_isometry<T: Real>(e: &Encoding) -> Matrix<T> {
    let n = e.n_qubits();
    let qdims = e.qudit_dims();
    let qstrides = strides(qdims);
    let rows: usize = qdims.iter().product();
    let cols = 1usize << n;
    let mut iso = Matrix::zeros(rows, cols);
    for x in 0..cols {
        let bit = |q: usize| (x >> (n - 1 - q)) & 1;
        let row: usize = e
            .groups()
            .iter()
            .enumerate()
            .map(|(g, group)| group.iter().fold(0, |lvl, &q| (lvl << 1) | bit(q)) * qstrides[g])
            .sum();
        iso[(row, x)] = Complex::new(T::one(), T::zero());
    }
    iso
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equivalence<T> {
    pub equal: bool,
    pub residual: T,
}

/// Compares `U_qudit · E` with `e^{iφ} E · U_qubit`, with the phase taken at
/// the largest-magnitude entry of `U_qudit · E`.
pub fn verify_equivalence<T: Real>(
    u_qubit: &Matrix<T>,
    u_qudit: &Matrix<T>,
    e: &Encoding,
    tol: T,
) -> Result<Equivalence<T>> {
    let iso = encoding_isometry::<T>(e);
    if u_qubit.rows() != iso.cols() || u_qubit.cols() != iso.cols() || u_qudit.rows() != iso.rows() || u_qudit.cols() != iso.rows() {
        return Err(Error::ShapeMismatch(format!(
            "qubit unitary {}x{}, qudit unitary {}x{}, encoding {}x{}",
            u_qubit.rows(),
            u_qubit.cols(),
            u_qudit.rows(),
            u_qudit.cols(),
            iso.rows(),
            iso.cols()
        )));
    }
    let lhs = u_qudit.mul(&iso)?;
    let rhs = iso.mul(u_qubit)?;
    let phase = match lhs.argmax_abs() {
        Some(at) if rhs[at].norm() > T::zero() => {
            let ratio = lhs[at] / rhs[at];
            ratio / ratio.norm()
        }
        _ => Complex::new(T::one(), T::zero()),
    };
    let residual = lhs.max_abs_diff(&rhs.scale(phase))?;
    Ok(Equivalence { equal: residual < tol, residual })
}

/// Realignment `R[(iA,jA),(iB,jB)] = U[(iA,iB),(jA,jB)]` across `dA ⊗ dB`.
pub fn reshuffle<T: Real>(u: &Matrix<T>, (da, db): (usize, usize)) -> Result<Matrix<T>> {
    if !u.is_square() || da * db != u.rows() {
        return Err(Error::InvalidArgument(format!("cut {da}x{db} does not match dimension {}", u.rows())));
    }
    Ok(Matrix::from_fn(da * da, db * db, |a, b| {
        let (ia, ja) = (a / da, a % da);
        let (ib, jb) = (b / db, b % db);
        u[(ia * db + ib, ja * db + jb)]
    }))
}

/// Operator Schmidt coefficients across `dA ⊗ dB`, non-increasing.
pub fn operator_schmidt_coefficients<T: Real>(u: &Matrix<T>, cut: (usize, usize)) -> Result<Vec<T>> {
    Ok(svd::singular_values(&reshuffle(u, cut)?))
}

/// Number of operator Schmidt coefficients above `tol · σ_max`.
pub fn operator_schmidt_rank<T: Real>(u: &Matrix<T>, cut: (usize, usize), tol: T) -> Result<usize> {
    let sv = operator_schmidt_coefficients(u, cut)?;
    let largest = sv.first().copied().unwrap_or_else(T::zero);
    Ok(sv.iter().filter(|&&s| s > tol * largest).count())
}

/// Von Neumann entropy in bits of the subsystems listed in `cut`.
pub fn state_entropy<T: Real>(psi: &StateVector<T>, cut: &[usize]) -> Result<T> {
    let dims = psi.dims();
    let mut in_a = vec![false; dims.len()];
    for &s in cut {
        if s >= dims.len() || std::mem::replace(&mut in_a[s], true) {
            return Err(Error::InvalidArgument(format!("invalid subsystem {s} in cut {cut:?}")));
        }
    }
    let a_subs: Vec<usize> = (0..dims.len()).filter(|&s| in_a[s]).collect();
    let b_subs: Vec<usize> = (0..dims.len()).filter(|&s| !in_a[s]).collect();
    let da: usize = a_subs.iter().map(|&s| dims[s]).product();
    let db: usize = b_subs.iter().map(|&s| dims[s]).product();
    let st = strides(dims);
    let digit = |idx: usize, s: usize| (idx / st[s]) % dims[s];
    let mut m = Matrix::zeros(da, db);
    for (idx, &amp) in psi.amplitudes().iter().enumerate() {
        let a = a_subs.iter().fold(0, |acc, &s| acc * dims[s] + digit(idx, s));
        let b = b_subs.iter().fold(0, |acc, &s| acc * dims[s] + digit(idx, s));
        m[(a, b)] = amp;
    }
    let cutoff = T::lit(1e-12);
    Ok(svd::singular_values(&m)
        .into_iter()
        .map(|s| s * s)
        .filter(|&p| p >= cutoff)
        .fold(T::zero(), |acc, p| acc - p * p.log2()))
}

//! Qubit-to-qudit circuit compression.
//!
//! Each partition group of `m` qubits becomes one qudit whose first `2^m`
//! levels hold the group in big-endian binary order (first qubit of the group
//! is the most significant bit). Levels above `2^m` are auxiliary and are
//! left untouched by every rewritten gate.

mod merge;
mod pipeline;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::graph::{contract_graph, WeightedGraph};
use crate::partition::Partition;
use crate::scalar::Real;
use crate::simulator::Matrix;
use crate::Ratio;

pub use merge::{merge_pass, MergeOptions};
pub use pipeline::{
    full_pipeline, CompressionReport, CutSummary, GateSummary, OriginalSummary, PartitionStrategy,
    PipelineOptions, PipelineOutput, TildeSummary, VerificationSummary,
};

/// Assignment of qubits to qudits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Encoding {
    groups: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl Encoding {
    /// `groups` must partition `0..n`; group order within a group is the bit
    /// order of the encoding.
    pub fn new(groups: Vec<Vec<usize>>, dims: Vec<usize>) -> Result<Self> {
        if groups.len() != dims.len() {
            return Err(Error::InvalidArgument(format!("{} groups but {} qudit dimensions", groups.len(), dims.len())));
        }
        let n: usize = groups.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for &q in groups.iter().flatten() {
            if q >= n || std::mem::replace(&mut seen[q], true) {
                return Err(Error::InvalidArgument(format!("groups {groups:?} do not partition 0..{n}")));
            }
        }
        for (g, &d) in groups.iter().zip(&dims) {
            if g.is_empty() || g.len() >= usize::BITS as usize || d < 1 << g.len() {
                return Err(Error::InvalidArgument(format!(
                    "qudit of dimension {d} cannot hold {} qubits",
                    g.len()
                )));
            }
        }
        Ok(Encoding { groups, dims })
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn qudit_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_qubits(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn n_qudits(&self) -> usize {
        self.groups.len()
    }

    /// `(qudit, bit position)` holding qubit `q`.
    pub fn locate(&self, q: usize) -> Option<(usize, usize)> {
        self.groups
            .iter()
            .enumerate()
            .find_map(|(g, group)| group.iter().position(|&x| x == q).map(|p| (g, p)))
    }

    pub fn total_dim(&self) -> Option<usize> {
        self.dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d))
    }
}

/// Canonical encoding of a partition; qudit `i` holds group `i` in ascending
/// qubit order. Without `dims`, qudit `i` has dimension `2^{|group i|}`.
pub fn make_encoding(p: &Partition, dims: Option<&[usize]>) -> Result<Encoding> {
    let groups = p.groups().to_vec();
    let dims = match dims {
        Some(d) => d.to_vec(),
        None => groups.iter().map(|g| 1usize << g.len()).collect(),
    };
    Encoding::new(groups, dims)
}

/// Exact compression-ratio bounds `‖w̃‖₀/‖w‖₁ ≤ C ≤ ‖w̃‖₁/‖w‖₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub lower: Ratio,
    pub upper: Ratio,
}

impl Serialize for Bounds {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            lower: [u64; 2],
            upper: [u64; 2],
        }
        Doc { lower: [*self.lower.numer(), *self.lower.denom()], upper: [*self.upper.numer(), *self.upper.denom()] }
            .serialize(s)
    }
}

pub fn compression_bounds(g: &WeightedGraph, p: &Partition) -> Result<Bounds> {
    let total = g.total_weight();
    if total == 0 {
        return Err(Error::Degenerate);
    }
    let contracted = contract_graph(g, p)?;
    Ok(Bounds { lower: Ratio::new(contracted.l0(), total), upper: Ratio::new(contracted.l1(), total) })
}

/// Lifts a qubit operator acting on the listed bit positions (position 0 is
/// the most significant of `n_bits`) to the full `2^{n_bits}` space.
pub(crate) fn embed_on_bits<T: Real>(u: &Matrix<T>, bits: &[usize], n_bits: usize) -> Matrix<T> {
    let dim = 1usize << n_bits;
    let local = 1usize << bits.len();
    debug_assert_eq!(u.rows(), local);
    let zero = Complex::new(T::zero(), T::zero());
    let shift = |p: usize| n_bits - 1 - p;
    let mut out = Matrix::zeros(dim, dim);
    for col in 0..dim {
        let lc = bits.iter().fold(0, |acc, &p| (acc << 1) | ((col >> shift(p)) & 1));
        let spectators = bits.iter().fold(col, |acc, &p| acc & !(1 << shift(p)));
        for lr in 0..local {
            let v = u[(lr, lc)];
            if v == zero {
                continue;
            }
            let row = bits
                .iter()
                .enumerate()
                .fold(spectators, |acc, (i, &p)| acc | (((lr >> (bits.len() - 1 - i)) & 1) << shift(p)));
            out[(row, col)] = v;
        }
    }
    out
}

/// Extends an operator on the computational levels of each qudit by the
/// identity on auxiliary levels.
pub(crate) fn pad_levels<T: Real>(m: &Matrix<T>, comp: &[usize], dims: &[usize]) -> Matrix<T> {
    if comp == dims {
        return m.clone();
    }
    let total: usize = dims.iter().product();
    let digits = |mut idx: usize, radix: &[usize]| {
        let mut d = vec![0; radix.len()];
        for i in (0..radix.len()).rev() {
            d[i] = idx % radix[i];
            idx /= radix[i];
        }
        d
    };
    let compress_index = |levels: &[usize]| -> Option<usize> {
        levels
            .iter()
            .zip(comp)
            .try_fold(0, |acc, (&l, &c)| (l < c).then_some(acc * c + l))
    };
    let mut out = Matrix::identity(total);
    let comp_of: Vec<Option<usize>> = (0..total).map(|i| compress_index(&digits(i, dims))).collect();
    for r in 0..total {
        for c in 0..total {
            if let (Some(cr), Some(cc)) = (comp_of[r], comp_of[c]) {
                out[(r, c)] = m[(cr, cc)];
            }
        }
    }
    out
}

/// A two-qubit gate acting on bit `pos_a` of an `m_a`-qubit qudit and bit
/// `pos_b` of an `m_b`-qubit qudit, identity on the spectator bits.
pub fn embed_two_qubit_gate<T: Real>(
    u: &Matrix<T>,
    pos_a: usize,
    m_a: usize,
    pos_b: usize,
    m_b: usize,
) -> Result<Matrix<T>> {
    if u.rows() != 4 || u.cols() != 4 {
        return Err(Error::ShapeMismatch(format!("expected a 4x4 gate, got {}x{}", u.rows(), u.cols())));
    }
    if pos_a >= m_a || pos_b >= m_b {
        return Err(Error::InvalidArgument(format!("bit positions ({pos_a}, {pos_b}) outside ({m_a}, {m_b})")));
    }
    Ok(embed_on_bits(u, &[pos_a, m_a + pos_b], m_a + m_b))
}

/// Rewrites a qubit circuit onto the qudits of `e`. Every gate becomes a
/// custom-matrix gate; two-qubit gates inside one group become single-qudit
/// gates and those across groups become embedded two-qudit gates.
pub fn compress<T: Real>(c: &Circuit<T>, e: &Encoding) -> Result<Circuit<T>> {
    if !c.is_all_qubit() {
        return Err(Error::InvalidArgument("compression expects a circuit of qubit wires".into()));
    }
    if e.n_qubits() != c.n_wires() {
        return Err(Error::InvalidArgument(format!(
            "encoding covers {} qubits, circuit has {}",
            e.n_qubits(),
            c.n_wires()
        )));
    }
    let dims = e.qudit_dims();
    let sizes: Vec<usize> = e.groups().iter().map(Vec::len).collect();
    let mut out = Circuit::new(dims)?;
    for (i, gate) in c.gates().iter().enumerate() {
        let u = c.gate_unitary(i)?;
        let located: Vec<(usize, usize)> =
            gate.wires.iter().map(|&q| e.locate(q).expect("encoding covers every qubit")).collect();
        let rewritten = match located[..] {
            [(g, p)] => {
                let m = embed_on_bits(&u, &[p], sizes[g]);
                Gate::custom(vec![g], pad_levels(&m, &[1 << sizes[g]], &[dims[g]]))
            }
            [(g1, p1), (g2, p2)] if g1 == g2 => {
                let m = embed_on_bits(&u, &[p1, p2], sizes[g1]);
                Gate::custom(vec![g1], pad_levels(&m, &[1 << sizes[g1]], &[dims[g1]]))
            }
            [(g1, p1), (g2, p2)] => {
                let m = embed_two_qubit_gate(&u, p1, sizes[g1], p2, sizes[g2])?;
                let comp = [1 << sizes[g1], 1 << sizes[g2]];
                Gate::custom(vec![g1, g2], pad_levels(&m, &comp, &[dims[g1], dims[g2]]))
            }
            _ => unreachable!("gates act on one or two wires"),
        };
        out.push(rewritten)?;
    }
    out.metadata = c.metadata.clone();
    out.metadata.insert(
        "encoding".into(),
        serde_json::to_value(e).expect("encoding serializes"),
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_interaction_graph;
    use crate::library::{cluster_state_circuit, cpf4_barenco_circuit};
    use crate::simulator::{circuit_unitary, operator_schmidt_rank, verify_equivalence};

    fn p(groups: &[&[usize]]) -> Partition {
        Partition::new(groups.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    #[test]
    fn default_and_overridden_dims() {
        let e = make_encoding(&p(&[&[0, 1], &[2, 3]]), None).unwrap();
        assert_eq!(e.qudit_dims(), &[4, 4]);
        let e = make_encoding(&p(&[&[0, 1], &[2, 3]]), Some(&[5, 5])).unwrap();
        assert_eq!(e.qudit_dims(), &[5, 5]);
        let e = make_encoding(&p(&[&[0, 1, 2], &[3, 4, 5]]), None).unwrap();
        assert_eq!(e.qudit_dims(), &[8, 8]);
        assert!(make_encoding(&p(&[&[0, 1], &[2, 3]]), Some(&[3, 4])).is_err());
        assert!(make_encoding(&p(&[&[0, 1], &[2, 3]]), Some(&[4])).is_err());
    }

    #[test]
    fn bounds_for_reference_instances() {
        let g = build_interaction_graph(&cpf4_barenco_circuit::<f64>().circuit);
        let b = compression_bounds(&g, &p(&[&[0, 1], &[2, 3]])).unwrap();
        assert_eq!((b.lower, b.upper), (Ratio::new(1, 13), Ratio::new(7, 13)));

        let g = build_interaction_graph(&cluster_state_circuit::<f64>(2, 2).unwrap());
        let b = compression_bounds(&g, &p(&[&[0, 1], &[2, 3]])).unwrap();
        assert_eq!((b.lower, b.upper), (Ratio::new(1, 4), Ratio::new(2, 4)));

        let g = build_interaction_graph(&cluster_state_circuit::<f64>(3, 3).unwrap());
        let b = compression_bounds(&g, &p(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 8]])).unwrap();
        assert_eq!((b.lower, b.upper), (Ratio::new(2, 12), Ratio::new(6, 12)));
    }

    #[test]
    fn bounds_on_empty_graph_are_degenerate() {
        let g = WeightedGraph::new(4);
        assert_eq!(compression_bounds(&g, &p(&[&[0, 1], &[2, 3]])), Err(Error::Degenerate));
    }

    #[test]
    fn embedded_identity_is_identity() {
        let id = Matrix::<f64>::identity(4);
        assert_eq!(embed_two_qubit_gate(&id, 1, 2, 0, 3).unwrap(), Matrix::identity(32));
    }

    #[test]
    fn embedded_cnot_has_schmidt_rank_two() {
        let cnot = Gate::<f64>::cnot(0, 1).unitary(&[2, 2]).unwrap();
        let m = embed_two_qubit_gate(&cnot, 1, 2, 0, 2).unwrap();
        assert_eq!(operator_schmidt_rank(&m, (4, 4), 1e-9).unwrap(), 2);
    }

    #[test]
    fn padding_leaves_auxiliary_levels_alone() {
        let x = Gate::<f64>::new(crate::circuit::GateKind::X, vec![0]).unitary(&[2]).unwrap();
        let m = pad_levels(&x, &[2], &[3]);
        assert_eq!(m[(1, 0)], Complex::new(1.0, 0.0));
        assert_eq!(m[(2, 2)], Complex::new(1.0, 0.0));
        assert!(m.is_unitary(1e-12));
    }

    #[test]
    fn compress_cpf4_counts_and_equivalence() {
        let c = cpf4_barenco_circuit::<f64>().circuit;
        let e = make_encoding(&p(&[&[0, 1], &[2, 3]]), None).unwrap();
        let q = compress(&c, &e).unwrap();
        let s = q.stats();
        assert_eq!((s.n_nonlocal, s.n_local), (7, 6));
        let eq = verify_equivalence(&circuit_unitary(&c).unwrap(), &circuit_unitary(&q).unwrap(), &e, 1e-9).unwrap();
        assert!(eq.equal, "residual {}", eq.residual);
    }

    #[test]
    fn compress_with_auxiliary_levels() {
        let c = cpf4_barenco_circuit::<f64>().circuit;
        let e = make_encoding(&p(&[&[0, 1], &[2, 3]]), Some(&[5, 5])).unwrap();
        let q = compress(&c, &e).unwrap();
        assert_eq!(q.dims(), vec![5, 5]);
        let eq = verify_equivalence(&circuit_unitary(&c).unwrap(), &circuit_unitary(&q).unwrap(), &e, 1e-9).unwrap();
        assert!(eq.equal);
    }

    #[test]
    fn local_only_circuit_stays_local() {
        let c = Circuit::<f64>::from_parts(&[2; 4], (0..4).map(Gate::h).collect()).unwrap();
        let e = make_encoding(&p(&[&[0, 1], &[2, 3]]), None).unwrap();
        assert_eq!(compress(&c, &e).unwrap().stats().n_nonlocal, 0);
    }

    #[test]
    fn compress_rejects_mismatched_encoding() {
        let c = Circuit::<f64>::qubits(6);
        let e = make_encoding(&p(&[&[0, 1], &[2, 3]]), None).unwrap();
        assert!(compress(&c, &e).is_err());
        let qudits = Circuit::<f64>::new(&[4, 4]).unwrap();
        assert!(compress(&qudits, &e).is_err());
    }
}

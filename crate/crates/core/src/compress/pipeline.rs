use serde::Serialize;

use super::{compress, compression_bounds, make_encoding, merge_pass, Bounds, Encoding, MergeOptions};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::graph::{build_interaction_graph, contract_graph, GraphDoc};
use crate::partition::{exact_is_feasible, min_cut_exact, min_cut_heuristic, Optimality, Partition};
use crate::scalar::Real;
use crate::simulator::{circuit_unitary, operator_schmidt_rank, verify_equivalence, SIM_DIM_CAP};

/// Largest two-qudit gate dimension for which the report lists operator
/// Schmidt ranks.
const SCHMIDT_RANK_MAX_DIM: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PartitionStrategy {
    /// Exact enumeration when within the cap, heuristic otherwise.
    #[default]
    Auto,
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOptions {
    pub k: usize,
    pub merge: bool,
    pub absorb_local: bool,
    pub strategy: PartitionStrategy,
    pub seed: u64,
    /// Equivalence tolerance for verification.
    pub tol: f64,
    /// Qudit dimension override, one entry per group.
    pub dims: Option<Vec<usize>>,
    /// Build and rewrite the circuit; when false only the graph analysis runs.
    pub rewrite: bool,
}

impl PipelineOptions {
    pub fn new(k: usize) -> Self {
        PipelineOptions {
            k,
            merge: false,
            absorb_local: false,
            strategy: PartitionStrategy::Auto,
            seed: 0,
            tol: 1e-9,
            dims: None,
            rewrite: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OriginalSummary {
    pub wires: usize,
    pub nonlocal: u64,
    pub graph: GraphDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutSummary {
    pub weight: u64,
    pub internal: u64,
    pub optimality: Optimality,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TildeSummary {
    pub l0: u64,
    pub l1: u64,
    pub dropped: u64,
    pub graph: GraphDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationSummary {
    pub max_residual: Option<f64>,
    pub checked: bool,
    pub tol: f64,
}

/// A two-qudit gate of the output circuit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateSummary {
    pub index: usize,
    pub wires: [usize; 2],
    /// Operator Schmidt rank across the two qudits, when small enough to compute.
    pub schmidt_rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompressionReport {
    pub original: OriginalSummary,
    pub k: usize,
    pub partition: Partition,
    pub cut: CutSummary,
    pub tilde: TildeSummary,
    pub bounds: Option<Bounds>,
    pub degenerate: bool,
    pub qudit_dims: Vec<usize>,
    pub compressed_nonlocal: Option<u64>,
    pub merged_nonlocal: Option<u64>,
    pub nonlocal_gates: Option<Vec<GateSummary>>,
    pub verification: VerificationSummary,
    pub notes: Vec<String>,
}

impl CompressionReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput<T: Real> {
    pub report: CompressionReport,
    pub encoding: Encoding,
    /// The rewritten circuit (merged when requested); `None` for analysis only.
    pub circuit: Option<Circuit<T>>,
}

/// Graph, partition, bounds, rewrite, optional merge and verification.
pub fn full_pipeline<T: Real>(c: &Circuit<T>, opts: &PipelineOptions) -> Result<PipelineOutput<T>> {
    if !c.is_all_qubit() {
        return Err(Error::InvalidArgument("the pipeline expects a circuit of qubit wires".into()));
    }
    let mut notes = Vec::new();
    let graph = build_interaction_graph(c);
    let n = graph.n_vertices();
    let use_exact = match opts.strategy {
        PartitionStrategy::Exact => true,
        PartitionStrategy::Heuristic => false,
        PartitionStrategy::Auto => exact_is_feasible(n, opts.k)?,
    };
    let cut = if use_exact {
        notes.push("partition: exact enumeration".to_string());
        min_cut_exact(&graph, opts.k)?
    } else {
        notes.push(format!("partition: swap local search, seed {}", opts.seed));
        min_cut_heuristic(&graph, opts.k, opts.seed)?
    };
    let contracted = contract_graph(&graph, &cut.partition)?;
    let bounds = match compression_bounds(&graph, &cut.partition) {
        Ok(b) => Some(b),
        Err(Error::Degenerate) => {
            notes.push("no non-local gates: compression bounds undefined".to_string());
            None
        }
        Err(e) => return Err(e),
    };
    let encoding = make_encoding(&cut.partition, opts.dims.as_deref())?;
    if opts.dims.is_some() {
        notes.push("auxiliary qudit levels are left idle".to_string());
    }

    let mut report = CompressionReport {
        original: OriginalSummary { wires: n, nonlocal: graph.total_weight(), graph: graph.to_doc() },
        k: opts.k,
        partition: cut.partition.clone(),
        cut: CutSummary { weight: cut.cut_weight, internal: cut.internal_weight, optimality: cut.optimality },
        tilde: TildeSummary {
            l0: contracted.l0(),
            l1: contracted.l1(),
            dropped: contracted.dropped_weight,
            graph: contracted.graph.to_doc(),
        },
        bounds,
        degenerate: bounds.is_none(),
        qudit_dims: encoding.qudit_dims().to_vec(),
        compressed_nonlocal: None,
        merged_nonlocal: None,
        nonlocal_gates: None,
        verification: VerificationSummary { max_residual: None, checked: false, tol: opts.tol },
        notes,
    };
    if !opts.rewrite {
        return Ok(PipelineOutput { report, encoding, circuit: None });
    }

    let compressed = compress(c, &encoding)?;
    report.compressed_nonlocal = Some(compressed.stats().n_nonlocal as u64);
    let merged = if opts.merge {
        let m = merge_pass(&compressed, &MergeOptions { absorb_local: opts.absorb_local })?;
        report.merged_nonlocal = Some(m.stats().n_nonlocal as u64);
        Some(m)
    } else {
        None
    };
    let output = merged.clone().unwrap_or_else(|| compressed.clone());
    report.nonlocal_gates = Some(two_qudit_summaries(&output)?);
    report
        .notes
        .push("schmidt_rank: operator Schmidt rank of each two-qudit gate across its qudit pair".to_string());

    let qudit_dim = encoding.total_dim();
    if c.total_dim() <= SIM_DIM_CAP && qudit_dim.is_some_and(|d| d <= SIM_DIM_CAP) {
        let tol = T::from_f64(opts.tol).ok_or_else(|| Error::InvalidArgument("tolerance".into()))?;
        let reference = circuit_unitary(c)?;
        let mut worst = T::zero();
        for candidate in std::iter::once(&compressed).chain(merged.as_ref()) {
            let eq = verify_equivalence(&reference, &circuit_unitary(candidate)?, &encoding, tol)?;
            worst = worst.max(eq.residual);
        }
        report.verification.max_residual = worst.to_f64();
        report.verification.checked = true;
    } else {
        report
            .notes
            .push(format!("verification skipped: register dimension exceeds {SIM_DIM_CAP}"));
    }
    Ok(PipelineOutput { report, encoding, circuit: Some(output) })
}

fn two_qudit_summaries<T: Real>(c: &Circuit<T>) -> Result<Vec<GateSummary>> {
    let dims = c.dims();
    let tol = T::from_f64(1e-9).expect("representable");
    c.gates()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.is_nonlocal())
        .map(|(index, g)| {
            let (da, db) = (dims[g.wires[0]], dims[g.wires[1]]);
            let schmidt_rank = if da * db <= SCHMIDT_RANK_MAX_DIM {
                Some(operator_schmidt_rank(&c.gate_unitary(index)?, (da, db), tol)?)
            } else {
                None
            };
            Ok(GateSummary { index, wires: [g.wires[0], g.wires[1]], schmidt_rank })
        })
        .collect()
}

impl PipelineOutput<f64> {
    pub fn passed_verification(&self) -> bool {
        self.report.verification.max_residual.is_none_or(|r| r < self.report.verification.tol)
    }
}

//! Weighted interaction graphs.
//!
//! One vertex per wire; the weight of an edge counts the two-wire gates
//! between its endpoints. Gate order is not represented.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedGraph {
    n_vertices: usize,
    edges: BTreeMap<(usize, usize), u64>,
}

impl WeightedGraph {
    pub fn new(n_vertices: usize) -> Self {
        WeightedGraph { n_vertices, edges: BTreeMap::new() }
    }

    /// Adds `w` to the weight of edge `{u, v}`.
    pub fn add_weight(&mut self, u: usize, v: usize, w: u64) -> Result<()> {
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop on vertex {u}")));
        }
        if u >= self.n_vertices || v >= self.n_vertices {
            return Err(Error::InvalidArgument(format!("edge ({u}, {v}) outside {} vertices", self.n_vertices)));
        }
        if w > 0 {
            *self.edges.entry((u.min(v), u.max(v))).or_insert(0) += w;
        }
        Ok(())
    }

    pub fn from_edges(n_vertices: usize, edges: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Self> {
        let mut g = Self::new(n_vertices);
        for (u, v, w) in edges {
            g.add_weight(u, v, w)?;
        }
        Ok(g)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Edges as `((low, high), weight)` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.edges.iter().map(|(&e, &w)| (e, w))
    }

    pub fn weight(&self, u: usize, v: usize) -> u64 {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// `‖w‖₁`.
    pub fn total_weight(&self) -> u64 {
        self.edges.values().sum()
    }

    /// Dense symmetric weight matrix.
    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let mut a = vec![vec![0; self.n_vertices]; self.n_vertices];
        for (&(u, v), &w) in &self.edges {
            a[u][v] = w;
            a[v][u] = w;
        }
        a
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            n: self.n_vertices,
            edges: self.edges().map(|((u, v), w)| EdgeDoc { u, v, w }).collect(),
        }
    }
}

/// Serialized graph: `{"n": .., "edges": [{"u": .., "v": .., "w": ..}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub u: usize,
    pub v: usize,
    pub w: u64,
}

/// Graph after merging each partition group into one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractedGraph {
    pub graph: WeightedGraph,
    /// Weight of edges that fell inside a group.
    pub dropped_weight: u64,
}

impl ContractedGraph {
    pub fn n_qudits(&self) -> usize {
        self.graph.n_vertices()
    }

    /// `‖w̃‖₀`: number of qudit pairs still joined by a gate.
    pub fn l0(&self) -> u64 {
        self.graph.n_edges() as u64
    }

    /// `‖w̃‖₁`: gates still crossing between qudits.
    pub fn l1(&self) -> u64 {
        self.graph.total_weight()
    }
}

pub fn build_interaction_graph<T: Real>(c: &Circuit<T>) -> WeightedGraph {
    let mut g = WeightedGraph::new(c.n_wires());
    for gate in c.gates().iter().filter(|g| g.is_nonlocal()) {
        g.add_weight(gate.wires[0], gate.wires[1], 1).expect("validated circuit wires");
    }
    g
}

pub fn contract_graph(g: &WeightedGraph, p: &Partition) -> Result<ContractedGraph> {
    let group_of = p.group_index(g.n_vertices())?;
    let mut contracted = WeightedGraph::new(p.k());
    let mut dropped_weight = 0;
    for ((u, v), w) in g.edges() {
        let (gu, gv) = (group_of[u], group_of[v]);
        if gu == gv {
            dropped_weight += w;
        } else {
            contracted.add_weight(gu, gv, w)?;
        }
    }
    Ok(ContractedGraph { graph: contracted, dropped_weight })
}

//! Commutation-aware fusion of two-qudit gates.
//!
//! Two gates commute here only if their wire supports are disjoint or both
//! matrices are diagonal. A two-qudit gate is moved toward the next gate on
//! the same qudit pair across commuting gates; a single-qudit gate in the way
//! on one of the pair's wires is multiplied into the moving gate, but only
//! when the move then completes. All rewrites are exact matrix products.

use crate::circuit::{Circuit, Gate};
use crate::error::Result;
use crate::scalar::Real;
use crate::simulator::{swap_factors, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MergeOptions {
    /// Also fold every single-qudit gate into an adjacent two-qudit gate on
    /// the same wire, whether or not this enables a merge.
    pub absorb_local: bool,
}

#[derive(Debug, Clone)]
struct Op<T: Real> {
    wires: Vec<usize>,
    matrix: Matrix<T>,
    diagonal: bool,
    /// The source gate while the op is unmodified.
    origin: Option<Gate<T>>,
}

impl<T: Real> Op<T> {
    fn rewritten(wires: Vec<usize>, matrix: Matrix<T>) -> Self {
        Op { diagonal: matrix.is_diagonal(), wires, matrix, origin: None }
    }

    fn disjoint(&self, wires: &[usize]) -> bool {
        self.wires.iter().all(|w| !wires.contains(w))
    }

    fn same_pair(&self, other: &Op<T>) -> bool {
        self.wires.len() == 2
            && other.wires.len() == 2
            && (self.wires == other.wires || (self.wires[0] == other.wires[1] && self.wires[1] == other.wires[0]))
    }
}

/// Matrix of `op` on the ordered pair `(a, b)`.
fn on_pair<T: Real>(op: &Op<T>, a: usize, b: usize, dims: &[usize]) -> Matrix<T> {
    match op.wires[..] {
        [w] if w == a => op.matrix.kron(&Matrix::identity(dims[b])),
        [w] if w == b => Matrix::identity(dims[a]).kron(&op.matrix),
        [x, y] if x == a && y == b => op.matrix.clone(),
        [x, y] if x == b && y == a => swap_factors(&op.matrix, dims[b], dims[a]),
        _ => unreachable!("op does not act within the pair"),
    }
}

pub fn merge_pass<T: Real>(c: &Circuit<T>, opts: &MergeOptions) -> Result<Circuit<T>> {
    let dims = c.dims();
    let mut ops: Vec<Option<Op<T>>> = (0..c.gates().len())
        .map(|i| {
            let g = &c.gates()[i];
            let matrix = c.gate_unitary(i)?;
            Ok(Some(Op { wires: g.wires.clone(), diagonal: matrix.is_diagonal(), matrix, origin: Some(g.clone()) }))
        })
        .collect::<Result<_>>()?;

    loop {
        let mut changed = merge_to_fixpoint(&mut ops, &dims)?;
        if opts.absorb_local {
            changed |= absorb_locals(&mut ops, &dims)?;
        }
        if !changed {
            break;
        }
    }

    let mut out = Circuit::new(&dims)?;
    out.metadata = c.metadata.clone();
    for op in ops.into_iter().flatten() {
        out.push(op.origin.unwrap_or_else(|| Gate::custom(op.wires, op.matrix)))?;
    }
    Ok(out)
}

fn merge_to_fixpoint<T: Real>(ops: &mut [Option<Op<T>>], dims: &[usize]) -> Result<bool> {
    let mut changed = false;
    'scan: loop {
        for i in 0..ops.len() {
            let Some(g) = &ops[i] else { continue };
            if g.wires.len() != 2 {
                continue;
            }
            let next = (i + 1..ops.len()).find(|&j| ops[j].as_ref().is_some_and(|h| h.same_pair(g)));
            if let Some(j) = next {
                if sweep_forward(ops, i, j, dims)? || sweep_backward(ops, i, j, dims)? {
                    changed = true;
                    continue 'scan;
                }
            }
        }
        return Ok(changed);
    }
}

/// Carries gate `i` forward onto gate `j` (same pair).
fn sweep_forward<T: Real>(ops: &mut [Option<Op<T>>], i: usize, j: usize, dims: &[usize]) -> Result<bool> {
    let g = ops[i].as_ref().expect("live op");
    let (a, b) = (g.wires[0], g.wires[1]);
    let mut cur = g.matrix.clone();
    let mut cur_diag = g.diagonal;
    let mut absorbed = Vec::new();
    for m in i + 1..j {
        let Some(op) = &ops[m] else { continue };
        if op.disjoint(&[a, b]) || (cur_diag && op.diagonal) {
            continue;
        }
        if op.wires.len() == 1 {
            cur = on_pair(op, a, b, dims).mul(&cur)?;
            cur_diag = cur.is_diagonal();
            absorbed.push(m);
            continue;
        }
        return Ok(false);
    }
    let h = ops[j].as_ref().expect("live op");
    let merged = on_pair(h, a, b, dims).mul(&cur)?;
    ops[j] = Some(Op::rewritten(vec![a, b], merged));
    ops[i] = None;
    for m in absorbed {
        ops[m] = None;
    }
    Ok(true)
}

/// Carries gate `j` backward onto gate `i` (same pair).
fn sweep_backward<T: Real>(ops: &mut [Option<Op<T>>], i: usize, j: usize, dims: &[usize]) -> Result<bool> {
    let g = ops[i].as_ref().expect("live op");
    let (a, b) = (g.wires[0], g.wires[1]);
    let h = ops[j].as_ref().expect("live op");
    let mut cur = on_pair(h, a, b, dims);
    let mut cur_diag = h.diagonal;
    let mut absorbed = Vec::new();
    for m in (i + 1..j).rev() {
        let Some(op) = &ops[m] else { continue };
        if op.disjoint(&[a, b]) || (cur_diag && op.diagonal) {
            continue;
        }
        if op.wires.len() == 1 {
            cur = cur.mul(&on_pair(op, a, b, dims))?;
            cur_diag = cur.is_diagonal();
            absorbed.push(m);
            continue;
        }
        return Ok(false);
    }
    let merged = cur.mul(&g.matrix)?;
    ops[i] = Some(Op::rewritten(vec![a, b], merged));
    ops[j] = None;
    for m in absorbed {
        ops[m] = None;
    }
    Ok(true)
}

/// Folds each single-qudit op into the nearest two-qudit op on its wire,
/// looking backward first. Ops in between do not touch the wire, so the
/// single-qudit op commutes past them.
fn absorb_locals<T: Real>(ops: &mut [Option<Op<T>>], dims: &[usize]) -> Result<bool> {
    let mut changed = false;
    for m in 0..ops.len() {
        let Some(op) = &ops[m] else { continue };
        if op.wires.len() != 1 {
            continue;
        }
        let w = op.wires[0];
        let touches = |o: &Option<Op<T>>| o.as_ref().is_some_and(|o| o.wires.contains(&w));
        let prev = (0..m).rev().find(|&p| touches(&ops[p]));
        let next = (m + 1..ops.len()).find(|&q| touches(&ops[q]));
        let target = match (prev, next) {
            (Some(p), _) if ops[p].as_ref().unwrap().wires.len() == 2 => Some((p, true)),
            (_, Some(q)) if ops[q].as_ref().unwrap().wires.len() == 2 => Some((q, false)),
            _ => None,
        };
        let Some((t, after)) = target else { continue };
        let local = ops[m].take().expect("live op");
        let two = ops[t].as_ref().expect("live op");
        let (a, b) = (two.wires[0], two.wires[1]);
        let lifted = on_pair(&local, a, b, dims);
        let matrix = if after { lifted.mul(&two.matrix)? } else { two.matrix.mul(&lifted)? };
        ops[t] = Some(Op::rewritten(vec![a, b], matrix));
        changed = true;
    }
    Ok(changed)
}

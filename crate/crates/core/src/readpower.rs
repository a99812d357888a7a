//! Reading powers of a cyclically reduced loop in a folded A-graph: a
//! breadth-first search over (vertex, residue) states that pushes canonical
//! adjustments forward and returns the least exponent that can be read.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::adjust::{apply_sequence, canonical_adjustments, right_adjustment, AdjustmentSequence};
use crate::agraph::{BPath, FoldedGraph};
use crate::error::{Error, Guard, Result};
use crate::gog::APath;
use crate::group::Elem;

/// One explored search-tree node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRow {
    pub depth: usize,
    pub vertex: usize,
    pub residue: usize,
    /// Label `(f, c)` of the tree edge into the node; none at the root.
    pub label: Option<(usize, i64)>,
}

/// A successful reading: `mu(path)` equals `prefix^-1 p^m`.
#[derive(Clone, Debug)]
pub struct PowerReading {
    pub path: BPath,
    pub m: u64,
    pub sigma: AdjustmentSequence,
}

struct Node {
    vertex: usize,
    residue: usize,
    depth: usize,
    parent: Option<usize>,
    label: Option<(usize, i64)>,
}

/// Least `m > 0` and a B-path `q` from `from` to `to` with
/// `mu(q) = prefix^-1 p^m`, or `None` if no power of `p` can be read.
pub fn read_power(
    b: &FoldedGraph,
    p: &APath,
    from: usize,
    to: usize,
    prefix: Option<&Elem>,
) -> Result<Option<PowerReading>> {
    read_power_inner(b, p, from, to, prefix, None)
}

/// As [`read_power`], recording every explored node.
pub fn read_power_traced(
    b: &FoldedGraph,
    p: &APath,
    from: usize,
    to: usize,
    prefix: Option<&Elem>,
    trace: &mut Vec<TraceRow>,
) -> Result<Option<PowerReading>> {
    read_power_inner(b, p, from, to, prefix, Some(trace))
}

/// `prefix^-1 p^m` written out as a path.
pub fn expanded_power(b: &FoldedGraph, p: &APath, m: u64, prefix: Option<&Elem>) -> Result<APath> {
    let a = b.ambient();
    let pm = a.power_path(p, m as i64)?;
    match prefix {
        None => Ok(pm),
        Some(y) => {
            let g = a.vertex_group(p.start());
            a.concat(&APath::vertex(p.start(), g.inv(y)), &pm)
        }
    }
}

fn read_power_inner(
    b: &FoldedGraph,
    p: &APath,
    from: usize,
    to: usize,
    prefix: Option<&Elem>,
    mut trace: Option<&mut Vec<TraceRow>>,
) -> Result<Option<PowerReading>> {
    let a = b.ambient();
    if !p.is_loop() {
        return Err(Error::InvalidPath("power reading needs a loop".into()));
    }
    if b.vertex_type(from) != p.start() || b.vertex_type(to) != p.end() {
        return Ok(None);
    }
    let g0 = a.vertex_group(p.start());
    let n = p.len();
    if n == 0 {
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceRow { depth: 0, vertex: from, residue: 0, label: None });
        }
        if from != to {
            return Ok(None);
        }
        let h = b.subgroup(from);
        let p0 = &p.elems()[0];
        if g0.is_identity(p0)? {
            return Err(Error::TrivialElement("power reading base"));
        }
        let y = prefix.cloned().unwrap_or_else(|| g0.identity());
        let Some(any) = h.power_coset_any(&y, p0)? else { return Ok(None) };
        let k = h.cyclic_intersection(p0)? as i64;
        let m = if k == 0 {
            if any <= 0 {
                return Ok(None);
            }
            any
        } else {
            (any - 1).rem_euclid(k) + 1
        };
        let y_inv = g0.inv(&y);
        let q0 = g0.mul(&y_inv, &g0.pow(p0, m)?)?;
        let path = BPath { start: from, end: to, elems: alloc::vec![q0], edges: Vec::new() };
        return Ok(Some(PowerReading { path, m: m as u64, sigma: AdjustmentSequence::default() }));
    }
    if !a.is_cyclically_reduced(p)? || !a.is_reduced(p)? {
        return Err(Error::InvalidPath("power reading needs a cyclically reduced loop".into()));
    }
    let limit = a.limits().nodes;
    let hat = |i: usize| -> Result<Elem> {
        if i == 0 {
            g0.mul(&p.elems()[n], &p.elems()[0])
        } else {
            Ok(p.elems()[i].clone())
        }
    };
    let p_last = &p.elems()[n];
    let mut nodes = alloc::vec![Node { vertex: from, residue: 0, depth: 0, parent: None, label: None }];
    let mut seen: BTreeSet<(usize, i64, usize)> = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(tau) = queue.pop_front() {
        let (u, i, d) = (nodes[tau].vertex, nodes[tau].residue, nodes[tau].depth);
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceRow { depth: d, vertex: u, residue: i, label: nodes[tau].label });
        }
        let elem_a = match (nodes[tau].parent, nodes[tau].label) {
            (None, _) => match prefix {
                Some(y) => g0.mul(&g0.inv(y), &p.elems()[0])?,
                None => p.elems()[0].clone(),
            },
            (Some(_), Some((f, c))) => {
                let gu = b.vertex_group(u);
                gu.mul(&right_adjustment(b, f, c)?, &hat(i)?)?
            }
            (Some(_), None) => unreachable!("non-root node without a label"),
        };
        let e = p.edges()[i];
        for &f in b.out_edges(u) {
            if b.edge_type(f) != e {
                continue;
            }
            for c in canonical_adjustments(b, f, &elem_a)? {
                let t = b.terminus(f);
                if i == n - 1 && t == to {
                    let gt = b.vertex_group(t);
                    let last = gt.mul(&right_adjustment(b, f, c)?, p_last)?;
                    if b.subgroup(t).contains(&last)? {
                        let m = ((d + 1) / n) as u64;
                        let mut sigma = AdjustmentSequence::default();
                        let mut cur = tau;
                        while let Some((pf, pc)) = nodes[cur].label {
                            sigma.edges.push(pf);
                            sigma.exps.push(pc);
                            cur = nodes[cur].parent.unwrap();
                        }
                        sigma.edges.reverse();
                        sigma.exps.reverse();
                        sigma.edges.push(f);
                        sigma.exps.push(c);
                        let expanded = expanded_power(b, p, m, prefix)?;
                        let path = apply_sequence(b, &expanded, from, &sigma)?;
                        return Ok(Some(PowerReading { path, m, sigma }));
                    }
                }
                let key = (f, c, (i + 1) % n);
                if seen.insert(key) {
                    if nodes.len() as u64 >= limit {
                        return Err(Error::GuardExceeded { guard: Guard::Nodes, limit });
                    }
                    nodes.push(Node {
                        vertex: t,
                        residue: (i + 1) % n,
                        depth: d + 1,
                        parent: Some(tau),
                        label: Some((f, c)),
                    });
                    queue.push_back(nodes.len() - 1);
                }
            }
        }
    }
    Ok(None)
}

//! Left/right adjustments, canonical adjustment sets and semi-canonical
//! B-paths `Q(sigma)`.
//!
//! Adjustments are integer exponents of the edge group generator `c`:
//! `l_c = alpha_e(c^c) f_alpha^-1` and `r_c = f_omega^-1 omega_e(c^-c)`.

use alloc::format;
use alloc::vec::Vec;

use crate::agraph::{BPath, FoldedGraph};
use crate::error::{Error, Result};
use crate::gog::APath;
use crate::group::Elem;

pub fn left_adjustment(b: &FoldedGraph, f: usize, c: i64) -> Result<Elem> {
    let a = b.ambient();
    let g = b.vertex_group(b.origin(f));
    g.mul(&a.alpha_pow(b.edge_type(f), c)?, &g.inv(b.label_alpha(f)))
}

pub fn right_adjustment(b: &FoldedGraph, f: usize, c: i64) -> Result<Elem> {
    let a = b.ambient();
    let g = b.vertex_group(b.terminus(f));
    g.mul(&g.inv(b.label_omega(f)), &a.omega_pow(b.edge_type(f), -c)?)
}

/// `C(f, a)`: the exponents `c` with `a l_c ∈ B_{o(f)}`, one per coset of
/// `B_f`. When `B_f = <c^k>` the representatives are `0..k`; when `B_f` is
/// trivial there is at most one solution.
pub fn canonical_adjustments(b: &FoldedGraph, f: usize, a: &Elem) -> Result<Vec<i64>> {
    let amb = b.ambient();
    let u = b.origin(f);
    let g = b.vertex_group(u);
    let h = b.subgroup(u);
    // a l_c = (a alpha a^-1)^c a f_alpha^-1, so a l_c ∈ H iff conj^-c ∈ x H.
    let x = g.mul(a, &g.inv(b.label_alpha(f)))?;
    let conj = g.mul(&g.mul(a, amb.alpha(b.edge_type(f)))?, &g.inv(a))?;
    let Some(m) = h.power_coset_any(&x, &conj)? else { return Ok(Vec::new()) };
    let k = b.edge_group(f);
    if k == 0 {
        return Ok(alloc::vec![-m]);
    }
    let mut out = Vec::new();
    for c in 0..k as i64 {
        if h.contains(&g.mul(a, &left_adjustment(b, f, c)?)?)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// An edge path with one adjustment exponent per edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AdjustmentSequence {
    pub edges: Vec<usize>,
    pub exps: Vec<i64>,
}

/// `Q(sigma) = <p0 l_c1, f1, r_c1 p1 l_c2, f2, ..., fn, r_cn pn>` starting at
/// `from`. Checks that every vertex element lands in its vertex subgroup.
pub fn apply_sequence(b: &FoldedGraph, p: &APath, from: usize, s: &AdjustmentSequence) -> Result<BPath> {
    let n = p.len();
    if s.edges.len() != n || s.exps.len() != n {
        return Err(Error::InvalidSequence(format!("expected {n} adjustments, got {}", s.exps.len())));
    }
    if b.vertex_type(from) != p.start() {
        return Err(Error::InvalidSequence("start vertex has the wrong type".into()));
    }
    let mut elems = Vec::with_capacity(n + 1);
    let mut u = from;
    let mut a = p.elems()[0].clone();
    for i in 0..n {
        let f = s.edges[i];
        if b.origin(f) != u || b.edge_type(f) != p.edges()[i] {
            return Err(Error::InvalidSequence(format!("edge {f} does not follow the path at step {i}")));
        }
        let g = b.vertex_group(u);
        let q = g.mul(&a, &left_adjustment(b, f, s.exps[i])?)?;
        if !b.subgroup(u).contains(&q)? {
            return Err(Error::InvalidSequence(format!("adjustment {} at step {i} leaves B_{u}", s.exps[i])));
        }
        elems.push(q);
        u = b.terminus(f);
        let g = b.vertex_group(u);
        a = g.mul(&right_adjustment(b, f, s.exps[i])?, &p.elems()[i + 1])?;
    }
    if !b.subgroup(u).contains(&a)? {
        return Err(Error::InvalidSequence(format!("final element leaves B_{u}")));
    }
    elems.push(a);
    Ok(BPath { start: from, end: u, elems, edges: s.edges.clone() })
}

struct Search<'a> {
    b: &'a FoldedGraph,
    p: &'a APath,
    to: usize,
    first_only: bool,
    found: Vec<AdjustmentSequence>,
    stack: AdjustmentSequence,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.first_only && !self.found.is_empty()
    }

    fn dfs(&mut self, i: usize, u: usize, a: Elem) -> Result<()> {
        let p = self.p;
        if i == p.len() {
            if u == self.to && self.b.subgroup(u).contains(&a)? {
                self.found.push(self.stack.clone());
            }
            return Ok(());
        }
        let e = p.edges()[i];
        for &f in self.b.out_edges(u) {
            if self.b.edge_type(f) != e {
                continue;
            }
            for c in canonical_adjustments(self.b, f, &a)? {
                let t = self.b.terminus(f);
                let next = self.b.vertex_group(t).mul(&right_adjustment(self.b, f, c)?, &p.elems()[i + 1])?;
                self.stack.edges.push(f);
                self.stack.exps.push(c);
                self.dfs(i + 1, t, next)?;
                self.stack.edges.pop();
                self.stack.exps.pop();
                if self.done() {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

fn search(b: &FoldedGraph, p: &APath, from: usize, to: usize, first_only: bool) -> Result<Vec<BPath>> {
    if b.vertex_type(from) != p.start() || b.vertex_type(to) != p.end() {
        return Ok(Vec::new());
    }
    let mut s = Search { b, p, to, first_only, found: Vec::new(), stack: AdjustmentSequence::default() };
    s.dfs(0, from, p.elems()[0].clone())?;
    s.found.iter().map(|sigma| apply_sequence(b, p, from, sigma)).collect()
}

/// All semi-canonical B-paths from `from` to `to` for the representative `p`.
/// Empty exactly when no B-path reads `p`.
pub fn enumerate_semi_canonical(b: &FoldedGraph, p: &APath, from: usize, to: usize) -> Result<Vec<BPath>> {
    search(b, p, from, to, false)
}

/// The first semi-canonical B-path in depth-first order, if any.
pub fn first_semi_canonical(b: &FoldedGraph, p: &APath, from: usize, to: usize) -> Result<Option<BPath>> {
    Ok(search(b, p, from, to, true)?.into_iter().next())
}

//! A-graphs: graphs over a graph of groups with vertex subgroups and edge
//! labels `(f_alpha, [f], f_omega)`, the folding engine that brings them into
//! folded form, and the folded graphs used by every reading algorithm.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::adjust;
use crate::error::{Error, Guard, Result};
use crate::gog::{APath, GraphOfGroups};
use crate::group::{Elem, Group, Subgroup};

#[derive(Clone, Debug)]
struct BVertex {
    ty: usize,
    gens: Vec<Elem>,
    alive: bool,
    handle: Option<Arc<Subgroup>>,
}

#[derive(Clone, Debug)]
struct BEdge {
    origin: usize,
    terminus: usize,
    ty: usize,
    alpha: Elem,
    omega: Elem,
    alive: bool,
}

/// A graph over `A`. Edges are stored in pairs `f`, `f ^ 1` with
/// `(f^-1)_alpha = (f_omega)^-1`.
#[derive(Clone, Debug)]
pub struct AGraph {
    ambient: Arc<GraphOfGroups>,
    verts: Vec<BVertex>,
    edges: Vec<BEdge>,
    u0: usize,
    ux: Option<usize>,
}

/// A path `<q0, f1, q1, ..., fn, qn>` in an A-graph; `qi` lies in the vertex
/// group of `A` at the type of the i-th vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BPath {
    pub start: usize,
    pub end: usize,
    pub elems: Vec<Elem>,
    pub edges: Vec<usize>,
}

impl BPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Why an A-graph is not folded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoldWitness {
    /// Distinct edges `g1`, `g2` leaving `vertex` with the same type `e` and
    /// `g1_alpha alpha_e(c^n) g2_alpha^-1` in the vertex subgroup.
    Merge { vertex: usize, g1: usize, g2: usize, n: i64 },
    /// The two induced subgroups of the edge group of `edge` differ:
    /// `<c^origin_k>` on the origin side and `<c^terminus_k>` on the other.
    EdgeGroups { edge: usize, origin_k: u64, terminus_k: u64 },
}

/// Result of folding a graph carrying the coset vertex `u_x`.
#[derive(Clone, Debug)]
pub enum CosetOutcome {
    /// A length-zero element `y` with `y H = x H`.
    Element(Elem),
    /// A folded graph whose paths from `u_x` to `u_0` represent `x H`.
    Graph(FoldedGraph),
}

enum Fold {
    Done,
    Intercepted(Elem),
}

impl AGraph {
    /// A single vertex of type `v` carrying the trivial group.
    pub fn new(ambient: Arc<GraphOfGroups>, v: usize) -> AGraph {
        let mut b = AGraph { ambient, verts: Vec::new(), edges: Vec::new(), u0: 0, ux: None };
        b.u0 = b.add_vertex(v, Vec::new());
        b
    }

    pub fn ambient(&self) -> &Arc<GraphOfGroups> {
        &self.ambient
    }

    pub fn base(&self) -> usize {
        self.u0
    }

    pub fn coset_vertex(&self) -> Option<usize> {
        self.ux
    }

    pub fn add_vertex(&mut self, ty: usize, gens: Vec<Elem>) -> usize {
        self.verts.push(BVertex { ty, gens, alive: true, handle: None });
        self.verts.len() - 1
    }

    /// Adds an edge `o -> t` of type `ty` labelled `(alpha, ty, omega)`.
    pub fn add_edge(&mut self, o: usize, t: usize, ty: usize, alpha: Elem, omega: Elem) -> Result<usize> {
        let a = &self.ambient;
        if a.origin(ty) != self.verts[o].ty || a.terminus(ty) != self.verts[t].ty {
            return Err(Error::InvalidPath(format!("edge of type e{ty} does not fit vertices {o}->{t}")));
        }
        let ga = a.vertex_group(a.origin(ty));
        let gw = a.vertex_group(a.terminus(ty));
        ga.check(&alpha)?;
        gw.check(&omega)?;
        let id = self.edges.len();
        let inv = (gw.inv(&omega), ga.inv(&alpha));
        self.edges.push(BEdge { origin: o, terminus: t, ty, alpha, omega, alive: true });
        self.edges.push(BEdge { origin: t, terminus: o, ty: ty ^ 1, alpha: inv.0, omega: inv.1, alive: true });
        Ok(id)
    }

    fn group(&self, u: usize) -> &Group {
        self.ambient.vertex_group(self.verts[u].ty)
    }

    fn set_label(&mut self, f: usize, alpha: Elem, omega: Elem) {
        let inv_a = self.group(self.edges[f].terminus).inv(&omega);
        let inv_w = self.group(self.edges[f].origin).inv(&alpha);
        self.edges[f].alpha = alpha;
        self.edges[f].omega = omega;
        self.edges[f ^ 1].alpha = inv_a;
        self.edges[f ^ 1].omega = inv_w;
    }

    fn out_edges(&self, u: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&f| self.edges[f].alive && self.edges[f].origin == u).collect()
    }

    fn handle(&mut self, u: usize) -> Result<Arc<Subgroup>> {
        if let Some(h) = &self.verts[u].handle {
            return Ok(h.clone());
        }
        let h = Arc::new(self.group(u).subgroup(&self.verts[u].gens)?);
        self.verts[u].handle = Some(h.clone());
        Ok(h)
    }

    fn add_gen(&mut self, u: usize, z: Elem) {
        self.verts[u].gens.push(z);
        self.verts[u].handle = None;
    }

    /// Exponents `(k1, k2)` of the subgroups of the edge group of `f` induced
    /// from its origin and terminus sides.
    fn edge_sides(&mut self, f: usize) -> Result<(u64, u64)> {
        let (o, t, e) = (self.edges[f].origin, self.edges[f].terminus, self.edges[f].ty);
        let a = self.ambient.clone();
        let (fa, fw) = (self.edges[f].alpha.clone(), self.edges[f].omega.clone());
        let go = a.vertex_group(a.origin(e));
        let gt = a.vertex_group(a.terminus(e));
        let co = go.mul(&go.mul(&fa, a.alpha(e))?, &go.inv(&fa))?;
        let ct = gt.mul(&gt.mul(&gt.inv(&fw), a.omega(e))?, &fw)?;
        let k1 = self.handle(o)?.cyclic_intersection(&co)?;
        let k2 = self.handle(t)?.cyclic_intersection(&ct)?;
        Ok((k1, k2))
    }

    fn violation_at(&mut self, u: usize) -> Result<Option<FoldWitness>> {
        let out = self.out_edges(u);
        let a = self.ambient.clone();
        let g = a.vertex_group(self.verts[u].ty);
        for (i, &g1) in out.iter().enumerate() {
            for &g2 in &out[i + 1..] {
                let e = self.edges[g1].ty;
                if self.edges[g2].ty != e {
                    continue;
                }
                let (a1, a2) = (self.edges[g1].alpha.clone(), self.edges[g2].alpha.clone());
                let x = g.mul(&a1, &g.inv(&a2))?;
                let conj = g.mul(&g.mul(&a1, a.alpha(e))?, &g.inv(&a1))?;
                if let Some(m) = self.handle(u)?.power_coset_any(&x, &conj)? {
                    return Ok(Some(FoldWitness::Merge { vertex: u, g1, g2, n: -m }));
                }
            }
        }
        for &f in &out {
            let (k1, k2) = self.edge_sides(f)?;
            if k1 != k2 {
                return Ok(Some(FoldWitness::EdgeGroups { edge: f, origin_k: k1, terminus_k: k2 }));
            }
        }
        Ok(None)
    }

    /// First violation of the folded conditions, scanning vertices in order.
    pub fn fold_witness(&mut self) -> Result<Option<FoldWitness>> {
        for u in 0..self.verts.len() {
            if self.verts[u].alive {
                if let Some(w) = self.violation_at(u)? {
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }

    pub fn is_folded(&mut self) -> Result<bool> {
        Ok(self.fold_witness()?.is_none())
    }

    /// Conjugates the vertex by `h`: `B_w -> h B_w h^-1`, outgoing labels
    /// `f_alpha -> h f_alpha`, incoming labels `f_omega -> f_omega h^-1`.
    fn a0(&mut self, w: usize, h: &Elem) -> Result<()> {
        let g = self.group(w).clone();
        let hi = g.inv(h);
        let gens = core::mem::take(&mut self.verts[w].gens);
        self.verts[w].gens = gens.iter().map(|x| g.mul(&g.mul(h, x)?, &hi)).collect::<Result<Vec<_>>>()?;
        self.verts[w].handle = None;
        for f in 0..self.edges.len() {
            if !self.edges[f].alive {
                continue;
            }
            if self.edges[f].origin == w {
                self.edges[f].alpha = g.mul(h, &self.edges[f].alpha)?;
            }
            if self.edges[f].terminus == w {
                self.edges[f].omega = g.mul(&self.edges[f].omega, &hi)?;
            }
        }
        Ok(())
    }

    fn merge_into(&mut self, gone: usize, keep: usize) {
        let gens = core::mem::take(&mut self.verts[gone].gens);
        self.verts[keep].gens.extend(gens);
        self.verts[keep].handle = None;
        self.verts[gone].alive = false;
        self.verts[gone].handle = None;
        for e in self.edges.iter_mut() {
            if e.origin == gone {
                e.origin = keep;
            }
            if e.terminus == gone {
                e.terminus = keep;
            }
        }
        if self.u0 == gone {
            self.u0 = keep;
        }
        if self.ux == Some(gone) {
            self.ux = Some(keep);
        }
    }

    fn is_special(&self, u: usize) -> bool {
        u == self.u0 || self.ux == Some(u)
    }

    /// Applies the move repairing `w`. Returns the vertices whose data changed.
    fn apply(&mut self, w: FoldWitness) -> Result<core::result::Result<Vec<usize>, Elem>> {
        let a = self.ambient.clone();
        match w {
            FoldWitness::EdgeGroups { edge: f, origin_k: k1, terminus_k: k2 } => {
                let e = self.edges[f].ty;
                let (o, t) = (self.edges[f].origin, self.edges[f].terminus);
                if k2 > 0 && (k1 == 0 || k2 % k1 != 0) {
                    let g = self.group(o).clone();
                    let fa = self.edges[f].alpha.clone();
                    let z = g.mul(&g.mul(&fa, &a.alpha_pow(e, k2 as i64)?)?, &g.inv(&fa))?;
                    self.add_gen(o, z);
                    return Ok(Ok(vec![o]));
                }
                let g = self.group(t).clone();
                let fw = self.edges[f].omega.clone();
                let z = g.mul(&g.mul(&g.inv(&fw), &a.omega_pow(e, k1 as i64)?)?, &fw)?;
                self.add_gen(t, z);
                Ok(Ok(vec![t]))
            }
            FoldWitness::Merge { vertex: u, g1, g2, n } => {
                let loop_at = |b: &AGraph, f: usize| b.edges[f].terminus == u;
                let (g1, g2, n) = if loop_at(self, g2) && !loop_at(self, g1) { (g2, g1, -n) } else { (g1, g2, n) };
                let e = self.edges[g1].ty;
                let (w1, w2) = (self.edges[g1].terminus, self.edges[g2].terminus);
                let gt = self.group(w1).clone();
                let omega2 = gt.mul(&a.omega_pow(e, n)?, &self.edges[g2].omega)?;
                let omega1 = self.edges[g1].omega.clone();
                if w1 != w2 && self.ux.is_some() && self.is_special(w1) && self.is_special(w2) {
                    let y = if Some(w1) == self.ux {
                        gt.mul(&gt.inv(&omega1), &omega2)?
                    } else {
                        gt.mul(&gt.inv(&omega2), &omega1)?
                    };
                    return Ok(Err(y));
                }
                self.set_label(g2, self.edges[g1].alpha.clone(), omega2.clone());
                if w1 == w2 {
                    let z = gt.mul(&gt.inv(&omega1), &omega2)?;
                    self.edges[g2].alive = false;
                    self.edges[g2 ^ 1].alive = false;
                    if !gt.is_identity(&z)? && !self.handle(w1)?.contains(&z)? {
                        self.add_gen(w1, z);
                    }
                    return Ok(Ok(vec![u, w1]));
                }
                // Conjugate one terminus so the two labels agree, then identify.
                let use_w1 = self.is_special(w2) && !self.is_special(w1) && !loop_at(self, g1);
                let (moved, keep, h) = if use_w1 {
                    (w1, w2, gt.mul(&gt.inv(&omega2), &omega1)?)
                } else {
                    (w2, w1, gt.mul(&gt.inv(&omega1), &omega2)?)
                };
                let restore = self.is_special(moved);
                self.a0(moved, &h)?;
                self.edges[g2].alive = false;
                self.edges[g2 ^ 1].alive = false;
                self.merge_into(moved, keep);
                if restore {
                    self.a0(keep, &gt.inv(&h))?;
                }
                Ok(Ok(vec![u, keep]))
            }
        }
    }

    fn fold_inner(&mut self) -> Result<Fold> {
        let limit = self.ambient.limits().moves;
        let mut dirty: BTreeSet<usize> = (0..self.verts.len()).filter(|&u| self.verts[u].alive).collect();
        let mut moves = 0u64;
        while let Some(&u) = dirty.first() {
            if !self.verts[u].alive {
                dirty.remove(&u);
                continue;
            }
            let Some(w) = self.violation_at(u)? else {
                dirty.remove(&u);
                continue;
            };
            moves += 1;
            if moves > limit {
                return Err(Error::GuardExceeded { guard: Guard::Moves, limit });
            }
            match self.apply(w)? {
                Ok(changed) => dirty.extend(changed),
                Err(y) => return Ok(Fold::Intercepted(y)),
            }
        }
        Ok(Fold::Done)
    }

    /// Folds the graph. Fails if the graph carries a coset vertex and the
    /// folding would identify it with the base vertex.
    pub fn fold(mut self) -> Result<FoldedGraph> {
        match self.fold_inner()? {
            Fold::Done => FoldedGraph::new(self),
            Fold::Intercepted(_) => {
                Err(Error::NotSupported("folding identified the coset vertex with the base vertex".into()))
            }
        }
    }

    fn fold_coset(mut self) -> Result<CosetOutcome> {
        match self.fold_inner()? {
            Fold::Done => Ok(CosetOutcome::Graph(FoldedGraph::new(self)?)),
            Fold::Intercepted(y) => Ok(CosetOutcome::Element(y)),
        }
    }

    /// Drops dead vertices and edges. The base vertex becomes 0 and the coset
    /// vertex 1; other vertices and all edges keep their relative order.
    /// Vertex generators of leaf groups are replaced by canonical ones.
    fn compact(self) -> Result<AGraph> {
        let mut order: Vec<usize> = vec![self.u0];
        order.extend(self.ux);
        order.extend((0..self.verts.len()).filter(|&u| self.verts[u].alive && u != self.u0 && Some(u) != self.ux));
        let mut index = vec![usize::MAX; self.verts.len()];
        for (i, &u) in order.iter().enumerate() {
            index[u] = i;
        }
        let mut verts = Vec::with_capacity(order.len());
        for &u in &order {
            let v = &self.verts[u];
            let g = self.ambient.vertex_group(v.ty);
            let gens = canonical_gens(g, &v.gens)?;
            verts.push(BVertex { ty: v.ty, gens, alive: true, handle: None });
        }
        let mut edges = Vec::new();
        for pair in self.edges.chunks(2) {
            if pair[0].alive {
                for e in pair {
                    let mut e = e.clone();
                    e.origin = index[e.origin];
                    e.terminus = index[e.terminus];
                    edges.push(e);
                }
            }
        }
        Ok(AGraph { ambient: self.ambient, verts, edges, u0: 0, ux: self.ux.map(|_| 1) })
    }
}

/// Canonical generators for leaf vertex groups (free basis, HNF rows);
/// fundamental group vertices keep their nontrivial generators.
fn canonical_gens(g: &Group, gens: &[Elem]) -> Result<Vec<Elem>> {
    match g.subgroup(gens)? {
        Subgroup::Free(a) => Ok(a.basis().into_iter().map(Elem::Word).collect()),
        Subgroup::Abelian(l) => Ok(l.basis().iter().cloned().map(Elem::Ab).collect()),
        Subgroup::Pi1(_) => {
            let mut out = Vec::new();
            for x in gens {
                if !g.is_identity(x)? {
                    out.push(g.normalize(x)?);
                }
            }
            Ok(out)
        }
    }
}

/// The start graph for `X`: length-zero generators go into the base vertex
/// group, every other generator becomes a loop of fresh edges through
/// trivial-group vertices.
fn start_graph(a: &Arc<GraphOfGroups>, base: usize, gens: &[APath]) -> Result<AGraph> {
    let mut b = AGraph::new(a.clone(), base);
    let mut paths = Vec::new();
    for h in gens {
        if h.start() != base || h.end() != base {
            return Err(Error::InvalidPath(format!("generator {h} is not a loop at vertex {base}")));
        }
        a.validate(h)?;
        let h = a.reduce(h)?;
        if h.is_empty() {
            if !a.vertex_group(base).is_identity(&h.elems()[0])? {
                b.verts[0].gens.push(h.elems()[0].clone());
            }
        } else {
            paths.push(h);
        }
    }
    for h in &paths {
        add_line(&mut b, 0, h, 0)?;
    }
    Ok(b)
}

/// Adds a line of edges from `from` to `to` reading the path `h`.
fn add_line(b: &mut AGraph, from: usize, h: &APath, to: usize) -> Result<()> {
    let a = b.ambient.clone();
    let k = h.len();
    let mut cur = from;
    for (i, &e) in h.edges().iter().enumerate() {
        let t = a.terminus(e);
        let (next, omega) = if i + 1 == k {
            (to, h.elems()[k].clone())
        } else {
            (b.add_vertex(t, Vec::new()), a.vertex_group(t).identity())
        };
        b.add_edge(cur, next, e, h.elems()[i].clone(), omega)?;
        cur = next;
    }
    Ok(())
}

/// Folded graph whose base-vertex loops represent exactly `<X>`.
pub fn build_subgroup_graph(a: &Arc<GraphOfGroups>, base: usize, gens: &[APath]) -> Result<FoldedGraph> {
    let mut fg = start_graph(a, base, gens)?.fold()?;
    fg.gens = Some(gens.to_vec());
    Ok(fg)
}

/// Coset graph for `x H` where `h` is the folded graph of `H`. Either finds
/// a length-zero `y` with `y H = x H` or returns a folded graph with a coset
/// vertex `u_x != u_0`.
pub fn build_coset_graph(h: &FoldedGraph, x: &APath) -> Result<CosetOutcome> {
    let a = h.ambient().clone();
    let base = h.vertex_type(h.base());
    if x.start() != base || x.end() != base {
        return Err(Error::InvalidPath(format!("coset representative is not a loop at vertex {base}")));
    }
    let x = a.reduce(x)?;
    if x.is_empty() {
        return Ok(CosetOutcome::Element(x.elems()[0].clone()));
    }
    let mut b = h.graph.clone();
    let ux = b.add_vertex(base, Vec::new());
    b.ux = Some(ux);
    let u0 = b.u0;
    add_line(&mut b, ux, &x, u0)?;
    b.fold_coset()
}

/// An A-graph in folded form with subgroup handles and edge group exponents
/// precomputed.
#[derive(Clone, Debug)]
pub struct FoldedGraph {
    graph: AGraph,
    handles: Vec<Arc<Subgroup>>,
    edge_k: Vec<u64>,
    out: Vec<Vec<usize>>,
    gens: Option<Vec<APath>>,
}

impl FoldedGraph {
    fn new(b: AGraph) -> Result<FoldedGraph> {
        let mut b = b.compact()?;
        let n = b.verts.len();
        let mut handles = Vec::with_capacity(n);
        for u in 0..n {
            handles.push(b.handle(u)?);
        }
        let mut edge_k = Vec::with_capacity(b.edges.len());
        for f in 0..b.edges.len() {
            let (k1, k2) = b.edge_sides(f)?;
            debug_assert_eq!(k1, k2);
            edge_k.push(k1);
        }
        let out = (0..n).map(|u| b.out_edges(u)).collect();
        Ok(FoldedGraph { graph: b, handles, edge_k, out, gens: None })
    }

    pub fn ambient(&self) -> &Arc<GraphOfGroups> {
        &self.graph.ambient
    }

    pub fn agraph(&self) -> &AGraph {
        &self.graph
    }

    pub fn base(&self) -> usize {
        self.graph.u0
    }

    pub fn coset_vertex(&self) -> Option<usize> {
        self.graph.ux
    }

    /// Generators the graph was built from, when it is a subgroup graph.
    pub fn generators(&self) -> Option<&[APath]> {
        self.gens.as_deref()
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.verts.len()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.edges.len()
    }

    pub fn vertex_type(&self, u: usize) -> usize {
        self.graph.verts[u].ty
    }

    pub fn vertex_group(&self, u: usize) -> &Group {
        self.graph.group(u)
    }

    pub fn vertex_gens(&self, u: usize) -> &[Elem] {
        &self.graph.verts[u].gens
    }

    pub fn subgroup(&self, u: usize) -> &Subgroup {
        &self.handles[u]
    }

    pub fn out_edges(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn origin(&self, f: usize) -> usize {
        self.graph.edges[f].origin
    }

    pub fn terminus(&self, f: usize) -> usize {
        self.graph.edges[f].terminus
    }

    pub fn edge_type(&self, f: usize) -> usize {
        self.graph.edges[f].ty
    }

    pub fn label_alpha(&self, f: usize) -> &Elem {
        &self.graph.edges[f].alpha
    }

    pub fn label_omega(&self, f: usize) -> &Elem {
        &self.graph.edges[f].omega
    }

    /// `k` with `B_f = <c^k>`; 0 when `B_f` is trivial.
    pub fn edge_group(&self, f: usize) -> u64 {
        self.edge_k[f]
    }

    /// The A-path `<q0 f1_alpha, [f1], f1_omega q1 f2_alpha, ..., fn_omega qn>`.
    pub fn mu(&self, q: &BPath) -> Result<APath> {
        let a = self.ambient();
        let n = q.edges.len();
        let mut elems = Vec::with_capacity(n + 1);
        let mut cur = q.elems[0].clone();
        let mut edges = Vec::with_capacity(n);
        for (i, &f) in q.edges.iter().enumerate() {
            let e = &self.graph.edges[f];
            let g = self.graph.group(e.origin);
            elems.push(g.mul(&cur, &e.alpha)?);
            edges.push(e.ty);
            let g = self.graph.group(e.terminus);
            cur = g.mul(&e.omega, &q.elems[i + 1])?;
        }
        elems.push(cur);
        APath::new(a, self.vertex_type(q.start), elems, edges)
    }

    /// Some B-path from `from` to `to` whose image under `mu` equals `p`.
    pub fn read_membership(&self, from: usize, to: usize, p: &APath) -> Result<Option<BPath>> {
        let p = self.ambient().reduce(p)?;
        adjust::first_semi_canonical(self, &p, from, to)
    }

    /// Deterministic text form: vertices with type and subgroup generators,
    /// then edges with labels.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "base {}", self.base());
        if let Some(ux) = self.coset_vertex() {
            let _ = writeln!(s, "coset {ux}");
        }
        for (u, v) in self.graph.verts.iter().enumerate() {
            let _ = write!(s, "vertex {u} type v{} gens [", v.ty);
            for (i, x) in v.gens.iter().enumerate() {
                let _ = write!(s, "{}{x}", if i > 0 { ", " } else { "" });
            }
            let _ = writeln!(s, "]");
        }
        for (f, e) in self.graph.edges.iter().enumerate().step_by(2) {
            let _ = writeln!(
                s,
                "edge {f} {}->{} label ({}, e{}, {}) k {}",
                e.origin, e.terminus, e.alpha, e.ty, e.omega, self.edge_k[f]
            );
        }
        s
    }
}

//! Graphs of groups with infinite cyclic edge groups, paths in them, and the
//! fundamental group algebra built on path reduction.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::group::{Elem, Group};

/// Budgets for the searches whose termination rests on theory rather than on
/// a checked bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Folding moves per fold.
    pub moves: u64,
    /// Search tree nodes per power reading.
    pub nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { moves: 1_000_000, nodes: 1_000_000 }
    }
}

#[derive(Clone, Debug)]
struct Edge {
    origin: usize,
    terminus: usize,
    /// Image of the edge group generator in the origin vertex group.
    image: Elem,
    /// Further generator images. Nonempty means the edge group is not
    /// cyclic, which the algorithms reject.
    extra: Vec<Elem>,
}

/// A graph of groups. Edges come in pairs: edge `e` and its inverse `e ^ 1`.
/// The edge group of each pair is infinite cyclic; `alpha(e)` is the image of
/// its generator in the origin group and `omega(e) = alpha(e ^ 1)`.
#[derive(Clone, Debug)]
pub struct GraphOfGroups {
    vertices: Vec<Group>,
    edges: Vec<Edge>,
    base: usize,
    limits: Limits,
}

impl Default for GraphOfGroups {
    fn default() -> Self {
        Self::new()
    }
}

impl GraphOfGroups {
    pub fn new() -> GraphOfGroups {
        GraphOfGroups { vertices: Vec::new(), edges: Vec::new(), base: 0, limits: Limits::default() }
    }

    pub fn add_vertex(&mut self, group: Group) -> usize {
        self.vertices.push(group);
        self.vertices.len() - 1
    }

    /// Adds an edge from `o` to `t` whose cyclic edge group maps its generator
    /// to `alpha` in `A_o` and `omega` in `A_t`. Returns the edge id; the
    /// inverse edge is `id ^ 1`.
    pub fn add_edge(&mut self, o: usize, t: usize, alpha: Elem, omega: Elem) -> Result<usize> {
        self.add_edge_images(o, t, vec![alpha], vec![omega])
    }

    /// Adds an edge whose edge group is given by several generator images.
    /// More than one image describes a non-cyclic edge group; such graphs can
    /// be stored and inspected but not computed with.
    pub fn add_edge_images(&mut self, o: usize, t: usize, alphas: Vec<Elem>, omegas: Vec<Elem>) -> Result<usize> {
        if o >= self.vertices.len() || t >= self.vertices.len() {
            return Err(Error::InvalidPath(format!("edge endpoints {o}->{t} out of range")));
        }
        if alphas.is_empty() || alphas.len() != omegas.len() {
            return Err(Error::InvalidPath("edge needs matching generator images".into()));
        }
        for (v, xs) in [(o, &alphas), (t, &omegas)] {
            for x in xs {
                self.vertices[v].check(x)?;
                if self.vertices[v].is_identity(x)? {
                    return Err(Error::TrivialElement("edge group generator image"));
                }
            }
        }
        let id = self.edges.len();
        let mut a = alphas.into_iter();
        let mut w = omegas.into_iter();
        let image = a.next().unwrap();
        self.edges.push(Edge { origin: o, terminus: t, image, extra: a.collect() });
        let image = w.next().unwrap();
        self.edges.push(Edge { origin: t, terminus: o, image, extra: w.collect() });
        Ok(id)
    }

    pub fn set_base(&mut self, v: usize) {
        assert!(v < self.vertices.len());
        self.base = v;
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn set_limits(&mut self, limits: Limits) {
        self.limits = limits;
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges, counting each edge and its inverse.
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_group(&self, v: usize) -> &Group {
        &self.vertices[v]
    }

    pub fn origin(&self, e: usize) -> usize {
        self.edges[e].origin
    }

    pub fn terminus(&self, e: usize) -> usize {
        self.edges[e].terminus
    }

    pub fn alpha(&self, e: usize) -> &Elem {
        &self.edges[e].image
    }

    pub fn omega(&self, e: usize) -> &Elem {
        &self.edges[e ^ 1].image
    }

    /// All generator images of the edge group in the origin group.
    pub fn alpha_images(&self, e: usize) -> impl Iterator<Item = &Elem> {
        core::iter::once(&self.edges[e].image).chain(&self.edges[e].extra)
    }

    pub fn is_cyclic(&self, e: usize) -> bool {
        self.edges[e].extra.is_empty() && self.edges[e ^ 1].extra.is_empty()
    }

    /// `alpha_e(c^m)`.
    pub fn alpha_pow(&self, e: usize, m: i64) -> Result<Elem> {
        self.vertices[self.edges[e].origin].pow(&self.edges[e].image, m)
    }

    /// `omega_e(c^m)`.
    pub fn omega_pow(&self, e: usize, m: i64) -> Result<Elem> {
        self.alpha_pow(e ^ 1, m)
    }

    fn require_cyclic(&self, e: usize) -> Result<()> {
        if !self.is_cyclic(e) {
            return Err(Error::NotSupported(format!("edge {} has a non-cyclic edge group", e & !1)));
        }
        Ok(())
    }

    /// Structural check: edges compose and each element lies in its vertex group.
    pub fn validate(&self, p: &APath) -> Result<()> {
        if p.elems.len() != p.edges.len() + 1 {
            return Err(Error::InvalidPath("element and edge counts disagree".into()));
        }
        if p.start >= self.vertices.len() {
            return Err(Error::InvalidPath(format!("vertex {} out of range", p.start)));
        }
        let mut v = p.start;
        self.vertices[v].check(&p.elems[0])?;
        for (i, &e) in p.edges.iter().enumerate() {
            if e >= self.edges.len() || self.edges[e].origin != v {
                return Err(Error::InvalidPath(format!("edge e{e} does not leave vertex {v}")));
            }
            v = self.edges[e].terminus;
            self.vertices[v].check(&p.elems[i + 1])?;
        }
        if v != p.end {
            return Err(Error::InvalidPath("recorded end vertex is wrong".into()));
        }
        Ok(())
    }

    /// Concatenation without reduction.
    pub fn concat(&self, p: &APath, q: &APath) -> Result<APath> {
        if p.end != q.start {
            return Err(Error::InvalidPath(format!(
                "cannot concatenate path ending at {} with path starting at {}",
                p.end, q.start
            )));
        }
        let mut elems = p.elems.clone();
        let last = elems.pop().unwrap();
        elems.push(self.vertices[p.end].mul(&last, &q.elems[0])?);
        elems.extend_from_slice(&q.elems[1..]);
        let mut edges = p.edges.clone();
        edges.extend_from_slice(&q.edges);
        Ok(APath { start: p.start, end: q.end, elems, edges })
    }

    pub fn inverse(&self, p: &APath) -> APath {
        let elems = p
            .elems
            .iter()
            .rev()
            .enumerate()
            .map(|(i, x)| {
                let v = if i == 0 { p.end } else { self.edges[p.edges[p.edges.len() - i]].origin };
                self.vertices[v].inv(x)
            })
            .collect();
        let edges = p.edges.iter().rev().map(|e| e ^ 1).collect();
        APath { start: p.end, end: p.start, elems, edges }
    }

    /// Applies elementary reductions `<a, e, omega_e(c), e^-1, b> -> <a alpha_e(c) b>`
    /// until none remains.
    pub fn reduce(&self, p: &APath) -> Result<APath> {
        let mut elems: Vec<Elem> = vec![p.elems[0].clone()];
        let mut edges: Vec<usize> = Vec::with_capacity(p.edges.len());
        for (i, &e) in p.edges.iter().enumerate() {
            let next = &p.elems[i + 1];
            if let Some(&last) = edges.last() {
                if last == e ^ 1 {
                    self.require_cyclic(last)?;
                    let mid = elems.last().unwrap();
                    let at = &self.vertices[self.edges[last].terminus];
                    if let Some(m) = at.power_of(mid, self.omega(last))? {
                        elems.pop();
                        edges.pop();
                        let prev = elems.pop().unwrap();
                        let here = &self.vertices[self.edges[last].origin];
                        let a = here.mul(&prev, &self.alpha_pow(last, m)?)?;
                        elems.push(here.mul(&a, next)?);
                        continue;
                    }
                }
            }
            edges.push(e);
            elems.push(next.clone());
        }
        Ok(APath { start: p.start, end: p.end, elems, edges })
    }

    /// Scans every position for an available elementary reduction.
    pub fn is_reduced(&self, p: &APath) -> Result<bool> {
        for i in 1..p.edges.len() {
            let (e, f) = (p.edges[i - 1], p.edges[i]);
            if f == e ^ 1 {
                let at = &self.vertices[self.edges[e].terminus];
                if at.power_of(&p.elems[i], self.omega(e))?.is_some() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn mul(&self, p: &APath, q: &APath) -> Result<APath> {
        self.reduce(&self.concat(p, q)?)
    }

    /// Whether the loop `p` represents the identity.
    pub fn is_trivial(&self, p: &APath) -> Result<bool> {
        if p.start != p.end {
            return Ok(false);
        }
        let r = self.reduce(p)?;
        if !r.edges.is_empty() {
            return Ok(false);
        }
        self.vertices[r.start].is_identity(&r.elems[0])
    }

    /// Whether `p` and `q` represent the same element. They must share endpoints.
    pub fn path_equal(&self, p: &APath, q: &APath) -> Result<bool> {
        if p.start != q.start || p.end != q.end {
            return Err(Error::InvalidPath("compared paths have different endpoints".into()));
        }
        self.is_trivial(&self.concat(p, &self.inverse(q))?)
    }

    /// Whether the reduced loop `p` stays reduced when squared.
    pub fn is_cyclically_reduced(&self, p: &APath) -> Result<bool> {
        let n = p.edges.len();
        if p.start != p.end {
            return Ok(false);
        }
        if n < 2 || p.edges[0] != p.edges[n - 1] ^ 1 {
            return Ok(true);
        }
        let en = p.edges[n - 1];
        let at = &self.vertices[p.end];
        let junction = at.mul(&p.elems[n], &p.elems[0])?;
        Ok(at.power_of(&junction, self.omega(en))?.is_none())
    }

    /// Returns `(c, z)` with `c` cyclically reduced and `p = z c z^-1`. The
    /// loop `c` is based at the end vertex of `z`.
    pub fn cyclically_reduce(&self, p: &APath) -> Result<(APath, APath)> {
        if p.start != p.end {
            return Err(Error::InvalidPath("cyclic reduction needs a loop".into()));
        }
        let mut cur = self.reduce(p)?;
        let mut z = APath::trivial(self, p.start);
        while !self.is_cyclically_reduced(&cur)? {
            let e1 = cur.edges[0];
            let t = self.edges[e1].terminus;
            let z1 = APath {
                start: cur.start,
                end: t,
                elems: vec![cur.elems[0].clone(), self.vertices[t].identity()],
                edges: vec![e1],
            };
            let next = self.reduce(&self.concat(&self.concat(&self.inverse(&z1), &cur)?, &z1)?)?;
            if next.edges.len() >= cur.edges.len() {
                return Err(Error::InvalidPath("cyclic reduction did not shorten the loop".into()));
            }
            cur = next;
            z = self.concat(&z, &z1)?;
        }
        Ok((cur, self.reduce(&z)?))
    }

    /// The literal power of a cyclically reduced loop: copies joined through
    /// `p_n p_0`. Reduced by construction.
    pub fn power_path(&self, p: &APath, m: i64) -> Result<APath> {
        if m == 0 {
            return Err(Error::ZeroExponent);
        }
        if p.start != p.end {
            return Err(Error::InvalidPath("power of a non-loop".into()));
        }
        if m < 0 {
            return self.power_path(&self.inverse(p), -m);
        }
        let n = p.edges.len();
        let at = &self.vertices[p.start];
        if n == 0 {
            return Ok(APath::vertex(p.start, at.pow(&p.elems[0], m)?));
        }
        let junction = at.mul(&p.elems[n], &p.elems[0])?;
        let mut elems = Vec::with_capacity(n * m as usize + 1);
        let mut edges = Vec::with_capacity(n * m as usize);
        elems.push(p.elems[0].clone());
        for k in 0..m {
            edges.extend_from_slice(&p.edges);
            elems.extend_from_slice(&p.elems[1..n]);
            elems.push(if k + 1 == m { p.elems[n].clone() } else { junction.clone() });
        }
        Ok(APath { start: p.start, end: p.end, elems, edges })
    }

    /// `p^m` for any loop, reduced.
    pub fn pow(&self, p: &APath, m: i64) -> Result<APath> {
        if m == 0 {
            return Ok(APath::trivial(self, p.start));
        }
        let (c, z) = self.cyclically_reduce(p)?;
        let cm = self.power_path(&c, m)?;
        self.reduce(&self.concat(&self.concat(&z, &cm)?, &self.inverse(&z))?)
    }

    /// `m` with `x = c^m`, if any. `c` must be a nontrivial loop.
    pub fn power_of(&self, x: &APath, c: &APath) -> Result<Option<i64>> {
        if x.start != c.start || !x.is_loop() || !c.is_loop() {
            return Err(Error::InvalidPath("power test needs loops at a common vertex".into()));
        }
        let (cc, z) = self.cyclically_reduce(c)?;
        let xc = self.reduce(&self.concat(&self.concat(&self.inverse(&z), x)?, &z)?)?;
        let n = cc.edges.len();
        if n == 0 {
            let at = &self.vertices[cc.start];
            if at.is_identity(&cc.elems[0])? {
                return Err(Error::TrivialElement("power base"));
            }
            if !xc.edges.is_empty() {
                return Ok(None);
            }
            return at.power_of(&xc.elems[0], &cc.elems[0]);
        }
        if xc.edges.len() % n != 0 {
            return Ok(None);
        }
        let k = (xc.edges.len() / n) as i64;
        if k == 0 {
            return Ok(self.is_trivial(&xc)?.then_some(0));
        }
        for m in [k, -k] {
            if self.path_equal(&xc, &self.power_path(&cc, m)?)? {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}

/// A path `<p0, e1, p1, ..., en, pn>` in a graph of groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct APath {
    start: usize,
    end: usize,
    elems: Vec<Elem>,
    edges: Vec<usize>,
}

impl APath {
    /// The trivial path at `v`.
    pub fn trivial(g: &GraphOfGroups, v: usize) -> APath {
        APath::vertex(v, g.vertex_group(v).identity())
    }

    /// A length-zero path carrying a vertex group element.
    pub fn vertex(v: usize, x: Elem) -> APath {
        APath { start: v, end: v, elems: vec![x], edges: Vec::new() }
    }

    /// Builds and validates a path.
    pub fn new(g: &GraphOfGroups, start: usize, elems: Vec<Elem>, edges: Vec<usize>) -> Result<APath> {
        let end = match edges.last() {
            Some(&e) if e < g.num_edges() => g.terminus(e),
            Some(&e) => return Err(Error::InvalidPath(format!("edge e{e} out of range"))),
            None => start,
        };
        let p = APath { start, end, elems, edges };
        g.validate(&p)?;
        Ok(p)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn is_loop(&self) -> bool {
        self.start == self.end
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }
}

impl fmt::Display for APath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.elems[0])?;
        for (e, x) in self.edges.iter().zip(&self.elems[1..]) {
            write!(f, " ; e{e} ; {x}")?;
        }
        Ok(())
    }
}

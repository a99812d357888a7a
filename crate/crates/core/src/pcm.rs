//! Power coset membership in a fundamental group: given `H`, `x` and `g`,
//! find the least `|m| > 0` with `g^m ∈ x H`.
//!
//! Pipeline: cyclically reduce `g` (conjugating `x` and `H` along), build the
//! coset graph of `x H`, then read powers of `g` and `g^-1` either from the
//! coset vertex or, when the coset has a length-zero representative `y`,
//! from the base vertex with `y` as a prefix.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::agraph::{build_coset_graph, build_subgroup_graph, BPath, CosetOutcome, FoldedGraph};
use crate::error::{Error, Result};
use crate::gog::{APath, GraphOfGroups};
use crate::group::{Elem, Group};
use crate::presentation::SubgroupPresentation;
use crate::readpower::read_power;

/// A positive answer: `g^m ∈ x H`, witnessed by a B-path in the graph the
/// power was read in.
#[derive(Clone, Debug)]
pub struct PcmAnswer {
    pub m: i64,
    pub witness: BPath,
    pub graph: Arc<FoldedGraph>,
}

/// Power coset membership for `H = <gens>` in `pi1(A, base)`.
pub fn pcm(a: &Arc<GraphOfGroups>, gens: &[APath], x: &APath, g: &APath) -> Result<Option<PcmAnswer>> {
    let h = build_subgroup_graph(a, a.base(), gens)?;
    pcm_folded(&h, x, g)
}

fn is_trivial_path(a: &GraphOfGroups, z: &APath) -> Result<bool> {
    Ok(z.is_empty() && a.vertex_group(z.start()).is_identity(&z.elems()[0])?)
}

/// Power coset membership against an already folded subgroup graph.
pub fn pcm_folded(h: &FoldedGraph, x: &APath, g: &APath) -> Result<Option<PcmAnswer>> {
    let a = h.ambient().clone();
    let base = h.vertex_type(h.base());
    if !x.is_loop() || !g.is_loop() || x.start() != base || g.start() != base {
        return Err(Error::InvalidPath(format!("x and g must be loops at vertex {base}")));
    }
    let g = a.reduce(g)?;
    if a.is_trivial(&g)? {
        return Err(Error::TrivialElement("g"));
    }
    let (gc, z) = a.cyclically_reduce(&g)?;
    let (hh, xx) = if is_trivial_path(&a, &z)? {
        (Arc::new(h.clone()), a.reduce(x)?)
    } else {
        let gens =
            h.generators().ok_or_else(|| Error::NotSupported("conjugating a subgroup needs its generators".into()))?;
        let zi = a.inverse(&z);
        let conj = |p: &APath| -> Result<APath> { a.reduce(&a.concat(&a.concat(&zi, p)?, &z)?) };
        let gens = gens.iter().map(&conj).collect::<Result<Vec<_>>>()?;
        (Arc::new(build_subgroup_graph(&a, z.end(), &gens)?), conj(x)?)
    };
    let gi = a.inverse(&gc);
    let (graph, from, prefix) = match build_coset_graph(&hh, &xx)? {
        CosetOutcome::Element(y) => {
            if gc.is_empty() {
                let u0 = hh.base();
                let vg = hh.vertex_group(u0);
                let p0 = &gc.elems()[0];
                let Some(m) = hh.subgroup(u0).power_coset(&y, p0)? else { return Ok(None) };
                let q0 = vg.mul(&vg.inv(&y), &vg.pow(p0, m)?)?;
                let witness = BPath { start: u0, end: u0, elems: alloc::vec![q0], edges: Vec::new() };
                return Ok(Some(PcmAnswer { m, witness, graph: hh }));
            }
            (hh.clone(), hh.base(), Some(y))
        }
        CosetOutcome::Graph(bx) => {
            let ux = bx.coset_vertex().expect("coset graph has a coset vertex");
            (Arc::new(bx), ux, None)
        }
    };
    let to = graph.base();
    let pos = read_power(&graph, &gc, from, to, prefix.as_ref())?;
    let neg = read_power(&graph, &gi, from, to, prefix.as_ref())?;
    let pick = match (pos, neg) {
        (Some(p), Some(n)) if n.m < p.m => Some((-(n.m as i64), n.path)),
        (Some(p), _) => Some((p.m as i64, p.path)),
        (None, Some(n)) => Some((-(n.m as i64), n.path)),
        (None, None) => None,
    };
    Ok(pick.map(|(m, witness)| PcmAnswer { m, witness, graph }))
}

/// One line of a benign report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenignEntry {
    pub status: Status,
    pub hypothesis: String,
    pub location: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Assume,
}

impl fmt::Display for BenignEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Assume => "ASSUME",
        };
        write!(f, "{s} {} {}", self.hypothesis, self.location)
    }
}

fn entry(status: Status, hypothesis: &str, location: String) -> BenignEntry {
    BenignEntry { status, hypothesis: hypothesis.into(), location }
}

/// Checks the mechanically verifiable hypotheses under which folding and
/// power reading are effective, and records the double coset finiteness
/// hypothesis at non-abelian vertices as an assumption.
pub fn benign_check(a: &GraphOfGroups) -> Vec<BenignEntry> {
    let mut out = Vec::new();
    for v in 0..a.num_vertices() {
        let loc = format!("v{v}");
        let status = match a.vertex_group(v) {
            Group::Free { .. } | Group::Abelian { .. } => Status::Pass,
            Group::Pi1(inner) => {
                if benign_check(inner).iter().any(|e| e.status == Status::Fail) {
                    Status::Fail
                } else {
                    Status::Pass
                }
            }
        };
        out.push(entry(status, "vertex-oracles", loc));
    }
    for e in (0..a.num_edges()).step_by(2) {
        let loc = format!("e{e}");
        let cyclic = a.is_cyclic(e);
        out.push(entry(if cyclic { Status::Pass } else { Status::Fail }, "edge-group-cyclic", loc.clone()));
        let nontrivial = [e, e ^ 1].iter().all(|&d| {
            let g = a.vertex_group(a.origin(d));
            a.alpha_images(d).all(|x| matches!(g.is_identity(x), Ok(false)))
        });
        out.push(entry(if nontrivial { Status::Pass } else { Status::Fail }, "edge-images-nontrivial", loc));
    }
    for v in 0..a.num_vertices() {
        if !matches!(a.vertex_group(v), Group::Abelian { .. }) && a.num_edges() > 0 {
            out.push(entry(Status::Assume, "double-coset-finiteness", format!("v{v}")));
        }
    }
    out
}

/// Decision procedures for subgroups of one vertex group kind.
#[derive(Clone, Debug)]
pub struct OracleSuite {
    group: Group,
}

impl OracleSuite {
    pub fn new(group: Group) -> OracleSuite {
        OracleSuite { group }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn membership(&self, gens: &[Elem], w: &Elem) -> Result<bool> {
        self.group.subgroup(gens)?.contains(&self.group.normalize(w)?)
    }

    /// Least `k > 0` with `g^k ∈ H`, or 0.
    pub fn power_membership(&self, gens: &[Elem], g: &Elem) -> Result<u64> {
        self.group.subgroup(gens)?.cyclic_intersection(g)
    }

    /// Least `|m| > 0` with `g^m ∈ x H`; positive wins ties.
    pub fn power_coset_membership(&self, gens: &[Elem], x: &Elem, g: &Elem) -> Result<Option<i64>> {
        self.group.subgroup(gens)?.power_coset(x, g)
    }

    /// `k` with `H ∩ <c> = <c^k>`.
    pub fn cyclic_intersection_generator(&self, gens: &[Elem], c: &Elem) -> Result<u64> {
        self.power_membership(gens, c)
    }

    /// Some element of `H ∩ a<c>`, checking `m = 0` (that is, `a ∈ H`) too.
    pub fn coset_intersect_cyclic(&self, gens: &[Elem], a: &Elem, c: &Elem) -> Result<Option<Elem>> {
        let h = self.group.subgroup(gens)?;
        let Some(m) = h.power_coset_any(&self.group.inv(a), c)? else { return Ok(None) };
        Ok(Some(self.group.mul(a, &self.group.pow(c, m)?)?))
    }

    /// Writes `w` over the generators of the presentation computed for `<gens>`.
    pub fn express_in_generators(
        &self,
        gens: &[Elem],
        w: &Elem,
    ) -> Result<Option<(SubgroupPresentation, crate::Word)>> {
        let pres = SubgroupPresentation::new(&self.group, gens)?;
        let word = pres.express(w)?;
        Ok(word.map(|word| (pres, word)))
    }
}

//! Finite presentations of subgroups, read off folded graphs: one generating
//! set per vertex subgroup (recursively), one stable letter per edge outside
//! a breadth-first spanning tree, and one relator per edge with infinite
//! edge group.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::agraph::{BPath, FoldedGraph};
use crate::basegroups::{Lattice, StallingsAutomaton, Word};
use crate::error::Result;
use crate::gog::APath;
use crate::group::{Elem, Group, Subgroup};

/// Generators and relators; relators are words over the generators
/// (letter `i + 1` is generator `i`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let ls = w.letters();
        let mut i = 0;
        while i < ls.len() {
            let mut j = i;
            while j < ls.len() && ls[j] == ls[i] {
                j += 1;
            }
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&self.generators[ls[i].unsigned_abs() as usize - 1]);
            let e = (j - i) as i64 * i64::from(ls[i].signum());
            if e != 1 {
                out.push_str(&format!("^{e}"));
            }
            i = j;
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "generators {}", self.generators.len())?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        writeln!(f)?;
        writeln!(f, "relators {}", self.relators.len())?;
        for r in &self.relators {
            writeln!(f, "{}", self.format_word(r))?;
        }
        Ok(())
    }
}

/// Unsimplified presentation of a subgroup handle, able to express members.
#[derive(Clone, Debug)]
enum Raw {
    Free(StallingsAutomaton),
    Abelian(Lattice),
    Graph(Box<GraphRaw>),
}

#[derive(Clone, Debug)]
struct GraphRaw {
    graph: Arc<FoldedGraph>,
    locals: Vec<(usize, Raw)>,
    /// Stable letter index for each edge pair, indexed by `f / 2`.
    stable: Vec<Option<usize>>,
    ngens: usize,
    relators: Vec<Word>,
    witnesses: Vec<Elem>,
}

fn shift(w: &Word, by: usize) -> Word {
    Word::new(w.letters().iter().map(|&l| l.signum() * (l.abs() + by as i32)))
}

fn letter(i: usize, sign: i32) -> Word {
    Word::new([sign * (i as i32 + 1)])
}

impl Raw {
    fn of(sub: &Subgroup) -> Result<Raw> {
        Ok(match sub {
            Subgroup::Free(a) => Raw::Free(a.clone()),
            Subgroup::Abelian(l) => Raw::Abelian(l.clone()),
            Subgroup::Pi1(b) => Raw::Graph(Box::new(GraphRaw::new(b.clone())?)),
        })
    }

    fn ngens(&self) -> usize {
        match self {
            Raw::Free(a) => a.basis().len(),
            Raw::Abelian(l) => l.basis().len(),
            Raw::Graph(g) => g.ngens,
        }
    }

    fn relators(&self) -> Vec<Word> {
        match self {
            Raw::Free(_) => Vec::new(),
            Raw::Abelian(l) => {
                let n = l.basis().len();
                let mut out = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        let (a, b) = (i as i32 + 1, j as i32 + 1);
                        out.push(Word::new([-a, -b, a, b]));
                    }
                }
                out
            }
            Raw::Graph(g) => g.relators.clone(),
        }
    }

    fn witnesses(&self) -> Vec<Elem> {
        match self {
            Raw::Free(a) => a.basis().into_iter().map(Elem::Word).collect(),
            Raw::Abelian(l) => l.basis().iter().cloned().map(Elem::Ab).collect(),
            Raw::Graph(g) => g.witnesses.clone(),
        }
    }

    fn express(&self, x: &Elem) -> Result<Option<Word>> {
        match self {
            Raw::Free(a) => a.membership(x.as_word()?),
            Raw::Abelian(l) => Ok(l.membership(x.as_ab()?)?.map(|coords| {
                let mut w = Word::identity();
                for (i, c) in coords.iter().enumerate() {
                    w = w.mul(&letter(i, 1).pow(*c));
                }
                w
            })),
            Raw::Graph(g) => g.express(x.as_path()?),
        }
    }
}

impl GraphRaw {
    fn new(b: Arc<FoldedGraph>) -> Result<GraphRaw> {
        let a = b.ambient().clone();
        let n = b.num_vertices();
        let u0 = b.base();
        // Breadth-first spanning tree; tree[u] lists the edges from u0 to u.
        let mut tree: Vec<Option<Vec<usize>>> = vec![None; n];
        let mut tree_pair = vec![false; b.num_edges() / 2];
        tree[u0] = Some(Vec::new());
        let mut queue = VecDeque::from([u0]);
        while let Some(u) = queue.pop_front() {
            for &f in b.out_edges(u) {
                let t = b.terminus(f);
                if tree[t].is_none() {
                    let mut path = tree[u].clone().unwrap();
                    path.push(f);
                    tree[t] = Some(path);
                    tree_pair[f / 2] = true;
                    queue.push_back(t);
                }
            }
        }
        let tree: Vec<Vec<usize>> = tree.into_iter().map(|t| t.unwrap_or_default()).collect();
        let ident = |u: usize| b.vertex_group(u).identity();
        // B-path T_u <y> T_u^-1 (or T_o f T_t^-1 when `via` is given).
        let conj_path = |u: usize, y: Elem, via: Option<usize>| -> BPath {
            let mut elems = Vec::new();
            let mut edges = Vec::new();
            let mut cur = u0;
            for &f in &tree[u] {
                elems.push(ident(cur));
                edges.push(f);
                cur = b.terminus(f);
            }
            let end = match via {
                None => {
                    elems.push(y);
                    u
                }
                Some(f) => {
                    elems.push(ident(u));
                    edges.push(f);
                    cur = b.terminus(f);
                    let t = cur;
                    for &g in tree[t].iter().rev() {
                        elems.push(ident(cur));
                        edges.push(g ^ 1);
                        cur = b.origin(g);
                    }
                    elems.push(ident(cur));
                    return BPath { start: u0, end: u0, elems, edges };
                }
            };
            for &f in tree[end].iter().rev() {
                edges.push(f ^ 1);
                cur = b.origin(f);
                elems.push(ident(cur));
            }
            BPath { start: u0, end: u0, elems, edges }
        };
        let mut locals = Vec::with_capacity(n);
        let mut witnesses = Vec::new();
        let mut relators = Vec::new();
        let mut offset = 0;
        for u in 0..n {
            let raw = Raw::of(b.subgroup(u))?;
            for y in raw.witnesses() {
                let p = b.mu(&conj_path(u, y, None))?;
                witnesses.push(Elem::Path(a.reduce(&p)?));
            }
            relators.extend(raw.relators().iter().map(|r| shift(r, offset)));
            let k = raw.ngens();
            locals.push((offset, raw));
            offset += k;
        }
        let mut stable = vec![None; b.num_edges() / 2];
        for f in (0..b.num_edges()).step_by(2) {
            if !tree_pair[f / 2] {
                stable[f / 2] = Some(offset);
                let p = b.mu(&conj_path(b.origin(f), ident(b.origin(f)), Some(f)))?;
                witnesses.push(Elem::Path(a.reduce(&p)?));
                offset += 1;
            }
        }
        let mut raw = GraphRaw { graph: b.clone(), locals, stable, ngens: offset, relators, witnesses };
        let mut edge_rels = Vec::new();
        for f in (0..b.num_edges()).step_by(2) {
            let k = b.edge_group(f) as i64;
            if k == 0 {
                continue;
            }
            let (o, t, e) = (b.origin(f), b.terminus(f), b.edge_type(f));
            let go = b.vertex_group(o);
            let gt = b.vertex_group(t);
            let fa = b.label_alpha(f);
            let fw = b.label_omega(f);
            let lo = go.mul(&go.mul(fa, &a.alpha_pow(e, k)?)?, &go.inv(fa))?;
            let lt = gt.mul(&gt.mul(&gt.inv(fw), &a.omega_pow(e, k)?)?, fw)?;
            let eo = raw.express_local(o, &lo)?;
            let et = raw.express_local(t, &lt)?;
            let s = raw.stable_word(f);
            edge_rels.push(s.inverse().mul(&eo).mul(&s).mul(&et.inverse()));
        }
        raw.relators.extend(edge_rels);
        Ok(raw)
    }

    fn express_local(&self, u: usize, x: &Elem) -> Result<Word> {
        let (off, raw) = &self.locals[u];
        let w = raw
            .express(x)?
            .ok_or_else(|| crate::Error::InvalidPath(format!("vertex element {x} is not in its vertex subgroup")))?;
        Ok(shift(&w, *off))
    }

    fn stable_word(&self, f: usize) -> Word {
        match self.stable[f / 2] {
            Some(i) => letter(i, if f.is_multiple_of(2) { 1 } else { -1 }),
            None => Word::identity(),
        }
    }

    fn express(&self, x: &APath) -> Result<Option<Word>> {
        let b = &self.graph;
        let Some(q) = b.read_membership(b.base(), b.base(), x)? else { return Ok(None) };
        let mut w = self.express_local(q.start, &q.elems[0])?;
        for (i, &f) in q.edges.iter().enumerate() {
            let u = b.terminus(f);
            w = w.mul(&self.stable_word(f)).mul(&self.express_local(u, &q.elems[i + 1])?);
        }
        Ok(Some(w))
    }
}

/// Presentation of a subgroup `<X>`, after Tietze simplification, with the
/// images of its generators and the ability to rewrite members over them.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    pub presentation: Presentation,
    /// Image of each generator in the ambient group.
    pub witnesses: Vec<Elem>,
    raw: Raw,
    group: Group,
    /// Raw generator `i` as a word over the final generators.
    subst: Vec<Word>,
}

impl SubgroupPresentation {
    pub fn new(group: &Group, gens: &[Elem]) -> Result<SubgroupPresentation> {
        let raw = Raw::of(&group.subgroup(gens)?)?;
        let n = raw.ngens();
        let raw_witnesses = raw.witnesses();
        let (subst, relators, kept) = tietze(n, raw.relators());
        let generators = (1..=kept.len()).map(|i| format!("s{i}")).collect();
        let witnesses = kept.iter().map(|&i| raw_witnesses[i].clone()).collect();
        Ok(SubgroupPresentation {
            presentation: Presentation { generators, relators },
            witnesses,
            raw,
            group: group.clone(),
            subst,
        })
    }

    /// `w` as a word over the generators, if `w` lies in the subgroup.
    pub fn express(&self, w: &Elem) -> Result<Option<Word>> {
        let w = self.group.normalize(w)?;
        Ok(self.raw.express(&w)?.map(|r| substitute(&r, &self.subst)))
    }

    /// Evaluates a word over the generators in the ambient group.
    pub fn evaluate(&self, w: &Word) -> Result<Elem> {
        let mut acc = self.group.identity();
        for &l in w.letters() {
            let x = &self.witnesses[l.unsigned_abs() as usize - 1];
            let x = if l > 0 { x.clone() } else { self.group.inv(x) };
            acc = self.group.mul(&acc, &x)?;
        }
        Ok(acc)
    }
}

fn substitute(w: &Word, subst: &[Word]) -> Word {
    let mut out = Word::identity();
    for &l in w.letters() {
        let s = &subst[l.unsigned_abs() as usize - 1];
        out = out.mul(&if l > 0 { s.clone() } else { s.inverse() });
    }
    out
}

fn cyclic_reduce(w: &Word) -> Word {
    w.cyclic_decomposition().1
}

/// Eliminates generators that occur exactly once in some relator. Returns the
/// substitution for raw generators (over the surviving generators,
/// renumbered), the remaining relators, and the surviving raw indices.
fn tietze(n: usize, relators: Vec<Word>) -> (Vec<Word>, Vec<Word>, Vec<usize>) {
    let mut subst: Vec<Word> = (0..n).map(|i| letter(i, 1)).collect();
    let mut rels: Vec<Word> = relators.iter().map(cyclic_reduce).filter(|r| !r.is_empty()).collect();
    loop {
        // Shortest relator containing some generator exactly once; among
        // its generators, the highest index goes first.
        let mut pick: Option<(usize, usize, usize)> = None;
        for (ri, r) in rels.iter().enumerate() {
            for (pos, &l) in r.letters().iter().enumerate() {
                if r.letters().iter().filter(|&&m| m.abs() == l.abs()).count() != 1 {
                    continue;
                }
                let better = match pick {
                    None => true,
                    Some((rj, pj, _)) => {
                        let (len, best) = (rels[rj].len(), rels[rj].letters()[pj].abs());
                        (r.len(), core::cmp::Reverse(l.abs())) < (len, core::cmp::Reverse(best))
                    }
                };
                if better {
                    pick = Some((ri, pos, r.len()));
                }
            }
        }
        let Some((ri, pos, _)) = pick else { break };
        let r = rels.remove(ri);
        // Rotate r to x^e w; then x^e = w^-1.
        let ls = r.letters();
        let x = ls[pos];
        let w = Word::new(ls[pos + 1..].iter().chain(&ls[..pos]).copied());
        let gi = x.unsigned_abs() as usize - 1;
        let value = if x > 0 { w.inverse() } else { w };
        let mut rule: Vec<Word> = (0..n).map(|i| letter(i, 1)).collect();
        rule[gi] = value;
        for s in subst.iter_mut() {
            *s = substitute(s, &rule);
        }
        rels = rels.iter().map(|r| cyclic_reduce(&substitute(r, &rule))).filter(|r| !r.is_empty()).collect();
    }
    let mut used = vec![false; n];
    for s in &subst {
        for &l in s.letters() {
            used[l.unsigned_abs() as usize - 1] = true;
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
    let mut rename = vec![0i32; n];
    for (j, &i) in kept.iter().enumerate() {
        rename[i] = j as i32 + 1;
    }
    let ren = |w: &Word| Word::new(w.letters().iter().map(|&l| l.signum() * rename[l.unsigned_abs() as usize - 1]));
    let subst = subst.iter().map(ren).collect();
    let mut relators: Vec<Word> = Vec::new();
    for r in rels.iter().map(ren) {
        if !relators.contains(&r) {
            relators.push(r);
        }
    }
    (subst, relators, kept)
}

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::word::Word;
use crate::error::{Error, Result};

fn slot(l: i32) -> usize {
    2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0)
}

fn letter(slot: usize) -> i32 {
    let g = (slot / 2) as i32 + 1;
    if slot.is_multiple_of(2) {
        g
    } else {
        -g
    }
}

/// Folded core graph of a finitely generated subgroup of a free group.
///
/// State 0 is the base state. States are numbered breadth-first from the base
/// with transitions explored in letter order `x1, x1^-1, x2, ...`, so two
/// automata for the same subgroup are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StallingsAutomaton {
    rank: usize,
    trans: Vec<Vec<Option<usize>>>,
    /// Label of the breadth-first tree path from the base to each state.
    tree: Vec<Word>,
    /// Non-tree edges `(state, positive letter slot)`, one per free basis element.
    basis_edges: Vec<(usize, usize)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi] = lo;
        true
    }
}

impl StallingsAutomaton {
    pub fn new(rank: usize, gens: &[Word]) -> Result<StallingsAutomaton> {
        let mut n = 1;
        let mut edges: Vec<(usize, i32, usize)> = Vec::new();
        for g in gens {
            let need = g.rank_needed();
            if need > rank {
                return Err(Error::RankMismatch { expected: rank, found: need });
            }
            let ls = g.letters();
            let mut cur = 0;
            for (i, &l) in ls.iter().enumerate() {
                let next = if i + 1 == ls.len() {
                    0
                } else {
                    n += 1;
                    n - 1
                };
                if l > 0 {
                    edges.push((cur, l, next));
                } else {
                    edges.push((next, -l, cur));
                }
                cur = next;
            }
        }
        let mut uf = UnionFind((0..n).collect());
        loop {
            let mut changed = false;
            let mut table: Vec<Vec<Option<usize>>> = alloc::vec![alloc::vec![None; 2 * rank]; n];
            for &(s, l, t) in &edges {
                let (s, t) = (uf.find(s), uf.find(t));
                for (from, sl, to) in [(s, slot(l), t), (t, slot(-l), s)] {
                    match table[from][sl] {
                        None => table[from][sl] = Some(to),
                        Some(old) => {
                            let old = uf.find(old);
                            if old != to {
                                uf.union(old, to);
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut table: Vec<Vec<Option<usize>>> = alloc::vec![alloc::vec![None; 2 * rank]; n];
        for &(s, l, t) in &edges {
            let (s, t) = (uf.find(s), uf.find(t));
            table[s][slot(l)] = Some(t);
            table[t][slot(-l)] = Some(s);
        }
        Ok(Self::from_table(rank, &table, 0))
    }

    /// Renumbers the states reachable from `base` breadth-first and computes
    /// the spanning tree data.
    fn from_table(rank: usize, table: &[Vec<Option<usize>>], base: usize) -> StallingsAutomaton {
        let mut index = alloc::vec![usize::MAX; table.len()];
        let mut order = alloc::vec![base];
        index[base] = 0;
        let mut tree = alloc::vec![Word::identity()];
        let mut parent_slot = alloc::vec![None];
        let mut queue = VecDeque::from([base]);
        while let Some(s) = queue.pop_front() {
            for (sl, &next) in table[s].iter().enumerate().take(2 * rank) {
                if let Some(t) = next {
                    if index[t] == usize::MAX {
                        index[t] = order.len();
                        order.push(t);
                        tree.push(tree[index[s]].mul(&Word::new([letter(sl)])));
                        parent_slot.push(Some(sl));
                        queue.push_back(t);
                    }
                }
            }
        }
        let trans: Vec<Vec<Option<usize>>> =
            order.iter().map(|&s| table[s].iter().map(|t| t.map(|t| index[t])).collect()).collect();
        let parent = |t: usize| parent_slot[t].and_then(|sl: usize| trans[t][sl ^ 1].map(|p| (p, sl)));
        let mut basis_edges = Vec::new();
        for (s, row) in trans.iter().enumerate() {
            for sl in (0..2 * rank).step_by(2) {
                if let Some(t) = row[sl] {
                    if parent(t) != Some((s, sl)) && parent(s) != Some((t, sl + 1)) {
                        basis_edges.push((s, sl));
                    }
                }
            }
        }
        StallingsAutomaton { rank, trans, tree, basis_edges }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn transition(&self, state: usize, l: i32) -> Option<usize> {
        self.trans[state][slot(l)]
    }

    /// Number of (positive) transitions.
    pub fn num_edges(&self) -> usize {
        self.trans.iter().map(|r| r.iter().step_by(2).flatten().count()).sum()
    }

    fn read(&self, w: &Word) -> Option<usize> {
        let mut s = 0;
        for &l in w.letters() {
            s = self.trans[s][slot(l)]?;
        }
        Some(s)
    }

    fn check(&self, w: &Word) -> Result<()> {
        let need = w.rank_needed();
        if need > self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: need });
        }
        Ok(())
    }

    pub fn contains(&self, w: &Word) -> Result<bool> {
        self.check(w)?;
        Ok(self.read(w) == Some(0))
    }

    /// Free basis of the subgroup read off the breadth-first spanning tree.
    pub fn basis(&self) -> Vec<Word> {
        self.basis_edges
            .iter()
            .map(|&(s, sl)| {
                let t = self.trans[s][sl].unwrap();
                self.tree[s].mul(&Word::new([letter(sl)])).mul(&self.tree[t].inverse())
            })
            .collect()
    }

    /// When `w` lies in the subgroup, writes it over [`basis`](Self::basis):
    /// letter `i + 1` stands for the i-th basis element.
    pub fn membership(&self, w: &Word) -> Result<Option<Word>> {
        self.check(w)?;
        let mut s = 0;
        let mut expr = Vec::new();
        for &l in w.letters() {
            let Some(t) = self.trans[s][slot(l)] else { return Ok(None) };
            let (from, sl, sign) = if l > 0 { (s, slot(l), 1) } else { (t, slot(-l), -1) };
            if let Some(i) = self.basis_edges.iter().position(|&e| e == (from, sl)) {
                expr.push(sign * (i as i32 + 1));
            }
            s = t;
        }
        Ok((s == 0).then(|| Word::new(expr)))
    }

    /// Minimal-|m| integer, zero allowed, with `g^m ∈ x H`; positive wins ties.
    pub fn power_coset_any(&self, x: &Word, g: &Word) -> Result<Option<i64>> {
        Ok(self.orbit(x, g)?.best(true))
    }

    /// Minimal-|m| nonzero integer with `g^m ∈ x H`; positive wins ties.
    pub fn power_coset(&self, x: &Word, g: &Word) -> Result<Option<i64>> {
        Ok(self.orbit(x, g)?.best(false))
    }

    /// `k >= 0` with `H ∩ <c> = <c^k>`.
    pub fn cyclic_intersection(&self, c: &Word) -> Result<u64> {
        Ok(self.power_coset(&Word::identity(), c)?.map_or(0, |m| m.unsigned_abs()))
    }

    /// Some element of `H ∩ a<c>`, if the intersection is nonempty.
    pub fn coset_intersect_cyclic(&self, a: &Word, c: &Word) -> Result<Option<Word>> {
        Ok(self.power_coset_any(&a.inverse(), c)?.map(|m| a.mul(&c.pow(m))))
    }

    /// Solutions of `x^-1 g^m ∈ H` as orbit data. Writing `g = u g' u^-1` with
    /// `g'` cyclically reduced, the condition is that reading `x^-1 u g'^m`
    /// from the base ends where `u` ends. The core is extended by spurs for
    /// `x^-1 u` and `u`; reading `g'^m` from the spur end traces a
    /// non-backtracking path, and such a path that leaves the extended graph
    /// never returns, so the finite orbit decides everything.
    fn orbit(&self, x: &Word, g: &Word) -> Result<Orbit> {
        self.check(x)?;
        self.check(g)?;
        if g.is_empty() {
            return Err(Error::TrivialElement("power coset base"));
        }
        let (u, gc) = g.cyclic_decomposition();
        let mut table = self.trans.clone();
        let s = extend(&mut table, &x.inverse().mul(&u));
        let t = extend(&mut table, &u);
        let step = |from: usize, w: &Word| -> Option<usize> {
            let mut cur = from;
            for &l in w.letters() {
                cur = table[cur][slot(l)]?;
            }
            Some(cur)
        };
        let gi = gc.inverse();
        let mut hits = [None, None];
        for (dir, w) in [(0, &gc), (1, &gi)] {
            let mut cur = s;
            for m in 1..=table.len() as i64 {
                match step(cur, w) {
                    None => break,
                    Some(next) => {
                        cur = next;
                        if cur == t && hits[dir].is_none() {
                            hits[dir] = Some(m);
                        }
                        if cur == s {
                            break;
                        }
                    }
                }
            }
        }
        Ok(Orbit { zero: s == t, pos: hits[0], neg: hits[1] })
    }
}

fn extend(table: &mut Vec<Vec<Option<usize>>>, w: &Word) -> usize {
    let width = table[0].len();
    let mut cur = 0;
    for &l in w.letters() {
        cur = match table[cur][slot(l)] {
            Some(t) => t,
            None => {
                table.push(alloc::vec![None; width]);
                let t = table.len() - 1;
                table[cur][slot(l)] = Some(t);
                table[t][slot(-l)] = Some(cur);
                t
            }
        };
    }
    cur
}

struct Orbit {
    zero: bool,
    pos: Option<i64>,
    neg: Option<i64>,
}

impl Orbit {
    fn best(&self, allow_zero: bool) -> Option<i64> {
        if self.zero && allow_zero {
            return Some(0);
        }
        let pos = self.pos;
        let neg = self.neg.map(|m| -m);
        match (pos, neg) {
            (Some(p), Some(n)) => Some(if p <= -n { p } else { n }),
            (Some(p), None) => Some(p),
            (None, Some(n)) => Some(n),
            (None, None) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i32]) -> Word {
        Word::new(v.iter().copied())
    }

    const A: i32 = 1;
    const B: i32 = 2;

    #[test]
    fn build_examples() {
        let h = StallingsAutomaton::new(2, &[w(&[A])]).unwrap();
        assert_eq!(h.num_states(), 1);
        assert_eq!(h.transition(0, A), Some(0));
        let h = StallingsAutomaton::new(2, &[]).unwrap();
        assert_eq!((h.num_states(), h.num_edges()), (1, 0));
        let h = StallingsAutomaton::new(2, &[w(&[A, A]), w(&[A, B, -A])]).unwrap();
        assert_eq!(h.num_states(), 2);
        assert!(!h.contains(&w(&[B])).unwrap());
        assert!(h.contains(&w(&[A, A])).unwrap());
        assert!(h.contains(&w(&[A, B, B, -A, A, A])).unwrap());
    }

    #[test]
    fn folding_is_idempotent() {
        let h = StallingsAutomaton::new(2, &[w(&[A, B, A]), w(&[B, A, A]), w(&[A, -B])]).unwrap();
        let again = StallingsAutomaton::new(2, &h.basis()).unwrap();
        assert_eq!(h, again);
    }

    #[test]
    fn membership_expressions() {
        let h = StallingsAutomaton::new(2, &[w(&[A, A])]).unwrap();
        assert_eq!(h.membership(&w(&[A, A, A, A])).unwrap(), Some(w(&[1, 1])));
        assert_eq!(h.membership(&w(&[A, A, A])).unwrap(), None);
        let h = StallingsAutomaton::new(2, &[w(&[A, B]), w(&[B, A])]).unwrap();
        let e = h.membership(&w(&[A, B, B, A])).unwrap().unwrap();
        let basis = h.basis();
        let back = e.letters().iter().fold(Word::identity(), |acc, &l| {
            let b = &basis[l.unsigned_abs() as usize - 1];
            acc.mul(&if l > 0 { b.clone() } else { b.inverse() })
        });
        assert_eq!(back, w(&[A, B, B, A]));
    }

    #[test]
    fn cyclic_intersections() {
        let h = StallingsAutomaton::new(2, &[w(&[A, A, A])]).unwrap();
        assert_eq!(h.cyclic_intersection(&w(&[A])).unwrap(), 3);
        let h = StallingsAutomaton::new(2, &[w(&[B])]).unwrap();
        assert_eq!(h.cyclic_intersection(&w(&[A])).unwrap(), 0);
        assert!(h.cyclic_intersection(&Word::identity()).is_err());
        let h = StallingsAutomaton::new(2, &[w(&[A, A, B]), w(&[B, A, A])]).unwrap();
        let k = h.cyclic_intersection(&w(&[A, B])).unwrap();
        let c = w(&[A, B]);
        let scan = (1..=20).find(|&m| h.contains(&c.pow(m)).unwrap()).unwrap_or(0);
        assert_eq!(k, scan as u64);
    }

    #[test]
    fn power_coset_examples() {
        let h = StallingsAutomaton::new(2, &[w(&[A, A, A])]).unwrap();
        assert_eq!(h.power_coset(&w(&[A]), &w(&[A])).unwrap(), Some(1));
        let h = StallingsAutomaton::new(2, &[w(&[A, B])]).unwrap();
        assert_eq!(h.power_coset(&Word::identity(), &w(&[A])).unwrap(), None);
        let h = StallingsAutomaton::new(2, &[w(&[B])]).unwrap();
        assert_eq!(h.power_coset(&w(&[A]), &w(&[A])).unwrap(), Some(1));
        assert!(h.power_coset(&w(&[A]), &Word::identity()).is_err());
        // g not cyclically reduced; both m = 2 and m = -2 work
        let h = StallingsAutomaton::new(2, &[w(&[B, A, A, A, A, -B]), w(&[B, B])]).unwrap();
        let g = w(&[B, A, -B]);
        let x = w(&[B, -A, -A, B]);
        let m = h.power_coset(&x, &g).unwrap().unwrap();
        assert!(h.contains(&x.inverse().mul(&g.pow(m))).unwrap());
        assert!(h.contains(&x.inverse().mul(&g.pow(-2))).unwrap());
        assert!(!h.contains(&x.inverse().mul(&g.pow(1))).unwrap());
        assert_eq!(m, 2);
    }

    #[test]
    fn coset_intersect_cyclic_examples() {
        let h = StallingsAutomaton::new(2, &[w(&[A, A, A])]).unwrap();
        let y = h.coset_intersect_cyclic(&w(&[A]), &w(&[A])).unwrap().unwrap();
        assert!(h.contains(&y).unwrap());
        assert!(y.power_of(&w(&[A])).is_some());
        let h = StallingsAutomaton::new(2, &[w(&[B])]).unwrap();
        assert_eq!(h.coset_intersect_cyclic(&w(&[A]), &w(&[B])).unwrap(), None);
        let h = StallingsAutomaton::new(2, &[w(&[A, B])]).unwrap();
        assert!(h.coset_intersect_cyclic(&Word::identity(), &Word::identity()).is_err());
    }
}

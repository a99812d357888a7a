//! Vertex groups and their subgroup handles, dispatched over the three kinds
//! that occur in an extension chain.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::agraph::{build_subgroup_graph, FoldedGraph};
use crate::basegroups::{AbVec, Lattice, StallingsAutomaton, Word};
use crate::error::{Error, Result};
use crate::gog::{APath, GraphOfGroups};
use crate::pcm;

/// An element of some vertex group.
///
/// The derived equality is structural. Two `Path` values can be different
/// representatives of the same group element; use [`Group::equal`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Word(Word),
    Ab(AbVec),
    Path(APath),
}

impl Elem {
    pub fn as_word(&self) -> Result<&Word> {
        match self {
            Elem::Word(w) => Ok(w),
            other => Err(Error::TypeMismatch(format!("expected a free group word, got {other}"))),
        }
    }

    pub fn as_ab(&self) -> Result<&AbVec> {
        match self {
            Elem::Ab(v) => Ok(v),
            other => Err(Error::TypeMismatch(format!("expected an abelian vector, got {other}"))),
        }
    }

    pub fn as_path(&self) -> Result<&APath> {
        match self {
            Elem::Path(p) => Ok(p),
            other => Err(Error::TypeMismatch(format!("expected a path, got {other}"))),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Word(w) => write!(f, "{w}"),
            Elem::Ab(v) => write!(f, "{v}"),
            Elem::Path(p) => write!(f, "<{p}>"),
        }
    }
}

/// A vertex group: free, free abelian, or the fundamental group of a lower
/// level graph of groups (elements are its loops at the base vertex).
#[derive(Clone, Debug)]
pub enum Group {
    Free { rank: usize },
    Abelian { rank: usize },
    Pi1(Arc<GraphOfGroups>),
}

impl Group {
    pub fn identity(&self) -> Elem {
        match self {
            Group::Free { .. } => Elem::Word(Word::identity()),
            Group::Abelian { rank } => Elem::Ab(AbVec::zero(*rank)),
            Group::Pi1(g) => Elem::Path(APath::trivial(g, g.base())),
        }
    }

    pub fn check(&self, x: &Elem) -> Result<()> {
        match (self, x) {
            (Group::Free { rank }, Elem::Word(w)) => {
                if w.rank_needed() > *rank {
                    return Err(Error::RankMismatch { expected: *rank, found: w.rank_needed() });
                }
                Ok(())
            }
            (Group::Abelian { rank }, Elem::Ab(v)) => {
                if v.rank() != *rank {
                    return Err(Error::RankMismatch { expected: *rank, found: v.rank() });
                }
                Ok(())
            }
            (Group::Pi1(g), Elem::Path(p)) => g.validate(p),
            (_, x) => Err(Error::TypeMismatch(format!("element {x} does not belong to {self}"))),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        match (self, a, b) {
            (Group::Free { .. }, Elem::Word(u), Elem::Word(v)) => Ok(Elem::Word(u.mul(v))),
            (Group::Abelian { .. }, Elem::Ab(u), Elem::Ab(v)) => Ok(Elem::Ab(u.add(v)?)),
            (Group::Pi1(g), Elem::Path(p), Elem::Path(q)) => Ok(Elem::Path(g.mul(p, q)?)),
            _ => Err(Error::TypeMismatch(format!("cannot multiply {a} and {b} in {self}"))),
        }
    }

    /// Product of a sequence of elements.
    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a Elem>) -> Result<Elem> {
        let mut acc = self.identity();
        let mut first = true;
        for x in items {
            acc = if first { x.clone() } else { self.mul(&acc, x)? };
            first = false;
        }
        Ok(acc)
    }

    pub fn inv(&self, a: &Elem) -> Elem {
        match a {
            Elem::Word(w) => Elem::Word(w.inverse()),
            Elem::Ab(v) => Elem::Ab(v.neg()),
            Elem::Path(p) => match self {
                Group::Pi1(g) => Elem::Path(g.inverse(p)),
                _ => unreachable!("path element outside a fundamental group"),
            },
        }
    }

    pub fn pow(&self, a: &Elem, m: i64) -> Result<Elem> {
        match (self, a) {
            (Group::Free { .. }, Elem::Word(w)) => Ok(Elem::Word(w.pow(m))),
            (Group::Abelian { .. }, Elem::Ab(v)) => Ok(Elem::Ab(v.scale(m))),
            (Group::Pi1(g), Elem::Path(p)) => Ok(Elem::Path(g.pow(p, m)?)),
            _ => Err(Error::TypeMismatch(format!("{a} does not belong to {self}"))),
        }
    }

    pub fn is_identity(&self, a: &Elem) -> Result<bool> {
        match (self, a) {
            (Group::Free { .. }, Elem::Word(w)) => Ok(w.is_empty()),
            (Group::Abelian { .. }, Elem::Ab(v)) => Ok(v.is_zero()),
            (Group::Pi1(g), Elem::Path(p)) => g.is_trivial(p),
            _ => Err(Error::TypeMismatch(format!("{a} does not belong to {self}"))),
        }
    }

    pub fn equal(&self, a: &Elem, b: &Elem) -> Result<bool> {
        match (a, b) {
            (Elem::Path(_), Elem::Path(_)) => {
                let d = self.mul(&self.inv(a), b)?;
                self.is_identity(&d)
            }
            _ => {
                self.check(a)?;
                self.check(b)?;
                Ok(a == b)
            }
        }
    }

    /// Normal form for paths (reduced); other kinds are already canonical.
    pub fn normalize(&self, a: &Elem) -> Result<Elem> {
        match (self, a) {
            (Group::Pi1(g), Elem::Path(p)) => Ok(Elem::Path(g.reduce(p)?)),
            _ => {
                self.check(a)?;
                Ok(a.clone())
            }
        }
    }

    /// `m` with `x = c^m`, if any. `c` must be nontrivial.
    pub fn power_of(&self, x: &Elem, c: &Elem) -> Result<Option<i64>> {
        match (self, x, c) {
            (Group::Free { .. }, Elem::Word(x), Elem::Word(c)) => {
                if c.is_empty() {
                    return Err(Error::TrivialElement("power base"));
                }
                Ok(x.power_of(c))
            }
            (Group::Abelian { .. }, Elem::Ab(x), Elem::Ab(c)) => {
                if c.is_zero() {
                    return Err(Error::TrivialElement("power base"));
                }
                Ok(x.multiple_of(c))
            }
            (Group::Pi1(g), Elem::Path(x), Elem::Path(c)) => g.power_of(x, c),
            _ => Err(Error::TypeMismatch(format!("{x} or {c} does not belong to {self}"))),
        }
    }

    /// Subgroup handle generated by `gens`. For fundamental groups the
    /// generators must be loops at a common vertex, which becomes the base.
    pub fn subgroup(&self, gens: &[Elem]) -> Result<Subgroup> {
        match self {
            Group::Free { rank } => {
                let words = gens.iter().map(|g| g.as_word().cloned()).collect::<Result<Vec<_>>>()?;
                Ok(Subgroup::Free(StallingsAutomaton::new(*rank, &words)?))
            }
            Group::Abelian { rank } => {
                let vs = gens.iter().map(|g| g.as_ab().cloned()).collect::<Result<Vec<_>>>()?;
                Ok(Subgroup::Abelian(Lattice::new(*rank, &vs)?))
            }
            Group::Pi1(g) => {
                let paths = gens.iter().map(|x| x.as_path().cloned()).collect::<Result<Vec<_>>>()?;
                let base = paths.first().map_or(g.base(), |p| p.start());
                Ok(Subgroup::Pi1(Arc::new(build_subgroup_graph(g, base, &paths)?)))
            }
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Free { rank } => write!(f, "F{rank}"),
            Group::Abelian { rank } => write!(f, "Z^{rank}"),
            Group::Pi1(g) => write!(f, "pi1({} vertices)", g.num_vertices()),
        }
    }
}

/// Oracle-backed subgroup of a vertex group.
#[derive(Clone, Debug)]
pub enum Subgroup {
    Free(StallingsAutomaton),
    Abelian(Lattice),
    Pi1(Arc<FoldedGraph>),
}

impl Subgroup {
    pub fn contains(&self, x: &Elem) -> Result<bool> {
        match self {
            Subgroup::Free(a) => a.contains(x.as_word()?),
            Subgroup::Abelian(l) => l.contains(x.as_ab()?),
            Subgroup::Pi1(b) => Ok(b.read_membership(b.base(), b.base(), x.as_path()?)?.is_some()),
        }
    }

    /// Minimal-|m| integer, zero allowed, with `g^m ∈ x H`; positive wins ties.
    pub fn power_coset_any(&self, x: &Elem, g: &Elem) -> Result<Option<i64>> {
        match self {
            Subgroup::Free(a) => a.power_coset_any(x.as_word()?, g.as_word()?),
            Subgroup::Abelian(l) => l.power_coset_any(x.as_ab()?, g.as_ab()?),
            Subgroup::Pi1(b) => {
                if self.contains(x)? {
                    return Ok(Some(0));
                }
                Ok(pcm::pcm_folded(b, x.as_path()?, g.as_path()?)?.map(|r| r.m))
            }
        }
    }

    /// Minimal-|m| nonzero integer with `g^m ∈ x H`; positive wins ties.
    pub fn power_coset(&self, x: &Elem, g: &Elem) -> Result<Option<i64>> {
        match self {
            Subgroup::Free(a) => a.power_coset(x.as_word()?, g.as_word()?),
            Subgroup::Abelian(l) => l.power_coset(x.as_ab()?, g.as_ab()?),
            Subgroup::Pi1(b) => Ok(pcm::pcm_folded(b, x.as_path()?, g.as_path()?)?.map(|r| r.m)),
        }
    }

    /// `k >= 0` with `H ∩ <c> = <c^k>`.
    pub fn cyclic_intersection(&self, c: &Elem) -> Result<u64> {
        match self {
            Subgroup::Free(a) => a.cyclic_intersection(c.as_word()?),
            Subgroup::Abelian(l) => l.cyclic_intersection(c.as_ab()?),
            Subgroup::Pi1(b) => {
                let c = c.as_path()?;
                let one = APath::trivial(b.ambient(), c.start());
                Ok(pcm::pcm_folded(b, &one, c)?.map_or(0, |r| r.m.unsigned_abs()))
            }
        }
    }
}

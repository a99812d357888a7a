//! Subgroup algorithms for iterated centralizer extensions of free groups.
//!
//! The groups handled here are built as a chain `F = G0 < G1 < ... < Gn` where
//! each `G(i+1)` is the amalgamated product of `Gi` with a free abelian group
//! `Z^(r+1)` along an infinite cyclic subgroup `<g_i>`. Every level is the
//! fundamental group of a two-vertex graph of groups whose vertex groups are
//! the previous level and a free abelian group, so all algorithms are written
//! once against [`GraphOfGroups`] and recurse through the vertex groups.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the CLI and the
//! brute-force test oracles live in the `limitfold` companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod adjust;
pub mod agraph;
pub mod basegroups;
pub mod chain;
mod error;
pub mod gog;
pub mod group;
pub mod literal;
pub mod pcm;
pub mod presentation;
pub mod readpower;

pub use agraph::{AGraph, BPath, CosetOutcome, FoldedGraph};
pub use basegroups::{AbVec, FreeGroup, Lattice, StallingsAutomaton, Word};
pub use chain::{ChainDef, ExtensionChain, ExtensionDef};
pub use error::{Error, Guard, Result};
pub use gog::{APath, GraphOfGroups, Limits};
pub use group::{Elem, Group, Subgroup};
pub use presentation::{Presentation, SubgroupPresentation};

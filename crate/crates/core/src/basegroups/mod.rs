//! Leaf vertex groups: free groups and free abelian groups, with their
//! subgroup handles (Stallings automata and integer lattices).

mod abvec;
mod lattice;
mod stallings;
mod word;

pub use abvec::AbVec;
pub use lattice::{hermite_normal_form, Hnf, Lattice};
pub use stallings::StallingsAutomaton;
pub use word::{FreeGroup, Word};

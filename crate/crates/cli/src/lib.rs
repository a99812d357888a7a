//! File formats, brute-force test oracles and the command-line front end for
//! [`limitfold_core`].

pub mod abelian;
pub mod brute;
pub mod cli;
pub mod files;
pub mod kb;

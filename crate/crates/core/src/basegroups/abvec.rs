use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// An element of the free abelian group of rank `len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbVec(pub Vec<i64>);

impl AbVec {
    pub fn zero(rank: usize) -> AbVec {
        AbVec(alloc::vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> AbVec {
        let mut v = AbVec::zero(rank);
        v.0[i] = 1;
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &AbVec) -> Result<AbVec> {
        same_rank(self, other)?;
        Ok(AbVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn neg(&self) -> AbVec {
        AbVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, m: i64) -> AbVec {
        AbVec(self.0.iter().map(|a| a * m).collect())
    }

    /// Returns `m` with `self = m c`. `c` must be nonzero.
    pub fn multiple_of(&self, c: &AbVec) -> Option<i64> {
        if self.rank() != c.rank() {
            return None;
        }
        let i = c.0.iter().position(|&x| x != 0)?;
        if self.0[i] % c.0[i] != 0 {
            return None;
        }
        let m = self.0[i] / c.0[i];
        (c.scale(m) == *self).then_some(m)
    }

    /// Greatest common divisor of the coordinates (0 for the zero vector).
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0, |g, &x| gcd(g, x))
    }
}

pub(crate) fn same_rank(a: &AbVec, b: &AbVec) -> Result<()> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { expected: a.rank(), found: b.rank() });
    }
    Ok(())
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl fmt::Display for AbVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A freely reduced word. Letter `i + 1` is the i-th generator and `-(i + 1)`
/// its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    /// Builds a word from arbitrary letters, freely reducing them.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Word {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// The generator with zero-based index `i`.
    pub fn generator(i: usize) -> Word {
        Word(alloc::vec![i as i32 + 1])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, plus one.
    pub fn rank_needed(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut k = 0;
        let (a, b) = (&self.0, &other.0);
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == -b[k] {
            k += 1;
        }
        let mut out = Vec::with_capacity(a.len() + b.len() - 2 * k);
        out.extend_from_slice(&a[..a.len() - k]);
        out.extend_from_slice(&b[k..]);
        Word(out)
    }

    pub fn pow(&self, m: i64) -> Word {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        let (u, c) = base.cyclic_decomposition();
        let mut mid = Vec::with_capacity(c.len() * m.unsigned_abs() as usize);
        for _ in 0..m.unsigned_abs() {
            mid.extend_from_slice(&c.0);
        }
        u.mul(&Word(mid)).mul(&u.inverse())
    }

    /// Splits the word as `u c u^-1` with `c` cyclically reduced.
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let w = &self.0;
        let mut k = 0;
        while 2 * k + 1 < w.len() && w[k] == -w[w.len() - 1 - k] {
            k += 1;
        }
        (Word(w[..k].to_vec()), Word(w[k..w.len() - k].to_vec()))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.0.len() < 2 || self.0[0] != -self.0[self.0.len() - 1]
    }

    /// Returns `m` with `self = c^m`, if one exists. `c` must be nontrivial.
    pub fn power_of(&self, c: &Word) -> Option<i64> {
        let (u, cc) = c.cyclic_decomposition();
        let x = u.inverse().mul(self).mul(&u);
        if x.is_empty() {
            return Some(0);
        }
        if x.len() % cc.len() != 0 {
            return None;
        }
        let m = (x.len() / cc.len()) as i64;
        [m, -m].into_iter().find(|&m| cc.pow(m) == x)
    }

    /// Smallest root: returns `(r, k)` with `self = r^k` and `k` maximal.
    /// The identity returns `(1, 0)`.
    pub fn root(&self) -> (Word, usize) {
        if self.is_empty() {
            return (Word::identity(), 0);
        }
        let (u, c) = self.cyclic_decomposition();
        let n = c.len();
        for p in 1..=n {
            if n % p == 0 && (p..n).all(|i| c.0[i] == c.0[i - p]) {
                let r = u.mul(&Word(c.0[..p].to_vec())).mul(&u.inverse());
                return (r, n / p);
            }
        }
        unreachable!()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let e = (j - i) as i64 * l.signum() as i64;
            write!(f, "x{}", l.unsigned_abs())?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
            i = j;
        }
        Ok(())
    }
}

/// The free group of a fixed rank; rank-checked arithmetic on [`Word`]s.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeGroup {
    pub rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> FreeGroup {
        FreeGroup { rank }
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        let need = w.rank_needed();
        if need > self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: need });
        }
        Ok(())
    }

    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word> {
        self.check(u)?;
        self.check(v)?;
        Ok(u.mul(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i32]) -> Word {
        Word::new(v.iter().copied())
    }

    #[test]
    fn multiply_examples() {
        let f = FreeGroup::new(2);
        assert!(f.multiply(&w(&[1]), &w(&[-1])).unwrap().is_empty());
        assert_eq!(f.multiply(&w(&[1, 2]), &w(&[-2, 1])).unwrap(), w(&[1, 1]));
        assert!(f.multiply(&w(&[1, 1, 1, 2]), &w(&[-2, -1, -1, -1])).unwrap().is_empty());
        assert_eq!(f.multiply(&w(&[3]), &w(&[1])), Err(Error::RankMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn powers_and_roots() {
        let c = w(&[1, 2, -1]);
        assert_eq!(c.pow(3), w(&[1, 2, 2, 2, -1]));
        assert_eq!(c.pow(-2), w(&[1, -2, -2, -1]));
        assert_eq!(w(&[1, 2, 2, 2, -1]).power_of(&c), Some(3));
        assert_eq!(w(&[1, -2, -1]).power_of(&c), Some(-1));
        assert_eq!(w(&[2]).power_of(&c), None);
        assert_eq!(w(&[1, 2, 1, 2]).root(), (w(&[1, 2]), 2));
        assert_eq!(w(&[1, 1, 2]).root().1, 1);
        assert_eq!(w(&[2, 1, 1, -2]).root(), (w(&[2, 1, -2]), 2));
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", w(&[1, 1, -2])), "x1^2 x2^-1");
        assert_eq!(alloc::format!("{}", Word::identity()), "1");
    }
}

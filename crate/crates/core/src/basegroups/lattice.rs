use alloc::vec::Vec;

use super::abvec::{gcd, same_rank, AbVec};
use crate::error::{Error, Result};

/// Row Hermite normal form `H = U M` of an integer matrix.
///
/// The first `rank` rows of `h` are the nonzero rows; pivots are positive and
/// the entries above each pivot lie in `[0, pivot)`. `u` is unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: Vec<Vec<i64>>,
    pub u: Vec<Vec<i64>>,
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coefficients `y` with `y H = x` over the nonzero rows, if they exist.
    pub fn solve(&self, x: &[i64]) -> Option<Vec<i64>> {
        let mut rest = x.to_vec();
        let mut y = Vec::with_capacity(self.rank());
        for (j, &p) in self.pivots.iter().enumerate() {
            let row = &self.h[j];
            if rest[p] % row[p] != 0 {
                return None;
            }
            let q = rest[p] / row[p];
            for (r, a) in rest.iter_mut().zip(row) {
                *r -= q * a;
            }
            y.push(q);
        }
        rest.iter().all(|&r| r == 0).then_some(y)
    }
}

fn sub_row(m: &mut [Vec<i64>], dst: usize, src: usize, q: i64) {
    if q == 0 {
        return;
    }
    for k in 0..m[dst].len() {
        let v = m[src][k];
        m[dst][k] -= q * v;
    }
}

pub fn hermite_normal_form(rows: &[Vec<i64>], ncols: usize) -> Hnf {
    let n = rows.len();
    let mut h: Vec<Vec<i64>> = rows.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == n {
            break;
        }
        let mut found = false;
        loop {
            let best = (r..n).filter(|&i| h[i][col] != 0).min_by_key(|&i| (h[i][col].abs(), i));
            let Some(p) = best else { break };
            found = true;
            h.swap(r, p);
            u.swap(r, p);
            let mut clean = true;
            for i in r + 1..n {
                let q = h[i][col] / h[r][col];
                sub_row(&mut h, i, r, q);
                sub_row(&mut u, i, r, q);
                clean &= h[i][col] == 0;
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h[r][col] < 0 {
            h[r].iter_mut().for_each(|x| *x = -*x);
            u[r].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..r {
            let q = h[i][col].div_euclid(h[r][col]);
            sub_row(&mut h, i, r, q);
            sub_row(&mut u, i, r, q);
        }
        pivots.push(col);
        r += 1;
    }
    Hnf { h, u, pivots }
}

/// A subgroup of `Z^rank`, stored as the nonzero rows of its Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    rank: usize,
    basis: Vec<AbVec>,
    hnf: Hnf,
}

impl Lattice {
    pub fn new(rank: usize, gens: &[AbVec]) -> Result<Lattice> {
        for g in gens {
            if g.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: g.rank() });
            }
        }
        let rows: Vec<Vec<i64>> = gens.iter().map(|g| g.0.clone()).collect();
        let full = hermite_normal_form(&rows, rank);
        let rows: Vec<Vec<i64>> = full.h[..full.rank()].to_vec();
        let hnf = hermite_normal_form(&rows, rank);
        let basis = hnf.h.iter().map(|r| AbVec(r.clone())).collect();
        Ok(Lattice { rank, basis, hnf })
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    /// HNF basis rows.
    pub fn basis(&self) -> &[AbVec] {
        &self.basis
    }

    /// Coordinates of `v` in the HNF basis when `v` lies in the lattice.
    pub fn membership(&self, v: &AbVec) -> Result<Option<Vec<i64>>> {
        self.check(v)?;
        Ok(self.hnf.solve(&v.0))
    }

    pub fn contains(&self, v: &AbVec) -> Result<bool> {
        Ok(self.membership(v)?.is_some())
    }

    fn check(&self, v: &AbVec) -> Result<()> {
        if v.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: v.rank() });
        }
        Ok(())
    }

    /// All `m` with `m g - x` in the lattice, as `(m0, d)` meaning `m0 + dZ`.
    fn solutions(&self, x: &AbVec, g: &AbVec) -> Result<Option<(i64, i64)>> {
        self.check(x)?;
        same_rank(x, g)?;
        let mut rows = Vec::with_capacity(self.basis.len() + 1);
        rows.push(g.0.clone());
        rows.extend(self.basis.iter().map(|b| b.0.clone()));
        let hnf = hermite_normal_form(&rows, self.rank);
        let d = hnf.u[hnf.rank()..].iter().fold(0, |acc, row| gcd(acc, row[0]));
        let Some(y) = hnf.solve(&x.0) else { return Ok(None) };
        let m0: i64 = y.iter().zip(&hnf.u).map(|(yj, uj)| yj * uj[0]).sum();
        Ok(Some((m0, d)))
    }

    /// Minimal-|m| solution of `m g ≡ x` modulo the lattice, `m = 0` allowed;
    /// positive `m` wins ties.
    pub fn power_coset_any(&self, x: &AbVec, g: &AbVec) -> Result<Option<i64>> {
        Ok(self.solutions(x, g)?.map(|(m0, d)| {
            if d == 0 {
                return m0;
            }
            let r = m0.rem_euclid(d);
            if r <= d - r {
                r
            } else {
                r - d
            }
        }))
    }

    /// Minimal-|m| nonzero solution of `m g ≡ x` modulo the lattice.
    pub fn power_coset(&self, x: &AbVec, g: &AbVec) -> Result<Option<i64>> {
        Ok(self.solutions(x, g)?.and_then(|(m0, d)| {
            if d == 0 {
                return (m0 != 0).then_some(m0);
            }
            let r = m0.rem_euclid(d);
            Some(match r {
                0 => d,
                r if r <= d - r => r,
                r => r - d,
            })
        }))
    }

    /// `k >= 0` with `L ∩ <c> = <k c>`.
    pub fn cyclic_intersection(&self, c: &AbVec) -> Result<u64> {
        if c.is_zero() {
            return Err(Error::TrivialElement("cyclic intersection generator"));
        }
        let zero = AbVec::zero(self.rank);
        let (_, d) = self.solutions(&zero, c)?.expect("zero is a solution");
        Ok(d.unsigned_abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(x: &[i64]) -> AbVec {
        AbVec(x.to_vec())
    }

    #[test]
    fn hnf_shape() {
        let hnf = hermite_normal_form(&[vec![4, 6], vec![2, 2], vec![6, 8]], 2);
        assert_eq!(hnf.rank(), 2);
        assert_eq!(&hnf.h[..2], &[vec![2, 0], vec![0, 2]]);
        let m = [[4, 6], [2, 2], [6, 8]];
        for (i, row) in hnf.u.iter().enumerate() {
            let prod: Vec<i64> = (0..2).map(|c| row.iter().zip(&m).map(|(a, r)| a * r[c]).sum()).collect();
            assert_eq!(prod, hnf.h[i]);
        }
    }

    #[test]
    fn membership_examples() {
        let l = Lattice::new(2, &[v(&[2, 0]), v(&[0, 2])]).unwrap();
        assert_eq!(l.membership(&v(&[4, 2])).unwrap(), Some(vec![2, 1]));
        assert_eq!(l.membership(&v(&[1, 0])).unwrap(), None);
        let l = Lattice::new(2, &[v(&[1, 2])]).unwrap();
        assert_eq!(l.membership(&v(&[3, 6])).unwrap(), Some(vec![3]));
        assert!(l.membership(&v(&[1])).is_err());
    }

    #[test]
    fn power_coset_examples() {
        let two = Lattice::new(2, &[v(&[2, 0]), v(&[0, 2])]).unwrap();
        assert_eq!(two.power_coset(&v(&[1, 1]), &v(&[1, 1])).unwrap(), Some(1));
        let l = Lattice::new(2, &[v(&[3, 0])]).unwrap();
        assert_eq!(l.power_coset(&v(&[0, 1]), &v(&[1, 0])).unwrap(), None);
        let l = Lattice::new(2, &[v(&[2, 2])]).unwrap();
        assert_eq!(l.power_coset(&v(&[4, 4]), &v(&[1, 1])).unwrap(), Some(2));
        assert_eq!(l.power_coset_any(&v(&[4, 4]), &v(&[1, 1])).unwrap(), Some(0));
        let l = Lattice::new(1, &[v(&[5])]).unwrap();
        assert_eq!(l.power_coset(&v(&[3]), &v(&[1])).unwrap(), Some(-2));
        assert_eq!(l.power_coset(&v(&[0]), &v(&[1])).unwrap(), Some(5));
    }

    #[test]
    fn cyclic_intersection_examples() {
        let two = Lattice::new(2, &[v(&[2, 0]), v(&[0, 2])]).unwrap();
        assert_eq!(two.cyclic_intersection(&v(&[1, 0])).unwrap(), 2);
        let l = Lattice::new(2, &[v(&[1, 1])]).unwrap();
        assert_eq!(l.cyclic_intersection(&v(&[1, 0])).unwrap(), 0);
        let l = Lattice::new(2, &[v(&[2, 4])]).unwrap();
        assert_eq!(l.cyclic_intersection(&v(&[1, 2])).unwrap(), 2);
        assert!(l.cyclic_intersection(&v(&[0, 0])).is_err());
    }
}

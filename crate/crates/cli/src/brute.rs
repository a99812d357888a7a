//! Bounded enumeration oracles. Subgroup elements are products of at most
//! `maxlen` factors from `H ∪ H^-1`; candidate equalities are found by
//! fingerprinting with random representations into `SL(2, F_p)` and then
//! confirmed with the exact word problem, so a hash collision can never
//! produce a false positive.
//!
//! Negative answers only mean "not found within the bound".

use std::collections::HashMap;

use limitfold_core::{Elem, ExtensionChain, Group, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: u64 = (1 << 31) - 1;

/// A 2x2 matrix over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat([u64; 4]);

impl Mat {
    const ONE: Mat = Mat([1, 0, 0, 1]);

    fn mul(&self, o: &Mat) -> Mat {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Mat([(a * e + b * g) % P, (a * f + b * h) % P, (c * e + d * g) % P, (c * f + d * h) % P])
    }

    fn inv(&self) -> Mat {
        let [a, b, c, d] = self.0;
        Mat([d, (P - b) % P, (P - c) % P, a])
    }

    fn pow(&self, m: i64) -> Mat {
        let mut base = if m < 0 { self.inv() } else { *self };
        let mut e = m.unsigned_abs();
        let mut acc = Mat::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    fn trace(&self) -> u64 {
        (self.0[0] + self.0[3]) % P
    }
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn random_sl2(rng: &mut ChaCha8Rng) -> Mat {
    let a = rng.gen_range(1..P);
    let b = rng.gen_range(0..P);
    let c = rng.gen_range(0..P);
    let d = (1 + b * c % P) % P * pow_mod(a, P - 2) % P;
    Mat([a, b, c, d])
}

/// A random determinant-one element `x I + y M` of the centralizer of `m`.
fn random_commuting(m: &Mat, rng: &mut ChaCha8Rng) -> Mat {
    let tr = m.trace();
    loop {
        let y = rng.gen_range(1..P);
        // x^2 + (y tr) x + (y^2 - 1) = 0
        let by = y * tr % P;
        let disc = (by * by % P + 4 * (P + 1 - y * y % P)) % P;
        let root = pow_mod(disc, (P + 1) / 4);
        if root * root % P != disc {
            continue;
        }
        let x = (P - by + root) % P * pow_mod(2, P - 2) % P;
        let t = Mat([(x + y * m.0[0]) % P, y * m.0[1] % P, y * m.0[2] % P, (x + y * m.0[3]) % P]);
        debug_assert_eq!(t.mul(m), m.mul(&t));
        return t;
    }
}

/// A family of random homomorphisms `Gn -> SL(2, F_p)`.
#[derive(Clone, Debug)]
pub struct Fingerprint {
    reps: Vec<Rep>,
}

#[derive(Clone, Debug)]
struct Rep {
    base: Vec<Mat>,
    /// Per extension: the image of `g_l` followed by the new letters.
    levels: Vec<Vec<Mat>>,
}

pub type Key = Vec<Mat>;

impl Fingerprint {
    pub fn new(chain: &ExtensionChain, count: usize, seed: u64) -> Fingerprint {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut reps = Vec::new();
        for _ in 0..count {
            let base = (0..chain.base_rank()).map(|_| random_sl2(&mut rng)).collect();
            let mut rep = Rep { base, levels: Vec::new() };
            for l in 0..chain.top() {
                let g = rep.eval(chain, l, chain.centralized(l));
                let mut mats = vec![g];
                mats.extend((0..chain.extension_rank(l)).map(|_| random_commuting(&g, &mut rng)));
                rep.levels.push(mats);
            }
            reps.push(rep);
        }
        Fingerprint { reps }
    }

    pub fn key(&self, chain: &ExtensionChain, level: usize, x: &Elem) -> Key {
        self.reps.iter().map(|r| r.eval(chain, level, x)).collect()
    }
}

impl Rep {
    fn eval(&self, chain: &ExtensionChain, level: usize, x: &Elem) -> Mat {
        if level == 0 {
            return x.as_word().expect("level 0 element").letters().iter().fold(Mat::ONE, |acc, &l| {
                let m = self.base[l.unsigned_abs() as usize - 1];
                acc.mul(&if l > 0 { m } else { m.inv() })
            });
        }
        let a = chain.graph(level).expect("level graph");
        let p = x.as_path().expect("path element");
        let mut v = p.start();
        let mut acc = Mat::ONE;
        for (k, y) in p.elems().iter().enumerate() {
            if k > 0 {
                v = a.terminus(p.edges()[k - 1]);
            }
            let m = if v == 0 {
                self.eval(chain, level - 1, y)
            } else {
                let c = &y.as_ab().expect("vector element").0;
                c.iter().zip(&self.levels[level - 1]).fold(Mat::ONE, |acc, (&e, m)| acc.mul(&m.pow(e)))
            };
            acc = acc.mul(&m);
        }
        acc
    }
}

fn key_mul(a: &Key, b: &Key) -> Key {
    a.iter().zip(b).map(|(x, y)| x.mul(y)).collect()
}

fn key_inv(a: &Key) -> Key {
    a.iter().map(Mat::inv).collect()
}

/// All products of at most `radius` factors from a symmetric generating set,
/// without adjacent cancelling pairs, bucketed by fingerprint.
struct Ball {
    seqs: Vec<Vec<u8>>,
    keys: Vec<Key>,
    index: HashMap<Key, Vec<usize>>,
}

impl Ball {
    fn new(factor_keys: &[Key], radius: usize, identity: Key) -> Ball {
        let mut seqs: Vec<Vec<u8>> = vec![Vec::new()];
        let mut keys = vec![identity];
        let mut frontier = vec![0usize];
        for _ in 0..radius {
            let mut next = Vec::new();
            for &i in &frontier {
                for (f, fk) in factor_keys.iter().enumerate() {
                    let f = f as u8;
                    if seqs[i].last().is_some_and(|&l| l ^ 1 == f) {
                        continue;
                    }
                    let mut s = seqs[i].clone();
                    s.push(f);
                    keys.push(key_mul(&keys[i], fk));
                    seqs.push(s);
                    next.push(seqs.len() - 1);
                }
            }
            frontier = next;
        }
        let mut index: HashMap<Key, Vec<usize>> = HashMap::new();
        for (i, k) in keys.iter().enumerate() {
            index.entry(k.clone()).or_default().push(i);
        }
        Ball { seqs, keys, index }
    }
}

/// Bounded membership and power coset search for one subgroup of `Gi`.
pub struct BruteSubgroup<'a> {
    chain: &'a ExtensionChain,
    level: usize,
    group: Group,
    fp: Fingerprint,
    factors: Vec<Elem>,
    left: Ball,
    right: Ball,
}

impl<'a> BruteSubgroup<'a> {
    pub fn new(chain: &'a ExtensionChain, level: usize, h: &[Elem], maxlen: usize) -> BruteSubgroup<'a> {
        let group = chain.group(level);
        let fp = Fingerprint::new(chain, 2, 0x5eed);
        let mut factors = Vec::new();
        for y in h {
            factors.push(y.clone());
            factors.push(group.inv(y));
        }
        let factor_keys: Vec<Key> = factors.iter().map(|f| fp.key(chain, level, f)).collect();
        let identity = fp.key(chain, level, &group.identity());
        let left = Ball::new(&factor_keys, maxlen / 2, identity.clone());
        let right = Ball::new(&factor_keys, maxlen - maxlen / 2, identity);
        BruteSubgroup { chain, level, group, fp, factors, left, right }
    }

    fn product(&self, seq: &[u8]) -> Elem {
        seq.iter()
            .fold(self.group.identity(), |acc, &f| self.group.mul(&acc, &self.factors[f as usize]).expect("same group"))
    }

    /// Whether `x` is a product of at most `maxlen` factors.
    pub fn contains(&self, x: &Elem) -> bool {
        self.find(x).is_some()
    }

    /// Factor indices (`2i` for `h_i`, `2i + 1` for its inverse) of a product
    /// equal to `x`.
    pub fn find(&self, x: &Elem) -> Option<Vec<u8>> {
        let xk = self.fp.key(self.chain, self.level, x);
        for (i, uk) in self.left.keys.iter().enumerate() {
            let want = key_mul(&key_inv(uk), &xk);
            let Some(cands) = self.right.index.get(&want) else { continue };
            for &j in cands {
                let mut seq = self.left.seqs[i].clone();
                seq.extend_from_slice(&self.right.seqs[j]);
                if self.group.equal(&self.product(&seq), x).expect("same group") {
                    return Some(seq);
                }
            }
        }
        None
    }

    /// Least `|m|` in `1..=maxm`, positive first, with `g^m ∈ x H` found
    /// within the bound.
    pub fn power_coset(&self, x: &Elem, g: &Elem, maxm: i64) -> Option<i64> {
        let xi = self.group.inv(x);
        for k in 1..=maxm {
            for m in [k, -k] {
                let y = self.group.mul(&xi, &self.group.pow(g, m).expect("power")).expect("same group");
                if self.contains(&y) {
                    return Some(m);
                }
            }
        }
        None
    }
}

/// `brute_membership` with the default bound of 8 factors.
pub fn brute_membership(chain: &ExtensionChain, level: usize, h: &[Elem], x: &Elem, maxlen: usize) -> bool {
    BruteSubgroup::new(chain, level, h, maxlen).contains(x)
}

pub fn brute_pcm(
    chain: &ExtensionChain,
    level: usize,
    h: &[Elem],
    x: &Elem,
    g: &Elem,
    maxm: i64,
    maxlen: usize,
) -> Option<i64> {
    BruteSubgroup::new(chain, level, h, maxlen).power_coset(x, g, maxm)
}

/// Freely nontrivial words of length at most `maxlen` over `ngens` letters
/// whose evaluation under `eval` is trivial, found by meeting in the middle.
/// Returns the first relation found.
pub fn find_relation(chain: &ExtensionChain, level: usize, images: &[Elem], maxlen: usize) -> Option<Word> {
    let group = chain.group(level);
    let brute = BruteSubgroup::new(chain, level, images, maxlen);
    let letter = |f: u8| -> i32 {
        if f.is_multiple_of(2) {
            i32::from(f / 2) + 1
        } else {
            -(i32::from(f / 2) + 1)
        }
    };
    for (i, uk) in brute.left.keys.iter().enumerate() {
        let want = key_inv(uk);
        let Some(cands) = brute.right.index.get(&want) else { continue };
        for &j in cands {
            let mut seq = brute.left.seqs[i].clone();
            seq.extend_from_slice(&brute.right.seqs[j]);
            let w = Word::new(seq.iter().map(|&f| letter(f)));
            if w.is_empty() {
                continue;
            }
            if group.is_identity(&brute.product(&seq)).expect("same group") {
                return Some(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use limitfold_core::Limits;

    fn chain() -> ExtensionChain {
        ExtensionChain::from_text("base 2\nextend g=a rank 1 names t\n", Limits::default()).unwrap()
    }

    #[test]
    fn fingerprints_are_homomorphic() {
        let c = chain();
        let fp = Fingerprint::new(&c, 2, 1);
        let e = |w: &str| c.parse_element(1, w).unwrap();
        assert_eq!(fp.key(&c, 1, &e("[a,t]")), fp.key(&c, 1, &e("1")));
        assert_ne!(fp.key(&c, 1, &e("[b,t]")), fp.key(&c, 1, &e("1")));
        let (x, y) = (e("a t b^2"), e("t^-1 b a"));
        assert_eq!(key_mul(&fp.key(&c, 1, &x), &fp.key(&c, 1, &y)), fp.key(&c, 1, &c.group(1).mul(&x, &y).unwrap()));
    }

    #[test]
    fn membership_examples() {
        let c = chain();
        let e = |w: &str| c.parse_element(0, w).unwrap();
        assert!(brute_membership(&c, 0, &[e("a^2")], &e("a^4"), 8));
        assert!(!brute_membership(&c, 0, &[e("a^2")], &e("a^3"), 8));
        let e = |w: &str| c.parse_element(1, w).unwrap();
        assert!(brute_membership(&c, 1, &[e("a t"), e("b")], &e("t a b a^-1 t^-1"), 8));
        assert!(!brute_membership(&c, 1, &[e("a t"), e("b")], &e("t b a"), 8));
    }

    #[test]
    fn power_coset_examples() {
        let c = chain();
        let e = |w: &str| c.parse_element(1, w).unwrap();
        assert_eq!(brute_pcm(&c, 1, &[e("t")], &e("1"), &e("a"), 5, 6), None);
        assert_eq!(brute_pcm(&c, 1, &[e("a t")], &e("t^-1"), &e("a"), 5, 6), Some(1));
        assert_eq!(brute_pcm(&c, 1, &[e("b")], &e("b^-1"), &e("1"), 5, 6), Some(1));
    }

    #[test]
    fn relations() {
        let c = chain();
        let e = |w: &str| c.parse_element(1, w).unwrap();
        assert!(find_relation(&c, 1, &[e("a"), e("t")], 4).is_some());
        assert!(find_relation(&c, 1, &[e("b"), e("t b t^-1")], 10).is_none());
    }
}

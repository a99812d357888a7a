//! Knuth-Bendix completion of string rewriting systems under shortlex, used
//! to cross-check the word problem of `<a, b, t | [a, t]>`.

use std::cmp::Ordering;

/// Letters are bytes, ordered by their position in `order`.
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    order: [u8; 256],
    rules: Vec<(Vec<u8>, Vec<u8>)>,
}

#[derive(Debug, PartialEq, Eq)]
pub struct CompletionFailed;

impl RewritingSystem {
    /// Completes the system generated by `equations`. Fails if more than
    /// `max_rules` rules would be needed.
    pub fn complete(
        alphabet: &[u8],
        equations: &[(Vec<u8>, Vec<u8>)],
        max_rules: usize,
    ) -> Result<RewritingSystem, CompletionFailed> {
        let mut order = [u8::MAX; 256];
        for (i, &c) in alphabet.iter().enumerate() {
            order[c as usize] = i as u8;
        }
        let mut sys = RewritingSystem { order, rules: Vec::new() };
        let mut pending: Vec<(Vec<u8>, Vec<u8>)> = equations.to_vec();
        loop {
            while let Some((l, r)) = pending.pop() {
                sys.add(l, r, &mut pending);
                if sys.rules.len() > max_rules {
                    return Err(CompletionFailed);
                }
            }
            let pairs = sys.critical_pairs();
            let unresolved: Vec<_> = pairs
                .into_iter()
                .map(|(x, y)| (sys.normal_form(&x), sys.normal_form(&y)))
                .filter(|(x, y)| x != y)
                .collect();
            if unresolved.is_empty() {
                return Ok(sys);
            }
            pending.extend(unresolved);
        }
    }

    fn add(&mut self, l: Vec<u8>, r: Vec<u8>, pending: &mut Vec<(Vec<u8>, Vec<u8>)>) {
        let (l, r) = (self.normal_form(&l), self.normal_form(&r));
        let (l, r) = match self.shortlex(&l, &r) {
            Ordering::Equal => return,
            Ordering::Greater => (l, r),
            Ordering::Less => (r, l),
        };
        // Rules whose left side the new rule rewrites are re-queued.
        let mut kept = Vec::new();
        for (a, b) in self.rules.drain(..) {
            if find(&a, &l).is_some() {
                pending.push((a, b));
            } else {
                kept.push((a, b));
            }
        }
        self.rules = kept;
        self.rules.push((l, r));
    }

    fn shortlex(&self, a: &[u8], b: &[u8]) -> Ordering {
        let rank = |w: &[u8]| w.iter().map(|&c| self.order[c as usize]).collect::<Vec<_>>();
        a.len().cmp(&b.len()).then_with(|| rank(a).cmp(&rank(b)))
    }

    fn critical_pairs(&self) -> Vec<(Vec<u8>, Vec<u8>)> {
        let mut out = Vec::new();
        for (l1, r1) in &self.rules {
            for (l2, r2) in &self.rules {
                // Suffix of l1 equal to a prefix of l2.
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] == l2[..k] {
                        let mut x = r1.clone();
                        x.extend_from_slice(&l2[k..]);
                        let mut y = l1[..l1.len() - k].to_vec();
                        y.extend_from_slice(r2);
                        out.push((x, y));
                    }
                }
                // l2 inside l1.
                if l1 != l2 {
                    if let Some(i) = find(l1, l2) {
                        let mut y = l1[..i].to_vec();
                        y.extend_from_slice(r2);
                        y.extend_from_slice(&l1[i + l2.len()..]);
                        out.push((r1.clone(), y));
                    }
                }
            }
        }
        out
    }

    pub fn normal_form(&self, w: &[u8]) -> Vec<u8> {
        let mut w = w.to_vec();
        'outer: loop {
            for (l, r) in &self.rules {
                if let Some(i) = find(&w, l) {
                    w.splice(i..i + l.len(), r.iter().copied());
                    continue 'outer;
                }
            }
            return w;
        }
    }

    pub fn rules(&self) -> &[(Vec<u8>, Vec<u8>)] {
        &self.rules
    }
}

fn find(hay: &[u8], needle: &[u8]) -> Option<usize> {
    if needle.is_empty() || needle.len() > hay.len() {
        return None;
    }
    hay.windows(needle.len()).position(|w| w == needle)
}

/// Shortlex rewriting for `<a, b, t | [a, t]>` over `a < A < b < B < t < T`
/// (capitals are inverses).
pub fn level_one_system() -> Result<RewritingSystem, CompletionFailed> {
    let mut eqs: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
    for (x, y) in [(b'a', b'A'), (b'b', b'B'), (b't', b'T')] {
        eqs.push((vec![x, y], vec![]));
        eqs.push((vec![y, x], vec![]));
    }
    for t in *b"tT" {
        for a in *b"aA" {
            eqs.push((vec![t, a], vec![a, t]));
        }
    }
    RewritingSystem::complete(b"aAbBtT", &eqs, 1000)
}

/// Converts a word over `a, b, t` (letters 1, 2, 3) into the byte alphabet.
pub fn encode(letters: &[i32]) -> Vec<u8> {
    letters
        .iter()
        .map(|&l| {
            let base = b"abt"[l.unsigned_abs() as usize - 1];
            if l > 0 {
                base
            } else {
                base.to_ascii_uppercase()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_examples() {
        let sys = level_one_system().unwrap();
        assert_eq!(sys.normal_form(b"ATat"), b"");
        assert_eq!(sys.normal_form(b"tb"), b"tb");
        assert_eq!(sys.normal_form(b"tab"), b"atb");
        assert_eq!(sys.normal_form(b"BTbt"), b"BTbt");
        assert_eq!(sys.rules().len(), 10);
    }

    #[test]
    fn completion_adds_rules() {
        // <x, y | x y = y x> over x < X < y < Y; completion supplies the
        // mixed-sign commutations.
        let mut eqs = vec![
            (b"xX".to_vec(), vec![]),
            (b"Xx".to_vec(), vec![]),
            (b"yY".to_vec(), vec![]),
            (b"Yy".to_vec(), vec![]),
        ];
        eqs.push((b"yx".to_vec(), b"xy".to_vec()));
        let sys = RewritingSystem::complete(b"xXyY", &eqs, 100).unwrap();
        assert_eq!(sys.rules().len(), 8);
        assert_eq!(sys.normal_form(b"YxyX"), b"");
    }
}

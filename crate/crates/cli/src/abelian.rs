//! Abelianization of chain groups, used to certify negative answers.
//!
//! `Gi` maps onto `Z^N` with `N = k + r_0 + ... + r_(i-1)`: base letters and
//! new letters go to standard basis vectors, and the first coordinate of a
//! free abelian vertex element is sent through the image of `g_l`.

use limitfold_core::{AbVec, Elem, ExtensionChain, Lattice};

pub fn abelianize(chain: &ExtensionChain, level: usize, x: &Elem) -> AbVec {
    let n = chain.num_letters(level);
    let mut out = vec![0i64; n];
    add_image(chain, level, x, 1, &mut out);
    AbVec(out)
}

fn add_image(chain: &ExtensionChain, level: usize, x: &Elem, scale: i64, out: &mut [i64]) {
    if level == 0 {
        for &l in x.as_word().expect("level 0 element").letters() {
            out[l.unsigned_abs() as usize - 1] += scale * i64::from(l.signum());
        }
        return;
    }
    let a = chain.graph(level).expect("level graph");
    let p = x.as_path().expect("path element");
    let offset = chain.num_letters(level - 1);
    let mut v = p.start();
    for (k, y) in p.elems().iter().enumerate() {
        if k > 0 {
            v = a.terminus(p.edges()[k - 1]);
        }
        if v == 0 {
            add_image(chain, level - 1, y, scale, out);
            continue;
        }
        let c = &y.as_ab().expect("vector element").0;
        if c[0] != 0 {
            add_image(chain, level - 1, chain.centralized(level - 1), scale * c[0], out);
        }
        for (j, &cj) in c.iter().enumerate().skip(1) {
            out[offset + j - 1] += scale * cj;
        }
    }
}

/// `Some(false)` when the abelianization proves `x ∉ H`; `None` when it
/// proves nothing.
pub fn membership_certificate(chain: &ExtensionChain, level: usize, h: &[Elem], x: &Elem) -> Option<bool> {
    let lattice = image_lattice(chain, level, h);
    let xb = abelianize(chain, level, x);
    (!lattice.contains(&xb).expect("ranks agree")).then_some(false)
}

/// True when the abelianization proves that no `m != 0` has `g^m ∈ x H`.
pub fn pcm_no_certificate(chain: &ExtensionChain, level: usize, h: &[Elem], x: &Elem, g: &Elem) -> bool {
    let lattice = image_lattice(chain, level, h);
    let xb = abelianize(chain, level, x);
    let gb = abelianize(chain, level, g);
    if gb.is_zero() {
        return !lattice.contains(&xb).expect("ranks agree");
    }
    // g^m ∈ xH maps to m gb - xb ∈ H̄, that is m gb ∈ xb + H̄.
    lattice.power_coset(&xb, &gb).expect("ranks agree").is_none()
}

fn image_lattice(chain: &ExtensionChain, level: usize, h: &[Elem]) -> Lattice {
    let n = chain.num_letters(level);
    let gens: Vec<AbVec> = h.iter().map(|y| abelianize(chain, level, y)).collect();
    Lattice::new(n, &gens).expect("ranks agree")
}

/// Rank of the abelianization of a finite presentation, over the rationals.
pub fn presentation_abelian_rank(ngens: usize, relators: &[limitfold_core::Word]) -> usize {
    let rows: Vec<AbVec> = relators
        .iter()
        .map(|r| {
            let mut v = vec![0i64; ngens];
            for &l in r.letters() {
                v[l.unsigned_abs() as usize - 1] += i64::from(l.signum());
            }
            AbVec(v)
        })
        .collect();
    let lattice = Lattice::new(ngens, &rows).expect("ranks agree");
    ngens - lattice.basis().len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use limitfold_core::Limits;

    #[test]
    fn images() {
        let c = ExtensionChain::from_text("base 2\nextend g=a b rank 1 names t\n", Limits::default()).unwrap();
        let x = c.parse_element(1, "t^2 a b^-1 t (a b)^3").unwrap();
        assert_eq!(abelianize(&c, 1, &x).0, vec![4, 2, 3]);
        let h = [c.parse_element(1, "t").unwrap()];
        assert_eq!(membership_certificate(&c, 1, &h, &c.parse_element(1, "a").unwrap()), Some(false));
        assert_eq!(membership_certificate(&c, 1, &h, &c.parse_element(1, "[a,b] t").unwrap()), None);
        let g = c.parse_element(1, "a").unwrap();
        assert!(pcm_no_certificate(&c, 1, &h, &c.parse_element(1, "b").unwrap(), &g));
        assert!(!pcm_no_certificate(&c, 1, &h, &c.parse_element(1, "a^2 t").unwrap(), &g));
    }
}

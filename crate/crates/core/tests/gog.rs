use std::sync::Arc;

use limitfold_core::literal::parse_apath;
use limitfold_core::{APath, AbVec, Elem, ExtensionChain, GraphOfGroups, Group, Limits, Word};
use proptest::prelude::*;

fn g1() -> Arc<GraphOfGroups> {
    let mut a = GraphOfGroups::new();
    let v0 = a.add_vertex(Group::Free { rank: 2 });
    let v1 = a.add_vertex(Group::Abelian { rank: 2 });
    a.add_edge(v0, v1, Elem::Word(Word::generator(0)), Elem::Ab(AbVec::unit(2, 0))).unwrap();
    Arc::new(a)
}

fn path(a: &GraphOfGroups, s: &str) -> APath {
    parse_apath(a, s).unwrap()
}

#[test]
fn elementary_reduction() {
    let a = g1();
    let p = path(&a, "1 ; e0 ; (1,0) ; e1 ; 1");
    assert_eq!(a.reduce(&p).unwrap(), path(&a, "a"));
    let q = path(&a, "1 ; e0 ; (1,0) ; e1 ; b");
    assert_eq!(a.reduce(&q).unwrap(), path(&a, "a b"));
    let r = path(&a, "b ; e0 ; (0,1) ; e1 ; 1");
    assert_eq!(a.reduce(&r).unwrap(), r);
    let s = path(&a, "1 ; e0 ; (0,0) ; e1 ; 1");
    let s = a.reduce(&s).unwrap();
    assert!(s.is_empty() && a.is_trivial(&s).unwrap());
}

#[test]
fn path_equality() {
    let a = g1();
    let p = path(&a, "b ; e0 ; (2,1) ; e1 ; a");
    assert!(a.path_equal(&p, &p).unwrap());
    assert!(a.path_equal(&path(&a, "a"), &path(&a, "1 ; e0 ; (1,0) ; e1 ; 1")).unwrap());
    assert!(!a.path_equal(&path(&a, "a"), &path(&a, "b")).unwrap());
    // Edge group elements slide across the edge.
    assert!(a.path_equal(&path(&a, "b a ; e0 ; (0,1) ; e1 ; 1"), &path(&a, "b ; e0 ; (1,1) ; e1 ; 1")).unwrap());
    assert!(a.path_equal(&path(&a, "b"), &path(&a, "1 ; e0 ; (0,0) ; e1 ; 1")).is_ok());
    assert!(a.path_equal(&path(&a, "b"), &path(&a, "1 ; e0 ; (0,1)")).is_err());
}

#[test]
fn cyclic_reduction() {
    let a = g1();
    let p = path(&a, "1 ; e0 ; (0,1) ; e1 ; b");
    let (c, z) = a.cyclically_reduce(&p).unwrap();
    assert_eq!(c, p);
    assert!(a.is_trivial(&z).unwrap());

    let p = path(&a, "b ; e0 ; (0,1) ; e1 ; b^-1");
    let (c, z) = a.cyclically_reduce(&p).unwrap();
    assert_eq!(c.len(), 0);
    assert_eq!(c.start(), 1);
    let back = a.concat(&a.concat(&z, &c).unwrap(), &a.inverse(&z)).unwrap();
    assert!(a.path_equal(&back, &p).unwrap());

    let p = path(&a, "b a");
    let (c, z) = a.cyclically_reduce(&p).unwrap();
    assert_eq!(c, p);
    assert!(z.is_empty() && a.is_trivial(&z).unwrap());
}

#[test]
fn literal_powers() {
    let a = g1();
    let p = path(&a, "b ; e0 ; (0,1) ; e1 ; b");
    assert_eq!(a.power_path(&p, 1).unwrap(), p);
    let p2 = a.power_path(&p, 2).unwrap();
    assert_eq!(p2, path(&a, "b ; e0 ; (0,1) ; e1 ; b^2 ; e0 ; (0,1) ; e1 ; b"));
    let pi = a.power_path(&p, -1).unwrap();
    assert!(a.is_trivial(&a.reduce(&a.concat(&p, &pi).unwrap()).unwrap()).unwrap());
    assert!(a.power_path(&p, 0).is_err());
    assert_eq!(a.power_of(&a.pow(&p, -3).unwrap(), &p).unwrap(), Some(-3));
    assert_eq!(a.power_of(&path(&a, "b"), &p).unwrap(), None);
}

fn chain() -> ExtensionChain {
    ExtensionChain::from_text("base 2\nextend g=a rank 1 names t\n", Limits::default()).unwrap()
}

fn word_strategy() -> impl Strategy<Value = String> {
    prop::collection::vec((0usize..3, prop::bool::ANY), 0..10).prop_map(|ls| {
        let names = ["a", "b", "t"];
        let parts: Vec<String> =
            ls.into_iter().map(|(i, inv)| if inv { format!("{}^-1", names[i]) } else { names[i].into() }).collect();
        parts.join(" ")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_is_equivalent_and_final(w in word_strategy()) {
        let c = chain();
        let a = c.graph(1).unwrap();
        // Build an unreduced path letter by letter.
        let mut p = APath::trivial(a, 0);
        for part in w.split_whitespace() {
            let x = c.parse_element(1, part).unwrap();
            p = a.concat(&p, x.as_path().unwrap()).unwrap();
        }
        let r = a.reduce(&p).unwrap();
        prop_assert!(a.path_equal(&r, &p).unwrap());
        prop_assert!(a.is_reduced(&r).unwrap());
    }

    #[test]
    fn power_path_matches_repeated_product(w in word_strategy(), m in -4i64..=4) {
        prop_assume!(m != 0);
        let c = chain();
        let a = c.graph(1).unwrap();
        let x = c.parse_element(1, &w).unwrap();
        let (cr, _) = a.cyclically_reduce(x.as_path().unwrap()).unwrap();
        prop_assume!(!a.is_trivial(&cr).unwrap());
        let lit = a.power_path(&cr, m).unwrap();
        let base = if m > 0 { cr.clone() } else { a.inverse(&cr) };
        let mut prod = APath::trivial(a, cr.start());
        for _ in 0..m.abs() {
            prod = a.mul(&prod, &base).unwrap();
        }
        prop_assert!(a.path_equal(&lit, &prod).unwrap());
        prop_assert!(a.is_reduced(&lit).unwrap());
    }

    #[test]
    fn cyclic_reduction_conjugates_back(w in word_strategy()) {
        let c = chain();
        let a = c.graph(1).unwrap();
        let p = c.parse_element(1, &w).unwrap();
        let p = p.as_path().unwrap();
        let (cr, z) = a.cyclically_reduce(p).unwrap();
        prop_assert!(a.is_cyclically_reduced(&cr).unwrap());
        let back = a.concat(&a.concat(&z, &cr).unwrap(), &a.inverse(&z)).unwrap();
        prop_assert!(a.path_equal(&back, p).unwrap());
    }
}

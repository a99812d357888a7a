use std::sync::Arc;

use limitfold_core::adjust::{
    apply_sequence, canonical_adjustments, enumerate_semi_canonical, left_adjustment, right_adjustment,
};
use limitfold_core::agraph::{build_coset_graph, build_subgroup_graph, FoldWitness};
use limitfold_core::pcm::{benign_check, pcm, Status};
use limitfold_core::readpower::{read_power, read_power_traced};
use limitfold_core::{
    AGraph, APath, AbVec, BPath, CosetOutcome, Elem, ExtensionChain, GraphOfGroups, Group, Limits, Word,
};

const G1: &str = "base 2\nextend g=a rank 1 names t\n";

fn chain() -> ExtensionChain {
    ExtensionChain::from_text(G1, Limits::default()).unwrap()
}

fn loops(c: &ExtensionChain, ws: &[&str]) -> Vec<APath> {
    ws.iter().map(|w| c.parse_element(1, w).unwrap().as_path().unwrap().clone()).collect()
}

fn a_elem() -> Elem {
    Elem::Word(Word::generator(0))
}

#[test]
fn fold_witnesses() {
    let c = chain();
    let a = c.graph(1).unwrap().clone();
    let mut b = AGraph::new(a.clone(), 0);
    assert!(b.is_folded().unwrap());

    let one = Elem::Word(Word::identity());
    let zero = Elem::Ab(AbVec::zero(2));
    let u1 = b.add_vertex(1, Vec::new());
    let u2 = b.add_vertex(1, Vec::new());
    b.add_edge(0, u1, 0, one.clone(), zero.clone()).unwrap();
    b.add_edge(0, u2, 0, one.clone(), zero.clone()).unwrap();
    assert!(matches!(b.fold_witness().unwrap(), Some(FoldWitness::Merge { vertex: 0, n: 0, .. })));

    let mut b = AGraph::new(a, 0);
    let sq = Elem::Word(Word::generator(0).pow(2));
    let b0 = b.add_vertex(0, vec![sq]);
    let b1 = b.add_vertex(1, Vec::new());
    b.add_edge(b0, b1, 0, one, zero).unwrap();
    match b.fold_witness().unwrap() {
        Some(FoldWitness::EdgeGroups { origin_k, terminus_k, .. }) => {
            assert_eq!((origin_k, terminus_k), (2, 0));
        }
        other => panic!("unexpected witness {other:?}"),
    }
    let folded = b.fold().unwrap();
    assert!(folded.agraph().clone().is_folded().unwrap());
}

#[test]
fn subgroup_graphs() {
    let c = chain();
    let a = c.graph(1).unwrap();
    let empty = build_subgroup_graph(a, 0, &[]).unwrap();
    assert_eq!((empty.num_vertices(), empty.num_edges()), (1, 0));

    let h = build_subgroup_graph(a, 0, &loops(&c, &["a"])).unwrap();
    assert_eq!(h.num_vertices(), 1);
    assert_eq!(h.vertex_gens(0), &[a_elem()]);

    let h = build_subgroup_graph(a, 0, &loops(&c, &["t"])).unwrap();
    assert_eq!(h.num_edges(), 2);
    for (w, member) in [("t", true), ("t^2", true), ("t^-3", true), ("a", false), ("a t", false), ("b t b^-1", false)] {
        let p = &loops(&c, &[w])[0];
        assert_eq!(h.read_membership(0, 0, p).unwrap().is_some(), member, "{w}");
    }

    let h = build_subgroup_graph(a, 0, &loops(&c, &["a", "t"])).unwrap();
    for (w, member) in [("t a", true), ("a^-2 t^5", true), ("b", false), ("t b", false)] {
        let p = &loops(&c, &[w])[0];
        assert_eq!(h.read_membership(0, 0, p).unwrap().is_some(), member, "{w}");
    }
    let text = h.to_text();
    assert_eq!(text, build_subgroup_graph(a, 0, &loops(&c, &["a", "t"])).unwrap().to_text());
}

#[test]
fn coset_graphs() {
    let c = chain();
    let a = c.graph(1).unwrap();
    let h = build_subgroup_graph(a, 0, &loops(&c, &["t"])).unwrap();
    let x = &loops(&c, &["b"])[0];
    assert!(matches!(build_coset_graph(&h, x).unwrap(), CosetOutcome::Element(_)));

    let x = &loops(&c, &["t^2"])[0];
    match build_coset_graph(&h, x).unwrap() {
        CosetOutcome::Element(y) => {
            let y = APath::vertex(0, y);
            let rest = a.mul(&a.inverse(&y), x).unwrap();
            assert!(h.read_membership(0, 0, &rest).unwrap().is_some());
        }
        CosetOutcome::Graph(_) => panic!("t^2 lies in <t>"),
    }

    let x = &loops(&c, &["b t"])[0];
    match build_coset_graph(&h, x).unwrap() {
        CosetOutcome::Element(y) => {
            let rest = a.mul(&a.inverse(&APath::vertex(0, y)), x).unwrap();
            assert!(h.read_membership(0, 0, &rest).unwrap().is_some());
        }
        CosetOutcome::Graph(_) => panic!("b t <t> = b <t>"),
    }

    let x = &loops(&c, &["t b"])[0];
    match build_coset_graph(&h, x).unwrap() {
        CosetOutcome::Graph(g) => {
            let ux = g.coset_vertex().unwrap();
            assert_ne!(ux, g.base());
            assert!(g.agraph().clone().is_folded().unwrap());
            for (w, member) in [("t b", true), ("t b t^-4", true), ("t^2 b t", false), ("b", false), ("t", false)] {
                let p = &loops(&c, &[w])[0];
                assert_eq!(g.read_membership(ux, g.base(), p).unwrap().is_some(), member, "{w}");
            }
        }
        CosetOutcome::Element(_) => panic!("t b <t> has no length-zero element"),
    }
}

#[test]
fn adjustments() {
    let c = chain();
    let a = c.graph(1).unwrap();
    let h = build_subgroup_graph(a, 0, &loops(&c, &["b t b^-1"])).unwrap();
    let f = *h.out_edges(0).first().unwrap();
    let fa = h.label_alpha(f).clone();
    let g = a.vertex_group(0);
    assert!(g.equal(&left_adjustment(&h, f, 0).unwrap(), &g.inv(&fa)).unwrap());
    let l1 = g.mul(&a_elem(), &g.inv(&fa)).unwrap();
    assert!(g.equal(&left_adjustment(&h, f, 1).unwrap(), &l1).unwrap());
    let fw = h.label_omega(f).clone();
    let gt = a.vertex_group(1);
    assert!(gt.equal(&right_adjustment(&h, f, 0).unwrap(), &gt.inv(&fw)).unwrap());

    // B_{o(f)} is trivial here, so only a = f_alpha alpha^-c0 has adjustments.
    assert_eq!(canonical_adjustments(&h, f, &fa).unwrap(), vec![0]);
    let shifted = g.mul(&fa, &Elem::Word(Word::generator(0).pow(-3))).unwrap();
    let shifted = g.mul(&g.mul(&fa, &g.inv(&fa)).unwrap(), &shifted).unwrap();
    assert_eq!(canonical_adjustments(&h, f, &shifted).unwrap().len(), 1);
    assert!(canonical_adjustments(&h, f, &Elem::Word(Word::generator(1).pow(5))).unwrap().is_empty());

    let p = &loops(&c, &["b t b^-1"])[0];
    let sc = enumerate_semi_canonical(&h, p, 0, 0).unwrap();
    assert!(!sc.is_empty());
    for q in &sc {
        assert!(a.path_equal(&h.mu(q).unwrap(), p).unwrap());
    }
    assert!(enumerate_semi_canonical(&h, &loops(&c, &["t"])[0], 0, 0).unwrap().is_empty());

    let one = BPath { start: 0, end: 0, elems: vec![Elem::Word(Word::identity())], edges: vec![] };
    let trivial = APath::trivial(a, 0);
    let q = apply_sequence(&h, &trivial, 0, &Default::default()).unwrap();
    assert_eq!(q, one);
}

#[test]
fn power_reading() {
    let c = chain();
    let a = c.graph(1).unwrap();
    let p = &loops(&c, &["a"])[0];
    let h = build_subgroup_graph(a, 0, &loops(&c, &["t a^2 t^-1"])).unwrap();
    let r = read_power(&h, p, 0, 0, None).unwrap().unwrap();
    assert_eq!(r.m, 2);
    assert!(a.path_equal(&h.mu(&r.path).unwrap(), &a.pow(p, 2).unwrap()).unwrap());

    let h = build_subgroup_graph(a, 0, &loops(&c, &["a^3"])).unwrap();
    assert_eq!(read_power(&h, p, 0, 0, None).unwrap().unwrap().m, 3);
    let h = build_subgroup_graph(a, 0, &loops(&c, &["b"])).unwrap();
    assert!(read_power(&h, p, 0, 0, None).unwrap().is_none());

    let q = &loops(&c, &["b t"])[0];
    let h = build_subgroup_graph(a, 0, &loops(&c, &["(b t)^3", "a"])).unwrap();
    let mut trace = Vec::new();
    let r = read_power_traced(&h, q, 0, 0, None, &mut trace).unwrap();
    assert_eq!(r.unwrap().m, 3);
    let mut seen = std::collections::HashSet::new();
    for row in &trace {
        if let Some(label) = row.label {
            assert!(seen.insert((label, row.residue)), "duplicate tree edge {label:?}");
        }
    }
}

#[test]
fn power_coset_examples() {
    let c = chain();
    let a = c.graph(1).unwrap();
    let l = |w: &str| loops(&c, &[w]).remove(0);
    let r = pcm(a, &loops(&c, &["t"]), &l("1"), &l("a")).unwrap();
    assert!(r.is_none());
    let r = pcm(a, &loops(&c, &["a t"]), &l("t^-1"), &l("a")).unwrap().unwrap();
    assert_eq!(r.m, 1);
    let r = pcm(a, &loops(&c, &["b t a", "b"]), &l("1"), &l("b t a")).unwrap().unwrap();
    assert_eq!(r.m, 1);
    let r = pcm(a, &loops(&c, &["b^3"]), &l("b^-1"), &l("b")).unwrap().unwrap();
    assert_eq!(r.m, -1);
    let r = pcm(a, &loops(&c, &["b^2"]), &l("b^-1"), &l("b")).unwrap().unwrap();
    assert_eq!(r.m, 1);
    assert!(pcm(a, &[], &l("1"), &l("a a^-1")).is_err());
}

#[test]
fn benign_reports() {
    let c = chain();
    let report = benign_check(c.graph(1).unwrap());
    assert!(report.iter().all(|e| e.status != Status::Fail));
    assert_eq!(report.iter().filter(|e| e.status == Status::Assume).count(), 1);
    assert_eq!(
        report.iter().find(|e| e.status == Status::Assume).unwrap().to_string(),
        "ASSUME double-coset-finiteness v0"
    );

    assert!(benign_check(&GraphOfGroups::new()).is_empty());

    let mut g = GraphOfGroups::new();
    let v0 = g.add_vertex(Group::Free { rank: 2 });
    let v1 = g.add_vertex(Group::Abelian { rank: 2 });
    g.add_edge_images(
        v0,
        v1,
        vec![a_elem(), Elem::Word(Word::generator(1))],
        vec![Elem::Ab(AbVec::unit(2, 0)), Elem::Ab(AbVec::unit(2, 1))],
    )
    .unwrap();
    let g = Arc::new(g);
    assert!(benign_check(&g).iter().any(|e| e.status == Status::Fail && e.hypothesis == "edge-group-cyclic"));
}

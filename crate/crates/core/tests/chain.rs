use limitfold_core::{Elem, Error, ExtensionChain, Limits};

const G1: &str = "base 2\nextend g=a rank 1 names t\n";
const G2: &str = "base 2\nextend g=a rank 1 names t\nextend g=b t rank 1 names s\n";

fn chain(text: &str) -> ExtensionChain {
    ExtensionChain::from_text(text, Limits::default()).unwrap()
}

fn elems(c: &ExtensionChain, i: usize, ws: &[&str]) -> Vec<Elem> {
    ws.iter().map(|w| c.parse_element(i, w).unwrap()).collect()
}

#[test]
fn word_problem_level_one() {
    let c = chain(G1);
    assert!(c.word_problem(1, "[a,t]").unwrap());
    assert!(!c.word_problem(1, "[b,t]").unwrap());
    assert!(c.word_problem(1, "").unwrap());
    assert!(c.word_problem(1, "t a t^-1 a^-1").unwrap());
    assert!(!c.word_problem(1, "t a b t^-1 b^-1 a^-1").unwrap());
    assert!(c.word_problem(1, "a a^-1").unwrap());
}

#[test]
fn default_extension_names() {
    let c = chain("base 2\nextend g=a rank 2\n");
    assert!(c.word_problem(1, "[a,t1.2]").unwrap());
    assert!(c.word_problem(1, "[t1.1,t1.2]").unwrap());
    assert!(c.word_problem(1, "t t1^-1").unwrap());
    let x = c.parse_element(1, "a t1.1^-2").unwrap();
    assert_eq!(x.as_path().unwrap().len(), 2);
}

#[test]
fn two_extensions() {
    let c = chain(G2);
    assert_eq!(c.letter_names(2), ["a", "b", "t", "s"]);
    assert!(c.word_problem(2, "[b t, s]").unwrap());
    assert!(c.word_problem(2, "[a,t]").unwrap());
    assert!(!c.word_problem(2, "[b,s]").unwrap());
    assert!(!c.word_problem(2, "[a,s]").unwrap());
}

#[test]
fn rejects_bad_chains() {
    let r = ExtensionChain::from_text("base 2\nextend g=a^2 rank 1\n", Limits::default());
    assert!(matches!(r, Err(Error::ProperPower(_))));
    let r = ExtensionChain::from_text("base 2\nextend g=a a^-1 rank 1\n", Limits::default());
    assert!(matches!(r, Err(Error::TrivialElement(_))));
    assert!(matches!(ExtensionChain::from_text("extend g=a rank 1", Limits::default()), Err(Error::Parse(_))));
    let r = ExtensionChain::from_text("base 2\nextend g=a rank 1 names t\nextend g=t rank 1\n", Limits::default());
    assert!(r.is_err());
    let r =
        ExtensionChain::from_text("base 2\nextend g=a rank 1 names t\nextend g=(b t)^2 rank 1\n", Limits::default());
    assert!(matches!(r, Err(Error::ProperPower(_))));
    let r =
        ExtensionChain::from_text("base 2\nextend g=a rank 1 names t\nextend g=b a b^-1 rank 1\n", Limits::default());
    assert!(r.is_err());
}

#[test]
fn print_round_trip() {
    let c = chain(G2);
    for w in ["a t1.1^-2", "b t s^3 a", "1", "t a^2 b^-1 s t^-1", "(b t)^2 s"] {
        let w = w.replace("t1.1", "t");
        let x = c.parse_element(2, &w).unwrap();
        let printed = c.print_element(2, &x).unwrap();
        let y = c.parse_element(2, &printed).unwrap();
        assert!(c.group(2).equal(&x, &y).unwrap(), "{w} -> {printed}");
    }
}

#[test]
fn presentations() {
    let c = chain(G1);
    let p = c.subgroup_presentation(1, &elems(&c, 1, &["a", "t"])).unwrap();
    assert_eq!(p.presentation.generators.len(), 2);
    assert_eq!(p.presentation.relators.len(), 1);
    assert_eq!(p.presentation.relators[0].len(), 4);
    let p = c.subgroup_presentation(1, &[]).unwrap();
    assert!(p.presentation.generators.is_empty() && p.presentation.relators.is_empty());
    let x = elems(&c, 1, &["b", "t b t^-1"]);
    let p = c.subgroup_presentation(1, &x).unwrap();
    assert_eq!(p.presentation.generators.len(), 2);
    assert!(p.presentation.relators.is_empty());
    for y in &x {
        let w = p.express(y).unwrap().unwrap();
        assert!(c.group(1).equal(&p.evaluate(&w).unwrap(), y).unwrap());
    }
    assert!(p.express(&c.parse_element(1, "t").unwrap()).unwrap().is_none());
}

#[test]
fn power_coset() {
    let c = chain(G1);
    let e = |w: &str| c.parse_element(1, w).unwrap();
    assert_eq!(c.power_coset(1, &[e("a t")], &e("t^-1"), &e("a")).unwrap(), Some(1));
    assert_eq!(c.power_coset(1, &[e("t")], &e("1"), &e("a")).unwrap(), None);
    assert_eq!(c.power_coset(1, &[e("a^2")], &e("1"), &e("a")).unwrap(), Some(2));
    assert_eq!(c.power_coset(1, &[e("b")], &e("b"), &e("b")).unwrap(), Some(1));
    assert!(c.power_coset(1, &[], &e("1"), &e("1")).is_err());
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn word(names: &'static [&'static str], max: usize) -> impl Strategy<Value = String> {
        prop::collection::vec((0..names.len(), -2i32..=2), 0..max).prop_map(move |ls| {
            let parts: Vec<String> =
                ls.into_iter().filter(|&(_, e)| e != 0).map(|(i, e)| format!("{}^{e}", names[i])).collect();
            parts.join(" ")
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn print_parse_round_trip(w in word(&["a", "b", "t", "s"], 8)) {
            let c = chain(G2);
            let x = c.parse_element(2, &w).unwrap();
            let printed = c.print_element(2, &x).unwrap();
            let y = c.parse_element(2, &printed).unwrap();
            prop_assert!(c.group(2).equal(&x, &y).unwrap(), "{} -> {}", w, printed);
        }

        #[test]
        fn layering_preserves_word_problem(w in word(&["a", "b", "t"], 8)) {
            let c = chain(G2);
            prop_assert_eq!(c.word_problem(1, &w).unwrap(), c.word_problem(2, &w).unwrap());
        }

        #[test]
        fn presentations_are_sound(ws in prop::collection::vec(word(&["a", "b", "t"], 4), 1..3)) {
            let c = chain(G1);
            let group = c.group(1);
            let x: Vec<Elem> = ws.iter().map(|w| c.parse_element(1, w).unwrap()).collect();
            let p = c.subgroup_presentation(1, &x).unwrap();
            for r in &p.presentation.relators {
                prop_assert!(group.is_identity(&p.evaluate(r).unwrap()).unwrap());
            }
            for y in &x {
                let w = p.express(y).unwrap().unwrap();
                prop_assert!(group.equal(&p.evaluate(&w).unwrap(), y).unwrap());
            }
        }
    }
}

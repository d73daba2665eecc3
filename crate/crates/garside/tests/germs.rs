mod common;

use common::{base, base_of, Monoid};
use garside::germ::BALL_CAP;
use garside::normal::normalize;
use garside::{GarsideStructure, Germ, GermVerdict};

fn braid_germ() -> Germ {
    Germ::monoid(
        &["1", "a", "b", "ab", "ba", "Δ"],
        "1",
        &[("a", "b", "ab"), ("a", "ba", "Δ"), ("b", "a", "ba"), ("b", "ab", "Δ"), ("ab", "a", "Δ"), ("ba", "b", "Δ")],
    )
    .unwrap()
}

fn abelian_germ() -> Germ {
    Germ::monoid(&["1", "a", "b", "ab"], "1", &[("a", "b", "ab"), ("b", "a", "ab")]).unwrap()
}

fn fixtures() -> Vec<(Germ, Monoid)> {
    vec![(braid_germ(), Monoid::braid()), (abelian_germ(), Monoid::free_abelian())]
}

fn names(g: &Germ, w: &[usize]) -> Vec<String> {
    w.iter().map(|&e| g.name(e).to_string()).collect()
}

fn base_word(g: &Germ, w: &[usize]) -> String {
    names(g, w).iter().map(|n| base(n)).collect()
}

#[test]
fn witnesses_are_equivalent_and_greedy() {
    for (g, m) in fixtures() {
        let table = g.witness_table().unwrap();
        for (&(a1, a2), &(b1, b2)) in &table {
            let lhs = base_word(&g, &[a1, a2]);
            assert!(m.equiv(&lhs, &base_word(&g, &[b1, b2])), "{} {}", g.name(a1), g.name(a2));
            // Every family element below a1·a2 is already below b1.
            for s in 0..g.len() {
                let bs = base(g.name(s));
                if m.divides(&bs, &lhs) {
                    assert!(m.divides(&bs, &base(g.name(b1))), "{} under {lhs}", g.name(s));
                }
            }
        }
    }
}

#[test]
fn ball_elements_are_distinct_classes() {
    for (g, m) in fixtures() {
        let ball = g.enumerate_ball(4, BALL_CAP).unwrap();
        let bases: Vec<String> = ball.iter().map(|w| base_word(&g, w)).collect();
        for i in 0..bases.len() {
            for j in i + 1..bases.len() {
                assert!(!m.equiv(&bases[i], &bases[j]), "{} ~ {}", bases[i], bases[j]);
            }
        }
        // Every product of at most four generators lands in the ball.
        for w in m.words(4) {
            assert!(bases.iter().any(|b| m.equiv(b, &w)), "{w} missing");
        }
    }
}

#[test]
fn ball_normal_forms_are_unique_per_class() {
    for (g, m) in fixtures() {
        let s = GarsideStructure::from_germ(&g).unwrap();
        let mut seen: Vec<(Vec<String>, String)> = Vec::new();
        for w in g.enumerate_ball(4, BALL_CAP).unwrap() {
            let nf = normalize(&s, 0, &w).unwrap();
            assert!(nf.is_normal(&s));
            let nf_names = names(&g, &nf.entries);
            let refs: Vec<&str> = nf_names.iter().map(String::as_str).collect();
            let b = base_word(&g, &w);
            assert!(m.equiv(&base_of(&refs), &b));
            assert!(seen.iter().all(|(n, _)| *n != nf_names), "{nf_names:?} repeated");
            seen.push((nf_names, b));
        }
    }
}

#[test]
fn ball_sizes() {
    for (g, m) in fixtures() {
        let mut classes: Vec<String> = Vec::new();
        for w in m.words(4) {
            if !classes.iter().any(|c| m.equiv(c, &w)) {
                classes.push(w);
            }
        }
        // Family elements of the germ may be longer than a letter, so the
        // ball of radius 4 contains at least the classes of 4-letter words.
        let ball = g.enumerate_ball(4, BALL_CAP).unwrap();
        assert!(ball.len() >= classes.len());
    }
    assert_eq!(braid_germ().enumerate_ball(1, BALL_CAP).unwrap().len(), 6);
    assert_eq!(braid_germ().enumerate_ball(4, BALL_CAP).unwrap().len(), 109);
}

#[test]
fn square_germ_has_no_normal_decomposition_of_a_cubed() {
    let g = Germ::monoid(
        &["1", "a", "b", "a2", "ab"],
        "1",
        &[("a", "a", "a2"), ("a", "b", "ab"), ("b", "a", "ab"), ("b", "b", "a2")],
    )
    .unwrap();
    let e = |n| g.find(n).unwrap();
    assert_eq!(g.recognize(), GermVerdict::NoGreatest(e("a"), e("a2")));
    assert!(GarsideStructure::from_germ(&g).is_err());

    // Oracle: a2 is `c`, ab is `d`.
    let m = Monoid::new("abcd", &[("aa", "c"), ("ab", "d"), ("ba", "d"), ("bb", "c")], 6);
    let family = ["a", "b", "c", "d"];
    let cube = "aaa";
    let below: Vec<&str> = family.iter().copied().filter(|s| m.divides(s, cube)).collect();
    assert!(below.contains(&"c") && below.contains(&"d"));
    let mut splits = 0;
    for s1 in family {
        for s2 in family {
            if m.equiv(&format!("{s1}{s2}"), cube) {
                splits += 1;
                assert!(below.iter().any(|s| !m.divides(s, s1)), "{s1}|{s2} would be greedy");
            }
        }
    }
    assert!(splits > 0);
}

//! Independent oracles for the integration tests. Nothing here calls into
//! the library: equivalence is brute-force relation closure on words over
//! single-character letters, and B₃ group words are checked with the
//! reduced Burau representation (faithful on three strands).
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A monoid presentation over single-character letters.
pub struct Monoid {
    pub letters: Vec<char>,
    pub rels: Vec<(String, String)>,
    /// Words longer than this are not explored.
    pub max_len: usize,
}

impl Monoid {
    pub fn new(letters: &str, rels: &[(&str, &str)], max_len: usize) -> Self {
        Monoid {
            letters: letters.chars().collect(),
            rels: rels.iter().map(|(l, r)| (l.to_string(), r.to_string())).collect(),
            max_len,
        }
    }

    pub fn braid() -> Self {
        Monoid::new("ab", &[("aba", "bab")], 24)
    }

    pub fn free_abelian() -> Self {
        Monoid::new("ab", &[("ab", "ba")], 24)
    }

    /// All words reachable from `w` by applying relations in either
    /// direction.
    pub fn class(&self, w: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::from([w.to_string()]);
        let mut queue = VecDeque::from([w.to_string()]);
        while let Some(x) = queue.pop_front() {
            for (l, r) in &self.rels {
                for (from, to) in [(l, r), (r, l)] {
                    let mut start = 0;
                    while let Some(k) = x[start..].find(from.as_str()) {
                        let i = start + k;
                        let y = format!("{}{}{}", &x[..i], to, &x[i + from.len()..]);
                        if y.len() <= self.max_len && seen.insert(y.clone()) {
                            queue.push_back(y);
                        }
                        start = i + from.chars().next().map_or(1, |c| c.len_utf8());
                    }
                }
            }
        }
        seen
    }

    pub fn equiv(&self, u: &str, v: &str) -> bool {
        u == v || self.class(u).contains(v)
    }

    /// `[u]` left-divides `[v]`: some word for `v` has a prefix equivalent to `u`.
    pub fn divides(&self, u: &str, v: &str) -> bool {
        let cu = self.class(u);
        self.class(v).iter().any(|w| (0..=w.len()).any(|k| w.is_char_boundary(k) && cu.contains(&w[..k])))
    }

    /// All words of length at most `n`, shortlex.
    pub fn words(&self, n: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for w in &layer {
                for &c in &self.letters {
                    next.push(format!("{w}{c}"));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// Base word of a family element name: `Δ` is `aba`, identities are empty,
/// dotted names lose their dots.
pub fn base(name: &str) -> String {
    if name == "1" || name.starts_with("1_") || name == "ε" {
        return String::new();
    }
    name.replace('Δ', "aba").replace('.', "")
}

pub fn base_of(names: &[&str]) -> String {
    names.iter().map(|n| base(n)).collect()
}

/// Laurent polynomials in `t` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent(BTreeMap<i32, i64>);

impl Laurent {
    pub fn c(k: i64) -> Self {
        Laurent::mono(k, 0)
    }

    pub fn mono(k: i64, e: i32) -> Self {
        let mut m = BTreeMap::new();
        if k != 0 {
            m.insert(e, k);
        }
        Laurent(m)
    }

    fn add(&self, o: &Laurent) -> Laurent {
        let mut m = self.0.clone();
        for (&e, &k) in &o.0 {
            let v = m.entry(e).or_insert(0);
            *v += k;
            if *v == 0 {
                m.remove(&e);
            }
        }
        Laurent(m)
    }

    fn mul(&self, o: &Laurent) -> Laurent {
        let mut acc = Laurent::default();
        for (&e1, &k1) in &self.0 {
            for (&e2, &k2) in &o.0 {
                acc = acc.add(&Laurent::mono(k1 * k2, e1 + e2));
            }
        }
        acc
    }
}

pub type Mat = [[Laurent; 2]; 2];

fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    let cell = |i: usize, j: usize| x[i][0].mul(&y[0][j]).add(&x[i][1].mul(&y[1][j]));
    [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
}

pub fn identity() -> Mat {
    [[Laurent::c(1), Laurent::c(0)], [Laurent::c(0), Laurent::c(1)]]
}

/// Reduced Burau image of a B₃ group word given as `(letter, positive)`.
pub fn burau(word: &[(char, bool)]) -> Mat {
    let s1 = [[Laurent::mono(-1, 1), Laurent::c(1)], [Laurent::c(0), Laurent::c(1)]];
    let s1i = [[Laurent::mono(-1, -1), Laurent::mono(1, -1)], [Laurent::c(0), Laurent::c(1)]];
    let s2 = [[Laurent::c(1), Laurent::c(0)], [Laurent::mono(1, 1), Laurent::mono(-1, 1)]];
    let s2i = [[Laurent::c(1), Laurent::c(0)], [Laurent::c(1), Laurent::mono(-1, -1)]];
    let mut m = identity();
    for &(c, pos) in word {
        let g = match (c, pos) {
            ('a', true) => &s1,
            ('a', false) => &s1i,
            ('b', true) => &s2,
            ('b', false) => &s2i,
            _ => panic!("not a B₃ letter: {c}"),
        };
        m = mat_mul(&m, g);
    }
    m
}

/// Parses `"a ~b ab"`-style family words into base letters with signs,
/// expanding family element names through [`base`].
pub fn signed_base(text: &str) -> Vec<(char, bool)> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        let (pos, name) = match tok.strip_prefix('~') {
            Some(n) => (false, n),
            None => (true, tok),
        };
        let w: Vec<char> = base(name).chars().collect();
        if pos {
            out.extend(w.into_iter().map(|c| (c, true)));
        } else {
            out.extend(w.into_iter().rev().map(|c| (c, false)));
        }
    }
    out
}

pub fn trivial_in_b3(text: &str) -> bool {
    burau(&signed_base(text)) == identity()
}

/// All signed words over `{a, b, ~a, ~b}` up to length `n`, as text.
pub fn signed_words(n: usize) -> Vec<String> {
    let toks = ["a", "b", "~a", "~b"];
    let mut out = vec![String::new()];
    let mut layer: Vec<Vec<&str>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for t in toks {
                let mut x = w.clone();
                x.push(t);
                next.push(x);
            }
        }
        out.extend(next.iter().map(|w| w.join(" ")));
        layer = next;
    }
    out
}

/// Space-separated letters of a base word, for the library parsers.
pub fn spaced(w: &str) -> String {
    w.chars().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::path::PathBuf;
use std::process::ExitCode;

use garside::garside::{smallest_garside_family, Domino};
use garside::germ::BALL_CAP;
use garside::normal::{self, NormalForm};
use garside::reversing::{right_reverse, right_reverse_short, termination_closure, DEFAULT_FUEL};
use garside::signed;
use garside::{Error, GarsideStructure, Germ, GermVerdict, Path, Presentation, SignedPath};
use garside_cli::input::{parse_input, render};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: garside::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- oracle

/// Brute-force equivalence on words over one-character letters.
struct Oracle {
    rels: Vec<(String, String)>,
    max_len: usize,
}

impl Oracle {
    fn new(rels: &[(&str, &str)], max_len: usize) -> Self {
        Oracle { rels: rels.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(), max_len }
    }

    fn class(&self, w: &str) -> BTreeSet<String> {
        let mut seen = BTreeSet::from([w.to_string()]);
        let mut queue = VecDeque::from([w.to_string()]);
        while let Some(x) = queue.pop_front() {
            for (l, r) in &self.rels {
                for (from, to) in [(l, r), (r, l)] {
                    // Every position, overlapping ones included.
                    for i in (0..x.len()).filter(|&i| x.is_char_boundary(i) && x[i..].starts_with(from.as_str())) {
                        let y = format!("{}{}{}", &x[..i], to, &x[i + from.len()..]);
                        if y.len() <= self.max_len && seen.insert(y.clone()) {
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        seen
    }

    fn equiv(&self, u: &str, v: &str) -> bool {
        self.class(u).contains(v)
    }

    fn divides(&self, u: &str, v: &str) -> bool {
        let cu = self.class(u);
        self.class(v).iter().any(|w| (0..=w.len()).any(|k| w.is_char_boundary(k) && cu.contains(&w[..k])))
    }
}

fn braid_oracle() -> Oracle {
    Oracle::new(&[("aba", "bab")], 24)
}

fn words(letters: &str, n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..n {
        layer = layer.iter().flat_map(|w| letters.chars().map(move |c| format!("{w}{c}"))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn spaced(w: &str) -> String {
    w.chars().map(String::from).collect::<Vec<_>>().join(" ")
}

/// Base word of a family element name.
fn base(name: &str) -> String {
    match name {
        "1" | "ε" => String::new(),
        _ => name.replace('Δ', "aba"),
    }
}

// ---------------------------------------------------------------- fixtures

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn pres(rels: &[&str]) -> Presentation {
    Presentation::monoid(&["a", "b"], rels).unwrap()
}

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

fn structure(rel: &str, family: &[&str]) -> GarsideStructure {
    let p = pres(&[rel]);
    let fam: Vec<Path> = family.iter().map(|w| p.alphabet().parse_path(w).unwrap()).collect();
    GarsideStructure::from_presentation(&p, &fam, DEFAULT_FUEL).unwrap()
}

fn b3() -> GarsideStructure {
    structure("a b a = b a b", &["ε", "a", "b", "a b", "b a", "a b a"])
}

fn cli(args: &[&str]) -> garside_cli::Outcome {
    let mut all = vec!["garside"];
    all.extend_from_slice(args);
    garside_cli::run(all, &mut std::io::empty())
}

// ---------------------------------------------------------------- criteria

fn reversing_goldens() -> Check {
    let abelian = lib(pres(&["a b = b a"]).derive_complement())?;
    let braid = lib(pres(&["a b a = b a b"]).derive_complement())?;
    let s = b3();
    let cases = [
        (&abelian, "~b ~b ~a b a b b", "b"),
        (&abelian, "a ~b a ~a b a", "a a"),
        (&braid, "~b ~b ~a b a b b", "a b ~a"),
        (s.right_selector(), "~b ~b ~a b a b b", "ab ~a"),
    ];
    for (theta, input, expected) in cases {
        let al = theta.alphabet();
        let out = lib(right_reverse(theta, &lib(al.parse_signed(input))?, DEFAULT_FUEL))?;
        let got = out.reversed().ok_or("reversing did not finish")?;
        ensure!(*got == lib(al.parse_signed(expected))?, "{input}: got {}", al.show_signed(got));
    }
    Ok(())
}

fn step_bounds() -> Check {
    let abelian = lib(pres(&["a b = b a"]).derive_complement())?;
    let s = b3();
    for theta in [&abelian, s.right_selector()] {
        let w = lib(theta.alphabet().parse_signed("~b ~b ~a b a b b"))?;
        let out = lib(right_reverse_short(theta, &w))?;
        ensure!(out.steps == 12, "short reversing took {} cell fills, expected 3·4", out.steps);
    }
    // General engine on B₃ letters: steps ≤ ℓ²/2, the measured constant.
    let p = pres(&["a b a = b a b"]);
    let theta = lib(p.derive_complement())?;
    let al = p.alphabet();
    let check = |u: &str, v: &str| -> Check {
        let w = lib(SignedPath::fraction(&lib(al.parse_path(&spaced(u)))?, &lib(al.parse_path(&spaced(v)))?))?;
        let out = lib(right_reverse(&theta, &w, DEFAULT_FUEL))?;
        let ell = (u.len() + v.len()) as u64;
        ensure!(out.reversed().is_some(), "{u} / {v} did not finish");
        ensure!(2 * out.steps <= ell * ell, "{u} / {v}: {} steps for ℓ = {ell}", out.steps);
        Ok(())
    };
    for u in words("ab", 5) {
        for v in words("ab", 5) {
            check(&u, &v)?;
        }
    }
    for l in 1..=16usize {
        for pat in ["a", "b", "ab", "ba", "aab", "abb"] {
            let u: String = pat.chars().cycle().take(l).collect();
            let v: String = pat.chars().rev().cycle().take(l).map(|c| if c == 'a' { 'b' } else { 'a' }).collect();
            check(&u, &v)?;
        }
    }
    Ok(())
}

fn closure_goldens() -> Check {
    let p = pres(&["a b a = b a b"]);
    let fam = lib(termination_closure(&lib(p.derive_complement())?, DEFAULT_FUEL, 64))?;
    let shown: Vec<String> = fam.iter().map(|w| p.alphabet().show_path(w)).collect();
    ensure!(shown == ["ε", "a", "b", "a b", "b a"], "closure {shown:?}");
    let bad = lib(pres(&["a b b = b a"]).derive_complement())?;
    match termination_closure(&bad, DEFAULT_FUEL, 64) {
        Err(Error::Diverged(_)) => Ok(()),
        other => Err(format!("expected Diverged, got {other:?}")),
    }
}

fn smallest_family() -> Check {
    let out = cli(&["garside-closure", fixture("b3.txt").to_str().unwrap(), "--seed", "a,b"]);
    ensure!(out.code == 0, "exit {}: {}", out.code, out.stderr);
    let lines: Vec<&str> = out.stdout.lines().collect();
    ensure!(lines == ["a", "b", "a b", "b a", "a b a", "ε"], "family {lines:?}");
    let p = pres(&["a b a = b a b"]);
    let seeds = vec![lib(p.alphabet().parse_path("a"))?, lib(p.alphabet().parse_path("b"))?];
    let again = lib(smallest_garside_family(&lib(p.derive_complement())?, &seeds, DEFAULT_FUEL, 64, false))?;
    ensure!(again.len() == 6, "library gives {} elements", again.len());
    Ok(())
}

fn germ_suite() -> Check {
    let g = braid_germ();
    ensure!(g.recognize() == GermVerdict::Garside, "B₃ germ rejected");
    let e = |n: &str| g.find(n).unwrap();
    let (_, div) = g.left_divisibility();
    let order: Vec<usize> = ["1", "Δ", "ab", "ba", "b", "a"].iter().map(|n| e(n)).collect();
    let seq = g.non_ascending_in(&div, &order);
    let shown: Vec<&str> = seq.iter().map(|&x| g.name(x)).collect();
    ensure!(shown == ["Δ", "ab", "ba", "b", "a", "1"], "S′ = {shown:?}");
    // Greatest elements of J(a1, a2), rows and columns in order 1 a b ab ba Δ.
    let table = [
        ["1", "a", "b", "ab", "ba", "Δ"],
        ["1", "1", "b", "1", "ba", "ba"],
        ["1", "a", "1", "ab", "1", "ab"],
        ["1", "a", "1", "a", "1", "a"],
        ["1", "1", "b", "1", "b", "b"],
        ["1", "1", "1", "1", "1", "1"],
    ];
    let names = ["1", "a", "b", "ab", "ba", "Δ"];
    for (i, row) in table.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            let got = g.j_greatest(&div, &seq, e(names[i]), e(names[j]));
            ensure!(got == Some(e(want)), "J({}, {}) greatest is {:?}", names[i], names[j], got.map(|x| g.name(x)));
        }
    }

    let sq = Germ::monoid(
        &["1", "a", "b", "a2", "ab"],
        "1",
        &[("a", "a", "a2"), ("a", "b", "ab"), ("b", "a", "ab"), ("b", "b", "a2")],
    )
    .unwrap();
    let v = sq.recognize();
    ensure!(v == GermVerdict::NoGreatest(sq.find("a").unwrap(), sq.find("a2").unwrap()), "square germ: {v:?}");
    // a2 is `c`, ab is `d`: no two-letter decomposition of a³ is greedy.
    let m = Oracle::new(&[("aa", "c"), ("ab", "d"), ("ba", "d"), ("bb", "c")], 6);
    let family = ["a", "b", "c", "d"];
    let below: Vec<&str> = family.iter().copied().filter(|s| m.divides(s, "aaa")).collect();
    for s1 in family {
        for s2 in family {
            if m.equiv(&format!("{s1}{s2}"), "aaa") {
                ensure!(below.iter().any(|s| !m.divides(s, s1)), "{s1}|{s2} is greedy");
            }
        }
    }
    // The same holds for longer words inside the ball of radius 4.
    let ball = lib(sq.enumerate_ball(4, BALL_CAP))?;
    ensure!(!ball.is_empty(), "empty ball");
    Ok(())
}

fn witness_table() -> Check {
    let s = lib(GarsideStructure::from_germ(&braid_germ()))?;
    let names = ["1", "a", "b", "ab", "ba", "Δ"];
    let table = [
        ["1 1", "a 1", "b 1", "ab 1", "ba 1", "Δ 1"],
        ["a 1", "a a", "ab 1", "a ab", "Δ 1", "Δ b"],
        ["b 1", "ba 1", "b b", "Δ 1", "b ba", "Δ a"],
        ["ab 1", "Δ 1", "ab b", "Δ b", "ab ba", "Δ ba"],
        ["ba 1", "ba a", "Δ 1", "ba ab", "Δ a", "Δ ab"],
        ["Δ 1", "Δ a", "Δ b", "Δ ab", "Δ ba", "Δ Δ"],
    ];
    // The printed cell at (ab, a) is a single Δ; the oracle settles it as (Δ, 1).
    let m = braid_oracle();
    ensure!(m.equiv("aba", &format!("{}{}", base("ab"), base("a"))), "ab·a is not Δ");
    for (i, row) in table.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let (x, y) = cell.split_once(' ').unwrap();
            let e = |n: &str| s.elem(n).unwrap();
            let got = s.witness(e(names[i]), e(names[j]));
            ensure!(got == Some((e(x), e(y))), "witness({}, {}) = {got:?}", names[i], names[j]);
        }
    }
    Ok(())
}

fn normal_forms() -> Check {
    let s = b3();
    let nf = |w: &str| normal::normalize_path(&s, &s.alphabet().parse_path(w).unwrap()).unwrap();
    let e = |n: &str| s.elem(n).unwrap();
    ensure!(nf("a b b").entries == [e("ab"), e("b")], "abb ↦ {}", nf("a b b").show(&s));
    ensure!(nf("b a b b").entries == [e("aba"), e("b")], "babb ↦ {}", nf("b a b b").show(&s));
    let (u, v) = (lib(s.alphabet().parse_path("a b b"))?, lib(s.alphabet().parse_path("b a b b"))?);
    ensure!(!lib(normal::word_problem_nf(&s, &u, &v))?, "route I says equal");
    ensure!(!lib(normal::word_problem_rev(&s, &u, &v))?, "route II says equal");

    let m = braid_oracle();
    let all = words("ab", 6);
    let mut class_id: HashMap<&str, usize> = HashMap::new();
    let mut next = 0;
    for w in &all {
        if class_id.contains_key(w.as_str()) {
            continue;
        }
        let class = m.class(w);
        for x in &all {
            if class.contains(x) {
                class_id.insert(x, next);
            }
        }
        next += 1;
    }
    let paths: Vec<Path> = all.iter().map(|w| s.alphabet().parse_path(&spaced(w)).unwrap()).collect();
    for (i, pu) in paths.iter().enumerate() {
        for (j, pv) in paths.iter().enumerate() {
            let truth = class_id[all[i].as_str()] == class_id[all[j].as_str()];
            let r1 = lib(normal::word_problem_nf(&s, pu, pv))?;
            let r2 = lib(normal::word_problem_rev(&s, pu, pv))?;
            ensure!(r1 == truth && r2 == truth, "{} vs {}: nf {r1}, rev {r2}, oracle {truth}", all[i], all[j]);
        }
    }
    Ok(())
}

fn lcm_gcd() -> Check {
    let s = b3();
    let al = s.alphabet();
    let (u, v) = (lib(al.parse_path("a b b"))?, lib(al.parse_path("b a b b"))?);
    let (l, _, _) = lib(normal::right_lcm(s.right_selector(), &u, &v, DEFAULT_FUEL))?;
    ensure!(lib(s.equivalent(&l, &lib(al.parse_path("a b b a b"))?))?, "lcm is {}", al.show_path(&l));
    // left_gcd fails unless the third residue is purely positive.
    let g = lib(signed::left_gcd(&s, &u, &v))?;
    ensure!(lib(s.equivalent(&g, &lib(al.parse_path("a b"))?))?, "gcd is {}", al.show_path(&g));
    Ok(())
}

fn signed_suite() -> Check {
    let s = b3();
    let e = |n: &str| s.elem(n).unwrap();
    let w = |t: &str| s.alphabet().parse_signed(t).unwrap();
    let sn = lib(signed::sym_normalize(&s, &w("a a b ~a ~b"), DEFAULT_FUEL))?;
    ensure!(
        sn.denominator.entries == [e("ab")] && sn.numerator.entries == [e("ba"), e("a")],
        "sym form {}",
        sn.show(&s)
    );
    let dn = lib(signed::delta_normalize(&s, &w("~ab b a a")))?;
    ensure!(dn.exponent == -1 && dn.tail.entries == [e("b"), e("ba"), e("a")], "Δ form {}", dn.show(&s));

    let toks = ["a", "b", "~a", "~b"];
    let mut layer: Vec<String> = vec![String::new()];
    let mut all = vec![String::new()];
    for _ in 0..8 {
        layer = layer.iter().flat_map(|x| toks.iter().map(move |t| format!("{x} {t}"))).collect();
        all.extend(layer.iter().cloned());
    }
    for t in &all {
        let x = w(t);
        let r1 = lib(signed::word_problem_nf(&s, &x, DEFAULT_FUEL))?;
        let r2 = lib(signed::word_problem_double_rev(&s, &x, DEFAULT_FUEL))?;
        let r3 = lib(signed::word_problem_left_only(&s, &x, DEFAULT_FUEL))?;
        ensure!(r1 == r2 && r2 == r3, "{t}: routes give {r1} {r2} {r3}");
        if t.split_whitespace().count() <= 4 {
            let xx = lib(x.compose(&x.bar()))?;
            ensure!(lib(signed::word_problem_nf(&s, &xx, DEFAULT_FUEL))?, "{t} · inverse not trivial (nf)");
            ensure!(lib(signed::word_problem_double_rev(&s, &xx, DEFAULT_FUEL))?, "{t} · inverse (double)");
            ensure!(lib(signed::word_problem_left_only(&s, &xx, DEFAULT_FUEL))?, "{t} · inverse (left)");
        }
    }
    Ok(())
}

fn structure_report() -> Check {
    let out = cli(&["info", fixture("b3.txt").to_str().unwrap()]);
    ensure!(out.code == 0, "exit {}: {}", out.code, out.stderr);
    for line in [
        "strong: true",
        "bounded: true",
        "Δ: aba",
        "φ: (a b)(ab ba)",
        "bounded ⇒ strong: ok",
        "second domino rule: holds",
    ] {
        ensure!(out.stdout.lines().any(|l| l == line), "missing `{line}` in\n{}", out.stdout);
    }
    let m2 = structure("a b b = b b b", &["ε", "a", "b", "b b", "b b b"]);
    let e = |n: &str| m2.elem(n).unwrap();
    ensure!(m2.second_domino_counterexample().is_some(), "M₂ passes the domino check");
    let shape = Domino { top: (e("a"), e("b")), verticals: (e("bbb"), e("bbb"), e("bbb")), bottom: (e("b"), e("b")) };
    ensure!(m2.is_domino_counterexample(&shape), "the M₂ diagram is not a counterexample");
    ensure!(!m2.is_bounded() || m2.is_strong(), "M₂ bounded but not strong");
    Ok(())
}

fn property_suites() -> Check {
    let abelian_oracle = Oracle::new(&[("ab", "ba")], 24);
    for (g, m) in [(braid_germ(), braid_oracle()), (abelian_germ(), Oracle::new(&[("ab", "ba")], 24))] {
        let s = lib(GarsideStructure::from_germ(&g))?;
        for w in lib(g.enumerate_ball(4, BALL_CAP))? {
            let nf = lib(normal::normalize(&s, 0, &w))?;
            // Greedy certificate on every emitted pair.
            for pair in nf.entries.windows(2) {
                let prod = format!("{}{}", base(s.name(pair[0])), base(s.name(pair[1])));
                for f in 0..s.len() {
                    let bf = base(s.name(f));
                    ensure!(!m.divides(&bf, &prod) || m.divides(&bf, &base(s.name(pair[0]))), "pair not greedy");
                }
            }
            ensure!(lib(normal::normalize(&s, 0, &nf.entries))? == nf, "normalization not idempotent");
            for f in g.non_identities() {
                let mut fw = vec![f];
                fw.extend(&w);
                let mut wf = w.clone();
                wf.push(f);
                ensure!(lib(normal::left_multiply(&s, f, &nf))? == lib(normal::normalize(&s, 0, &fw))?, "left");
                ensure!(lib(normal::right_multiply(&s, &nf, f))? == lib(normal::normalize(&s, 0, &wf))?, "right");
            }
        }
    }

    let s = lib(GarsideStructure::from_germ(&braid_germ()))?;
    for t in ["a ~b", "~a ~a b", "a b ~a ~b a", "~b a a ~b b"] {
        let x = lib(s.alphabet().parse_signed(t))?;
        let sn = lib(signed::sym_normalize(&s, &x, DEFAULT_FUEL))?;
        ensure!(lib(signed::sym_normalize(&s, &x.bar(), DEFAULT_FUEL))? == sn.inverse(), "{t}: symmetric inverse");
        let dn = lib(signed::delta_normalize(&s, &x))?;
        let inv = lib(signed::invert_delta(&s, &dn))?;
        ensure!(lib(signed::invert_delta(&s, &inv))? == dn, "{t}: Δ inverse twice");
        let round = lib(lib(dn.to_signed(&s))?.compose(&lib(inv.to_signed(&s))?))?;
        ensure!(lib(signed::word_problem_nf(&s, &round, DEFAULT_FUEL))?, "{t}: form · inverse not trivial");
    }

    let fa = structure("a b = b a", &["ε", "a", "b", "a b"]);
    let ab = fa.elem("ab").unwrap();
    for w in words("ab", 6) {
        let nf: NormalForm = lib(normal::normalize_path(&fa, &lib(fa.alphabet().parse_path(&spaced(&w)))?))?;
        let (na, nb) = (w.matches('a').count(), w.matches('b').count());
        let k = na.min(nb);
        let tail = if na > nb { "a" } else { "b" };
        let want: Vec<usize> =
            std::iter::repeat_n(ab, k).chain(std::iter::repeat_n(fa.elem(tail).unwrap(), na.abs_diff(nb))).collect();
        ensure!(nf.entries == want, "free abelian {w} ↦ {}", nf.show(&fa));
        ensure!(abelian_oracle.equiv(&w, &nf.entries.iter().map(|&x| base(fa.name(x))).collect::<String>()), "{w}");
    }
    let mut pairs = Vec::new();
    for f in 0..fa.len() {
        for g in f..fa.len() {
            if lib(fa.left_disjoint(&fa.path_of(0, &[f]), &fa.path_of(0, &[g])))? {
                let mut p = [fa.name(f), fa.name(g)];
                p.sort();
                pairs.push(p.join(","));
            }
        }
    }
    pairs.sort();
    ensure!(pairs == ["1,1", "1,a", "1,ab", "1,b", "a,b"], "left-disjoint pairs {pairs:?}");

    // Render and parse agree on every fixture.
    for name in ["b3.txt", "b3_germ.txt", "free_abelian.txt", "m2.txt", "square_germ.txt", "cube_failure.txt"] {
        let text = std::fs::read_to_string(fixture(name)).map_err(|e| e.to_string())?;
        let src = parse_input(&text).map_err(|e| e.to_string())?;
        ensure!(parse_input(&render(&src)).map_err(|e| e.to_string())? == src, "{name} does not round-trip");
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("reversing goldens", reversing_goldens),
        ("step bounds", step_bounds),
        ("closure goldens", closure_goldens),
        ("smallest Garside family", smallest_family),
        ("germ recognition", germ_suite),
        ("Square-witness table", witness_table),
        ("normal forms and positive word problem", normal_forms),
        ("lcm and gcd", lcm_gcd),
        ("signed normal forms and word problem", signed_suite),
        ("structure report", structure_report),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

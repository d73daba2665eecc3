//! Right- and left-reversing, closure under complements, cube condition.
//!
//! Left-reversing is computed by mirroring: a left-complement on a category
//! is a right-complement on the opposite category, and reversing the order
//! of a signed word (keeping signs) moves between the two pictures.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::core::{Alphabet, Letter, Path, SignedLetter, SignedPath};
use crate::error::{Error, Result};
use crate::presentation::{Complement, NoetherianEvidence, Orientation};

pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReversingResult {
    /// Positive-negative (right) or negative-positive (left) final word.
    Reversed(SignedPath),
    /// The complement is undefined on this pair.
    Fail {
        a: Letter,
        b: Letter,
    },
    OutOfFuel,
}

#[derive(Clone, Debug)]
pub struct ReversingOutcome {
    pub result: ReversingResult,
    /// Elementary steps: rewrites for the general engine, cell fills for the
    /// short one.
    pub steps: u64,
    pub grid: Option<Grid>,
}

impl ReversingOutcome {
    pub fn reversed(&self) -> Option<&SignedPath> {
        match &self.result {
            ReversingResult::Reversed(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.reversed().is_some_and(|w| w.is_empty())
    }
}

/// Rectangular grid built by short reversing. `None` labels are ε edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectGrid {
    /// `horizontal[i][j]` is the edge in row `i` (0 = input), column `j`.
    pub horizontal: Vec<Vec<Option<Letter>>>,
    /// `vertical[i][j]` is the edge below row `i`, at vertex column `j`.
    pub vertical: Vec<Vec<Option<Letter>>>,
}

/// One rewrite of the general engine, as signed entries before and after.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub before: Vec<SignedLetter>,
    pub after: Vec<SignedLetter>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub label: Option<Letter>,
    pub input: bool,
}

/// Staircase grid of the general engine, kept as a labelled graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphGrid {
    pub vertices: usize,
    pub edges: Vec<GraphEdge>,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridShape {
    Rect(RectGrid),
    Graph(GraphGrid),
}

/// A reversing diagram. Left grids are stored in their mirrored (right)
/// form and turned back when rendered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub orientation: Orientation,
    pub shape: GridShape,
    alphabet: Alphabet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridFormat {
    Ascii,
    Dot,
}

enum Status {
    Done,
    Fail(Letter, Letter),
    OutOfFuel,
}

struct Recorder {
    vertices: usize,
    /// Walk endpoints of each current entry.
    ends: Vec<(usize, usize)>,
    edges: Vec<GraphEdge>,
    steps: Vec<Step>,
}

impl Recorder {
    fn new(word: &[SignedLetter]) -> Self {
        let mut edges = Vec::new();
        for (i, s) in word.iter().enumerate() {
            let (from, to) = if s.positive { (i, i + 1) } else { (i + 1, i) };
            edges.push(GraphEdge { from, to, label: Some(s.letter), input: true });
        }
        Recorder {
            vertices: word.len() + 1,
            ends: (0..word.len()).map(|i| (i, i + 1)).collect(),
            edges,
            steps: Vec::new(),
        }
    }

    fn fresh(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    /// Lays `letters` from `start` to `end`, returning the walk ends of each.
    fn lay(&mut self, start: usize, end: usize, letters: &[Letter]) -> Vec<(usize, usize)> {
        if letters.is_empty() {
            self.edges.push(GraphEdge { from: start, to: end, label: None, input: false });
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur = start;
        for (k, &l) in letters.iter().enumerate() {
            let next = if k + 1 == letters.len() { end } else { self.fresh() };
            self.edges.push(GraphEdge { from: cur, to: next, label: Some(l), input: false });
            out.push((cur, next));
            cur = next;
        }
        out
    }

    fn rewrite(&mut self, j: usize, ab: &[Letter], ba: &[Letter], before: Vec<SignedLetter>, after: Vec<SignedLetter>) {
        let p = self.ends[j].0;
        let q = self.ends[j + 1].1;
        let r = self.fresh();
        let mut new_ends = self.lay(p, r, ab);
        let right = self.lay(q, r, ba);
        new_ends.extend(right.into_iter().rev().map(|(x, y)| (y, x)));
        self.ends.splice(j..j + 2, new_ends);
        self.steps.push(Step { before, after });
    }
}

fn lookup(theta: &Complement, a: Letter, b: Letter) -> Option<(&[Letter], &[Letter])> {
    Some((theta.get(a, b)?, theta.get(b, a)?))
}

/// The general engine: rewrites the leftmost `~a b` until none is left.
fn run(theta: &Complement, word: &mut Vec<SignedLetter>, fuel: u64, mut rec: Option<&mut Recorder>) -> (Status, u64) {
    let mut steps = 0u64;
    let mut i = 0usize;
    loop {
        let Some(j) = (i..word.len().saturating_sub(1)).find(|&k| !word[k].positive && word[k + 1].positive) else {
            return (Status::Done, steps);
        };
        if steps >= fuel {
            return (Status::OutOfFuel, steps);
        }
        let (a, b) = (word[j].letter, word[j + 1].letter);
        let Some((ab, ba)) = lookup(theta, a, b) else {
            return (Status::Fail(a, b), steps);
        };
        let after: Vec<SignedLetter> = if a == b {
            Vec::new()
        } else {
            ab.iter().map(|&l| SignedLetter::pos(l)).chain(ba.iter().rev().map(|&l| SignedLetter::neg(l))).collect()
        };
        if let Some(r) = rec.as_deref_mut() {
            r.rewrite(j, ab, ba, word[j..j + 2].to_vec(), after.clone());
        }
        word.splice(j..j + 2, after);
        steps += 1;
        i = j.saturating_sub(1);
    }
}

fn require(theta: &Complement, o: Orientation) -> Result<()> {
    if theta.orientation() != o {
        return Err(Error::PreconditionUnmet(format!("expected a {o:?} complement").to_lowercase()));
    }
    Ok(())
}

fn general(theta: &Complement, w: &SignedPath, fuel: u64, trace: bool, o: Orientation) -> ReversingOutcome {
    let mut word = w.entries().to_vec();
    let mut rec = trace.then(|| Recorder::new(&word));
    let (status, steps) = run(theta, &mut word, fuel, rec.as_mut());
    let result = match status {
        Status::Done => ReversingResult::Reversed(SignedPath::from_parts(w.src(), w.tgt(), word)),
        Status::Fail(a, b) => ReversingResult::Fail { a, b },
        Status::OutOfFuel => ReversingResult::OutOfFuel,
    };
    let grid = rec.map(|r| Grid {
        orientation: o,
        shape: GridShape::Graph(GraphGrid { vertices: r.vertices, edges: r.edges, steps: r.steps }),
        alphabet: theta.alphabet().clone(),
    });
    ReversingOutcome { result, steps, grid }
}

fn mirror_outcome(mut out: ReversingOutcome) -> ReversingOutcome {
    out.result = match out.result {
        ReversingResult::Reversed(w) => ReversingResult::Reversed(w.mirrored()),
        ReversingResult::Fail { a, b } => ReversingResult::Fail { a, b },
        other => other,
    };
    if let Some(g) = &mut out.grid {
        g.alphabet = g.alphabet.opposite();
    }
    out
}

/// Right-reversing, general case. Never errors: failure and running out of
/// fuel are reported in the outcome.
pub fn right_reverse(theta: &Complement, w: &SignedPath, fuel: u64) -> Result<ReversingOutcome> {
    require(theta, Orientation::Right)?;
    Ok(general(theta, w, fuel, false, Orientation::Right))
}

/// As [`right_reverse`], also recording the grid.
pub fn right_reverse_traced(theta: &Complement, w: &SignedPath, fuel: u64) -> Result<ReversingOutcome> {
    require(theta, Orientation::Right)?;
    Ok(general(theta, w, fuel, true, Orientation::Right))
}

/// Left-reversing: rewrites `b ~a` into `~θ̃(a,b) θ̃(b,a)`, rightmost first.
pub fn left_reverse(theta: &Complement, w: &SignedPath, fuel: u64) -> Result<ReversingOutcome> {
    require(theta, Orientation::Left)?;
    let out = general(&theta.opposite(), &w.mirrored(), fuel, false, Orientation::Left);
    Ok(mirror_outcome(out))
}

pub fn left_reverse_traced(theta: &Complement, w: &SignedPath, fuel: u64) -> Result<ReversingOutcome> {
    require(theta, Orientation::Left)?;
    let out = general(&theta.opposite(), &w.mirrored(), fuel, true, Orientation::Left);
    Ok(mirror_outcome(out))
}

/// θ̂: the complement extended by ε.
fn hat(theta: &Complement, x: Option<Letter>, y: Option<Letter>) -> Option<Option<Letter>> {
    match (x, y) {
        (_, None) => Some(None),
        (None, Some(b)) => Some(Some(b)),
        (Some(a), Some(b)) => theta.get(a, b).map(|v| v.first().copied()),
    }
}

fn short(theta: &Complement, w: &SignedPath, o: Orientation) -> Result<ReversingOutcome> {
    if !theta.is_short() {
        return Err(Error::PreconditionUnmet("complement is not short".into()));
    }
    let entries = w.entries();
    let k = entries.iter().position(|s| s.positive).unwrap_or(entries.len());
    if entries[k..].iter().any(|s| !s.positive) {
        return Err(Error::PreconditionUnmet("input is not negative-positive".into()));
    }
    // b_1..b_q read from the junction outwards, a_1..a_p likewise.
    let bs: Vec<Option<Letter>> = entries[..k].iter().rev().map(|s| Some(s.letter)).collect();
    let as_: Vec<Option<Letter>> = entries[k..].iter().map(|s| Some(s.letter)).collect();
    let (q, p) = (bs.len(), as_.len());
    let mut horizontal = vec![as_];
    let mut vertical: Vec<Vec<Option<Letter>>> = Vec::with_capacity(q);
    let mut steps = 0u64;
    let mut failed = None;
    'rows: for (i, &b) in bs.iter().enumerate() {
        let mut row_v = vec![b];
        let mut row_h = Vec::with_capacity(p);
        for j in 0..p {
            let (left, top) = (row_v[j], horizontal[i][j]);
            match (hat(theta, left, top), hat(theta, top, left)) {
                (Some(bottom), Some(right)) => {
                    row_h.push(bottom);
                    row_v.push(right);
                    steps += 1;
                }
                _ => {
                    failed = Some((left.unwrap(), top.unwrap()));
                    vertical.push(row_v);
                    horizontal.push(row_h);
                    break 'rows;
                }
            }
        }
        vertical.push(row_v);
        horizontal.push(row_h);
    }
    let result = match failed {
        Some((a, b)) => ReversingResult::Fail { a, b },
        None => {
            let mut out: Vec<SignedLetter> = horizontal[q].iter().flatten().map(|&l| SignedLetter::pos(l)).collect();
            out.extend(vertical.iter().rev().filter_map(|row| row[p]).map(SignedLetter::neg));
            ReversingResult::Reversed(SignedPath::from_parts(w.src(), w.tgt(), out))
        }
    };
    let grid = Grid {
        orientation: o,
        shape: GridShape::Rect(RectGrid { horizontal, vertical }),
        alphabet: theta.alphabet().clone(),
    };
    Ok(ReversingOutcome { result, steps, grid: Some(grid) })
}

/// Right-reversing, short case: negative-positive input, rectangular grid.
pub fn right_reverse_short(theta: &Complement, w: &SignedPath) -> Result<ReversingOutcome> {
    require(theta, Orientation::Right)?;
    short(theta, w, Orientation::Right)
}

/// Left-reversing, short case: positive-negative input.
pub fn left_reverse_short(theta: &Complement, w: &SignedPath) -> Result<ReversingOutcome> {
    require(theta, Orientation::Left)?;
    Ok(mirror_outcome(short(&theta.opposite(), &w.mirrored(), Orientation::Left)?))
}

fn star_error(theta: &Complement, out: ReversingOutcome) -> Error {
    let al = theta.alphabet();
    match out.result {
        ReversingResult::Fail { a, b } => Error::NoCommonMultiple(al.name(a).into(), al.name(b).into()),
        _ => Error::OutOfFuel(out.steps),
    }
}

/// `(θ*(u,v), θ*(v,u))`, read off the reversing of `~u v`.
///
/// Errors with `NoCommonMultiple` when reversing fails and `OutOfFuel` when
/// the budget runs out.
pub fn rc_star(theta: &Complement, u: &Path, v: &Path, fuel: u64) -> Result<(Path, Path)> {
    let w = SignedPath::fraction(u, v)?;
    let out = right_reverse(theta, &w, fuel)?;
    match out.reversed() {
        Some(r) => {
            let (v2, u2) = r.split_pos_neg(theta.alphabet()).expect("right-reversing ends positive-negative");
            Ok((v2, u2))
        }
        None => Err(star_error(theta, out)),
    }
}

/// `(θ̃*(u,v), θ̃*(v,u))` with `θ̃*(u,v)·v ≡ θ̃*(v,u)·u`, read off the
/// left-reversing of `u ~v`.
pub fn lc_star(theta: &Complement, u: &Path, v: &Path, fuel: u64) -> Result<(Path, Path)> {
    let w = SignedPath::right_fraction(u, v)?;
    let out = left_reverse(theta, &w, fuel)?;
    match out.reversed() {
        Some(r) => {
            let (y, x) = r.split_neg_pos(theta.alphabet()).expect("left-reversing ends negative-positive");
            Ok((x, y))
        }
        None => Err(star_error(theta, out)),
    }
}

fn shortlex(a: &Path, b: &Path) -> std::cmp::Ordering {
    (a.len(), a.letters(), a.src()).cmp(&(b.len(), b.letters(), b.src()))
}

/// Closes the alphabet under θ*, round by round.
///
/// `cap` bounds both the number of paths and their length; going past it
/// means the closure is (probably) infinite and yields `Diverged`.
pub fn termination_closure(theta: &Complement, fuel: u64, cap: usize) -> Result<Vec<Path>> {
    require(theta, Orientation::Right)?;
    let al = theta.alphabet();
    let mut family: BTreeSet<Path> = al.letters().map(|l| al.path(al.src(l), vec![l]).unwrap()).collect();
    loop {
        let current: Vec<Path> = family.iter().cloned().collect();
        let mut grown = false;
        for u in &current {
            for v in &current {
                if u.src() != v.src() {
                    continue;
                }
                let w = match rc_star(theta, u, v, fuel) {
                    Ok((w, _)) => w,
                    Err(Error::NoCommonMultiple(..)) => continue,
                    Err(Error::OutOfFuel(n)) => return Err(Error::Diverged(format!("reversing used {n} steps"))),
                    Err(e) => return Err(e),
                };
                if w.len() > cap {
                    return Err(Error::Diverged(format!("a complement of length {} exceeds the cap {cap}", w.len())));
                }
                grown |= family.insert(w);
                if family.len() > cap {
                    return Err(Error::Diverged(format!("more than {cap} paths")));
                }
            }
        }
        if !grown {
            let mut out: Vec<Path> = family.into_iter().collect();
            out.sort_by(shortlex);
            return Ok(out);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubeResult {
    Holds,
    Fails,
    Inconclusive,
}

enum Star {
    Defined(Path),
    Undefined,
    Unknown,
}

fn star(theta: &Complement, u: &Path, v: &Path, fuel: u64) -> Star {
    match rc_star(theta, u, v, fuel) {
        Ok((w, _)) => Star::Defined(w),
        Err(Error::OutOfFuel(_)) => Star::Unknown,
        Err(_) => Star::Undefined,
    }
}

fn star2(theta: &Complement, a: &Path, b: &Path, c: &Path, fuel: u64) -> Star {
    match (star(theta, a, b, fuel), star(theta, a, c, fuel)) {
        (Star::Defined(x), Star::Defined(y)) => star(theta, &x, &y, fuel),
        (Star::Unknown, _) | (_, Star::Unknown) => Star::Unknown,
        _ => Star::Undefined,
    }
}

/// The cube condition at `(a, b, c)`. Triples that are not pairwise distinct
/// hold by convention.
pub fn cube_condition(theta: &Complement, a: Letter, b: Letter, c: Letter, fuel: u64) -> CubeResult {
    if a == b || b == c || a == c {
        return CubeResult::Holds;
    }
    let al = theta.alphabet();
    let p = |l: Letter| al.path(al.src(l), vec![l]).unwrap();
    let (a, b, c) = (p(a), p(b), p(c));
    match (star2(theta, &a, &b, &c, fuel), star2(theta, &b, &a, &c, fuel)) {
        (Star::Unknown, _) | (_, Star::Unknown) => CubeResult::Inconclusive,
        (Star::Undefined, Star::Undefined) => CubeResult::Holds,
        (Star::Defined(x), Star::Defined(y)) => match star(theta, &x, &y, fuel) {
            Star::Defined(z) if z.is_empty() => CubeResult::Holds,
            Star::Unknown => CubeResult::Inconclusive,
            _ => CubeResult::Fails,
        },
        _ => CubeResult::Fails,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    Incomplete(Letter, Letter, Letter),
    Inconclusive(Letter, Letter, Letter),
}

/// Checks the cube condition on every ordered triple of pairwise distinct
/// letters with a common source. Needs a short complement or evidence that
/// the presentation is right-Noetherian.
pub fn check_complete(theta: &Complement, evidence: Option<NoetherianEvidence>, fuel: u64) -> Result<Completeness> {
    require(theta, Orientation::Right)?;
    if !theta.is_short() && evidence.is_none() {
        return Err(Error::PreconditionUnmet("complement is not short and no Noetherianity evidence was given".into()));
    }
    let al = theta.alphabet();
    let mut pending = None;
    for a in al.letters() {
        for b in al.letters() {
            for c in al.letters() {
                if al.src(a) != al.src(b) || al.src(a) != al.src(c) {
                    continue;
                }
                match cube_condition(theta, a, b, c, fuel) {
                    CubeResult::Holds => {}
                    CubeResult::Fails => return Ok(Completeness::Incomplete(a, b, c)),
                    CubeResult::Inconclusive => {
                        pending.get_or_insert((a, b, c));
                    }
                }
            }
        }
    }
    Ok(match pending {
        Some((a, b, c)) => Completeness::Inconclusive(a, b, c),
        None => Completeness::Complete,
    })
}

impl Grid {
    pub fn render(&self, format: GridFormat) -> String {
        match (&self.shape, format) {
            (GridShape::Rect(g), GridFormat::Ascii) => self.rect_ascii(g),
            (GridShape::Rect(g), GridFormat::Dot) => self.rect_dot(g),
            (GridShape::Graph(g), GridFormat::Ascii) => self.graph_ascii(g),
            (GridShape::Graph(g), GridFormat::Dot) => self.graph_dot(g),
        }
    }

    fn label(&self, l: Option<Letter>) -> &str {
        l.map_or("", |l| self.alphabet.name(l))
    }

    fn rect_ascii(&self, g: &RectGrid) -> String {
        let width =
            g.horizontal.iter().chain(&g.vertical).flatten().map(|&l| self.label(l).chars().count()).max().unwrap_or(0)
                + 4;
        let left = self.orientation == Orientation::Left;
        let seg = |l: Option<Letter>| match l {
            None => "=".repeat(width),
            Some(_) => {
                let name = self.label(l);
                let n = name.chars().count();
                let pad = (width - n) / 2;
                format!("{}{}{}", "-".repeat(pad), name, "-".repeat(width - n - pad))
            }
        };
        let mut lines = Vec::new();
        for (i, row) in g.horizontal.iter().enumerate() {
            let mut cells: Vec<String> = row.iter().map(|&l| seg(l)).collect();
            if left {
                cells.reverse();
            }
            let mut line = String::from("+");
            for c in cells {
                line.push_str(&c);
                line.push('+');
            }
            lines.push(line);
            if let Some(vs) = g.vertical.get(i) {
                let mut cols: Vec<Option<Letter>> = vs.clone();
                if left {
                    cols.reverse();
                }
                let mut line = String::new();
                for v in cols {
                    let mark = if v.is_some() { '|' } else { '=' };
                    let _ = write!(line, "{mark}{:<width$}", self.label(v));
                }
                lines.push(line.trim_end().to_string());
            }
        }
        if left {
            lines.reverse();
        }
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }

    fn edge_attrs(&self, l: Option<Letter>, input: bool) -> String {
        match l {
            None => "label=\"\", color=\"black:black\"".to_string(),
            Some(_) if input => format!("label=\"{}\", style=bold", self.label(l)),
            Some(_) => format!("label=\"{}\"", self.label(l)),
        }
    }

    fn dot_edge(&self, out: &mut String, from: &str, to: &str, attrs: &str) {
        let (from, to) = if self.orientation == Orientation::Left { (to, from) } else { (from, to) };
        let _ = writeln!(out, "  {from} -> {to} [{attrs}];");
    }

    fn rect_dot(&self, g: &RectGrid) -> String {
        let mut out = String::from("digraph reversing {\n  node [shape=point];\n");
        for (i, row) in g.horizontal.iter().enumerate() {
            for (j, &l) in row.iter().enumerate() {
                let attrs = self.edge_attrs(l, i == 0);
                self.dot_edge(&mut out, &format!("v{i}_{j}"), &format!("v{i}_{}", j + 1), &attrs);
            }
        }
        for (i, row) in g.vertical.iter().enumerate() {
            for (j, &l) in row.iter().enumerate() {
                let attrs = self.edge_attrs(l, j == 0);
                self.dot_edge(&mut out, &format!("v{i}_{j}"), &format!("v{}_{j}", i + 1), &attrs);
            }
        }
        out.push_str("}\n");
        out
    }

    fn graph_ascii(&self, g: &GraphGrid) -> String {
        let left = self.orientation == Orientation::Left;
        let show = |e: &[SignedLetter]| {
            let mut e = e.to_vec();
            if left {
                e.reverse();
            }
            self.alphabet.show_entries(&e)
        };
        let mut out = String::new();
        for (k, s) in g.steps.iter().enumerate() {
            let _ = writeln!(out, "{:>4}: {}  =>  {}", k + 1, show(&s.before), show(&s.after));
        }
        out
    }

    fn graph_dot(&self, g: &GraphGrid) -> String {
        let mut out = String::from("digraph reversing {\n  node [shape=point];\n");
        for e in &g.edges {
            let attrs = self.edge_attrs(e.label, e.input);
            self.dot_edge(&mut out, &format!("v{}", e.from), &format!("v{}", e.to), &attrs);
        }
        out.push_str("}\n");
        out
    }
}

//! Finite germs: partial multiplication tables, their laws, and the
//! recognition of Garside germs.
//!
//! Elements are indexed by `usize` in declaration order. The product table
//! is dense (`n × n`), which is fine at the sizes germs are written by hand.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::core::{Alphabet, Letter, ObjectId};
use crate::error::{Error, Result};
use crate::presentation::Presentation;

pub type Elem = usize;

/// Default bound on the number of elements found by [`Germ::enumerate_ball`].
pub const BALL_CAP: usize = 10_000;

/// Bound on the size of a single word class explored while building a ball.
/// Classes grow much faster than balls: Δ⁴ in the B₃ germ has 21329 words.
pub const CLASS_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    objects: Vec<String>,
    names: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<Elem>,
    op: Vec<Option<Elem>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GermLaw {
    /// Products respect sources and targets.
    Endpoints,
    /// Identities are neutral.
    Identity,
    /// Partial associativity.
    Associativity,
}

/// First violated germ law, with the elements involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermViolation {
    pub law: GermLaw,
    pub witness: Vec<String>,
}

impl fmt::Display for GermViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let law = match self.law {
            GermLaw::Endpoints => "source/target law",
            GermLaw::Identity => "identity law",
            GermLaw::Associativity => "associativity law",
        };
        write!(f, "{law} fails at ({})", self.witness.join(", "))
    }
}

/// The local left-divisibility relation: `a ⋜ c` iff `a∘b = c` for some `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDivisibility {
    n: usize,
    table: Vec<bool>,
}

impl LocalDivisibility {
    pub fn divides(&self, a: Elem, b: Elem) -> bool {
        self.table[a * self.n + b]
    }

    /// `a ≺ b`: divides but is not divided back.
    pub fn strictly(&self, a: Elem, b: Elem) -> bool {
        self.divides(a, b) && !self.divides(b, a)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// Outcome of the Garside-germ recognition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GermVerdict {
    Garside,
    NotLeftCancellative,
    NotLeftAssociative,
    /// `J(a1, a2)` has no greatest element.
    NoGreatest(Elem, Elem),
}

impl GermVerdict {
    pub fn is_garside(&self) -> bool {
        matches!(self, GermVerdict::Garside)
    }
}

impl Germ {
    /// Builds a germ from named objects, elements `(name, src, tgt)`,
    /// identities `(object, element)` and products `(x, y, x∘y)`.
    ///
    /// Products with an identity factor are filled in where the table leaves
    /// them out. Laws are not checked here; see [`Germ::validate`].
    pub fn new(
        objects: &[&str],
        elements: &[(&str, &str, &str)],
        identities: &[(&str, &str)],
        products: &[(&str, &str, &str)],
    ) -> Result<Germ> {
        let mut obj_index = HashMap::new();
        for (i, &o) in objects.iter().enumerate() {
            if obj_index.insert(o, i).is_some() {
                return Err(Error::Duplicate(o.to_string()));
            }
        }
        let obj = |name: &str| obj_index.get(name).copied().ok_or_else(|| Error::UnknownObject(name.to_string()));
        let mut index = HashMap::new();
        let (mut names, mut src, mut tgt) = (Vec::new(), Vec::new(), Vec::new());
        for (i, &(name, s, t)) in elements.iter().enumerate() {
            if index.insert(name, i).is_some() {
                return Err(Error::Duplicate(name.to_string()));
            }
            names.push(name.to_string());
            src.push(obj(s)?);
            tgt.push(obj(t)?);
        }
        let elem = |name: &str| index.get(name).copied().ok_or_else(|| Error::UnknownLetter(name.to_string()));
        let mut identity = vec![usize::MAX; objects.len()];
        for &(o, e) in identities {
            let (x, e) = (obj(o)?, elem(e)?);
            if identity[x] != usize::MAX {
                return Err(Error::Duplicate(format!("identity of {o}")));
            }
            if src[e] != x || tgt[e] != x {
                return Err(Error::InvalidGerm(format!("identity `{}` is not a loop at `{o}`", names[e])));
            }
            identity[x] = e;
        }
        if let Some(x) = identity.iter().position(|&e| e == usize::MAX) {
            return Err(Error::InvalidGerm(format!("object `{}` has no identity", objects[x])));
        }
        let n = names.len();
        let mut op = vec![None; n * n];
        for &(a, b, c) in products {
            let (a, b, c) = (elem(a)?, elem(b)?, elem(c)?);
            match op[a * n + b] {
                Some(old) if old != c => {
                    return Err(Error::InvalidGerm(format!("{} ∘ {} given twice", names[a], names[b])));
                }
                _ => op[a * n + b] = Some(c),
            }
        }
        for a in 0..n {
            let l = identity[src[a]] * n + a;
            op[l] = op[l].or(Some(a));
            let r = a * n + identity[tgt[a]];
            op[r] = op[r].or(Some(a));
        }
        Ok(Germ { objects: objects.iter().map(|s| s.to_string()).collect(), names, src, tgt, identity, op })
    }

    /// One-object germ.
    pub fn monoid(elements: &[&str], identity: &str, products: &[(&str, &str, &str)]) -> Result<Germ> {
        let els: Vec<_> = elements.iter().map(|&e| (e, "*", "*")).collect();
        Germ::new(&["*"], &els, &[("*", identity)], products)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn find(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }

    pub fn elem(&self, name: &str) -> Result<Elem> {
        self.find(name).ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn src(&self, e: Elem) -> usize {
        self.src[e]
    }

    pub fn tgt(&self, e: Elem) -> usize {
        self.tgt[e]
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn identity(&self, object: usize) -> Elem {
        self.identity[object]
    }

    pub fn is_identity(&self, e: Elem) -> bool {
        self.identity[self.src[e]] == e
    }

    pub fn product(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.op[a * self.len() + b]
    }

    /// Non-identity elements in declaration order.
    pub fn non_identities(&self) -> Vec<Elem> {
        (0..self.len()).filter(|&e| !self.is_identity(e)).collect()
    }

    /// The opposite germ: `a ∘' b = b ∘ a`, sources and targets swapped.
    pub fn opposite(&self) -> Germ {
        let n = self.len();
        let mut op = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                op[a * n + b] = self.op[b * n + a];
            }
        }
        Germ { src: self.tgt.clone(), tgt: self.src.clone(), op, ..self.clone() }
    }

    fn names_of(&self, es: &[Elem]) -> Vec<String> {
        es.iter().map(|&e| self.names[e].clone()).collect()
    }

    /// Checks the three germ laws exhaustively and reports the first failure.
    pub fn validate(&self) -> std::result::Result<(), GermViolation> {
        let n = self.len();
        let fail = |law, es: &[Elem]| Err(GermViolation { law, witness: self.names_of(es) });
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = self.product(a, b) {
                    if self.tgt[a] != self.src[b] || self.src[c] != self.src[a] || self.tgt[c] != self.tgt[b] {
                        return fail(GermLaw::Endpoints, &[a, b]);
                    }
                }
            }
        }
        for a in 0..n {
            let (l, r) = (self.identity[self.src[a]], self.identity[self.tgt[a]]);
            if self.product(l, a) != Some(a) {
                return fail(GermLaw::Identity, &[l, a]);
            }
            if self.product(a, r) != Some(a) {
                return fail(GermLaw::Identity, &[a, r]);
            }
        }
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = self.product(a, b) else { continue };
                for c in 0..n {
                    let Some(bc) = self.product(b, c) else { continue };
                    if self.product(ab, c) != self.product(a, bc) {
                        return fail(GermLaw::Associativity, &[a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }

    /// [`Germ::validate`] with the report turned into an [`Error`].
    pub fn check(&self) -> Result<()> {
        self.validate().map_err(|v| Error::InvalidGerm(v.to_string()))
    }

    /// `(a∘b)∘c` defined implies `b∘c` defined.
    pub fn is_left_associative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| match self.product(a, b) {
                None => true,
                Some(ab) => (0..n).all(|c| self.product(ab, c).is_none() || self.product(b, c).is_some()),
            })
        })
    }

    /// Local left-divisibility, and whether each row of the table is
    /// injective (left-cancellativity). The scan stops at the first repeated
    /// value, in which case the returned table is partial.
    pub fn left_divisibility(&self) -> (bool, LocalDivisibility) {
        let n = self.len();
        let mut table = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = self.product(a, b) {
                    if table[a * n + c] {
                        return (false, LocalDivisibility { n, table });
                    }
                    table[a * n + c] = true;
                }
            }
        }
        (true, LocalDivisibility { n, table })
    }

    /// Orders `order` so that no element strictly divides a later one: each
    /// element is inserted before the first already placed strict divisor,
    /// or appended when there is none.
    pub fn non_ascending_in(&self, div: &LocalDivisibility, order: &[Elem]) -> Vec<Elem> {
        let mut seq: Vec<Elem> = Vec::with_capacity(order.len());
        for &a in order {
            match seq.iter().position(|&s| div.strictly(s, a)) {
                Some(i) => seq.insert(i, a),
                None => seq.push(a),
            }
        }
        seq
    }

    /// [`Germ::non_ascending_in`] over the declaration order.
    pub fn non_ascending(&self, div: &LocalDivisibility) -> Vec<Elem> {
        let order: Vec<Elem> = (0..self.len()).collect();
        self.non_ascending_in(div, &order)
    }

    /// True iff `seq[i] ≺ seq[j]` never holds for `i < j`.
    pub fn is_non_ascending(div: &LocalDivisibility, seq: &[Elem]) -> bool {
        (0..seq.len()).all(|i| (i + 1..seq.len()).all(|j| !div.strictly(seq[i], seq[j])))
    }

    /// `J(a1, a2) = { b : a1∘b defined, b ⋜ a2 }`, listed in `seq` order.
    pub fn j_set(&self, div: &LocalDivisibility, seq: &[Elem], a1: Elem, a2: Elem) -> Vec<Elem> {
        seq.iter().copied().filter(|&b| self.product(a1, b).is_some() && div.divides(b, a2)).collect()
    }

    /// The ⋜-greatest element of `J(a1, a2)`, if any. `seq` must be
    /// non-ascending, so only the first member needs checking.
    pub fn j_greatest(&self, div: &LocalDivisibility, seq: &[Elem], a1: Elem, a2: Elem) -> Option<Elem> {
        let mut top = None;
        for &b in seq {
            if self.product(a1, b).is_some() && div.divides(b, a2) {
                match top {
                    None => top = Some(b),
                    Some(c) if !div.divides(b, c) => return None,
                    _ => {}
                }
            }
        }
        top
    }

    /// Composable pairs `(a1, a2)` in declaration order.
    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let n = self.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.tgt[a] == self.src[b]).collect()
    }

    /// Recognition of Garside germs, returning the first failing check.
    pub fn recognize(&self) -> GermVerdict {
        let (cancellative, div) = self.left_divisibility();
        if !cancellative {
            return GermVerdict::NotLeftCancellative;
        }
        if !self.is_left_associative() {
            return GermVerdict::NotLeftAssociative;
        }
        let seq = self.non_ascending(&div);
        for (a1, a2) in self.pairs() {
            if self.j_greatest(&div, &seq, a1, a2).is_none() {
                return GermVerdict::NoGreatest(a1, a2);
            }
        }
        GermVerdict::Garside
    }

    pub fn is_garside_germ(&self) -> bool {
        self.recognize().is_garside()
    }

    /// Normal decomposition `(a1∘b, c)` of `a1·a2`, where `b` is the greatest
    /// element of `J(a1, a2)` and `a2 = b∘c`.
    pub fn square_witness_with(
        &self,
        div: &LocalDivisibility,
        seq: &[Elem],
        a1: Elem,
        a2: Elem,
    ) -> Option<(Elem, Elem)> {
        let b = self.j_greatest(div, seq, a1, a2)?;
        let c = (0..self.len()).find(|&c| self.product(b, c) == Some(a2))?;
        Some((self.product(a1, b)?, c))
    }

    pub fn germ_square_witness(&self, a1: Elem, a2: Elem) -> Option<(Elem, Elem)> {
        let (_, div) = self.left_divisibility();
        let seq = self.non_ascending(&div);
        self.square_witness_with(&div, &seq, a1, a2)
    }

    /// The full witness table over composable pairs. Requires a Garside germ.
    pub fn witness_table(&self) -> Result<BTreeMap<(Elem, Elem), (Elem, Elem)>> {
        let verdict = self.recognize();
        if !verdict.is_garside() {
            return Err(Error::PreconditionUnmet(format!("not a Garside germ ({verdict:?})")));
        }
        let (_, div) = self.left_divisibility();
        let seq = self.non_ascending(&div);
        let mut out = BTreeMap::new();
        for (a1, a2) in self.pairs() {
            let w = self.square_witness_with(&div, &seq, a1, a2).expect("Garside germ has all witnesses");
            out.insert((a1, a2), w);
        }
        Ok(out)
    }

    /// Alphabet of non-identity elements, keeping object names.
    pub fn alphabet(&self) -> Result<(Alphabet, Vec<Option<Letter>>)> {
        let mut alpha = Alphabet::new();
        let objs: Vec<ObjectId> = self.objects.iter().map(|o| alpha.add_object(o)).collect::<Result<_>>()?;
        let mut letters = vec![None; self.len()];
        for e in self.non_identities() {
            letters[e] = Some(alpha.add_letter(&self.names[e], objs[self.src[e]], objs[self.tgt[e]])?);
        }
        Ok((alpha, letters))
    }

    /// The presentation of `Cat(germ)`: letters are the non-identity
    /// elements, one relation `a·b = a∘b` per product of non-identities.
    pub fn to_presentation(&self) -> Result<Presentation> {
        let (alpha, letters) = self.alphabet()?;
        let mut rels = Vec::new();
        for a in self.non_identities() {
            for b in self.non_identities() {
                let Some(c) = self.product(a, b) else { continue };
                if self.is_identity(c) {
                    return Err(Error::PreconditionUnmet(format!(
                        "{} ∘ {} is an identity; the presentation would not be positive",
                        self.names[a], self.names[b]
                    )));
                }
                let (la, lb, lc) = (letters[a].unwrap(), letters[b].unwrap(), letters[c].unwrap());
                let x = alpha.src(la);
                rels.push((alpha.path(x, vec![la, lb])?, alpha.path(x, vec![lc])?));
            }
        }
        Presentation::new(alpha, rels)
    }

    /// Pairs `(e, f)` with `e∘f` and `f∘e` both identities, identities
    /// included as `(1, 1)`.
    pub fn invertibles(&self) -> Vec<(Elem, Elem)> {
        let n = self.len();
        let mut out = Vec::new();
        for e in 0..n {
            for f in 0..n {
                let ef = self.product(e, f);
                let fe = self.product(f, e);
                if ef == Some(self.identity[self.src[e]]) && fe == Some(self.identity[self.tgt[e]]) {
                    out.push((e, f));
                }
            }
        }
        out
    }

    fn word_key<'a>(&'a self, w: &[Elem]) -> (usize, Vec<&'a str>) {
        (w.len(), w.iter().map(|&e| self.names[e].as_str()).collect())
    }

    /// All words equivalent to `w` (non-identity letters only) under the
    /// relations of `Cat(germ)`. Errors once more than `cap` words are seen.
    pub fn word_class(&self, w: &[Elem], cap: usize) -> Result<BTreeSet<Vec<Elem>>> {
        let nonid = self.non_identities();
        let mut splits: HashMap<Elem, Vec<(Elem, Elem)>> = HashMap::new();
        let mut cancel: Vec<(Elem, Elem)> = Vec::new();
        for &a in &nonid {
            for &b in &nonid {
                if let Some(c) = self.product(a, b) {
                    if self.is_identity(c) {
                        cancel.push((a, b));
                    } else {
                        splits.entry(c).or_default().push((a, b));
                    }
                }
            }
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        while let Some(u) = queue.pop_front() {
            let mut next = Vec::new();
            for i in 0..u.len() {
                if i + 1 < u.len() {
                    if let Some(c) = self.product(u[i], u[i + 1]) {
                        let mut v = u[..i].to_vec();
                        if !self.is_identity(c) {
                            v.push(c);
                        }
                        v.extend_from_slice(&u[i + 2..]);
                        next.push(v);
                    }
                }
                for &(a, b) in splits.get(&u[i]).into_iter().flatten() {
                    let mut v = u[..i].to_vec();
                    v.extend([a, b]);
                    v.extend_from_slice(&u[i + 1..]);
                    next.push(v);
                }
            }
            for i in 0..=u.len() {
                for &(a, b) in &cancel {
                    let ok = match (i.checked_sub(1).map(|j| u[j]), u.get(i)) {
                        (Some(p), _) => self.tgt[p] == self.src[a],
                        (None, Some(&q)) => self.tgt[b] == self.src[q],
                        (None, None) => true,
                    };
                    if ok {
                        let mut v = u[..i].to_vec();
                        v.extend([a, b]);
                        v.extend_from_slice(&u[i..]);
                        next.push(v);
                    }
                }
            }
            for v in next {
                if seen.insert(v.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded(format!("equivalence class exceeds {cap} words")));
                    }
                    queue.push_back(v);
                }
            }
        }
        Ok(seen)
    }

    /// Shortlex-least word of the class of `w`, names breaking ties.
    pub fn canonical_word(&self, w: &[Elem], cap: usize) -> Result<Vec<Elem>> {
        let class = self.word_class(w, cap)?;
        Ok(class.into_iter().min_by(|u, v| self.word_key(u).cmp(&self.word_key(v))).unwrap())
    }

    /// Elements of `Cat(germ)` reachable as products of at most `radius`
    /// germ elements, as canonical words sorted shortlex. The identity at
    /// an object is represented by the one-letter word `[1_x]`.
    pub fn enumerate_ball(&self, radius: usize, cap: usize) -> Result<Vec<Vec<Elem>>> {
        let nonid = self.non_identities();
        let mut canon: HashMap<Vec<Elem>, Vec<Elem>> = HashMap::new();
        let mut found: BTreeSet<(usize, Vec<Elem>)> = BTreeSet::new();
        for x in 0..self.objects.len() {
            found.insert((x, Vec::new()));
        }
        let mut layer: Vec<Vec<Elem>> = vec![Vec::new()];
        for _ in 0..radius {
            let mut grown = Vec::new();
            for u in &layer {
                for &a in &nonid {
                    if u.last().is_some_and(|&l| self.tgt[l] != self.src[a]) {
                        continue;
                    }
                    let mut v = u.clone();
                    v.push(a);
                    if canon.contains_key(&v) {
                        continue;
                    }
                    let class = self.word_class(&v, CLASS_CAP)?;
                    let best = class.iter().min_by(|p, q| self.word_key(p).cmp(&self.word_key(q))).unwrap().clone();
                    for member in class {
                        canon.insert(member, best.clone());
                    }
                    grown.push(v);
                }
            }
            for v in &grown {
                let c = &canon[v];
                let x = if c.is_empty() { self.src[v[0]] } else { self.src[c[0]] };
                found.insert((x, c.clone()));
                if found.len() > cap {
                    return Err(Error::CapExceeded(format!("ball exceeds {cap} elements")));
                }
            }
            layer = grown;
        }
        let mut out: Vec<Vec<Elem>> =
            found.into_iter().map(|(x, w)| if w.is_empty() { vec![self.identity[x]] } else { w }).collect();
        out.sort_by(|u, v| self.word_key(u).cmp(&self.word_key(v)));
        out.dedup();
        Ok(out)
    }

    /// Germ words joined by `·`.
    pub fn show_word(&self, w: &[Elem]) -> String {
        w.iter().map(|&e| self.names[e].as_str()).collect::<Vec<_>>().join("·")
    }

    /// Local right-divisibility: `a` right-divides `c` iff `x∘a = c` for
    /// some `x`. Complete even when the germ is not right-cancellative.
    pub fn right_divisibility(&self) -> LocalDivisibility {
        let n = self.len();
        let mut table = vec![false; n * n];
        for x in 0..n {
            for a in 0..n {
                if let Some(c) = self.product(x, a) {
                    table[a * n + c] = true;
                }
            }
        }
        LocalDivisibility { n, table }
    }

    /// No column of the table repeats a value.
    pub fn is_right_cancellative(&self) -> bool {
        self.opposite().left_divisibility().0
    }
}

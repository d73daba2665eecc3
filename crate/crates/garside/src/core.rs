//! Objects, letters, positive and signed paths.
//!
//! Letters are interned in an [`Alphabet`]; paths store letter ids and carry
//! their endpoints explicitly so that empty paths stay anchored.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ObjectId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterInfo {
    pub name: String,
    pub src: ObjectId,
    pub tgt: ObjectId,
}

/// Name of the single object used by monoid alphabets.
pub const MONOID_OBJECT: &str = "*";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    objects: Vec<String>,
    letters: Vec<LetterInfo>,
    object_index: HashMap<String, ObjectId>,
    letter_index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// One-object alphabet with the given letter names.
    pub fn monoid<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut alpha = Self::new();
        let x = alpha.add_object(MONOID_OBJECT)?;
        for n in names {
            alpha.add_letter(n.as_ref(), x, x)?;
        }
        Ok(alpha)
    }

    pub fn add_object(&mut self, name: &str) -> Result<ObjectId> {
        if name.is_empty() || self.object_index.contains_key(name) {
            return Err(Error::Duplicate(name.to_string()));
        }
        let id = ObjectId(self.objects.len() as u32);
        self.objects.push(name.to_string());
        self.object_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_letter(&mut self, name: &str, src: ObjectId, tgt: ObjectId) -> Result<Letter> {
        if name.is_empty() || self.letter_index.contains_key(name) {
            return Err(Error::Duplicate(name.to_string()));
        }
        let id = Letter(self.letters.len() as u32);
        self.letters.push(LetterInfo { name: name.to_string(), src, tgt });
        self.letter_index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.letter_index.get(name).copied().ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn object(&self, name: &str) -> Result<ObjectId> {
        self.object_index.get(name).copied().ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.letters[l.index()].name
    }

    pub fn object_name(&self, x: ObjectId) -> &str {
        &self.objects[x.index()]
    }

    pub fn src(&self, l: Letter) -> ObjectId {
        self.letters[l.index()].src
    }

    pub fn tgt(&self, l: Letter) -> ObjectId {
        self.letters[l.index()].tgt
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letters.len() as u32).map(Letter)
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> + '_ {
        (0..self.objects.len() as u32).map(ObjectId)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn is_monoid(&self) -> bool {
        self.objects.len() == 1
    }

    /// Default anchor for empty paths: the first object.
    pub fn default_object(&self) -> ObjectId {
        ObjectId(0)
    }

    /// Same letters with sources and targets swapped: the opposite precategory.
    pub fn opposite(&self) -> Alphabet {
        let mut out = self.clone();
        for info in &mut out.letters {
            std::mem::swap(&mut info.src, &mut info.tgt);
        }
        out
    }

    /// Builds a positive path, checking composability.
    pub fn path(&self, anchor: ObjectId, letters: Vec<Letter>) -> Result<Path> {
        let Some(&first) = letters.first() else {
            return Ok(Path::empty(anchor));
        };
        for w in letters.windows(2) {
            self.check_link(self.tgt(w[0]), self.src(w[1]))?;
        }
        Ok(Path { src: self.src(first), tgt: self.tgt(*letters.last().unwrap()), letters })
    }

    pub fn signed(&self, anchor: ObjectId, entries: Vec<SignedLetter>) -> Result<SignedPath> {
        let Some(&first) = entries.first() else {
            return Ok(SignedPath::empty(anchor));
        };
        for w in entries.windows(2) {
            self.check_link(w[0].tgt(self), w[1].src(self))?;
        }
        Ok(SignedPath { src: first.src(self), tgt: entries.last().unwrap().tgt(self), entries })
    }

    fn check_link(&self, left: ObjectId, right: ObjectId) -> Result<()> {
        if left != right {
            return Err(Error::EndpointMismatch {
                left: self.object_name(left).to_string(),
                right: self.object_name(right).to_string(),
            });
        }
        Ok(())
    }

    /// Parses whitespace-separated letter names; `~a` is the inverse of `a`.
    /// `ε` or an empty string is the empty path at the default object.
    pub fn parse_signed(&self, text: &str) -> Result<SignedPath> {
        let mut entries = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "ε" {
                continue;
            }
            let (name, positive) = match tok.strip_prefix('~') {
                Some(rest) => (rest, false),
                None => (tok, true),
            };
            entries.push(SignedLetter { letter: self.letter(name)?, positive });
        }
        self.signed(self.default_object(), entries)
    }

    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let w = self.parse_signed(text)?;
        w.to_positive().ok_or_else(|| Error::BadRelation(format!("`{text}` is not a positive word")))
    }

    pub fn show(&self, letters: &[Letter]) -> String {
        if letters.is_empty() {
            return "ε".to_string();
        }
        letters.iter().map(|&l| self.name(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn show_path(&self, p: &Path) -> String {
        self.show(&p.letters)
    }

    pub fn show_signed(&self, w: &SignedPath) -> String {
        self.show_entries(&w.entries)
    }

    pub fn show_entries(&self, entries: &[SignedLetter]) -> String {
        if entries.is_empty() {
            return "ε".to_string();
        }
        entries
            .iter()
            .map(|s| if s.positive { self.name(s.letter).to_string() } else { format!("~{}", self.name(s.letter)) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A composable sequence of letters; `src`/`tgt` are kept for empty paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    src: ObjectId,
    tgt: ObjectId,
    letters: Vec<Letter>,
}

impl Path {
    pub fn empty(x: ObjectId) -> Self {
        Path { src: x, tgt: x, letters: Vec::new() }
    }

    pub fn src(&self) -> ObjectId {
        self.src
    }

    pub fn tgt(&self) -> ObjectId {
        self.tgt
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn compose(&self, other: &Path) -> Result<Path> {
        if self.tgt != other.src {
            return Err(Error::EndpointMismatch {
                left: format!("#{}", self.tgt.0),
                right: format!("#{}", other.src.0),
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Path { src: self.src, tgt: other.tgt, letters })
    }

    pub fn to_signed(&self) -> SignedPath {
        SignedPath {
            src: self.src,
            tgt: self.tgt,
            entries: self.letters.iter().map(|&l| SignedLetter::pos(l)).collect(),
        }
    }

    /// Same path read in the opposite category.
    pub fn reversed(&self) -> Path {
        let mut letters = self.letters.clone();
        letters.reverse();
        Path { src: self.tgt, tgt: self.src, letters }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedLetter {
    pub letter: Letter,
    pub positive: bool,
}

impl SignedLetter {
    pub fn pos(letter: Letter) -> Self {
        SignedLetter { letter, positive: true }
    }

    pub fn neg(letter: Letter) -> Self {
        SignedLetter { letter, positive: false }
    }

    pub fn inverse(self) -> Self {
        SignedLetter { letter: self.letter, positive: !self.positive }
    }

    pub fn src(self, alpha: &Alphabet) -> ObjectId {
        if self.positive {
            alpha.src(self.letter)
        } else {
            alpha.tgt(self.letter)
        }
    }

    pub fn tgt(self, alpha: &Alphabet) -> ObjectId {
        if self.positive {
            alpha.tgt(self.letter)
        } else {
            alpha.src(self.letter)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Empty,
    Positive,
    Negative,
    NegPos,
    PosNeg,
    Mixed,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Shape::Empty => "empty",
            Shape::Positive => "positive",
            Shape::Negative => "negative",
            Shape::NegPos => "neg-pos",
            Shape::PosNeg => "pos-neg",
            Shape::Mixed => "mixed",
        };
        f.write_str(s)
    }
}

/// A composable sequence over letters and their formal inverses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPath {
    src: ObjectId,
    tgt: ObjectId,
    entries: Vec<SignedLetter>,
}

impl SignedPath {
    pub fn empty(x: ObjectId) -> Self {
        SignedPath { src: x, tgt: x, entries: Vec::new() }
    }

    pub(crate) fn from_parts(src: ObjectId, tgt: ObjectId, entries: Vec<SignedLetter>) -> Self {
        SignedPath { src, tgt, entries }
    }

    /// `bar(u) · v` for positive paths with a common source.
    pub fn fraction(u: &Path, v: &Path) -> Result<Self> {
        u.to_signed().bar().compose(&v.to_signed())
    }

    /// `v · bar(u)` for positive paths with a common target.
    pub fn right_fraction(v: &Path, u: &Path) -> Result<Self> {
        v.to_signed().compose(&u.to_signed().bar())
    }

    pub fn src(&self) -> ObjectId {
        self.src
    }

    pub fn tgt(&self) -> ObjectId {
        self.tgt
    }

    pub fn entries(&self) -> &[SignedLetter] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn compose(&self, other: &SignedPath) -> Result<SignedPath> {
        if self.tgt != other.src {
            return Err(Error::EndpointMismatch {
                left: format!("#{}", self.tgt.0),
                right: format!("#{}", other.src.0),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(SignedPath { src: self.src, tgt: other.tgt, entries })
    }

    pub fn bar(&self) -> SignedPath {
        SignedPath { src: self.tgt, tgt: self.src, entries: self.entries.iter().rev().map(|s| s.inverse()).collect() }
    }

    pub fn classify(&self) -> Shape {
        if self.entries.is_empty() {
            return Shape::Empty;
        }
        let signs: Vec<bool> = self.entries.iter().map(|s| s.positive).collect();
        let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
        match (changes, signs[0]) {
            (0, true) => Shape::Positive,
            (0, false) => Shape::Negative,
            (1, false) => Shape::NegPos,
            (1, true) => Shape::PosNeg,
            _ => Shape::Mixed,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|s| s.positive)
    }

    pub fn is_negative(&self) -> bool {
        self.entries.iter().all(|s| !s.positive)
    }

    pub fn to_positive(&self) -> Option<Path> {
        self.is_positive().then(|| Path {
            src: self.src,
            tgt: self.tgt,
            letters: self.entries.iter().map(|s| s.letter).collect(),
        })
    }

    /// Splits a positive-negative path `v · bar(u)` into `(v, u)`.
    pub fn split_pos_neg(&self, alpha: &Alphabet) -> Option<(Path, Path)> {
        let k = self.entries.iter().position(|s| !s.positive).unwrap_or(self.entries.len());
        if self.entries[k..].iter().any(|s| s.positive) {
            return None;
        }
        let mid = if k < self.entries.len() { self.entries[k].src(alpha) } else { self.tgt };
        let v = Path { src: self.src, tgt: mid, letters: self.entries[..k].iter().map(|s| s.letter).collect() };
        let u = Path { src: self.tgt, tgt: mid, letters: self.entries[k..].iter().rev().map(|s| s.letter).collect() };
        Some((v, u))
    }

    /// Splits a negative-positive path `bar(u) · v` into `(u, v)`.
    pub fn split_neg_pos(&self, alpha: &Alphabet) -> Option<(Path, Path)> {
        let k = self.entries.iter().position(|s| s.positive).unwrap_or(self.entries.len());
        if self.entries[k..].iter().any(|s| !s.positive) {
            return None;
        }
        let mid = if k < self.entries.len() { self.entries[k].src(alpha) } else { self.tgt };
        let u = Path { src: mid, tgt: self.src, letters: self.entries[..k].iter().rev().map(|s| s.letter).collect() };
        let v = Path { src: mid, tgt: self.tgt, letters: self.entries[k..].iter().map(|s| s.letter).collect() };
        Some((u, v))
    }

    /// Same path read in the opposite category (order reversed, signs kept).
    pub fn mirrored(&self) -> SignedPath {
        let mut entries = self.entries.clone();
        entries.reverse();
        SignedPath { src: self.tgt, tgt: self.src, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::monoid(&["a", "b"]).unwrap()
    }

    #[test]
    fn bar_is_an_involutive_antihomomorphism() {
        let al = ab();
        let w = al.parse_signed("~a b").unwrap();
        assert_eq!(al.show_signed(&w.bar()), "~b a");
        assert_eq!(w.bar().bar(), w);
        let p = al.parse_signed("a b").unwrap();
        let q = al.parse_signed("~b a a").unwrap();
        assert_eq!(p.compose(&q).unwrap().bar(), q.bar().compose(&p.bar()).unwrap());
        assert_eq!(al.show_signed(&p.bar()), "~b ~a");
    }

    #[test]
    fn classify_examples() {
        let al = ab();
        assert_eq!(al.parse_signed("~b ~b ~a b a b b").unwrap().classify(), Shape::NegPos);
        assert_eq!(al.parse_signed("a ~b a ~a b a").unwrap().classify(), Shape::Mixed);
        assert_eq!(al.parse_signed("a b").unwrap().classify(), Shape::Positive);
        assert_eq!(al.parse_signed("").unwrap().classify(), Shape::Empty);
        assert_eq!(al.parse_signed("a ~b").unwrap().classify(), Shape::PosNeg);
    }

    #[test]
    fn compose_checks_endpoints() {
        let mut al = Alphabet::new();
        let x = al.add_object("x").unwrap();
        let y = al.add_object("y").unwrap();
        let a = al.add_letter("a", x, y).unwrap();
        let b = al.add_letter("b", y, x).unwrap();
        let pa = al.path(x, vec![a]).unwrap();
        let pb = al.path(y, vec![b]).unwrap();
        assert_eq!(pa.compose(&pb).unwrap().letters(), &[a, b]);
        assert_eq!(pa.compose(&Path::empty(y)).unwrap(), pa);
        assert!(pa.compose(&pa).is_err());
        assert!(al.path(x, vec![a, a]).is_err());
        let w = al.parse_signed("~a").unwrap();
        assert_eq!((w.src(), w.tgt()), (y, x));
    }

    #[test]
    fn splits() {
        let al = ab();
        let w = al.parse_signed("~b ~a a b b").unwrap();
        let (u, v) = w.split_neg_pos(&al).unwrap();
        assert_eq!(al.show_path(&u), "a b");
        assert_eq!(al.show_path(&v), "a b b");
        let w = al.parse_signed("a b ~a").unwrap();
        let (v, u) = w.split_pos_neg(&al).unwrap();
        assert_eq!(al.show_path(&v), "a b");
        assert_eq!(al.show_path(&u), "a");
        assert!(al.parse_signed("a ~b a").unwrap().split_pos_neg(&al).is_none());
    }
}

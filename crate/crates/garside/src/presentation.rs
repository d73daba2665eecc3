//! Positive presentations and right/left complements.

use std::collections::BTreeMap;

use crate::core::{Alphabet, Letter, Path};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Right,
    Left,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Right => Orientation::Left,
            Orientation::Left => Orientation::Right,
        }
    }
}

/// Reason to believe a presentation is right-Noetherian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoetherianEvidence {
    /// Every relation has sides of equal length (checked).
    Homogeneous,
    /// Asserted by the user, not verified.
    UserAsserted,
    /// The user claims a weight map exists; treated as an assertion.
    WeightMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relations: Vec<(Path, Path)>,
    asserted: Option<NoetherianEvidence>,
}

impl Presentation {
    /// Builds a positive presentation. Each relation is stored with its
    /// smaller side first and the list is sorted, so equal inputs give equal
    /// values whatever order they were written in.
    pub fn new(alphabet: Alphabet, relations: Vec<(Path, Path)>) -> Result<Self> {
        let mut rels = Vec::with_capacity(relations.len());
        for (u, v) in relations {
            if u.is_empty() || v.is_empty() || u.src() != v.src() || u.tgt() != v.tgt() {
                return Err(Error::BadRelation(format!("{} = {}", alphabet.show_path(&u), alphabet.show_path(&v))));
            }
            rels.push(if u <= v { (u, v) } else { (v, u) });
        }
        rels.sort();
        rels.dedup();
        Ok(Presentation { alphabet, relations: rels, asserted: None })
    }

    /// Parses `lhs = rhs` relation strings over a one-object alphabet.
    pub fn monoid<S: AsRef<str>>(gens: &[S], rels: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::monoid(gens)?;
        let mut relations = Vec::new();
        for r in rels {
            let (l, rr) = r.split_once('=').ok_or_else(|| Error::BadRelation(r.to_string()))?;
            relations.push((alphabet.parse_path(l)?, alphabet.parse_path(rr)?));
        }
        Presentation::new(alphabet, relations)
    }

    /// Presentation associated with a complement: one relation per unordered
    /// off-diagonal pair in its domain.
    pub fn from_complement(theta: &Complement) -> Result<Self> {
        let alpha = theta.alphabet().clone();
        let mut rels = Vec::new();
        for (&(a, b), ab) in theta.entries() {
            if a >= b {
                continue;
            }
            let ba = theta.get(b, a).expect("complement domain is symmetric");
            let (lhs, rhs) = match theta.orientation() {
                Orientation::Right => {
                    let mut l = vec![a];
                    l.extend_from_slice(ab);
                    let mut r = vec![b];
                    r.extend_from_slice(ba);
                    (l, r)
                }
                Orientation::Left => {
                    let mut l = ab.to_vec();
                    l.push(b);
                    let mut r = ba.to_vec();
                    r.push(a);
                    (l, r)
                }
            };
            let (x, y) = (alpha.src(lhs[0]), alpha.src(rhs[0]));
            rels.push((alpha.path(x, lhs)?, alpha.path(y, rhs)?));
        }
        Presentation::new(alpha, rels)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &[(Path, Path)] {
        &self.relations
    }

    pub fn assert_noetherian(mut self, kind: NoetherianEvidence) -> Self {
        self.asserted = Some(kind);
        self
    }

    /// The evidence given through [`Presentation::assert_noetherian`], if any.
    pub fn asserted(&self) -> Option<NoetherianEvidence> {
        self.asserted
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|(u, v)| u.len() == v.len())
    }

    pub fn noetherian_evidence(&self) -> Option<NoetherianEvidence> {
        if self.is_homogeneous() {
            Some(NoetherianEvidence::Homogeneous)
        } else {
            self.asserted
        }
    }

    /// Every relation side reversed, in the opposite precategory.
    pub fn opposite(&self) -> Presentation {
        let rels = self.relations.iter().map(|(u, v)| (u.reversed(), v.reversed())).collect();
        let mut p = Presentation::new(self.alphabet.opposite(), rels).expect("reversal keeps relations valid");
        p.asserted = self.asserted;
        p
    }

    /// Right-complement read off the relations: `a·u = b·v` gives
    /// θ(a,b) = u and θ(b,a) = v.
    pub fn derive_complement(&self) -> Result<Complement> {
        let mut theta = Complement::new(self.alphabet.clone(), Orientation::Right);
        for (u, v) in &self.relations {
            let (a, b) = (u.letters()[0], v.letters()[0]);
            self.insert_pair(&mut theta, a, b, &u.letters()[1..], &v.letters()[1..])?;
        }
        Ok(theta)
    }

    /// Left-complement: `u·a = v·b` gives θ̃(a,b) = v and θ̃(b,a) = u, so
    /// that θ̃(a,b)·b = θ̃(b,a)·a.
    pub fn derive_left_complement(&self) -> Result<Complement> {
        let mut theta = Complement::new(self.alphabet.clone(), Orientation::Left);
        for (u, v) in &self.relations {
            let (ul, vl) = (u.letters(), v.letters());
            let (a, b) = (ul[ul.len() - 1], vl[vl.len() - 1]);
            self.insert_pair(&mut theta, a, b, &vl[..vl.len() - 1], &ul[..ul.len() - 1])?;
        }
        Ok(theta)
    }

    fn insert_pair(&self, theta: &mut Complement, a: Letter, b: Letter, ab: &[Letter], ba: &[Letter]) -> Result<()> {
        let name = |l| self.alphabet.name(l).to_string();
        if a == b || theta.get(a, b).is_some() {
            return Err(Error::NotComplemented(name(a), name(b)));
        }
        theta.set(a, b, ab.to_vec());
        theta.set(b, a, ba.to_vec());
        Ok(())
    }
}

/// A partial map on pairs of letters, with the orientation it is meant for.
///
/// The diagonal is implicit: θ(a,a) = ε for every letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement {
    alphabet: Alphabet,
    orientation: Orientation,
    table: BTreeMap<(Letter, Letter), Vec<Letter>>,
}

impl Complement {
    pub fn new(alphabet: Alphabet, orientation: Orientation) -> Self {
        Complement { alphabet, orientation, table: BTreeMap::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn set(&mut self, a: Letter, b: Letter, value: Vec<Letter>) {
        if a != b {
            self.table.insert((a, b), value);
        }
    }

    pub fn get(&self, a: Letter, b: Letter) -> Option<&[Letter]> {
        if a == b {
            return Some(&[]);
        }
        self.table.get(&(a, b)).map(|v| v.as_slice())
    }

    /// Off-diagonal entries in key order.
    pub fn entries(&self) -> impl Iterator<Item = (&(Letter, Letter), &[Letter])> {
        self.table.iter().map(|(k, v)| (k, v.as_slice()))
    }

    pub fn is_short(&self) -> bool {
        self.table.values().all(|v| v.len() <= 1)
    }

    /// Checks the complement laws: symmetric domain, common source, and
    /// matching targets of `a·θ(a,b)` and `b·θ(b,a)` (mirrored on the left).
    pub fn validate(&self) -> Result<()> {
        let al = &self.alphabet;
        for (&(a, b), ab) in &self.table {
            let ba = self.get(b, a).ok_or_else(|| {
                Error::BadRelation(format!("θ({}, {}) defined without its mirror", al.name(a), al.name(b)))
            })?;
            let bad = || Error::BadRelation(format!("θ({}, {}) has incompatible endpoints", al.name(a), al.name(b)));
            match self.orientation {
                Orientation::Right => {
                    if al.src(a) != al.src(b) {
                        return Err(bad());
                    }
                    let l = al.path(al.tgt(a), [&[a][..], ab].concat()).map_err(|_| bad())?;
                    let r = al.path(al.tgt(b), [&[b][..], ba].concat()).map_err(|_| bad())?;
                    if l.tgt() != r.tgt() {
                        return Err(bad());
                    }
                }
                Orientation::Left => {
                    if al.tgt(a) != al.tgt(b) {
                        return Err(bad());
                    }
                    let l = al.path(al.src(b), [ab, &[b][..]].concat()).map_err(|_| bad())?;
                    let r = al.path(al.src(a), [ba, &[a][..]].concat()).map_err(|_| bad())?;
                    if l.src() != r.src() {
                        return Err(bad());
                    }
                }
            }
        }
        Ok(())
    }

    /// The same data read in the opposite precategory: θ'(a,b) = rev(θ(b,a)),
    /// with the orientation flipped. Applying it twice is the identity.
    pub fn opposite(&self) -> Complement {
        let table = self
            .table
            .keys()
            .map(|&(a, b)| {
                let mut w = self.table[&(b, a)].clone();
                w.reverse();
                ((a, b), w)
            })
            .collect();
        Complement { alphabet: self.alphabet.opposite(), orientation: self.orientation.flip(), table }
    }
}

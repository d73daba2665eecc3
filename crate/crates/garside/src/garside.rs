//! Garside families: the smallest family containing a seed, recognition,
//! and the structure built on a family (witness table, lcm selectors,
//! strong and bounded checks, Δ, ∂ and φ).
//!
//! A [`GarsideStructure`] always goes through the germ induced on the
//! family: from a presentation we first compute the products that stay in
//! the family by reversing, then proceed exactly as for a germ given by hand.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::core::{Alphabet, Letter, Path, SignedLetter, SignedPath};
use crate::error::{Error, Result};
use crate::germ::{Elem, Germ, LocalDivisibility};
use crate::presentation::{Complement, Orientation, Presentation};
use crate::reversing::{check_complete, left_reverse_short, rc_star, right_reverse, right_reverse_short, Completeness};

fn path1(al: &Alphabet, l: Letter) -> Path {
    al.path(al.src(l), vec![l]).expect("single letter")
}

fn diverged(e: Error) -> Error {
    match e {
        Error::OutOfFuel(n) => Error::Diverged(format!("reversing used {n} steps")),
        e => e,
    }
}

/// `u ≡ v`, tested by reversing `~u v` to ε.
pub fn equivalent(theta: &Complement, u: &Path, v: &Path, fuel: u64) -> Result<bool> {
    if u.src() != v.src() || u.tgt() != v.tgt() {
        return Ok(false);
    }
    match rc_star(theta, u, v, fuel) {
        Ok((x, y)) => Ok(x.is_empty() && y.is_empty()),
        Err(Error::NoCommonMultiple(..)) => Ok(false),
        Err(e) => Err(diverged(e)),
    }
}

/// Lexicographically least word equivalent to `w`: repeatedly peel off the
/// smallest letter (by name) that left-divides what is left.
pub fn least_word(theta: &Complement, w: &Path, fuel: u64) -> Result<Path> {
    let al = theta.alphabet();
    let mut letters: Vec<Letter> = al.letters().collect();
    letters.sort_by(|&a, &b| al.name(a).cmp(al.name(b)));
    let mut out = Vec::new();
    let mut rest = w.clone();
    while !rest.is_empty() {
        let mut next = None;
        for &a in letters.iter().filter(|&&a| al.src(a) == rest.src()) {
            match rc_star(theta, &rest, &path1(al, a), fuel) {
                Ok((x, y)) if x.is_empty() => {
                    next = Some((a, y));
                    break;
                }
                Ok(_) | Err(Error::NoCommonMultiple(..)) => {}
                Err(e) => return Err(diverged(e)),
            }
        }
        let (a, y) = next.expect("some letter divides a non-empty path");
        out.push(a);
        rest = y;
    }
    al.path(w.src(), out)
}

struct Family<'a> {
    theta: &'a Complement,
    list: Vec<Path>,
    fuel: u64,
    cap: usize,
}

impl Family<'_> {
    fn include(&mut self, w: Path) -> Result<()> {
        for v in &self.list {
            if equivalent(self.theta, &w, v, self.fuel)? {
                return Ok(());
            }
        }
        if w.len() > self.cap {
            return Err(Error::Diverged(format!("a path of length {} exceeds the cap {}", w.len(), self.cap)));
        }
        self.list.push(least_word(self.theta, &w, self.fuel)?);
        if self.list.len() > self.cap {
            return Err(Error::Diverged(format!("more than {} paths", self.cap)));
        }
        Ok(())
    }
}

/// Closes `seeds` under θ* and under the lcm words `u·θ*(u,v)`, following
/// the pair order `(i, j)`, `j < i`, `i` increasing. Appended paths are the
/// lexicographically least representatives of their class.
///
/// A pair without common right-multiple is an error unless `permissive` is
/// set, in which case it is skipped. Running out of fuel or going past
/// `cap` (on size or path length) yields `Diverged`.
pub fn smallest_garside_family(
    theta: &Complement,
    seeds: &[Path],
    fuel: u64,
    cap: usize,
    permissive: bool,
) -> Result<Vec<Path>> {
    if theta.orientation() != Orientation::Right {
        return Err(Error::PreconditionUnmet("a right-complement is required".into()));
    }
    let al = theta.alphabet();
    let mut list: Vec<Path> = Vec::new();
    for s in seeds {
        if !list.contains(s) {
            list.push(s.clone());
        }
    }
    for l in al.letters() {
        if !list.contains(&path1(al, l)) {
            return Err(Error::PreconditionUnmet(format!("seed family lacks the letter `{}`", al.name(l))));
        }
    }
    let mut fam = Family { theta, list, fuel, cap };
    let mut i = 1;
    while i < fam.list.len() {
        for j in 0..i {
            let (wi, wj) = (fam.list[i].clone(), fam.list[j].clone());
            // θ* is only meaningful for paths with a common source.
            if wi.src() != wj.src() {
                continue;
            }
            match rc_star(theta, &wi, &wj, fuel) {
                Ok((x, y)) => {
                    let lcm_i = wi.compose(&x)?;
                    let lcm_j = wj.compose(&y)?;
                    fam.include(x)?;
                    fam.include(y)?;
                    fam.include(lcm_i)?;
                    fam.include(lcm_j)?;
                }
                Err(Error::NoCommonMultiple(a, b)) => {
                    if !permissive {
                        return Err(Error::NoCommonMultiple(a, b));
                    }
                }
                Err(e) => return Err(diverged(e)),
            }
        }
        i += 1;
    }
    Ok(fam.list)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyCheck {
    Garside,
    /// A letter has no equivalent member.
    NotGenerating(Letter),
    /// For this pair (indices into the family) the complement or the lcm
    /// is not equivalent to a member.
    NotClosed(usize, usize),
}

/// Recognition of a Garside family given by words, for a complemented
/// presentation where right-reversing is complete and Noetherian.
pub fn is_garside_family(theta: &Complement, family: &[Path], fuel: u64) -> Result<FamilyCheck> {
    let al = theta.alphabet();
    let member = |w: &Path| -> Result<bool> {
        if w.is_empty() {
            return Ok(true);
        }
        for v in family {
            if equivalent(theta, w, v, fuel)? {
                return Ok(true);
            }
        }
        Ok(false)
    };
    for l in al.letters() {
        if !member(&path1(al, l))? {
            return Ok(FamilyCheck::NotGenerating(l));
        }
    }
    for (i, u) in family.iter().enumerate() {
        for (j, v) in family.iter().enumerate() {
            if u.src() != v.src() {
                continue;
            }
            match rc_star(theta, u, v, fuel) {
                Ok((x, _)) => {
                    if !member(&x)? || !member(&u.compose(&x)?)? {
                        return Ok(FamilyCheck::NotClosed(i, j));
                    }
                }
                Err(Error::NoCommonMultiple(..)) => {}
                Err(e) => return Err(diverged(e)),
            }
        }
    }
    Ok(FamilyCheck::Garside)
}

/// Where a structure came from when it was built from a presentation.
#[derive(Clone, Debug)]
pub struct PresentationRoute {
    pub presentation: Presentation,
    pub complement: Complement,
    /// A word over the presentation's letters for every element (empty for
    /// identities).
    pub words: Vec<Path>,
}

/// Bounding data: `Δ(x)` per object and the derived maps on elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaData {
    pub delta: Vec<Elem>,
    /// `a∘∂(a) = Δ(src a)`.
    pub der: Vec<Elem>,
    /// `∂̃(a)∘a = Δ(src ∂̃(a))`.
    pub der_left: Vec<Elem>,
    pub phi_obj: Vec<usize>,
    /// `φ = ∂²`.
    pub phi: Vec<Elem>,
}

impl DeltaData {
    pub fn phi_pow(&self, e: Elem, n: i64) -> Elem {
        let mut e = e;
        if n >= 0 {
            for _ in 0..n {
                e = self.phi[e];
            }
        } else {
            for _ in 0..(-n) {
                e = self.phi.iter().position(|&f| f == e).expect("φ is a permutation");
            }
        }
        e
    }

    pub fn phi_obj_pow(&self, x: usize, n: i64) -> usize {
        let mut x = x;
        if n >= 0 {
            for _ in 0..n {
                x = self.phi_obj[x];
            }
        } else {
            for _ in 0..(-n) {
                x = self.phi_obj.iter().position(|&y| y == x).expect("φ is a permutation");
            }
        }
        x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

/// A commutative 2×1 diagram: top `a1 a2`, verticals `b0 b1 b2`, bottom
/// `c1 c2`, with `a1·b1 = b0·c1` and `a2·b2 = b1·c2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Domino {
    pub top: (Elem, Elem),
    pub verticals: (Elem, Elem, Elem),
    pub bottom: (Elem, Elem),
}

#[derive(Debug)]
pub struct GarsideStructure {
    germ: Germ,
    route: Option<PresentationRoute>,
    alphabet: Alphabet,
    letter_of: Vec<Option<Letter>>,
    elem_of: Vec<Elem>,
    div: LocalDivisibility,
    rdiv: LocalDivisibility,
    witness: Vec<Option<(Elem, Elem)>>,
    right_sel: Complement,
    left_sel: Option<Complement>,
    delta: Option<DeltaData>,
    domino: OnceLock<Option<Domino>>,
}

fn element_name(al: &Alphabet, w: &Path) -> String {
    let names: Vec<&str> = w.letters().iter().map(|&l| al.name(l)).collect();
    if al.letters().all(|l| al.name(l).chars().count() == 1) {
        names.concat()
    } else {
        names.join(".")
    }
}

impl GarsideStructure {
    /// Structure of a Garside germ.
    pub fn from_germ(germ: &Germ) -> Result<Self> {
        germ.check()?;
        Self::assemble(germ.clone(), None)
    }

    /// Structure of a family of words in a complemented presentation. The
    /// presentation must be complete for reversing (checked by the cube
    /// condition) and the family must pass [`is_garside_family`].
    pub fn from_presentation(p: &Presentation, family: &[Path], fuel: u64) -> Result<Self> {
        let theta = p.derive_complement()?;
        match check_complete(&theta, p.noetherian_evidence(), fuel)? {
            Completeness::Complete => {}
            other => {
                return Err(Error::PreconditionUnmet(format!("reversing is not known to be complete ({other:?})")))
            }
        }
        match is_garside_family(&theta, family, fuel)? {
            FamilyCheck::Garside => {}
            other => return Err(Error::PreconditionUnmet(format!("not a Garside family ({other:?})"))),
        }
        let al = p.alphabet();
        let mut words: Vec<Path> = al.objects().map(Path::empty).collect();
        for w in family {
            if w.is_empty() {
                continue;
            }
            let mut fresh = true;
            for v in &words {
                if equivalent(&theta, w, v, fuel)? {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                words.push(w.clone());
            }
        }
        let objects: Vec<&str> = al.objects().map(|x| al.object_name(x)).collect();
        let id_name = |x: usize| if al.is_monoid() { "1".to_string() } else { format!("1_{}", objects[x]) };
        let names: Vec<String> = words
            .iter()
            .enumerate()
            .map(|(i, w)| if w.is_empty() { id_name(i) } else { element_name(al, w) })
            .collect();
        let mut elements = Vec::new();
        for (i, w) in words.iter().enumerate() {
            elements.push((names[i].as_str(), objects[w.src().index()], objects[w.tgt().index()]));
        }
        let identities: Vec<(&str, &str)> = (0..objects.len()).map(|x| (objects[x], names[x].as_str())).collect();
        let mut products = Vec::new();
        for (i, u) in words.iter().enumerate().skip(objects.len()) {
            for (j, v) in words.iter().enumerate().skip(objects.len()) {
                if u.tgt() != v.src() {
                    continue;
                }
                let uv = u.compose(v)?;
                for (k, w) in words.iter().enumerate() {
                    if equivalent(&theta, &uv, w, fuel)? {
                        products.push((names[i].as_str(), names[j].as_str(), names[k].as_str()));
                        break;
                    }
                }
            }
        }
        let germ = Germ::new(&objects, &elements, &identities, &products)?;
        germ.check()?;
        let route = PresentationRoute { presentation: p.clone(), complement: theta, words };
        Self::assemble(germ, Some(route))
    }

    fn assemble(germ: Germ, route: Option<PresentationRoute>) -> Result<Self> {
        let verdict = germ.recognize();
        if !verdict.is_garside() {
            return Err(Error::PreconditionUnmet(format!("not a Garside germ ({verdict:?})")));
        }
        let n = germ.len();
        let (alphabet, letter_of) = germ.alphabet()?;
        let elem_of: Vec<Elem> = (0..n).filter(|&e| letter_of[e].is_some()).collect();
        let (_, div) = germ.left_divisibility();
        let rdiv = germ.right_divisibility();
        let mut witness = vec![None; n * n];
        for ((a, b), w) in germ.witness_table()? {
            witness[a * n + b] = Some(w);
        }
        let mut s = GarsideStructure {
            right_sel: Complement::new(alphabet.clone(), Orientation::Right),
            germ,
            route,
            alphabet,
            letter_of,
            elem_of,
            div,
            rdiv,
            witness,
            left_sel: None,
            delta: None,
            domino: OnceLock::new(),
        };
        s.right_sel = s.build_right_selector();
        s.left_sel = s.build_left_selector();
        s.delta = s.find_delta();
        Ok(s)
    }

    fn build_right_selector(&self) -> Complement {
        let mut theta = Complement::new(self.alphabet.clone(), Orientation::Right);
        for &a in &self.elem_of {
            for &b in &self.elem_of {
                if a == b || self.germ.src(a) != self.germ.src(b) {
                    continue;
                }
                if let Some(m) = self.right_lcm(a, b) {
                    let x = self.right_cofactor(a, m).expect("lcm is a right-multiple");
                    theta.set(self.letter_of[a].unwrap(), self.letter_of[b].unwrap(), self.word(x));
                }
            }
        }
        theta
    }

    fn build_left_selector(&self) -> Option<Complement> {
        let mut theta = Complement::new(self.alphabet.clone(), Orientation::Left);
        for &a in &self.elem_of {
            for &b in &self.elem_of {
                if a == b || self.germ.tgt(a) != self.germ.tgt(b) {
                    continue;
                }
                let m = self.left_lcm(a, b)?;
                let x = self.unique_left_cofactor(b, m)?;
                theta.set(self.letter_of[a].unwrap(), self.letter_of[b].unwrap(), self.word(x));
            }
        }
        Some(theta)
    }

    /// Empty for identities, one letter otherwise.
    fn word(&self, e: Elem) -> Vec<Letter> {
        self.letter_of[e].into_iter().collect()
    }

    fn right_cofactor(&self, a: Elem, m: Elem) -> Option<Elem> {
        (0..self.germ.len()).find(|&x| self.germ.product(a, x) == Some(m))
    }

    fn unique_left_cofactor(&self, b: Elem, m: Elem) -> Option<Elem> {
        let xs: Vec<Elem> = (0..self.germ.len()).filter(|&x| self.germ.product(x, b) == Some(m)).collect();
        (xs.len() == 1).then(|| xs[0])
    }

    /// Right-lcm of `a` and `b` inside the family, if there is one.
    pub fn right_lcm(&self, a: Elem, b: Elem) -> Option<Elem> {
        let n = self.germ.len();
        let common: Vec<Elem> = (0..n).filter(|&m| self.div.divides(a, m) && self.div.divides(b, m)).collect();
        common.iter().copied().find(|&c| common.iter().all(|&d| self.div.divides(c, d)))
    }

    /// Left-lcm of `a` and `b` inside the family, if there is one.
    pub fn left_lcm(&self, a: Elem, b: Elem) -> Option<Elem> {
        let n = self.germ.len();
        let common: Vec<Elem> = (0..n).filter(|&m| self.rdiv.divides(a, m) && self.rdiv.divides(b, m)).collect();
        common.iter().copied().find(|&c| common.iter().all(|&d| self.rdiv.divides(c, d)))
    }

    /// `θ̃(a,b)`: the `x` with `x∘b` the left-lcm of `a` and `b`. Defined on
    /// all of S♯ (identities included) when the family is strong.
    pub fn left_complement(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.unique_left_cofactor(b, self.left_lcm(a, b)?)
    }

    fn find_delta(&self) -> Option<DeltaData> {
        let g = &self.germ;
        let n = g.len();
        if !g.is_right_cancellative() {
            return None;
        }
        let objs = g.objects().len();
        let mut delta = Vec::with_capacity(objs);
        for x in 0..objs {
            let from_x: Vec<Elem> = (0..n).filter(|&e| g.src(e) == x).collect();
            let mut cands: Vec<Elem> =
                from_x.iter().copied().filter(|&d| from_x.iter().all(|&a| self.div.divides(a, d))).collect();
            cands.sort_by(|&p, &q| g.name(p).cmp(g.name(q)));
            delta.push(*cands.first()?);
        }
        let phi_obj: Vec<usize> = delta.iter().map(|&d| g.tgt(d)).collect();
        // Condition (2): for each y, exactly one z works for every a ending at y.
        let mut z_of = vec![usize::MAX; objs];
        for (y, slot) in z_of.iter_mut().enumerate() {
            let ending: Vec<Elem> = (0..n).filter(|&a| g.tgt(a) == y).collect();
            let zs: Vec<usize> = (0..objs)
                .filter(|&z| {
                    ending.iter().all(|&a| (0..n).any(|a2| g.src(a2) == z && g.product(a2, a) == Some(delta[z])))
                })
                .collect();
            if zs.len() != 1 {
                return None;
            }
            *slot = zs[0];
        }
        let der: Vec<Elem> = (0..n).map(|a| self.right_cofactor(a, delta[g.src(a)])).collect::<Option<_>>()?;
        let der_left: Vec<Elem> =
            (0..n).map(|a| self.unique_left_cofactor(a, delta[z_of[g.tgt(a)]])).collect::<Option<_>>()?;
        let phi: Vec<Elem> = (0..n).map(|a| der[der[a]]).collect();
        let distinct: BTreeSet<Elem> = phi.iter().copied().collect();
        if distinct.len() != n {
            return None;
        }
        for a in 0..n {
            if g.is_identity(a) != g.is_identity(phi[a]) || g.src(phi[a]) != phi_obj[g.src(a)] {
                return None;
            }
            for b in 0..n {
                if let Some(c) = g.product(a, b) {
                    if g.product(phi[a], phi[b]) != Some(phi[c]) {
                        return None;
                    }
                }
            }
        }
        Some(DeltaData { delta, der, der_left, phi_obj, phi })
    }

    pub fn germ(&self) -> &Germ {
        &self.germ
    }

    pub fn route(&self) -> Option<&PresentationRoute> {
        self.route.as_ref()
    }

    /// One letter per non-identity element, named after it.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.germ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.germ.is_empty()
    }

    pub fn name(&self, e: Elem) -> &str {
        self.germ.name(e)
    }

    pub fn elem(&self, name: &str) -> Result<Elem> {
        self.germ.elem(name)
    }

    pub fn is_identity(&self, e: Elem) -> bool {
        self.germ.is_identity(e)
    }

    pub fn letter(&self, e: Elem) -> Option<Letter> {
        self.letter_of[e]
    }

    pub fn elem_of_letter(&self, l: Letter) -> Elem {
        self.elem_of[l.index()]
    }

    pub fn divides(&self, a: Elem, b: Elem) -> bool {
        self.div.divides(a, b)
    }

    /// The Square-witness: the normal decomposition of `a1·a2`.
    pub fn witness(&self, a1: Elem, a2: Elem) -> Option<(Elem, Elem)> {
        self.witness[a1 * self.len() + a2]
    }

    pub fn is_normal_pair(&self, a1: Elem, a2: Elem) -> bool {
        self.witness(a1, a2) == Some((a1, a2))
    }

    pub fn right_selector(&self) -> &Complement {
        &self.right_sel
    }

    pub fn left_selector(&self) -> Option<&Complement> {
        self.left_sel.as_ref()
    }

    pub fn delta(&self) -> Option<&DeltaData> {
        self.delta.as_ref()
    }

    pub fn is_bounded(&self) -> bool {
        self.delta.is_some()
    }

    /// Every same-target pair has a left-lcm in the family, whose
    /// complements then give the left-disjoint pair.
    pub fn is_strong(&self) -> bool {
        self.left_sel.is_some()
    }

    /// The presentation read off the right-lcm selector.
    pub fn selector_presentation(&self) -> Result<Presentation> {
        Presentation::from_complement(&self.right_sel)
    }

    fn same_source_pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| self.germ.src(a) == self.germ.src(b))
    }

    pub fn common_right_multiples_exist(&self) -> bool {
        let n = self.len();
        self.same_source_pairs().all(|(a, b)| (0..n).any(|m| self.div.divides(a, m) && self.div.divides(b, m)))
    }

    /// Sufficient condition only: `Yes` or `Unknown`.
    pub fn common_left_multiples_exist(&self) -> Decision {
        let n = self.len();
        let ok = (0..n).all(|a| {
            (0..n)
                .filter(|&b| self.germ.tgt(a) == self.germ.tgt(b))
                .all(|b| (0..n).any(|m| self.rdiv.divides(a, m) && self.rdiv.divides(b, m)))
        });
        if ok {
            Decision::Yes
        } else {
            Decision::Unknown
        }
    }

    pub fn has_right_lcms(&self) -> bool {
        let n = self.len();
        self.same_source_pairs().all(|(a, b)| {
            let has_common = (0..n).any(|m| self.div.divides(a, m) && self.div.divides(b, m));
            !has_common || self.right_lcm(a, b).is_some()
        })
    }

    /// Family path of a sequence of elements, identities dropped.
    pub fn path_of(&self, object: usize, es: &[Elem]) -> Path {
        let letters: Vec<Letter> = es.iter().filter_map(|&e| self.letter_of[e]).collect();
        self.alphabet.path(crate::core::ObjectId(object as u32), letters).expect("elements compose")
    }

    pub fn elems_of(&self, p: &Path) -> Vec<Elem> {
        p.letters().iter().map(|&l| self.elem_of_letter(l)).collect()
    }

    /// `u ≡ v` for family paths, by short reversing with the selector.
    pub fn equivalent(&self, u: &Path, v: &Path) -> Result<bool> {
        if u.src() != v.src() || u.tgt() != v.tgt() {
            return Ok(false);
        }
        let out = right_reverse_short(&self.right_sel, &SignedPath::fraction(u, v)?)?;
        Ok(out.is_empty())
    }

    /// Whether `f` and `g` (same source) are left-disjoint: reverse `~f g`
    /// to the right, then back to the left, and compare with `f`, `g`.
    pub fn left_disjoint(&self, f: &Path, g: &Path) -> Result<bool> {
        if f.src() != g.src() {
            return Err(Error::EndpointMismatch {
                left: self.alphabet.object_name(f.src()).into(),
                right: self.alphabet.object_name(g.src()).into(),
            });
        }
        let left = self.left_sel.as_ref().ok_or_else(|| Error::PreconditionUnmet("no left-lcm selector".into()))?;
        let out = right_reverse_short(&self.right_sel, &SignedPath::fraction(f, g)?)?;
        let r = out.reversed().ok_or_else(|| Error::PreconditionUnmet("no common right-multiple".into()))?;
        let (g1, f1) = r.split_pos_neg(&self.alphabet).expect("positive-negative");
        let back = left_reverse_short(left, &SignedPath::right_fraction(&g1, &f1)?)?;
        let r2 = back.reversed().ok_or_else(|| Error::PreconditionUnmet("no common left-multiple".into()))?;
        let (f2, g2) = r2.split_neg_pos(&self.alphabet).expect("negative-positive");
        Ok(self.equivalent(&f2, f)? && self.equivalent(&g2, g)?)
    }

    /// `Δ^n(x)` as a signed family path.
    pub fn delta_power_path(&self, n: i64, x: usize) -> Result<SignedPath> {
        let d = self.delta.as_ref().ok_or_else(|| Error::PreconditionUnmet("family is not bounded".into()))?;
        let mut entries = Vec::new();
        if n > 0 {
            let mut y = x;
            for _ in 0..n {
                entries.extend(self.letter_of[d.delta[y]].map(SignedLetter::pos));
                y = d.phi_obj[y];
            }
        } else {
            for k in 1..=(-n) {
                let y = d.phi_obj_pow(x, -k);
                entries.extend(self.letter_of[d.delta[y]].map(SignedLetter::neg));
            }
        }
        self.alphabet.signed(crate::core::ObjectId(x as u32), entries)
    }

    /// Is this diagram commutative with greedy `⟨a1,a2⟩` and `⟨b1,c2⟩` but a
    /// non-greedy bottom row?
    pub fn is_domino_counterexample(&self, d: &Domino) -> bool {
        let (a1, a2) = d.top;
        let (b0, b1, b2) = d.verticals;
        let (c1, c2) = d.bottom;
        let eq = |x, y, z, w| matches!((self.witness(x, y), self.witness(z, w)), (Some(p), Some(q)) if p == q);
        eq(a1, b1, b0, c1)
            && eq(a2, b2, b1, c2)
            && self.is_normal_pair(a1, a2)
            && self.is_normal_pair(b1, c2)
            && !self.is_normal_pair(c1, c2)
    }

    /// First counterexample to the second domino rule among diagrams with
    /// all edges in the family, found by exhaustive search. Products are
    /// compared through their normal decompositions.
    pub fn second_domino_counterexample(&self) -> Option<Domino> {
        *self.domino.get_or_init(|| self.search_domino())
    }

    fn search_domino(&self) -> Option<Domino> {
        let g = &self.germ;
        let n = g.len();
        let all: Vec<Elem> = (0..n).collect();
        for &a1 in &all {
            for &a2 in all.iter().filter(|&&a2| self.is_normal_pair(a1, a2)) {
                for &b1 in all.iter().filter(|&&b| g.src(b) == g.tgt(a1)) {
                    for &b2 in all.iter().filter(|&&b| g.src(b) == g.tgt(a2)) {
                        let top_right = self.witness(a2, b2);
                        for &c2 in all.iter().filter(|&&c| g.src(c) == g.tgt(b1) && g.tgt(c) == g.tgt(b2)) {
                            if !self.is_normal_pair(b1, c2) || self.witness(b1, c2) != top_right {
                                continue;
                            }
                            let left = self.witness(a1, b1);
                            for &b0 in all.iter().filter(|&&b| g.src(b) == g.src(a1)) {
                                for &c1 in all.iter().filter(|&&c| g.src(c) == g.tgt(b0) && g.tgt(c) == g.tgt(b1)) {
                                    if self.witness(b0, c1) == left && !self.is_normal_pair(c1, c2) {
                                        return Some(Domino {
                                            top: (a1, a2),
                                            verticals: (b0, b1, b2),
                                            bottom: (c1, c2),
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Words over the presentation letters mapped into the family alphabet
    /// (same names), or family words kept as they are.
    pub fn lift(&self, w: &SignedPath, from: &Alphabet) -> Result<SignedPath> {
        let entries: Vec<SignedLetter> = w
            .entries()
            .iter()
            .map(|s| {
                let l = self.alphabet.letter(from.name(s.letter))?;
                Ok(SignedLetter { letter: l, positive: s.positive })
            })
            .collect::<Result<_>>()?;
        let anchor = self.alphabet.object(from.object_name(w.src()))?;
        self.alphabet.signed(anchor, entries)
    }

    /// General right-reversing with the selector (used on mixed words).
    pub fn right_reverse(&self, w: &SignedPath, fuel: u64) -> Result<crate::reversing::ReversingOutcome> {
        right_reverse(&self.right_sel, w, fuel)
    }
}

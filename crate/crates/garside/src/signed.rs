//! Signed case: symmetric and Δ-normal decompositions in the groupoid of
//! fractions, incremental multiplication and division, inverses, the three
//! word-problem routes and the lattice bounds.

use crate::core::{ObjectId, Path, SignedLetter, SignedPath};
use crate::error::{Error, Result};
use crate::garside::{DeltaData, GarsideStructure};
use crate::germ::Elem;
use crate::normal::{self, NormalForm};
use crate::presentation::Complement;
use crate::reversing::{left_reverse, left_reverse_short, right_reverse, right_reverse_short, ReversingOutcome};

/// `bar(b_q … b_1) · a_1 … a_p`. Both halves start at the same object;
/// the denominator is stored as `b_1 … b_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricNormal {
    pub denominator: NormalForm,
    pub numerator: NormalForm,
}

impl SymmetricNormal {
    pub fn identity(object: usize) -> Self {
        SymmetricNormal { denominator: NormalForm::identity(object), numerator: NormalForm::identity(object) }
    }

    /// Source of the represented element.
    pub fn source(&self, s: &GarsideStructure) -> usize {
        self.denominator.target(s)
    }

    pub fn target(&self, s: &GarsideStructure) -> usize {
        self.numerator.target(s)
    }

    pub fn is_identity(&self) -> bool {
        self.denominator.is_empty() && self.numerator.is_empty()
    }

    pub fn to_signed(&self, s: &GarsideStructure) -> SignedPath {
        let den = self.denominator.to_path(s).to_signed().bar();
        den.compose(&self.numerator.to_path(s).to_signed()).expect("halves share their source")
    }

    pub fn show(&self, s: &GarsideStructure) -> String {
        show_signed(s, &self.to_signed(s))
    }

    /// Swaps numerator and denominator.
    pub fn inverse(&self) -> SymmetricNormal {
        SymmetricNormal { denominator: self.numerator.clone(), numerator: self.denominator.clone() }
    }
}

/// `Δ^n(x) · a_1 … a_p` with `a_1` not Δ-like.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaNormal {
    /// Source `x` of the element.
    pub object: usize,
    pub exponent: i64,
    /// Starts at `φ^n(x)`.
    pub tail: NormalForm,
}

impl DeltaNormal {
    pub fn identity(object: usize) -> Self {
        DeltaNormal { object, exponent: 0, tail: NormalForm::identity(object) }
    }

    pub fn to_signed(&self, s: &GarsideStructure) -> Result<SignedPath> {
        s.delta_power_path(self.exponent, self.object)?.compose(&self.tail.to_path(s).to_signed())
    }

    pub fn show(&self, s: &GarsideStructure) -> String {
        let mut parts = Vec::new();
        if self.exponent != 0 {
            parts.push(if self.exponent == 1 { "Δ".to_string() } else { format!("Δ^{}", self.exponent) });
        }
        if !self.tail.is_empty() {
            parts.push(self.tail.show(s));
        }
        if parts.is_empty() {
            "ε".into()
        } else {
            parts.join(" · ")
        }
    }
}

/// Space-separated rendering with `~` for inverse letters.
pub fn show_signed(s: &GarsideStructure, w: &SignedPath) -> String {
    s.alphabet().show_signed(w)
}

fn left_sel(s: &GarsideStructure) -> Result<&Complement> {
    s.left_selector().ok_or_else(|| Error::PreconditionUnmet("the family is not strong (no left-lcm selector)".into()))
}

fn delta(s: &GarsideStructure) -> Result<&DeltaData> {
    s.delta().ok_or_else(|| Error::PreconditionUnmet("the family is not bounded".into()))
}

fn lcms(s: &GarsideStructure) -> Result<()> {
    if s.has_right_lcms() {
        Ok(())
    } else {
        Err(Error::PreconditionUnmet("the family does not have right-lcms".into()))
    }
}

fn mismatch(s: &GarsideStructure, left: usize, right: usize) -> Error {
    let g = s.germ();
    Error::EndpointMismatch { left: g.objects()[left].clone(), right: g.objects()[right].clone() }
}

fn reversed(out: ReversingOutcome) -> Result<Option<SignedPath>> {
    match out.result {
        crate::reversing::ReversingResult::Reversed(w) => Ok(Some(w)),
        crate::reversing::ReversingResult::Fail { .. } => Ok(None),
        crate::reversing::ReversingResult::OutOfFuel => {
            Err(Error::Diverged(format!("reversing used {} steps", out.steps)))
        }
    }
}

fn positive_part(w: &SignedPath, s: &GarsideStructure) -> (Path, Path) {
    w.split_pos_neg(s.alphabet()).expect("right-reversing ends positive-negative")
}

fn negative_part(w: &SignedPath, s: &GarsideStructure) -> (Path, Path) {
    w.split_neg_pos(s.alphabet()).expect("left-reversing ends negative-positive")
}

/// Symmetric normal form of `[v]·[u]⁻¹`: left-reverse `v ~u` with the
/// left-lcm selector, then normalize both halves.
pub fn sym_normalize_posneg(s: &GarsideStructure, v: &Path, u: &Path) -> Result<SymmetricNormal> {
    let theta = left_sel(s)?;
    let out = left_reverse_short(theta, &SignedPath::right_fraction(v, u)?)?;
    let r = reversed(out)?.ok_or(Error::NoRightFraction)?;
    let (u2, v2) = negative_part(&r, s);
    Ok(SymmetricNormal { denominator: normal::normalize_path(s, &u2)?, numerator: normal::normalize_path(s, &v2)? })
}

/// Symmetric normal form of an arbitrary signed family path: right-reverse
/// to `v ~u` with the lcm selector, then proceed as for a right fraction.
/// `NoRightFraction` when right-reversing fails.
pub fn sym_normalize(s: &GarsideStructure, w: &SignedPath, fuel: u64) -> Result<SymmetricNormal> {
    left_sel(s)?;
    let out = right_reverse(s.right_selector(), w, fuel)?;
    let r = reversed(out)?.ok_or(Error::NoRightFraction)?;
    let (v, u) = positive_part(&r, s);
    sym_normalize_posneg(s, &v, &u)
}

fn prune(s: &GarsideStructure, object: usize, es: Vec<Elem>) -> NormalForm {
    NormalForm { object, entries: es.into_iter().filter(|&e| !s.is_identity(e)).collect() }
}

/// Symmetric normal form of `c·g`: left-lcm sweep through the denominator,
/// then a witness sweep through the numerator.
pub fn sym_left_multiply(s: &GarsideStructure, c: Elem, sn: &SymmetricNormal) -> Result<SymmetricNormal> {
    left_sel(s)?;
    let g = s.germ();
    if g.tgt(c) != sn.source(s) {
        return Err(mismatch(s, g.tgt(c), sn.source(s)));
    }
    let lc = |x, y| s.left_complement(x, y).expect("strong family has left-lcms on S♯");
    let mut carry = c;
    let mut den = sn.denominator.entries.clone();
    for b in den.iter_mut().rev() {
        let (b2, c2) = (lc(*b, carry), lc(carry, *b));
        *b = b2;
        carry = c2;
    }
    let mid = g.src(carry);
    let mut num = Vec::with_capacity(sn.numerator.len() + 1);
    for &a in &sn.numerator.entries {
        let (a2, c2) = s.witness(carry, a).expect("composable");
        num.push(a2);
        carry = c2;
    }
    num.push(carry);
    Ok(SymmetricNormal { denominator: prune(s, mid, den), numerator: prune(s, mid, num) })
}

/// Symmetric normal form of `c⁻¹·g` for a bounded family.
pub fn sym_left_divide(s: &GarsideStructure, c: Elem, sn: &SymmetricNormal) -> Result<SymmetricNormal> {
    let d = delta(s)?;
    let g = s.germ();
    if g.src(c) != sn.source(s) {
        return Err(mismatch(s, g.src(c), sn.source(s)));
    }
    let mut carry = c;
    let mut den = sn.denominator.entries.clone();
    for b in den.iter_mut().rev() {
        let (c2, b2) = s.witness(*b, carry).expect("composable");
        *b = b2;
        carry = c2;
    }
    let mut carry = d.der_left[carry];
    // With an empty numerator the sweep runs on a single identity entry.
    let id = g.identity(g.tgt(carry));
    let entries = if sn.numerator.is_empty() { vec![id] } else { sn.numerator.entries.clone() };
    let mut num = Vec::with_capacity(entries.len() + 1);
    for &a in &entries {
        let (a2, c2) = s.witness(carry, a).expect("composable");
        num.push(a2);
        carry = c2;
    }
    num.push(carry);
    let head = num.remove(0);
    den.insert(0, d.der[head]);
    let mid = g.tgt(head);
    Ok(SymmetricNormal { denominator: prune(s, mid, den), numerator: prune(s, mid, num) })
}

/// The ≃-test against `Δ(src a)`: the invertible `e` with `Δ∘e = a`.
fn delta_like(s: &GarsideStructure, d: &DeltaData, a: Elem) -> Option<Elem> {
    normal::eqir(s, d.delta[s.germ().src(a)], a)
}

fn absorb(s: &GarsideStructure, d: &DeltaData, object: usize, n: i64, mut es: Vec<Elem>) -> Result<DeltaNormal> {
    let g = s.germ();
    es.retain(|&e| !g.is_identity(e));
    let mut n = n;
    if let Some(&head) = es.first() {
        if let Some(e) = delta_like(s, d, head) {
            es.remove(0);
            n += 1;
            if let Some(next) = es.first_mut() {
                *next = g
                    .product(e, *next)
                    .ok_or_else(|| Error::PreconditionUnmet("invertible does not compose".into()))?;
            }
        }
    }
    let start = d.phi_obj_pow(object, n);
    Ok(DeltaNormal { object, exponent: n, tail: NormalForm { object: start, entries: es } })
}

fn sweep(s: &GarsideStructure, mut carry: Elem, tail: &[Elem]) -> Vec<Elem> {
    let mut out = Vec::with_capacity(tail.len() + 1);
    for &a in tail {
        let (a2, c2) = s.witness(carry, a).expect("composable");
        out.push(a2);
        carry = c2;
    }
    out.push(carry);
    out
}

/// Δ-normal form of `c·g`.
pub fn delta_left_multiply(s: &GarsideStructure, c: Elem, dn: &DeltaNormal) -> Result<DeltaNormal> {
    let d = delta(s)?;
    let g = s.germ();
    if g.tgt(c) != dn.object {
        return Err(mismatch(s, g.tgt(c), dn.object));
    }
    let c0 = d.phi_pow(c, dn.exponent);
    let out = sweep(s, c0, &dn.tail.entries);
    absorb(s, d, g.src(c), dn.exponent, out)
}

/// Δ-normal form of `c⁻¹·g`.
pub fn delta_left_divide(s: &GarsideStructure, c: Elem, dn: &DeltaNormal) -> Result<DeltaNormal> {
    let d = delta(s)?;
    let g = s.germ();
    if g.src(c) != dn.object {
        return Err(mismatch(s, g.src(c), dn.object));
    }
    let c0 = d.phi_pow(d.der_left[c], dn.exponent);
    let out = sweep(s, c0, &dn.tail.entries);
    absorb(s, d, g.tgt(c), dn.exponent - 1, out)
}

/// Δ-normal form of a signed family path, letter by letter from the right.
pub fn delta_normalize(s: &GarsideStructure, w: &SignedPath) -> Result<DeltaNormal> {
    delta(s)?;
    let mut dn = DeltaNormal::identity(w.tgt().index());
    for l in w.entries().iter().rev() {
        let c = s.elem_of_letter(l.letter);
        dn = if l.positive { delta_left_multiply(s, c, &dn)? } else { delta_left_divide(s, c, &dn)? };
    }
    Ok(dn)
}

/// `Δ^(-n-p) · ∂(φ^(-n-p)(a_p)) … ∂(φ^(-n-1)(a_1))`.
pub fn invert_delta(s: &GarsideStructure, dn: &DeltaNormal) -> Result<DeltaNormal> {
    let d = delta(s)?;
    let p = dn.tail.len() as i64;
    let n = -dn.exponent - p;
    let entries: Vec<Elem> =
        (1..=p).rev().map(|i| d.der[d.phi_pow(dn.tail.entries[(i - 1) as usize], -dn.exponent - i)]).collect();
    let object = dn.tail.target(s);
    Ok(DeltaNormal { object, exponent: n, tail: NormalForm { object: d.phi_obj_pow(object, n), entries } })
}

/// Word problem through symmetric normal forms.
pub fn word_problem_nf(s: &GarsideStructure, w: &SignedPath, fuel: u64) -> Result<bool> {
    if w.src() != w.tgt() {
        return Ok(false);
    }
    let sn = sym_normalize(s, w, fuel)?;
    normal::compare(s, &sn.denominator, &sn.numerator)
}

/// Right-reversing with the right selector, then left-reversing with the
/// left one. Returns the final residue (empty iff `w` is trivial).
pub fn double_reversing(s: &GarsideStructure, w: &SignedPath, fuel: u64) -> Result<SignedPath> {
    lcms(s)?;
    let theta = left_sel(s)?;
    let r = reversed(right_reverse(s.right_selector(), w, fuel)?)?
        .ok_or_else(|| Error::PreconditionUnmet("no common right-multiple".into()))?;
    reversed(left_reverse_short(theta, &r)?)?.ok_or_else(|| Error::PreconditionUnmet("no common left-multiple".into()))
}

pub fn word_problem_double_rev(s: &GarsideStructure, w: &SignedPath, fuel: u64) -> Result<bool> {
    if w.src() != w.tgt() {
        return Ok(false);
    }
    Ok(double_reversing(s, w, fuel)?.is_empty())
}

/// Left-reverse `w` to `~u v`, then left-reverse `v ~u`. Returns the final
/// residue.
pub fn left_reversing_twice(s: &GarsideStructure, w: &SignedPath, fuel: u64) -> Result<SignedPath> {
    let theta = left_sel(s)?;
    let r = reversed(left_reverse(theta, w, fuel)?)?
        .ok_or_else(|| Error::PreconditionUnmet("no common left-multiple".into()))?;
    let (u, v) = negative_part(&r, s);
    if u.tgt() != v.tgt() {
        // `v ~u` is not even a path: `w` joins different objects.
        return Ok(r);
    }
    reversed(left_reverse_short(theta, &SignedPath::right_fraction(&v, &u)?)?)?
        .ok_or_else(|| Error::PreconditionUnmet("no common left-multiple".into()))
}

pub fn word_problem_left_only(s: &GarsideStructure, w: &SignedPath, fuel: u64) -> Result<bool> {
    if w.src() != w.tgt() {
        return Ok(false);
    }
    Ok(left_reversing_twice(s, w, fuel)?.is_empty())
}

fn same_source(s: &GarsideStructure, w1: &SignedPath, w2: &SignedPath) -> Result<()> {
    if w1.src() != w2.src() {
        return Err(mismatch(s, w1.src().index(), w2.src().index()));
    }
    Ok(())
}

/// Least common upper bound for left-divisibility in the groupoid.
pub fn least_upper_bound(s: &GarsideStructure, w1: &SignedPath, w2: &SignedPath, fuel: u64) -> Result<SignedPath> {
    same_source(s, w1, w2)?;
    lcms(s)?;
    let theta = left_sel(s)?;
    let r = reversed(left_reverse(theta, &w1.bar().compose(w2)?, fuel)?)?
        .ok_or_else(|| Error::PreconditionUnmet("no common left-multiple".into()))?;
    let r2 = reversed(right_reverse_short(s.right_selector(), &r)?)?
        .ok_or_else(|| Error::PreconditionUnmet("no common right-multiple".into()))?;
    let (v2, _) = positive_part(&r2, s);
    w1.compose(&v2.to_signed())
}

/// Greatest lower bound for left-divisibility in the groupoid.
pub fn greatest_lower_bound(s: &GarsideStructure, w1: &SignedPath, w2: &SignedPath, fuel: u64) -> Result<SignedPath> {
    same_source(s, w1, w2)?;
    lcms(s)?;
    let theta = left_sel(s)?;
    let r = reversed(right_reverse(s.right_selector(), &w1.bar().compose(w2)?, fuel)?)?
        .ok_or_else(|| Error::PreconditionUnmet("no common right-multiple".into()))?;
    let r2 = reversed(left_reverse_short(theta, &r)?)?
        .ok_or_else(|| Error::PreconditionUnmet("no common left-multiple".into()))?;
    let (v2, _) = negative_part(&r2, s);
    w1.compose(&v2.to_signed().bar())
}

/// Left-gcd of two positive family paths, as a positive path.
pub fn left_gcd(s: &GarsideStructure, u: &Path, v: &Path) -> Result<Path> {
    if u.src() != v.src() {
        return Err(mismatch(s, u.src().index(), v.src().index()));
    }
    lcms(s)?;
    let theta = left_sel(s)?;
    let r = reversed(right_reverse_short(s.right_selector(), &SignedPath::fraction(u, v)?)?)?
        .ok_or_else(|| Error::PreconditionUnmet("no common right-multiple".into()))?;
    let r2 = reversed(left_reverse_short(theta, &r)?)?
        .ok_or_else(|| Error::PreconditionUnmet("no common left-multiple".into()))?;
    let (u2, _) = negative_part(&r2, s);
    let r3 = reversed(left_reverse_short(theta, &SignedPath::right_fraction(u, &u2)?)?)?
        .ok_or_else(|| Error::PreconditionUnmet("no common left-multiple".into()))?;
    r3.to_positive().ok_or_else(|| Error::PreconditionUnmet("gcd residue is not positive".into()))
}

/// `[f] ⋜ [g]` in the groupoid: `f⁻¹g` has an empty denominator.
pub fn fraction_divides(s: &GarsideStructure, f: &SignedPath, g: &SignedPath, fuel: u64) -> Result<bool> {
    same_source(s, f, g)?;
    Ok(sym_normalize(s, &f.bar().compose(g)?, fuel)?.denominator.is_empty())
}

/// Signed path made of one family element, positive or inverted.
pub fn element_path(s: &GarsideStructure, e: Elem, positive: bool) -> SignedPath {
    let g = s.germ();
    let anchor = if positive { g.src(e) } else { g.tgt(e) };
    let entries = s.letter(e).map(|l| if positive { SignedLetter::pos(l) } else { SignedLetter::neg(l) });
    s.alphabet().signed(ObjectId(anchor as u32), entries.into_iter().collect()).expect("single entry")
}

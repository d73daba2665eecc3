//! Positive case: greedy normal decompositions by left and right
//! multiplication, the two word-problem routes, divisibility and lcms.

use std::cell::Cell;

use crate::core::{Path, SignedPath};
use crate::error::{Error, Result};
use crate::garside::GarsideStructure;
use crate::germ::Elem;
use crate::presentation::Complement;
use crate::reversing::{lc_star, rc_star, right_reverse_short};

/// A normal decomposition: entries in the family, every adjacent pair
/// fixed by the Square-witness, trailing identities removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    /// Source object (also the target when `entries` is empty).
    pub object: usize,
    pub entries: Vec<Elem>,
}

impl NormalForm {
    pub fn identity(object: usize) -> Self {
        NormalForm { object, entries: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn target(&self, s: &GarsideStructure) -> usize {
        self.entries.last().map_or(self.object, |&e| s.germ().tgt(e))
    }

    fn pruned(mut self, s: &GarsideStructure) -> Self {
        while self.entries.last().is_some_and(|&e| s.is_identity(e)) {
            self.entries.pop();
        }
        self
    }

    pub fn to_path(&self, s: &GarsideStructure) -> Path {
        s.path_of(self.object, &self.entries)
    }

    pub fn show(&self, s: &GarsideStructure) -> String {
        if self.entries.is_empty() {
            return "ε".into();
        }
        s.germ().show_word(&self.entries)
    }

    /// Every adjacent pair is witness-stable.
    pub fn is_normal(&self, s: &GarsideStructure) -> bool {
        self.entries.windows(2).all(|p| s.is_normal_pair(p[0], p[1]))
    }
}

fn mismatch(s: &GarsideStructure, left: usize, right: usize) -> Error {
    let g = s.germ();
    Error::EndpointMismatch { left: g.objects()[left].clone(), right: g.objects()[right].clone() }
}

fn sw(s: &GarsideStructure, a: Elem, b: Elem) -> (Elem, Elem) {
    s.witness(a, b).expect("witness is total on composable pairs")
}

/// Left-multiplication: one witness sweep from left to right.
pub fn left_multiply(s: &GarsideStructure, b: Elem, nf: &NormalForm) -> Result<NormalForm> {
    left_multiply_counted(s, b, nf, &Cell::new(0))
}

fn left_multiply_counted(s: &GarsideStructure, b: Elem, nf: &NormalForm, calls: &Cell<usize>) -> Result<NormalForm> {
    let g = s.germ();
    if g.tgt(b) != nf.object {
        return Err(mismatch(s, g.tgt(b), nf.object));
    }
    let mut out = Vec::with_capacity(nf.len() + 1);
    let mut carry = b;
    for &a in &nf.entries {
        let (a2, c) = sw(s, carry, a);
        calls.set(calls.get() + 1);
        out.push(a2);
        carry = c;
    }
    out.push(carry);
    Ok(NormalForm { object: g.src(b), entries: out }.pruned(s))
}

fn check_composable(s: &GarsideStructure, object: usize, es: &[Elem]) -> Result<()> {
    let g = s.germ();
    let mut x = object;
    for &e in es {
        if g.src(e) != x {
            return Err(mismatch(s, x, g.src(e)));
        }
        x = g.tgt(e);
    }
    Ok(())
}

/// Normal decomposition of a product of family elements starting at
/// `object`, built by left-multiplying from the right end.
pub fn normalize(s: &GarsideStructure, object: usize, es: &[Elem]) -> Result<NormalForm> {
    Ok(normalize_counted(s, object, es)?.0)
}

/// Same as [`normalize`], also returning how many times the witness was
/// called (at most `p(p-1)/2` for `p` entries).
pub fn normalize_counted(s: &GarsideStructure, object: usize, es: &[Elem]) -> Result<(NormalForm, usize)> {
    check_composable(s, object, es)?;
    let end = es.last().map_or(object, |&e| s.germ().tgt(e));
    let calls = Cell::new(0);
    let mut nf = NormalForm::identity(end);
    for &b in es.iter().rev() {
        nf = left_multiply_counted(s, b, &nf, &calls)?;
    }
    Ok((nf, calls.get()))
}

/// Normal decomposition of a family path.
pub fn normalize_path(s: &GarsideStructure, p: &Path) -> Result<NormalForm> {
    normalize(s, p.src().index(), &s.elems_of(p))
}

/// Right-multiplication: one witness sweep from right to left.
///
/// The sweep alone is only guaranteed normal under the second domino rule.
/// Structures that are bounded or pass the domino check return it as is;
/// otherwise the result is checked pairwise and renormalized when needed.
pub fn right_multiply(s: &GarsideStructure, nf: &NormalForm, b: Elem) -> Result<NormalForm> {
    Ok(right_multiply_checked(s, nf, b)?.0)
}

/// [`right_multiply`], also telling whether the fallback renormalization ran.
pub fn right_multiply_checked(s: &GarsideStructure, nf: &NormalForm, b: Elem) -> Result<(NormalForm, bool)> {
    let swept = right_sweep(s, nf, b)?;
    let trusted = s.is_bounded() || s.second_domino_counterexample().is_none();
    if trusted || swept.is_normal(s) {
        return Ok((swept, false));
    }
    Ok((normalize(s, swept.object, &swept.entries)?, true))
}

/// The bare sweep, without any verification.
pub fn right_sweep(s: &GarsideStructure, nf: &NormalForm, b: Elem) -> Result<NormalForm> {
    let g = s.germ();
    let end = nf.target(s);
    if g.src(b) != end {
        return Err(mismatch(s, end, g.src(b)));
    }
    let mut out = vec![0; nf.len() + 1];
    let mut carry = b;
    for (i, &a) in nf.entries.iter().enumerate().rev() {
        let (c, a2) = sw(s, a, carry);
        out[i + 1] = a2;
        carry = c;
    }
    out[0] = carry;
    // Identities can now sit in the middle; move them out of the way.
    let entries: Vec<Elem> = out.into_iter().filter(|&e| !s.is_identity(e)).collect();
    Ok(NormalForm { object: nf.object, entries }.pruned(s))
}

/// The ≃-test on the family: the invertible `e` with `a∘e = b`, if any.
/// Without nontrivial invertibles this is the identity exactly when `a = b`.
pub fn eqir(s: &GarsideStructure, a: Elem, b: Elem) -> Option<Elem> {
    let g = s.germ();
    let inv: Vec<Elem> = g.invertibles().into_iter().map(|(e, _)| e).collect();
    inv.into_iter().find(|&e| g.product(a, e) == Some(b))
}

/// Whether two normal decompositions represent the same element, by
/// pushing the connecting invertible along both.
pub fn compare(s: &GarsideStructure, u: &NormalForm, v: &NormalForm) -> Result<bool> {
    let g = s.germ();
    if u.object != v.object {
        return Err(mismatch(s, u.object, v.object));
    }
    let (x, y) = (u.target(s), v.target(s));
    if x != y {
        return Err(mismatch(s, x, y));
    }
    let n = u.len().max(v.len());
    let id_y = g.identity(y);
    let pad = |nf: &NormalForm, i: usize| nf.entries.get(i).copied().unwrap_or(id_y);
    let mut e = g.identity(u.object);
    for i in 0..n {
        let Some(ea) = g.product(e, pad(u, i)) else { return Ok(false) };
        match eqir(s, pad(v, i), ea) {
            Some(next) => e = next,
            None => return Ok(false),
        }
    }
    Ok(e == id_y)
}

/// Word problem through normal forms. Paths are over the family alphabet.
pub fn word_problem_nf(s: &GarsideStructure, u: &Path, v: &Path) -> Result<bool> {
    if u.src() != v.src() || u.tgt() != v.tgt() {
        return Ok(false);
    }
    compare(s, &normalize_path(s, u)?, &normalize_path(s, v)?)
}

fn require_lcms(s: &GarsideStructure) -> Result<()> {
    if s.has_right_lcms() {
        Ok(())
    } else {
        Err(Error::PreconditionUnmet("the family does not have right-lcms".into()))
    }
}

/// Short right-reversing of `~u v` with the family's lcm selector. `None`
/// when reversing fails, i.e. there is no common right-multiple.
pub fn residue(s: &GarsideStructure, u: &Path, v: &Path) -> Result<Option<SignedPath>> {
    require_lcms(s)?;
    let out = right_reverse_short(s.right_selector(), &SignedPath::fraction(u, v)?)?;
    Ok(out.reversed().cloned())
}

/// Word problem by reversing with the lcm selector.
pub fn word_problem_rev(s: &GarsideStructure, u: &Path, v: &Path) -> Result<bool> {
    if u.src() != v.src() || u.tgt() != v.tgt() {
        return Ok(false);
    }
    Ok(residue(s, u, v)?.is_some_and(|r| r.is_empty()))
}

/// `[u]` left-divides `[v]`: the residue of `~u v` is positive.
pub fn left_divides(s: &GarsideStructure, u: &Path, v: &Path) -> Result<bool> {
    if u.src() != v.src() {
        return Ok(false);
    }
    Ok(residue(s, u, v)?.is_some_and(|r| r.is_positive()))
}

/// A right-lcm of `[u]` and `[v]`, as `u·θ*(u,v)`, with both complements.
pub fn right_lcm(theta: &Complement, u: &Path, v: &Path, fuel: u64) -> Result<(Path, Path, Path)> {
    let (x, y) = rc_star(theta, u, v, fuel)?;
    Ok((u.compose(&x)?, x, y))
}

/// A left-lcm of `[u]` and `[v]`, as `θ̃*(u,v)·v`, with both complements.
pub fn left_lcm(theta: &Complement, u: &Path, v: &Path, fuel: u64) -> Result<(Path, Path, Path)> {
    let (x, y) = lc_star(theta, u, v, fuel)?;
    Ok((x.compose(v)?, x, y))
}

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::{Cell, RefCell};

use super::poly::NcPoly;
use super::presentation::Presentation;
use super::word::Word;
use crate::coeff::Scalar;
use crate::error::{Error, Result};

/// What the tensor and map machinery needs from an algebra with a
/// distinguished normal-word basis.
pub trait AlgebraOps {
    fn pres(&self) -> &Presentation;

    fn nf(&self, p: &NcPoly) -> NcPoly;

    /// Product of two normal words, in normal form.
    fn mul_words(&self, u: &Word, v: &Word) -> NcPoly;

    /// Visits the terms of `mul_words(u, v)`.
    fn for_each_product(&self, u: &Word, v: &Word, f: &mut dyn FnMut(&Word, &Scalar)) {
        for (w, c) in self.mul_words(u, v).terms() {
            f(w, c);
        }
    }

    fn basis(&self, d: u32) -> Vec<Word>;

    fn star(&self, p: &NcPoly) -> Result<NcPoly>;

    fn mul(&self, p: &NcPoly, q: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in p.terms() {
            for (v, b) in q.terms() {
                out.add_scaled(&self.mul_words(u, v), &(a * b));
            }
        }
        out
    }

    fn name(&self) -> &str {
        &self.pres().name
    }

    fn degree(&self, w: &Word) -> u32 {
        self.pres().degree(w)
    }

    fn fmt(&self, p: &NcPoly) -> alloc::string::String {
        self.pres().fmt(p)
    }

    /// The whole basis if the algebra is finite dimensional with all normal
    /// words of degree ≤ `cap` and at most [`FULL_BASIS_MAX`] of them.
    fn full_basis(&self, cap: u32) -> Option<Vec<Word>> {
        let step = self.pres().degrees.iter().copied().max().unwrap_or(1);
        let mut d = 0;
        while d <= cap {
            let b = self.basis(d + step);
            if b.iter().all(|w| self.degree(w) <= d) {
                return Some(b);
            }
            if b.len() > FULL_BASIS_MAX {
                return None;
            }
            d += 1;
        }
        None
    }
}

pub type Alg = Rc<dyn AlgebraOps>;

/// Degree cap used when probing for finite dimensionality.
pub const FULL_BASIS_CAP: u32 = 32;
/// Size beyond which an algebra is treated as infinite dimensional.
pub const FULL_BASIS_MAX: usize = 4096;

/// The whole basis of a finite-dimensional algebra, else the filtered piece
/// of degree ≤ d.
pub fn test_basis(a: &dyn AlgebraOps, d: u32) -> Vec<Word> {
    a.full_basis(FULL_BASIS_CAP).unwrap_or_else(|| a.basis(d))
}

pub fn is_finite(a: &dyn AlgebraOps) -> bool {
    a.full_basis(FULL_BASIS_CAP).is_some()
}

/// A presented algebra with a memoised normal-form cache. The cache makes
/// this type `!Sync`; share the underlying [`Presentation`] across threads
/// and build one `Algebra` per thread.
pub struct Algebra {
    pres: Arc<Presentation>,
    by_first: Vec<Vec<usize>>,
    cache: RefCell<BTreeMap<Word, NcPoly>>,
    bases: RefCell<BTreeMap<u32, Vec<Word>>>,
    trusted: Cell<Option<u32>>,
}

impl Algebra {
    pub fn new(pres: Presentation) -> Result<Self> {
        Self::from_arc(Arc::new(pres))
    }

    pub fn from_arc(pres: Arc<Presentation>) -> Result<Self> {
        pres.validate()?;
        let mut by_first = alloc::vec![Vec::new(); pres.ngens()];
        for (i, r) in pres.rules.iter().enumerate() {
            by_first[r.lhs.letters()[0] as usize].push(i);
        }
        Ok(Algebra {
            pres,
            by_first,
            cache: RefCell::new(BTreeMap::new()),
            bases: RefCell::new(BTreeMap::new()),
            trusted: Cell::new(None),
        })
    }

    pub fn rc(pres: Presentation) -> Result<Rc<Self>> {
        Self::new(pres).map(Rc::new)
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn trusted_bound(&self) -> Option<u32> {
        self.trusted.get()
    }

    pub(crate) fn mark_trusted(&self, bound: u32) {
        self.trusted.set(Some(self.trusted.get().map_or(bound, |b| b.max(bound))));
    }

    /// Leftmost redex: smallest position, then first rule in declared order.
    fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        let l = w.letters();
        for i in 0..l.len() {
            for &r in &self.by_first[l[i] as usize] {
                let lhs = self.pres.rules[r].lhs.letters();
                if l.len() - i >= lhs.len() && &l[i..i + lhs.len()] == lhs {
                    return Some((i, r));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    fn has_lhs_suffix(&self, w: &[u8]) -> bool {
        self.pres.rules.iter().any(|r| w.ends_with(r.lhs.letters()))
    }

    /// Normal form of a word, built by appending its letters one at a time
    /// to a normal word. The word itself and the products (normal word)·(letter)
    /// met on the way are cached.
    pub fn nf_word(&self, w: &Word) -> NcPoly {
        if let Some(p) = self.cache.borrow().get(w) {
            return p.clone();
        }
        let n = w.len();
        let acc = if n == 0 {
            NcPoly::one()
        } else {
            let head = self.nf_word(&Word::from(&w.letters()[..n - 1]));
            self.append(&head, w.letters()[n - 1])
        };
        self.cache.borrow_mut().insert(w.clone(), acc.clone());
        acc
    }

    fn append(&self, p: &NcPoly, g: u8) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, c) in p.terms() {
            out.add_scaled(&self.append_word(u, g), c);
        }
        out
    }

    /// nf(u·g) for a normal word u. Any redex of u·g ends at g.
    fn append_word(&self, u: &Word, g: u8) -> NcPoly {
        let mut v = Vec::with_capacity(u.len() + 1);
        v.extend_from_slice(u.letters());
        v.push(g);
        let v = Word::from(v);
        if let Some(p) = self.cache.borrow().get(&v) {
            return p.clone();
        }
        let redex = self.pres.rules.iter().filter(|r| v.letters().ends_with(r.lhs.letters())).max_by_key(|r| r.lhs.len());
        let out = match redex {
            None => NcPoly::word(v.clone()),
            Some(rule) => {
                let pre = NcPoly::word(Word::from(&v.letters()[..v.len() - rule.lhs.len()]));
                let mut out = NcPoly::zero();
                for (t, c) in rule.rhs.terms() {
                    let mut acc = pre.clone();
                    for &l in t.letters() {
                        acc = self.append(&acc, l);
                    }
                    out.add_scaled(&acc, c);
                }
                out
            }
        };
        self.cache.borrow_mut().insert(v, out.clone());
        out
    }

    /// Normal words of filtration degree ≤ d in deglex order.
    pub fn filtered_basis(&self, d: u32) -> Vec<Word> {
        if let Some(b) = self.bases.borrow().get(&d) {
            return b.clone();
        }
        let p = &self.pres;
        let mut out = alloc::vec![Word::empty()];
        let mut frontier = alloc::vec![(Word::empty(), 0u32)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (w, dw) in &frontier {
                for g in 0..p.ngens() as u8 {
                    let dg = dw + p.degrees[g as usize];
                    if dg > d {
                        continue;
                    }
                    let mut v = w.letters().to_vec();
                    v.push(g);
                    if !self.has_lhs_suffix(&v) {
                        next.push((Word::from(v), dg));
                    }
                }
            }
            out.extend(next.iter().map(|(w, _)| w.clone()));
            frontier = next;
        }
        out.sort();
        self.bases.borrow_mut().insert(d, out.clone());
        out
    }

    pub fn star_word(&self, w: &Word) -> Result<NcPoly> {
        let imgs = self.pres.star.as_ref().ok_or_else(|| Error::NoInvolution(self.pres.name.clone()))?;
        let mut acc = NcPoly::one();
        for &g in w.letters().iter().rev() {
            acc = self.nf(&acc.mul_free(&imgs[g as usize]));
        }
        Ok(acc)
    }

    pub fn cache_len(&self) -> usize {
        self.cache.borrow().len()
    }
}

impl AlgebraOps for Algebra {
    fn pres(&self) -> &Presentation {
        &self.pres
    }

    fn nf(&self, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            out.add_scaled(&self.nf_word(w), c);
        }
        out
    }

    fn mul_words(&self, u: &Word, v: &Word) -> NcPoly {
        self.nf_word(&u.concat(v))
    }

    fn for_each_product(&self, u: &Word, v: &Word, f: &mut dyn FnMut(&Word, &Scalar)) {
        let w = u.concat(v);
        if !self.cache.borrow().contains_key(&w) {
            self.nf_word(&w);
        }
        for (x, c) in self.cache.borrow()[&w].terms() {
            f(x, c);
        }
    }

    fn basis(&self, d: u32) -> Vec<Word> {
        self.filtered_basis(d)
    }

    fn star(&self, p: &NcPoly) -> Result<NcPoly> {
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            out.add_scaled(&self.star_word(w)?, &c.conj());
        }
        Ok(out)
    }
}

/// Multiplies out a list of polynomials left to right.
pub fn product(a: &dyn AlgebraOps, factors: &[&NcPoly]) -> NcPoly {
    let mut acc = NcPoly::one();
    for f in factors {
        acc = a.mul(&acc, f);
    }
    acc
}

pub fn scalar_poly(c: Scalar) -> NcPoly {
    NcPoly::constant(c)
}

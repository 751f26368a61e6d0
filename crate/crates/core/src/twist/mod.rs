//! Twisting maps ψ: A⊗C → C⊗A, their conditions and twisted tensor products.

mod conditions;
mod factor;
mod invert;
mod product;
mod star;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::error::{Error, Result};
use crate::ncalg::{Alg, NcPoly, Tensor, Word};

pub use conditions::{check_twisting_conditions, TwistFlags};
pub use factor::{check_factorization, twisted_presentation};
pub use invert::invert_twisting;
pub use product::{twisted_product, TwistedAlgebra};
pub use star::{star_structure, StarStructure};

const MAX_DEPTH: usize = 256;

type TwistFn = Box<dyn Fn(&Word, &Word) -> Tensor>;

enum Source {
    /// ψ(a_i ⊗ c_j) on generator pairs, extended through (C1el)/(C2el).
    Generators(BTreeMap<(u8, u8), Tensor>),
    Table { bound: u32, table: BTreeMap<(Word, Word), Tensor> },
    Flip,
    /// Evaluated on normal word pairs.
    Func(TwistFn),
}

/// Order in which the recursive extension splits words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Schedule {
    /// Split the A-word at its last letter (else its first).
    pub a_last: bool,
    /// Split the C-word at its first letter (else its last).
    pub c_first: bool,
    /// Split A before C when both are long.
    pub a_before_c: bool,
}

impl Schedule {
    pub const CANONICAL: Schedule = Schedule { a_last: true, c_first: true, a_before_c: true };

    pub fn all() -> impl Iterator<Item = Schedule> {
        (0..8u8).map(|b| Schedule { a_last: b & 1 == 0, c_first: b & 2 == 0, a_before_c: b & 4 == 0 })
    }
}

pub struct TwistingMap {
    pub name: String,
    pub a: Alg,
    pub c: Alg,
    source: Source,
    memo: RefCell<BTreeMap<(Word, Word), Tensor>>,
    conditions: RefCell<Option<(u32, TwistFlags)>>,
}

impl TwistingMap {
    fn with_source(name: &str, a: Alg, c: Alg, source: Source) -> Self {
        TwistingMap {
            name: name.into(),
            a,
            c,
            source,
            memo: RefCell::new(BTreeMap::new()),
            conditions: RefCell::new(None),
        }
    }

    /// Images of generator pairs, each an element of C⊗A.
    pub fn from_generators(name: &str, a: Alg, c: Alg, images: BTreeMap<(u8, u8), Tensor>) -> Self {
        let sp = [c.clone(), a.clone()];
        let images = images.into_iter().map(|(k, t)| (k, t.normalize(&sp))).collect();
        Self::with_source(name, a, c, Source::Generators(images))
    }

    pub fn flip(a: Alg, c: Alg) -> Self {
        Self::with_source("flip", a, c, Source::Flip)
    }

    pub fn table(name: &str, a: Alg, c: Alg, bound: u32, table: BTreeMap<(Word, Word), Tensor>) -> Self {
        Self::with_source(name, a, c, Source::Table { bound, table })
    }

    pub fn from_fn(name: &str, a: Alg, c: Alg, f: impl Fn(&Word, &Word) -> Tensor + 'static) -> Self {
        Self::with_source(name, a, c, Source::Func(Box::new(f)))
    }

    /// Tabulates this map on normal word pairs of total degree ≤ d.
    pub fn tabulate(&self, name: &str, d: u32) -> Result<TwistingMap> {
        let mut table = BTreeMap::new();
        for wa in self.a.basis(d) {
            for wc in self.c.basis(d - self.a.degree(&wa)) {
                let t = self.apply_words(&wa, &wc)?;
                table.insert((wa.clone(), wc), t);
            }
        }
        Ok(Self::table(name, self.a.clone(), self.c.clone(), d, table))
    }

    /// Bound and flags of the last [`check_twisting_conditions`] run.
    pub fn cached_conditions(&self) -> Option<(u32, TwistFlags)> {
        *self.conditions.borrow()
    }

    pub fn is_generator_extension(&self) -> bool {
        matches!(self.source, Source::Generators(_))
    }

    pub fn table_bound(&self) -> Option<u32> {
        match &self.source {
            Source::Table { bound, .. } => Some(*bound),
            _ => None,
        }
    }

    /// The space C⊗A of outputs.
    pub fn out_space(&self) -> [Alg; 2] {
        [self.c.clone(), self.a.clone()]
    }

    /// The space A⊗C of inputs.
    pub fn in_space(&self) -> [Alg; 2] {
        [self.a.clone(), self.c.clone()]
    }

    pub fn fmt_out(&self, t: &Tensor) -> String {
        t.fmt_with(&self.out_space())
    }

    pub fn fmt_pair(&self, a: &Word, c: &Word) -> String {
        format!("{} ⊗ {}", self.a.pres().fmt_word(a), self.c.pres().fmt_word(c))
    }

    /// ψ(w_A ⊗ w_C) for arbitrary (not necessarily normal) words.
    pub fn apply_words(&self, wa: &Word, wc: &Word) -> Result<Tensor> {
        match &self.source {
            Source::Generators(_) => self.extend(wa, wc, 0, Schedule::CANONICAL, true),
            _ => {
                let pa = self.a.nf(&NcPoly::word(wa.clone()));
                let pc = self.c.nf(&NcPoly::word(wc.clone()));
                let mut out = Tensor::zero(2);
                for (u, x) in pa.terms() {
                    for (v, y) in pc.terms() {
                        out.add_scaled(&self.on_normal(u, v)?, &(x * y));
                    }
                }
                Ok(out)
            }
        }
    }

    fn on_normal(&self, a: &Word, c: &Word) -> Result<Tensor> {
        match &self.source {
            Source::Flip => Ok(Tensor::basis(&[c.clone(), a.clone()])),
            Source::Func(f) => {
                let key = (a.clone(), c.clone());
                if let Some(t) = self.memo.borrow().get(&key) {
                    return Ok(t.clone());
                }
                let t = f(a, c);
                self.memo.borrow_mut().insert(key, t.clone());
                Ok(t)
            }
            Source::Table { bound, table } => table.get(&(a.clone(), c.clone())).cloned().ok_or_else(|| {
                Error::TableBoundExceeded { name: format!("{} (bound {bound})", self.name), word: self.fmt_pair(a, c) }
            }),
            Source::Generators(_) => self.extend(a, c, 0, Schedule::CANONICAL, true),
        }
    }

    /// Recursive extension through (C1el)/(C2el) under a split schedule.
    pub fn extend_with(&self, wa: &Word, wc: &Word, sched: Schedule) -> Result<Tensor> {
        self.extend(wa, wc, 0, sched, false)
    }

    fn extend(&self, wa: &Word, wc: &Word, depth: usize, s: Schedule, memo: bool) -> Result<Tensor> {
        let Source::Generators(gens) = &self.source else {
            return self.apply_words(wa, wc);
        };
        if depth > MAX_DEPTH {
            return Err(Error::RecursionLimit(self.name.clone()));
        }
        if wa.is_empty() {
            let pc = self.c.nf(&NcPoly::word(wc.clone()));
            return Ok(Tensor::of_polys(&[&pc, &NcPoly::one()]));
        }
        if wc.is_empty() {
            let pa = self.a.nf(&NcPoly::word(wa.clone()));
            return Ok(Tensor::of_polys(&[&NcPoly::one(), &pa]));
        }
        let key = (wa.clone(), wc.clone());
        if memo {
            if let Some(t) = self.memo.borrow().get(&key) {
                return Ok(t.clone());
            }
        }
        let split_a = wa.len() >= 2 && (s.a_before_c || wc.len() < 2);
        let out = if split_a {
            let l = wa.letters();
            let (first, second) = if s.a_last { l.split_at(l.len() - 1) } else { l.split_at(1) };
            let (first, second) = (Word::from(first), Word::from(second));
            // ψ(first·second ⊗ c) = ψ(first ⊗ c^ψ) · second^ψ
            let inner = self.extend(&second, wc, depth + 1, s, memo)?;
            let mut out = Tensor::zero(2);
            for (k, x) in inner.terms() {
                let t = self.extend(&first, &k[0], depth + 1, s, memo)?;
                out.add_scaled(&right_mul_a(&t, &k[1], &self.a), x);
            }
            out
        } else if wc.len() >= 2 {
            let l = wc.letters();
            let (first, second) = if s.c_first { l.split_at(1) } else { l.split_at(l.len() - 1) };
            let (first, second) = (Word::from(first), Word::from(second));
            // ψ(a ⊗ first·second) = first^ψ · ψ(a^ψ ⊗ second)
            let inner = self.extend(wa, &first, depth + 1, s, memo)?;
            let mut out = Tensor::zero(2);
            for (k, x) in inner.terms() {
                let t = self.extend(&k[1], &second, depth + 1, s, memo)?;
                out.add_scaled(&left_mul_c(&k[0], &t, &self.c), x);
            }
            out
        } else {
            let (ga, gc) = (wa.letters()[0], wc.letters()[0]);
            gens.get(&(ga, gc)).cloned().ok_or_else(|| {
                Error::Invalid(format!("{}: no image for generator pair {}", self.name, self.fmt_pair(wa, wc)))
            })?
        };
        if memo {
            self.memo.borrow_mut().insert(key, out.clone());
        }
        Ok(out)
    }

    /// ψ on an element of A⊗C.
    pub fn apply(&self, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(2);
        for (k, x) in t.terms() {
            out.add_scaled(&self.apply_words(&k[0], &k[1])?, x);
        }
        Ok(out)
    }

    pub fn eval(&self, a: &Word, c: &Word) -> Tensor {
        self.apply_words(a, c).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Whether ψ agrees with the flip on all normal pairs of total degree ≤ d.
    pub fn is_flip_on(&self, d: u32) -> Result<bool> {
        for wa in self.a.basis(d) {
            for wc in self.c.basis(d - self.a.degree(&wa)) {
                if self.apply_words(&wa, &wc)? != Tensor::basis(&[wc.clone(), wa.clone()]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `t · (1 ⊗ a)` for t ∈ C⊗A.
pub(crate) fn right_mul_a(t: &Tensor, a: &Word, alg: &Alg) -> Tensor {
    let mut out = Tensor::zero(2);
    for (k, x) in t.terms() {
        for (w, y) in alg.mul_words(&k[1], a).terms() {
            out.add_term(alloc::vec![k[0].clone(), w.clone()], &(x * y));
        }
    }
    out
}

/// `(c ⊗ 1) · t` for t ∈ C⊗A.
pub(crate) fn left_mul_c(c: &Word, t: &Tensor, alg: &Alg) -> Tensor {
    let mut out = Tensor::zero(2);
    for (k, x) in t.terms() {
        for (w, y) in alg.mul_words(c, &k[0]).terms() {
            out.add_term(alloc::vec![w.clone(), k[1].clone()], &(x * y));
        }
    }
    out
}

/// Pairs of normal words of total degree ≤ d drawn from two algebras.
pub(crate) fn pairs(x: &Alg, y: &Alg, d: u32) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for u in x.basis(d) {
        for v in y.basis(d - x.degree(&u)) {
            out.push((u.clone(), v));
        }
    }
    out
}

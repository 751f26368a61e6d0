//! Linear maps given on generators (extended by a policy) or on a basis table.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::{Cell, RefCell};

use super::algebra::Alg;
use super::poly::NcPoly;
use super::tensor::Tensor;
use super::word::Word;
use crate::error::{Error, Result};
use crate::report::{Check, Report};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Extension {
    AlgebraMorphism,
    AntiAlgebraMorphism,
    StarAlgebraMorphism,
    /// Values given on normal words of degree ≤ the bound.
    BasisTable(u32),
}

pub struct LinearMap {
    pub name: String,
    pub domain: Alg,
    /// Tensor factors of the codomain; empty means the ground field.
    pub codomain: Vec<Alg>,
    pub policy: Extension,
    gens: Vec<Tensor>,
    table: BTreeMap<Word, Tensor>,
    cache: RefCell<BTreeMap<Word, Tensor>>,
    trusted: Cell<bool>,
}

impl LinearMap {
    /// A map extended from generator images by `policy`.
    pub fn on_generators(name: &str, domain: Alg, codomain: Vec<Alg>, policy: Extension, gens: Vec<Tensor>) -> Self {
        assert!(!matches!(policy, Extension::BasisTable(_)), "use LinearMap::table");
        assert_eq!(gens.len(), domain.pres().ngens(), "{name}: one image per generator");
        let gens = gens.into_iter().map(|t| t.normalize(&codomain)).collect();
        LinearMap {
            name: name.into(),
            domain,
            codomain,
            policy,
            gens,
            table: BTreeMap::new(),
            cache: RefCell::new(BTreeMap::new()),
            trusted: Cell::new(false),
        }
    }

    /// A map into a single algebra given by polynomial images of generators.
    pub fn on_generators_poly(name: &str, domain: Alg, codomain: Alg, policy: Extension, gens: Vec<NcPoly>) -> Self {
        let gens = gens.iter().map(Tensor::from_poly).collect();
        Self::on_generators(name, domain, alloc::vec![codomain], policy, gens)
    }

    pub fn table(name: &str, domain: Alg, codomain: Vec<Alg>, bound: u32, table: BTreeMap<Word, Tensor>) -> Self {
        LinearMap {
            name: name.into(),
            domain,
            codomain,
            policy: Extension::BasisTable(bound),
            gens: Vec::new(),
            table,
            cache: RefCell::new(BTreeMap::new()),
            trusted: Cell::new(true),
        }
    }

    /// Tabulates `f` on the domain basis up to `bound`.
    pub fn from_fn(name: &str, domain: Alg, codomain: Vec<Alg>, bound: u32, mut f: impl FnMut(&Word) -> Tensor) -> Self {
        let table = domain.basis(bound).into_iter().map(|w| {
            let t = f(&w);
            (w, t)
        });
        let table = table.collect();
        Self::table(name, domain, codomain, bound, table)
    }

    pub fn identity(alg: Alg) -> Self {
        let gens = (0..alg.pres().ngens() as u8).map(NcPoly::letter).collect();
        Self::on_generators_poly("id", alg.clone(), alg, Extension::AlgebraMorphism, gens)
    }

    pub fn out_arity(&self) -> usize {
        self.codomain.len()
    }

    pub fn is_trusted(&self) -> bool {
        self.trusted.get()
    }

    pub fn generator_images(&self) -> &[Tensor] {
        &self.gens
    }

    pub fn table_entries(&self) -> &BTreeMap<Word, Tensor> {
        &self.table
    }

    /// Image of a (possibly non-normal) word.
    pub fn apply_word(&self, w: &Word) -> Result<Tensor> {
        if let Some(t) = self.cache.borrow().get(w) {
            return Ok(t.clone());
        }
        let t = match self.policy {
            Extension::BasisTable(bound) => {
                let nf = self.domain.nf(&NcPoly::word(w.clone()));
                let mut acc = Tensor::zero(self.out_arity());
                for (v, c) in nf.terms() {
                    let img = self.table.get(v).ok_or_else(|| Error::TableBoundExceeded {
                        name: format!("{} (bound {bound})", self.name),
                        word: self.domain.pres().fmt_word(v),
                    })?;
                    acc.add_scaled(img, c);
                }
                acc
            }
            _ => {
                if w.is_empty() {
                    Tensor::unit(self.out_arity())
                } else {
                    let n = w.len();
                    let head = self.apply_word(&Word::from(&w.letters()[..n - 1]))?;
                    let last = &self.gens[w.letters()[n - 1] as usize];
                    if self.policy == Extension::AntiAlgebraMorphism {
                        last.mul(&head, &self.codomain)
                    } else {
                        head.mul(last, &self.codomain)
                    }
                }
            }
        };
        self.cache.borrow_mut().insert(w.clone(), t.clone());
        Ok(t)
    }

    pub fn apply(&self, p: &NcPoly) -> Result<Tensor> {
        let mut acc = Tensor::zero(self.out_arity());
        for (w, c) in p.terms() {
            acc.add_scaled(&self.apply_word(w)?, c);
        }
        Ok(acc)
    }

    /// [`LinearMap::apply_word`] for callers that stay inside the table bound.
    pub fn eval_word(&self, w: &Word) -> Tensor {
        self.apply_word(w).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn eval(&self, p: &NcPoly) -> Tensor {
        self.apply(p).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Image as a polynomial (single-factor codomain).
    pub fn eval_poly(&self, p: &NcPoly) -> NcPoly {
        self.eval(p).to_poly()
    }

    /// Applies the map to factor `i` of a tensor.
    pub fn on_factor(&self, t: &Tensor, i: usize) -> Tensor {
        t.map_factor(i, self.out_arity(), |w| self.eval_word(w))
    }

    pub fn fmt_out(&self, t: &Tensor) -> String {
        t.fmt_with(&self.codomain)
    }

    fn star_codomain(&self, t: &Tensor) -> Result<Tensor> {
        t.star(&self.codomain)
    }
}

/// Images of all relators vanish; for star morphisms also `f(g*) = f(g)*`.
/// Marks the map trusted on success.
pub fn check_map_well_defined(f: &LinearMap, d: u32) -> Report {
    let mut report = Report::new(format!("well-defined({})", f.name));
    let dom = f.domain.pres();
    let mut c = Check::new("relators map to zero", Some(d));
    if let Extension::BasisTable(_) = f.policy {
        c.note("table on normal words; relators do not arise");
        c.ok();
    } else {
        for (i, r) in dom.rules.iter().enumerate() {
            let lhs = f.apply_word(&r.lhs);
            let rhs = f.apply(&r.rhs);
            match (lhs, rhs) {
                (Ok(l), Ok(rr)) => {
                    let res = l.sub(&rr);
                    c.case(
                        || format!("rule {i}: {} - ({})", dom.fmt_word(&r.lhs), dom.fmt(&r.rhs)),
                        (!res.is_zero()).then(|| f.fmt_out(&res)),
                    );
                }
                (Err(e), _) | (_, Err(e)) => c.fail(format!("rule {i}"), format!("{e}")),
            }
        }
    }
    let mut ok = c.is_ok();
    report.push(c.finish());
    if f.policy == Extension::StarAlgebraMorphism {
        let mut s = Check::new("intertwines involutions", Some(d));
        for g in 0..dom.ngens() as u8 {
            let gw = Word::letter(g);
            let res = dom
                .star
                .as_ref()
                .ok_or_else(|| Error::NoInvolution(dom.name.clone()))
                .and_then(|imgs| {
                    let lhs = f.apply(&imgs[g as usize])?;
                    let rhs = f.star_codomain(&f.apply_word(&gw)?)?;
                    Ok(lhs.sub(&rhs))
                });
            match res {
                Ok(r) => s.case(|| format!("{}*", dom.fmt_word(&gw)), (!r.is_zero()).then(|| f.fmt_out(&r))),
                Err(e) => s.fail(dom.fmt_word(&gw), format!("{e}")),
            }
        }
        ok &= s.is_ok();
        report.push(s.finish());
    }
    if ok {
        f.trusted.set(true);
    }
    report
}

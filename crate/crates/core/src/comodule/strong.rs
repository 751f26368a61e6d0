use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use core::cell::RefCell;

use super::galois::{anti_mul, Galois};
use super::ComoduleAlgebra;
use crate::error::{Error, Result};
use crate::hopf::antipode_inverse;
use crate::ncalg::{Alg, LinearMap, NcPoly, Tensor, Word};
use crate::report::{Check, Report};
use crate::twist::TwistingMap;

pub enum EllSource {
    /// Values on normal words of H.
    Table(BTreeMap<Word, Tensor>),
    /// Values on the generators of H, extended by
    /// ℓ(kh) = ℓ¹(h)ℓ¹(k) ⊗ ℓ²(k)ℓ²(h).
    Generators(alloc::vec::Vec<Tensor>),
}

/// A linear map ℓ: H → A⊗A lifting the translation map.
pub struct StrongConnection {
    pub name: String,
    pub ca: Rc<ComoduleAlgebra>,
    pub source: EllSource,
    memo: RefCell<BTreeMap<Word, Tensor>>,
}

impl StrongConnection {
    pub fn new(name: &str, ca: Rc<ComoduleAlgebra>, source: EllSource) -> Self {
        StrongConnection { name: name.into(), ca, source, memo: RefCell::new(BTreeMap::new()) }
    }

    /// ℓ := τ on the given H-words, for Galois objects where A⊗_B A = A⊗A.
    pub fn from_tau(g: &Galois, words: &[Word]) -> Result<Self> {
        let mut table = BTreeMap::new();
        for w in words {
            table.insert(w.clone(), g.tau(w)?);
        }
        Ok(Self::new("ell = tau", g.ca.clone(), EllSource::Table(table)))
    }

    fn aa(&self) -> [Alg; 2] {
        self.ca.aa()
    }

    /// ℓ on a normal word of H.
    pub fn apply_word(&self, h: &Word) -> Result<Tensor> {
        if let Some(t) = self.memo.borrow().get(h) {
            return Ok(t.clone());
        }
        let t = match &self.source {
            EllSource::Table(t) => t.get(h).cloned().ok_or_else(|| Error::TableBoundExceeded {
                name: self.name.clone(),
                word: self.ca.h.h.pres().fmt_word(h),
            })?,
            EllSource::Generators(_) => self.formula(h)?,
        };
        self.memo.borrow_mut().insert(h.clone(), t.clone());
        Ok(t)
    }

    /// ℓ on any element of H (normalised first).
    pub fn apply(&self, p: &NcPoly) -> Result<Tensor> {
        let mut out = Tensor::zero(2);
        for (w, c) in self.ca.h.h.nf(p).terms() {
            out.add_scaled(&self.apply_word(w)?, c);
        }
        Ok(out)
    }

    /// The multiplicative extension on a word, letter by letter, without
    /// normalising in H.
    pub fn formula(&self, w: &Word) -> Result<Tensor> {
        let mut acc = Tensor::unit(2);
        for &l in w.letters() {
            let g = match &self.source {
                EllSource::Generators(gens) => gens[l as usize].clone(),
                EllSource::Table(_) => self.apply_word(&Word::letter(l))?,
            };
            acc = anti_mul(&acc, &g, &self.ca.a);
        }
        Ok(acc)
    }

    pub fn fmt(&self, t: &Tensor) -> String {
        t.fmt_with(&self.aa())
    }
}

/// Outcome of the strong-connection properties.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StrongFlags {
    /// The four properties of a strong connection.
    pub ell: bool,
    /// ℓ(kh) = ℓ¹(h)ℓ¹(k) ⊗ ℓ²(k)ℓ²(h).
    pub prop_ell: bool,
}

/// The four strong-connection properties on H-words ≤ d, in their
/// elementwise forms, plus the optional multiplicativity (prop-ell), which
/// is reported as its own entry and flag.
pub fn check_strong_connection(g: &Galois, ell: &StrongConnection, d: u32) -> (Report, StrongFlags) {
    let ca = &g.ca;
    let hh = &ca.h;
    let hp = hh.h.pres();
    let a = &ca.a;
    let mut report = Report::new(format!("strong connection({})", ell.name));
    report.config("degree", d);
    let words = hh.test_words(d);

    let mut unit = Check::new("ell(1) = 1 (x) 1", None);
    match ell.apply_word(&Word::empty()) {
        Ok(t) => unit.case(|| "1".into(), (t != Tensor::unit(2)).then(|| ell.fmt(&t))),
        Err(e) => unit.fail("1", format!("{e}")),
    }
    report.push(unit.finish());

    if let EllSource::Generators(_) = ell.source {
        let mut wd = Check::new("well-defined on the relations of H", None);
        for r in &hp.rules {
            let lhs = ell.formula(&r.lhs);
            let rhs = ell.apply(&r.rhs);
            match (lhs, rhs) {
                (Ok(l), Ok(rr)) => {
                    let diff = l.sub(&rr);
                    wd.case(|| format!("{} -> {}", hp.fmt_word(&r.lhs), hp.fmt(&r.rhs)), (!diff.is_zero()).then(|| ell.fmt(&diff)));
                }
                (Err(e), _) | (_, Err(e)) => wd.fail(hp.fmt_word(&r.lhs), format!("{e}")),
            }
        }
        report.push(wd.finish());
    }

    let mut lift = Check::new("pi_B ell = tau", Some(d));
    for h in &words {
        g.case(&mut lift, || hp.fmt_word(h), ell.apply_word(h), g.tau(h));
    }
    report.push(lift.finish());

    let aah = [a.clone(), a.clone(), hh.h.clone()];
    let mut right = Check::new("(id x delta) ell = (ell x id) Delta", Some(d));
    for h in &words {
        let lhs = ell.apply_word(h).and_then(|t| ca.coact_factor(&t, 1));
        let rhs = hh.coproduct(h).and_then(|t| t.try_map_factor(0, 2, |w| ell.apply_word(w)));
        right.case_result(|| hp.fmt_word(h), diff(&aah, lhs, rhs));
    }
    report.push(right.finish());

    let haa = [hh.h.clone(), a.clone(), a.clone()];
    let mut left = Check::new("(delta_l x id) ell = (id x ell) Delta", Some(d));
    let cap = 2 * hp.ngens() as u32 + 4;
    let sinv = antipode_inverse(hh, d, cap);
    for h in &words {
        let r = sinv.as_ref().map_err(|e| e.clone()).and_then(|sinv| {
            let lhs = ell.apply_word(h)?;
            let lhs = left_coact_factor0(ca, sinv, &lhs)?;
            let rhs = hh.coproduct(h)?.try_map_factor(1, 2, |w| ell.apply_word(w))?;
            Ok(lhs.sub(&rhs))
        });
        match r {
            Ok(x) => left.case(|| hp.fmt_word(h), (!x.is_zero()).then(|| x.fmt_with(&haa))),
            Err(e) => left.fail(hp.fmt_word(h), format!("{e}")),
        }
    }
    report.push(left.finish());
    let ell_ok = report.passed();

    let mut mult = Check::new("(prop-ell) ell(kh) = ell1(h) ell1(k) (x) ell2(k) ell2(h)", Some(d));
    for k in &words {
        for h in &words {
            if hh.h.degree(k) + hh.h.degree(h) > d && !hh.is_finite() {
                continue;
            }
            let r = (|| -> Result<Tensor> {
                let lhs = ell.apply(&hh.h.mul_words(k, h))?;
                let rhs = anti_mul(&ell.apply_word(k)?, &ell.apply_word(h)?, a);
                Ok(lhs.sub(&rhs))
            })();
            match r {
                Ok(x) => mult.case(|| format!("k = {}, h = {}", hp.fmt_word(k), hp.fmt_word(h)), (!x.is_zero()).then(|| ell.fmt(&x))),
                Err(e) => mult.fail(format!("k = {}, h = {}", hp.fmt_word(k), hp.fmt_word(h)), format!("{e}")),
            }
        }
    }
    let prop_ell = mult.is_ok();
    report.push(mult.finish());
    (report, StrongFlags { ell: ell_ok, prop_ell })
}

fn diff(algs: &[Alg], l: Result<Tensor>, r: Result<Tensor>) -> Result<Option<String>> {
    let d = l?.sub(&r?);
    Ok((!d.is_zero()).then(|| d.fmt_with(algs)))
}

/// δ_l(a) = S⁻¹(a₍₁₎) ⊗ a₍₀₎ on factor 0 of an A⊗A tensor, giving H⊗A⊗A.
fn left_coact_factor0(ca: &ComoduleAlgebra, sinv: &LinearMap, t: &Tensor) -> Result<Tensor> {
    t.try_map_factor(0, 2, |w| {
        let d = ca.coact_word(w)?.swap();
        d.try_map_factor(0, 1, |h| sinv.apply_word(h))
    })
}

/// ψ_ℓ(a⊗c) = a₍₀₎·c·ℓ¹(a₍₁₎) ⊗ ℓ²(a₍₁₎) as a twisting map on A⊗A.
pub fn psi_ell(ell: Rc<StrongConnection>) -> TwistingMap {
    let ca = ell.ca.clone();
    let a = ca.a.clone();
    let name = format!("psi_ell({})", ell.name);
    TwistingMap::from_fn(&name, a.clone(), a.clone(), move |wa, wc| {
        psi_ell_words(&ell, wa, wc).unwrap_or_else(|e| panic!("psi_ell: {e}"))
    })
}

pub(crate) fn psi_ell_words(ell: &StrongConnection, wa: &Word, wc: &Word) -> Result<Tensor> {
    let ca = &ell.ca;
    let mut out = Tensor::zero(2);
    for (k, x) in ca.coact_word(wa)?.terms() {
        let l = ell.apply_word(&k[1])?;
        let ac = ca.a.mul_words(&k[0], wc);
        out.add_scaled(&super::left_mul(&l, 0, &ac, &ca.a), x);
    }
    Ok(out)
}

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;

use super::Hopf;
use crate::error::{Error, Result};
use crate::ncalg::{Alg, NcPoly, Presentation, Tensor, Word};
use crate::report::{Check, Report};
use crate::twist::{twisted_presentation, TwistingMap};

/// An action on normal words: (a, c) ↦ a▷c ∈ C or a◁c ∈ A.
pub type Action = Rc<dyn Fn(&Word, &Word) -> NcPoly>;

/// Hopf algebras A, C with a left action ▷: A⊗C → C and a right action
/// ◁: A⊗C → A.
#[derive(Clone)]
pub struct MatchedPair {
    pub a: Rc<Hopf>,
    pub c: Rc<Hopf>,
    pub left: Action,
    pub right: Action,
}

impl MatchedPair {
    /// Both actions trivial: a▷c = ε(a)c and a◁c = ε(c)a.
    pub fn trivial(a: Rc<Hopf>, c: Rc<Hopf>) -> Self {
        let (a1, c1) = (a.clone(), c.clone());
        let left: Action = Rc::new(move |wa: &Word, wc: &Word| NcPoly::monomial(a1.counit(wa).unwrap_or_default(), wc.clone()));
        let right: Action = Rc::new(move |wa: &Word, wc: &Word| NcPoly::monomial(c1.counit(wc).unwrap_or_default(), wa.clone()));
        MatchedPair { a, c, left, right }
    }

    pub fn act_left(&self, a: &NcPoly, c: &NcPoly) -> NcPoly {
        bilinear(&self.left, a, c)
    }

    pub fn act_right(&self, a: &NcPoly, c: &NcPoly) -> NcPoly {
        bilinear(&self.right, a, c)
    }

    fn aa(&self) -> Alg {
        self.a.h.clone()
    }

    fn cc(&self) -> Alg {
        self.c.h.clone()
    }

    /// ψ(a⊗c) = Σ (a₁▷c₁) ⊗ (a₂◁c₂).
    pub fn psi_words(&self, wa: &Word, wc: &Word) -> Result<Tensor> {
        let mut out = Tensor::zero(2);
        for (ka, x) in self.a.coproduct(wa)?.terms() {
            for (kc, y) in self.c.coproduct(wc)?.terms() {
                let l = (self.left)(&ka[0], &kc[0]);
                let r = (self.right)(&ka[1], &kc[1]);
                out.add_scaled(&Tensor::of_polys(&[&l, &r]), &(x * y));
            }
        }
        Ok(out)
    }
}

fn bilinear(f: &Action, a: &NcPoly, c: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (wa, x) in a.terms() {
        for (wc, y) in c.terms() {
            out.add_scaled(&f(wa, wc), &(x * y));
        }
    }
    out
}

fn pres(alg: &Alg, p: &NcPoly) -> String {
    alg.fmt(p)
}

/// The five matched-pair identities together with the module and
/// module-coalgebra axioms for both actions, on normal words of total degree
/// ≤ d (whole bases for finite-dimensional factors).
pub fn check_matched_pair(mp: &MatchedPair, d: u32) -> Report {
    let mut report = Report::new(format!("matched pair({}, {})", mp.a.name(), mp.c.name()));
    report.config("degree", d);
    let (aa, cc) = (mp.aa(), mp.cc());
    let aw = mp.a.test_words(d);
    let cw = mp.c.test_words(d);
    let w = |p: &Word| NcPoly::word(p.clone());
    let fa = |x: &Word| aa.pres().fmt_word(x);
    let fc = |x: &Word| cc.pres().fmt_word(x);

    // module axioms
    let mut lmod = Check::new("left action is a module", Some(d));
    let mut rmod = Check::new("right action is a module", Some(d));
    for c in &cw {
        let r = mp.act_left(&NcPoly::one(), &w(c)).sub(&w(c));
        lmod.case(|| format!("1 ▷ {}", fc(c)), (!r.is_zero()).then(|| pres(&cc, &r)));
        for a in &aw {
            for a2 in &aw {
                let l = mp.act_left(&aa.mul_words(a, a2), &w(c));
                let r = mp.act_left(&w(a), &mp.act_left(&w(a2), &w(c)));
                let diff = l.sub(&r);
                lmod.case(|| format!("({} {}) ▷ {}", fa(a), fa(a2), fc(c)), (!diff.is_zero()).then(|| pres(&cc, &diff)));
            }
        }
    }
    for a in &aw {
        let r = mp.act_right(&w(a), &NcPoly::one()).sub(&w(a));
        rmod.case(|| format!("{} ◁ 1", fa(a)), (!r.is_zero()).then(|| pres(&aa, &r)));
        for c in &cw {
            for c2 in &cw {
                let l = mp.act_right(&w(a), &cc.mul_words(c, c2));
                let r = mp.act_right(&mp.act_right(&w(a), &w(c)), &w(c2));
                let diff = l.sub(&r);
                rmod.case(|| format!("{} ◁ ({} {})", fa(a), fc(c), fc(c2)), (!diff.is_zero()).then(|| pres(&aa, &diff)));
            }
        }
    }
    report.push(lmod.finish());
    report.push(rmod.finish());

    // module coalgebra axioms
    let mut lcoalg = Check::new("left action is a module coalgebra", Some(d));
    let mut rcoalg = Check::new("right action is a module coalgebra", Some(d));
    let cc2 = [cc.clone(), cc.clone()];
    let aa2 = [aa.clone(), aa.clone()];
    for a in &aw {
        for c in &cw {
            let input = || format!("{} , {}", fa(a), fc(c));
            let r = (|| {
                let (da, dc) = (mp.a.coproduct(a)?, mp.c.coproduct(c)?);
                let eps = &mp.a.counit(a)? * &mp.c.counit(c)?;
                let act = mp.act_left(&w(a), &w(c));
                let l = mp.c.delta.apply(&act)?;
                let mut r = Tensor::zero(2);
                for (ka, x) in da.terms() {
                    for (kc, y) in dc.terms() {
                        let t = Tensor::of_polys(&[&(mp.left)(&ka[0], &kc[0]), &(mp.left)(&ka[1], &kc[1])]);
                        r.add_scaled(&t, &(x * y));
                    }
                }
                let diff = l.sub(&r);
                if !diff.is_zero() {
                    return Ok(Some(diff.fmt_with(&cc2)));
                }
                let e = mp.c.counit_poly(&act)?;
                Ok::<_, Error>((e != eps).then(|| format!("counit {e} vs {eps}")))
            })();
            lcoalg.case_result(input, r);
            let r = (|| {
                let (da, dc) = (mp.a.coproduct(a)?, mp.c.coproduct(c)?);
                let eps = &mp.a.counit(a)? * &mp.c.counit(c)?;
                let act = mp.act_right(&w(a), &w(c));
                let l = mp.a.delta.apply(&act)?;
                let mut r = Tensor::zero(2);
                for (ka, x) in da.terms() {
                    for (kc, y) in dc.terms() {
                        let t = Tensor::of_polys(&[&(mp.right)(&ka[0], &kc[0]), &(mp.right)(&ka[1], &kc[1])]);
                        r.add_scaled(&t, &(x * y));
                    }
                }
                let diff = l.sub(&r);
                if !diff.is_zero() {
                    return Ok(Some(diff.fmt_with(&aa2)));
                }
                let e = mp.a.counit_poly(&act)?;
                Ok::<_, Error>((e != eps).then(|| format!("counit {e} vs {eps}")))
            })();
            rcoalg.case_result(input, r);
        }
    }
    report.push(lcoalg.finish());
    report.push(rcoalg.finish());

    // (1) (aa')◁c = Σ (a◁(a'₁▷c₁))(a'₂◁c₂)
    let mut id1 = Check::new("(aa')◁c", Some(d));
    // (3) a▷(cc') = Σ (a₁▷c₁)((a₂◁c₂)▷c')
    let mut id3 = Check::new("a▷(cc')", Some(d));
    for a in &aw {
        for a2 in &aw {
            for c in &cw {
                let r = (|| {
                    let l = mp.act_right(&aa.mul_words(a, a2), &w(c));
                    let mut r = NcPoly::zero();
                    for (ka, x) in mp.a.coproduct(a2)?.terms() {
                        for (kc, y) in mp.c.coproduct(c)?.terms() {
                            let inner = mp.act_right(&w(a), &(mp.left)(&ka[0], &kc[0]));
                            let t = aa.mul(&inner, &(mp.right)(&ka[1], &kc[1]));
                            r.add_scaled(&t, &(x * y));
                        }
                    }
                    let diff = l.sub(&r);
                    Ok::<_, Error>((!diff.is_zero()).then(|| pres(&aa, &diff)))
                })();
                id1.case_result(|| format!("a={}, a'={}, c={}", fa(a), fa(a2), fc(c)), r);
            }
        }
        for c in &cw {
            for c2 in &cw {
                let r = (|| {
                    let l = mp.act_left(&w(a), &cc.mul_words(c, c2));
                    let mut r = NcPoly::zero();
                    for (ka, x) in mp.a.coproduct(a)?.terms() {
                        for (kc, y) in mp.c.coproduct(c)?.terms() {
                            let first = (mp.left)(&ka[0], &kc[0]);
                            let second = mp.act_left(&(mp.right)(&ka[1], &kc[1]), &w(c2));
                            r.add_scaled(&cc.mul(&first, &second), &(x * y));
                        }
                    }
                    let diff = l.sub(&r);
                    Ok::<_, Error>((!diff.is_zero()).then(|| pres(&cc, &diff)))
                })();
                id3.case_result(|| format!("a={}, c={}, c'={}", fa(a), fc(c), fc(c2)), r);
            }
        }
    }

    // (2) 1◁c = ε(c)1, (4) a▷1 = ε(a)1
    let mut id2 = Check::new("1◁c", Some(d));
    for c in &cw {
        let r = mp.c.counit(c).map(|e| {
            let diff = mp.act_right(&NcPoly::one(), &w(c)).sub(&NcPoly::constant(e));
            (!diff.is_zero()).then(|| pres(&aa, &diff))
        });
        id2.case_result(|| fc(c), r);
    }
    let mut id4 = Check::new("a▷1", Some(d));
    for a in &aw {
        let r = mp.a.counit(a).map(|e| {
            let diff = mp.act_left(&w(a), &NcPoly::one()).sub(&NcPoly::constant(e));
            (!diff.is_zero()).then(|| pres(&cc, &diff))
        });
        id4.case_result(|| fa(a), r);
    }

    // (5) Σ (a₁◁c₁)⊗(a₂▷c₂) = Σ (a₂◁c₂)⊗(a₁▷c₁)
    let mut id5 = Check::new("compatibility of the actions", Some(d));
    let ac = [aa.clone(), cc.clone()];
    for a in &aw {
        for c in &cw {
            let r = (|| {
                let mut l = Tensor::zero(2);
                let mut r = Tensor::zero(2);
                for (ka, x) in mp.a.coproduct(a)?.terms() {
                    for (kc, y) in mp.c.coproduct(c)?.terms() {
                        let xy = x * y;
                        l.add_scaled(&Tensor::of_polys(&[&(mp.right)(&ka[0], &kc[0]), &(mp.left)(&ka[1], &kc[1])]), &xy);
                        r.add_scaled(&Tensor::of_polys(&[&(mp.right)(&ka[1], &kc[1]), &(mp.left)(&ka[0], &kc[0])]), &xy);
                    }
                }
                let diff = l.sub(&r);
                Ok::<_, Error>((!diff.is_zero()).then(|| diff.fmt_with(&ac)))
            })();
            id5.case_result(|| format!("{} , {}", fa(a), fc(c)), r);
        }
    }
    for e in [id1, id2, id3, id4, id5] {
        report.push(e.finish());
    }
    report
}

/// The twisting map ψ(a⊗c) = Σ (a₁▷c₁)⊗(a₂◁c₂) as a table on pairs of total
/// degree ≤ d, and a presentation of C⋈A built from its generator values.
/// Fails with [`Error::MatchedPairViolation`] naming the first failing axiom.
pub fn double_crossed_product(mp: &MatchedPair, d: u32) -> Result<(TwistingMap, Presentation)> {
    let report = check_matched_pair(mp, d);
    if let Some(e) = report.failures().next() {
        let w = e.witness.as_ref().map(|w| format!(" at {}: {}", w.input, w.residue)).unwrap_or_default();
        return Err(Error::MatchedPairViolation(format!("{}{w}", e.name)));
    }
    let (aa, cc) = (mp.aa(), mp.cc());
    let name = format!("{}⋈{}", cc.name(), aa.name());
    let mut table = BTreeMap::new();
    for (wa, wc) in crate::twist::pairs(&aa, &cc, d) {
        let t = mp.psi_words(&wa, &wc)?;
        table.insert((wa, wc), t);
    }
    let psi = TwistingMap::table(&format!("psi_{name}"), aa.clone(), cc.clone(), d, table);
    let mut gens = BTreeMap::new();
    for ga in 0..aa.pres().ngens() as u8 {
        for gc in 0..cc.pres().ngens() as u8 {
            gens.insert((ga, gc), mp.psi_words(&Word::letter(ga), &Word::letter(gc))?);
        }
    }
    let on_gens = TwistingMap::from_generators(&format!("psi_{name}"), aa, cc, gens);
    let p = twisted_presentation(&on_gens, &name)?;
    Ok((psi, p))
}

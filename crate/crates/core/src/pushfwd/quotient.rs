use alloc::format;
use alloc::rc::Rc;
use alloc::vec::Vec;

use super::{PushForward, Sampling};
use crate::comodule::{coinvariants, filtered_keys, top_degree, ComoduleAlgebra};
use crate::error::{Error, Result};
use crate::ncalg::{is_finite, Alg, NcPoly, Span, Tensor, Word};
use crate::report::{Check, Report};
use crate::twist::TwistingMap;

/// The right ideal I·A = span{β·y·w} of A for an ideal I = ⟨y_k⟩ of B, with
/// β running over a basis of B and w over words of A, in total degree ≤ d
/// (complete when A is finite dimensional).
pub struct IdealSpan {
    pub a: Alg,
    pub bound: u32,
    pub spanning: Vec<NcPoly>,
    span: Span,
}

impl IdealSpan {
    pub fn new(ca: &ComoduleAlgebra, ideal_gens: &[NcPoly], d: u32) -> Result<Self> {
        let a = ca.a.clone();
        let finite = is_finite(&*a);
        let (b_basis, _) = coinvariants(ca, d)?;
        let words = ca.test_words(d);
        let deg = |p: &NcPoly| a.pres().poly_degree(p);
        let mut spanning = Vec::new();
        for beta in &b_basis {
            for y in ideal_gens {
                let by = a.mul(beta, y);
                if by.is_zero() || (!finite && deg(beta) + deg(y) > d) {
                    continue;
                }
                for w in &words {
                    if !finite && deg(beta) + deg(y) + a.degree(w) > d {
                        continue;
                    }
                    let p = a.mul(&by, &NcPoly::word(w.clone()));
                    if !p.is_zero() {
                        spanning.push(p);
                    }
                }
            }
        }
        let span = Span::new(1, &spanning.iter().map(Tensor::from_poly).collect::<Vec<_>>());
        Ok(IdealSpan { a, bound: d, spanning, span })
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn contains(&self, p: &NcPoly) -> bool {
        self.span.contains(&Tensor::from_poly(&self.a.nf(p)))
    }

    /// Membership of each H-component of an A⊗H tensor.
    pub fn contains_legs(&self, t: &Tensor) -> bool {
        let mut legs: alloc::collections::BTreeMap<Word, NcPoly> = alloc::collections::BTreeMap::new();
        for (k, c) in t.terms() {
            legs.entry(k[1].clone()).or_default().add_term(k[0].clone(), c);
        }
        legs.values().all(|p| self.contains(p))
    }
}

/// The isomorphism g: C⊗^ψ_B A → A/I_A, [b]⊗a ↦ b·a, and g⁻¹(a) = 1⊗a.
pub struct QuotientIso {
    pub pf: Rc<PushForward>,
    pub ideal: IdealSpan,
    /// Lifts to B ⊂ A of the generators of C.
    pub lifts: Vec<NcPoly>,
}

impl QuotientIso {
    pub fn lift_word(&self, w: &Word) -> NcPoly {
        lift_word(&self.pf.ca.a, &self.lifts, w)
    }

    pub fn g(&self, x: &Tensor) -> NcPoly {
        let a = &self.pf.ca.a;
        let mut out = NcPoly::zero();
        for (k, c) in x.terms() {
            out.add_scaled(&a.mul(&self.lift_word(&k[0]), &NcPoly::word(k[1].clone())), c);
        }
        out
    }

    pub fn g_inv(&self, p: &NcPoly) -> Tensor {
        Tensor::of_polys(&[&NcPoly::one(), p])
    }
}

fn lift_word(a: &Alg, lifts: &[NcPoly], w: &Word) -> NcPoly {
    w.letters().iter().fold(NcPoly::one(), |acc, &l| a.mul(&acc, &lifts[l as usize]))
}

/// ψ̄(a⊗[b]) = 1⊗_B a·b, computed through the given lifts of C's generators.
pub fn quotient_psi(ca: &ComoduleAlgebra, c: Alg, lifts: Vec<NcPoly>) -> TwistingMap {
    let a = ca.a.clone();
    let a2 = a.clone();
    TwistingMap::from_fn("psi_quotient", a, c, move |wa, wc| {
        let p = a2.mul(&NcPoly::word(wa.clone()), &lift_word(&a2, &lifts, wc));
        Tensor::of_polys(&[&NcPoly::one(), &p])
    })
}

/// The push-forward along B → C = B/I. Checks A·I ⊆ I·A on words of A ≤ d
/// and returns `IdealConditionFailed` with a witness otherwise; then
/// installs ψ̄(a⊗[b]) = 1⊗_B a·b and checks the product formula and the
/// isomorphism with A/I_A.
pub fn quotient_pushforward(
    ca: Rc<ComoduleAlgebra>,
    ideal_gens: Vec<NcPoly>,
    c: Alg,
    f_gens: Vec<NcPoly>,
    lifts: Vec<NcPoly>,
    d: u32,
    sampling: Sampling,
) -> Result<(QuotientIso, Report)> {
    let a = ca.a.clone();
    let ydeg = ideal_gens.iter().map(|y| a.pres().poly_degree(y)).max().unwrap_or(0);
    let ideal = IdealSpan::new(&ca, &ideal_gens, d + ydeg)?;
    let mut report = Report::new(format!("quotient push-forward({})", c.name()));
    report.config("degree", d);
    report.note("dim I A", format!("{}", ideal.dim()));
    let mut cond = Check::new("A I in I A", Some(d));
    for w in ca.test_words(d) {
        for y in &ideal_gens {
            let p = a.mul(&NcPoly::word(w.clone()), y);
            if !ideal.contains(&p) {
                return Err(Error::IdealConditionFailed(format!("{} * ({}) = {}", a.pres().fmt_word(&w), a.fmt(y), a.fmt(&p))));
            }
            cond.ok();
        }
    }
    report.push(cond.finish());

    let psi = Rc::new(quotient_psi(&ca, c.clone(), lifts.clone()));
    let pf = Rc::new(PushForward::new(&format!("{} (x)_B {}", c.name(), ca.name), ca.clone(), c, f_gens, psi, d));
    let iso = QuotientIso { pf: pf.clone(), ideal, lifts };
    report.absorb("iso", check_quotient_iso(&iso, d, sampling));
    Ok((iso, report))
}

/// g∘g⁻¹ = id, g⁻¹∘g = id, g multiplicative and colinear, and the product
/// ([b]⊗a)·([b']⊗a') = 1⊗b·a·b'·a'.
pub fn check_quotient_iso(iso: &QuotientIso, d: u32, sampling: Sampling) -> Report {
    let pf = &iso.pf;
    let a = &pf.ca.a;
    let mut report = Report::new(format!("A/I_A iso({})", pf.name));
    report.config("degree", d);
    let space = pf.space();
    let complete = pf.omega.is_complete() && space.iter().all(|x| top_degree(x).is_some());
    let keys = filtered_keys(&space, d);
    let degs: Vec<u32> = keys.iter().map(|k| pf.c.degree(&k[0]) + a.degree(&k[1])).collect();
    let fmt_a = |p: &NcPoly| a.fmt(p);

    let mut gg = Check::new("g g^-1 = id on A/I_A", Some(d));
    for w in pf.ca.test_words(d) {
        let p = NcPoly::word(w.clone());
        let r = iso.g(&iso.g_inv(&p)).sub(&p);
        gg.case(|| a.pres().fmt_word(&w), (!iso.ideal.contains(&r)).then(|| fmt_a(&r)));
    }
    report.push(gg.finish());

    let mut ginv = Check::new("g^-1 g = id on C (x)_B A", Some(d));
    for k in &keys {
        let x = Tensor::basis(k);
        pf.case(&mut ginv, || pf.fmt(&x), Ok(iso.g_inv(&iso.g(&x))), Ok(x.clone()));
    }
    report.push(ginv.finish());

    let (pairs, _) = sampling.tuples(&degs, 2, d, complete);
    let fmt_pair = |p: &[usize]| format!("{} ; {}", pf.fmt(&Tensor::basis(&keys[p[0]])), pf.fmt(&Tensor::basis(&keys[p[1]])));
    let mut prod = Check::new("([b] (x) a)([b'] (x) a') = 1 (x) b a b' a'", Some(d));
    let mut mult = Check::new("g(x y) = g(x) g(y)", Some(d));
    for p in &pairs {
        let (x, y) = (Tensor::basis(&keys[p[0]]), Tensor::basis(&keys[p[1]]));
        let xy = pf.mul(&x, &y);
        let gxgy = a.mul(&iso.g(&x), &iso.g(&y));
        pf.case(&mut prod, || fmt_pair(p), xy.clone(), Ok(iso.g_inv(&gxgy)));
        match xy {
            Ok(xy) => {
                let r = iso.g(&xy).sub(&gxgy);
                mult.case(|| fmt_pair(p), (!iso.ideal.contains(&r)).then(|| fmt_a(&r)));
            }
            Err(e) => mult.fail(fmt_pair(p), format!("{e}")),
        }
    }
    report.push(prod.finish());
    report.push(mult.finish());

    let ah = pf.ca.ah();
    let mut colin = Check::new("delta g = (g x id) delta", Some(d));
    for k in &keys {
        let x = Tensor::basis(k);
        let r = (|| -> Result<Tensor> {
            let lhs = pf.ca.coact(&iso.g(&x))?;
            let rhs = pf.coact(&x)?;
            let mut out = Tensor::zero(2);
            for (kk, c) in rhs.terms() {
                let gx = iso.g(&Tensor::basis(&kk[..2]));
                out.add_scaled(&Tensor::of_polys(&[&gx, &NcPoly::word(kk[2].clone())]), c);
            }
            Ok(lhs.sub(&out))
        })();
        match r {
            Ok(t) => colin.case(|| pf.fmt(&x), (!iso.ideal.contains_legs(&t)).then(|| t.fmt_with(&ah))),
            Err(e) => colin.fail(pf.fmt(&x), format!("{e}")),
        }
    }
    report.push(colin.finish());
    report
}

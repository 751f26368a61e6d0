//! Covariant extensions C⊗_B A, descent of twisted products to them, and
//! the push-forward of Hopf–Galois extensions along F: B → C.

mod cleft;
mod galois;
mod quotient;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use crate::comodule::{describe, filtered_keys, left_mul, right_mul, Balanced, ComoduleAlgebra, CustomJoint, Decision, Joint, Sampling};
use crate::error::Result;
use crate::ncalg::linalg::{Echelon, Indexer};
use crate::ncalg::{check_map_well_defined, Alg, Extension, LinearMap, NcPoly, TKey, Tensor, Word};
use crate::report::{Check, Report};
use crate::twist::TwistingMap;

pub use cleft::{check_cleaving, transfer_cleaving};
pub use galois::{galois_object_pf, pf_galois_check};
pub use quotient::{check_quotient_iso, quotient_psi, quotient_pushforward, IdealSpan, QuotientIso};

/// A comodule algebra B ⊂ A, an algebra map F: B → C given on the
/// B-generators, and a twisting map ψ: A⊗C → C⊗A whose product is to
/// descend to C⊗_B A.
pub struct PushForward {
    pub name: String,
    pub ca: Rc<ComoduleAlgebra>,
    pub c: Alg,
    pub f_gens: Vec<NcPoly>,
    pub psi: Rc<TwistingMap>,
    /// C⊗_B A with relators c·F(b)⊗a − c⊗b·a.
    pub omega: Balanced,
}

impl PushForward {
    pub fn new(name: &str, ca: Rc<ComoduleAlgebra>, c: Alg, f_gens: Vec<NcPoly>, psi: Rc<TwistingMap>, cap: u32) -> Self {
        let f_gens: Vec<NcPoly> = f_gens.iter().map(|p| c.nf(p)).collect();
        let omega = Balanced::pair("C(x)_B A", c.clone(), ca.a.clone(), f_gens.clone(), ca.b_gens.clone(), cap);
        PushForward { name: name.into(), ca, c, f_gens, psi, omega }
    }

    pub fn a(&self) -> &Alg {
        &self.ca.a
    }

    pub fn space(&self) -> [Alg; 2] {
        [self.c.clone(), self.ca.a.clone()]
    }

    pub fn space_h(&self) -> [Alg; 3] {
        [self.c.clone(), self.ca.a.clone(), self.ca.h.h.clone()]
    }

    pub fn fmt(&self, t: &Tensor) -> String {
        t.fmt_with(&self.space())
    }

    /// F: B → C, when B is presented.
    pub fn f_map(&self) -> Option<LinearMap> {
        self.ca.b.as_ref().map(|b| {
            LinearMap::on_generators_poly(&format!("F: B -> {}", self.c.name()), b.clone(), self.c.clone(), Extension::AlgebraMorphism, self.f_gens.clone())
        })
    }

    pub fn decide_zero(&self, t: &Tensor) -> Decision {
        self.omega.decide_zero(t)
    }

    /// Records x = y in C⊗_B A as a case of `c`.
    pub fn case(&self, c: &mut Check, input: impl FnOnce() -> String, x: Result<Tensor>, y: Result<Tensor>) {
        match x.and_then(|x| y.map(|y| self.decide_zero(&x.sub(&y)))) {
            Err(e) => c.fail(input(), format!("{e}")),
            Ok(d) => record(c, input, &d, |t| self.fmt(t)),
        }
    }

    /// Records x = y in (C⊗_B A)⊗H, deciding each H-component separately.
    pub fn case_h(&self, c: &mut Check, input: impl FnOnce() -> String, x: Result<Tensor>, y: Result<Tensor>) {
        match x.and_then(|x| y.map(|y| decide_legs(&self.omega, &x.sub(&y)))) {
            Err(e) => c.fail(input(), format!("{e}")),
            Ok(d) => record(c, input, &d, |t| t.fmt_with(&self.space_h())),
        }
    }

    /// ψ̄(a⊗c) as a representative in C⊗A.
    pub fn psi_bar(&self, a: &Word, c: &Word) -> Result<Tensor> {
        self.psi.apply_words(a, c)
    }

    /// ψ on an element of A⊗C.
    pub fn psi_tensor(&self, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(2);
        for (k, x) in t.terms() {
            out.add_scaled(&self.psi_bar(&k[0], &k[1])?, x);
        }
        Ok(out)
    }

    pub fn unit(&self) -> Tensor {
        Tensor::unit(2)
    }

    /// (c⊗a)·(c'⊗a') = c·ψ(a⊗c')·a' on representatives.
    pub fn mul(&self, x: &Tensor, y: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(2);
        for (kx, cx) in x.terms() {
            for (ky, cy) in y.terms() {
                let p = self.psi_bar(&kx[1], &ky[0])?;
                let p = left_mul(&p, 0, &NcPoly::word(kx[0].clone()), &self.c);
                let p = right_mul(&p, 1, &NcPoly::word(ky[1].clone()), self.a());
                out.add_scaled(&p, &(cx * cy));
            }
        }
        Ok(out)
    }

    /// The c ∈ C with x = c⊗_B 1, searched among C-words of degree ≤ d.
    pub fn to_c(&self, x: &Tensor, d: u32) -> Option<NcPoly> {
        let words = crate::ncalg::test_basis(&*self.c, d);
        let mut idx: Indexer<TKey> = Indexer::new();
        let mut ech = Echelon::tracking();
        for (i, w) in words.iter().enumerate() {
            let v = self.omega.reduce(&Tensor::basis(&[w.clone(), Word::empty()])).to_svec(&mut idx);
            ech.insert(v, i as u32);
        }
        let v = self.omega.reduce(x).to_svec_known(&idx)?;
        let sol = ech.solve(&v)?;
        Some(sol.into_iter().map(|(i, c)| (words[i as usize].clone(), c)).collect())
    }

    /// F(β) for β ∈ B ⊂ A, read off from 1⊗_B β = F(β)⊗_B 1.
    pub fn f_of(&self, beta: &NcPoly, d: u32) -> Option<NcPoly> {
        self.to_c(&Tensor::of_polys(&[&NcPoly::one(), beta]), d)
    }

    /// The coaction id⊗δ, into C⊗A⊗H.
    pub fn coact(&self, x: &Tensor) -> Result<Tensor> {
        self.ca.coact_factor(x, 1)
    }

    /// C⊗_B A⊗_B A.
    pub fn triple_space(&self, cap: u32) -> Balanced {
        let a = self.a().clone();
        let b = self.ca.b_gens.clone();
        let joints = if b.is_empty() {
            Vec::new()
        } else {
            alloc::vec![
                Joint { pos: 0, left: self.f_gens.clone(), right: b.clone() },
                Joint { pos: 1, left: b.clone(), right: b },
            ]
        };
        Balanced::new("C(x)_B A(x)_B A", alloc::vec![self.c.clone(), a.clone(), a], joints, cap)
    }

    /// (C⊗_B A)⊗_C(C⊗_B A), balanced over C through ψ:
    /// (c⊗a)⊗(g·c'⊗a') = (c·ψ(a⊗g))⊗(c'⊗a') for generators g of C.
    pub fn square_space(self: &Rc<Self>, cap: u32) -> Balanced {
        let a = self.a().clone();
        let b = self.ca.b_gens.clone();
        let joints = if b.is_empty() {
            Vec::new()
        } else {
            alloc::vec![
                Joint { pos: 0, left: self.f_gens.clone(), right: b.clone() },
                Joint { pos: 2, left: self.f_gens.clone(), right: b },
            ]
        };
        let algs = alloc::vec![self.c.clone(), a.clone(), self.c.clone(), a];
        let ngen = self.c.pres().ngens();
        let degrees = (0..ngen as u8).map(|g| self.c.degree(&Word::letter(g))).collect();
        let me = self.clone();
        let relator = move |key: &TKey, g: usize| -> Tensor {
            let gc = me.c.mul_words(&Word::letter(g as u8), &key[2]);
            let mut t = Tensor::zero(4);
            for (w, x) in gc.terms() {
                t.add_term(alloc::vec![key[0].clone(), key[1].clone(), w.clone(), key[3].clone()], x);
            }
            let psi = me.psi_bar(&key[1], &Word::letter(g as u8)).unwrap_or_else(|e| panic!("{e}"));
            for (k, x) in psi.terms() {
                for (w, y) in me.c.mul_words(&key[0], &k[0]).terms() {
                    t.add_term(alloc::vec![w.clone(), k[1].clone(), key[2].clone(), key[3].clone()], &-(x * y));
                }
            }
            t
        };
        Balanced::new("(C(x)_B A)(x)_C(C(x)_B A)", algs, joints, cap).with_custom(CustomJoint { degrees, relator: Rc::new(relator) })
    }

    /// The isomorphism (c⊗a)⊗_C(c'⊗a') ↦ c·c'^ψ ⊗ a^ψ ⊗ a'.
    pub fn caa(&self, x: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(3);
        for (k, c) in x.terms() {
            for (kp, y) in self.psi_bar(&k[1], &k[2])?.terms() {
                for (w, z) in self.c.mul_words(&k[0], &kp[0]).terms() {
                    out.add_term(alloc::vec![w.clone(), kp[1].clone(), k[3].clone()], &(&(c * y) * z));
                }
            }
        }
        Ok(out)
    }

    /// c⊗a⊗a' ↦ (c⊗a)⊗_C(1⊗a').
    pub fn caa_inv(&self, y: &Tensor) -> Tensor {
        let mut out = Tensor::zero(4);
        for (k, c) in y.terms() {
            out.add_term(alloc::vec![k[0].clone(), k[1].clone(), Word::empty(), k[2].clone()], c);
        }
        out
    }
}

pub(crate) fn record(c: &mut Check, input: impl FnOnce() -> String, d: &Decision, fmt: impl Fn(&Tensor) -> String) {
    match describe(d, fmt) {
        None => c.ok(),
        Some((true, r)) => c.fail(input(), r),
        Some((false, r)) => c.undecided(input(), r),
    }
}

/// Decides t = 0 in X⊗H, for X balanced by `bal` and H the last factor.
pub(crate) fn decide_legs(bal: &Balanced, t: &Tensor) -> Decision {
    let n = t.arity() - 1;
    let mut legs: BTreeMap<Word, Tensor> = BTreeMap::new();
    for (k, c) in t.terms() {
        legs.entry(k[n].clone()).or_insert_with(|| Tensor::zero(n)).add_term(k[..n].to_vec(), c);
    }
    let mut undecided = None;
    for (leg, part) in legs {
        match bal.decide_zero(&part) {
            Decision::Equal => {}
            Decision::Unequal(r) => return Decision::Unequal(r.tensor(&Tensor::basis(&[leg]))),
            Decision::Undecided(r) => undecided = Some(r.tensor(&Tensor::basis(&[leg]))),
        }
    }
    match undecided {
        Some(r) => Decision::Undecided(r),
        None => Decision::Equal,
    }
}

fn degrees(algs: &[Alg], keys: &[TKey]) -> Vec<u32> {
    keys.iter().map(|k| k.iter().zip(algs).map(|(w, a)| a.degree(w)).sum()).collect()
}

/// Conditions for m^ψ to descend to C⊗_B A and for the push-forward to be
/// Hopf–Galois: (f-lin), (nor-B), the distributive law for ψ̄, H-colinearity
/// of ψ, (cta=ac), and the (CAA) isomorphism with its inverse. Cases are
/// input tuples of total degree ≤ d (all of them when A and C are finite).
pub fn check_descent(pf: &Rc<PushForward>, d: u32, sampling: Sampling) -> Report {
    let ca = &pf.ca;
    let (a, c) = (pf.a(), &pf.c);
    let mut report = Report::new(format!("descent({})", pf.name));
    report.config("degree", d);
    if let Some(f) = pf.f_map() {
        report.absorb("F", check_map_well_defined(&f, d));
    }
    let complete = pf.omega.is_complete() && crate::comodule::top_degree(a).is_some() && crate::comodule::top_degree(c).is_some();
    let awords = ca.test_words(d);
    let cwords = crate::ncalg::test_basis(&**c, d);
    let mut words: Vec<(bool, Word)> = awords.iter().map(|w| (true, w.clone())).collect();
    let n_a = words.len();
    words.extend(cwords.iter().map(|w| (false, w.clone())));
    let wdeg: Vec<u32> = words.iter().map(|(is_a, w)| if *is_a { a.degree(w) } else { c.degree(w) }).collect();
    let (adeg, cdeg) = (&wdeg[..n_a], &wdeg[n_a..]);
    let pairs = pair_indices(adeg, cdeg, d, complete, &sampling);
    let afmt = |w: &Word| a.pres().fmt_word(w);
    let cfmt = |w: &Word| c.pres().fmt_word(w);

    let mut left = Check::new("(f-lin) psi(b a (x) c) = F(b) psi(a (x) c)", Some(d));
    let mut right = Check::new("(f-lin) psi(a (x) c F(b)) = psi(a (x) c) b", Some(d));
    for &(i, j) in &pairs {
        let (wa, wc) = (&awords[i], &cwords[j]);
        for (b, fb) in ca.b_gens.iter().zip(&pf.f_gens) {
            let ba = a.mul(b, &NcPoly::word(wa.clone()));
            let lhs = pf.psi_tensor(&Tensor::of_polys(&[&ba, &NcPoly::word(wc.clone())]));
            let rhs = pf.psi_bar(wa, wc).map(|t| left_mul(&t, 0, fb, c));
            pf.case(&mut left, || format!("b = {}, a = {}, c = {}", a.fmt(b), afmt(wa), cfmt(wc)), lhs, rhs);
            let cf = c.mul(&NcPoly::word(wc.clone()), fb);
            let lhs = pf.psi_tensor(&Tensor::of_polys(&[&NcPoly::word(wa.clone()), &cf]));
            let rhs = pf.psi_bar(wa, wc).map(|t| right_mul(&t, 1, b, a));
            pf.case(&mut right, || format!("a = {}, c = {}, b = {}", afmt(wa), cfmt(wc), a.fmt(b)), lhs, rhs);
        }
    }
    report.push(left.finish());
    report.push(right.finish());

    let mut nor_c = Check::new("(nor-B) psi(1 (x) c) = c (x)_B 1", Some(d));
    for wc in &cwords {
        pf.case(&mut nor_c, || cfmt(wc), pf.psi_bar(&Word::empty(), wc), Ok(Tensor::basis(&[wc.clone(), Word::empty()])));
    }
    report.push(nor_c.finish());
    let mut nor_a = Check::new("(nor-B) psi(a (x) 1) = 1 (x)_B a", Some(d));
    for wa in &awords {
        pf.case(&mut nor_a, || afmt(wa), pf.psi_bar(wa, &Word::empty()), Ok(Tensor::basis(&[Word::empty(), wa.clone()])));
    }
    report.push(nor_a.finish());

    let mut dist = Check::new("psi(a (x) c c') = c^psi psi(a^psi (x) c')", Some(d));
    let triples = triple_indices(adeg, cdeg, d, complete, &sampling);
    for &(i, j, k) in &triples {
        let (wa, wc, wc2) = (&awords[i], &cwords[j], &cwords[k]);
        let cc = c.mul_words(wc, wc2);
        let lhs = pf.psi_tensor(&Tensor::of_polys(&[&NcPoly::word(wa.clone()), &cc]));
        let rhs = pf.psi_bar(wa, wc).and_then(|t| {
            let mut out = Tensor::zero(2);
            for (kk, x) in t.terms() {
                let inner = pf.psi_bar(&kk[1], wc2)?;
                out.add_scaled(&left_mul(&inner, 0, &NcPoly::word(kk[0].clone()), c), x);
            }
            Ok(out)
        });
        pf.case(&mut dist, || format!("a = {}, c = {}, c' = {}", afmt(wa), cfmt(wc), cfmt(wc2)), lhs, rhs);
    }
    report.push(dist.finish());

    let mut colin = Check::new("psi is H-colinear", Some(d));
    for &(i, j) in &pairs {
        let (wa, wc) = (&awords[i], &cwords[j]);
        let lhs = pf.psi_bar(wa, wc).and_then(|t| pf.coact(&t));
        let rhs = ca.coact_word(wa).and_then(|da| {
            let mut out = Tensor::zero(3);
            for (k, x) in da.terms() {
                out.add_scaled(&pf.psi_bar(&k[0], wc)?.tensor(&Tensor::basis(&[k[1].clone()])), x);
            }
            Ok(out)
        });
        pf.case_h(&mut colin, || format!("a = {}, c = {}", afmt(wa), cfmt(wc)), lhs, rhs);
    }
    report.push(colin.finish());

    let square = pf.square_space(d);
    let sq = |t: &Tensor| square.decide_zero(t);
    let mut cta = Check::new("(cta=ac) psi(a (x) c) (x)_C 1 = (1 (x) a) (x)_C (c (x) 1)", Some(d));
    for &(i, j) in &pairs {
        let (wa, wc) = (&awords[i], &cwords[j]);
        let r = pf.psi_bar(wa, wc).map(|t| {
            let mut lhs = Tensor::zero(4);
            for (k, x) in t.terms() {
                lhs.add_term(alloc::vec![k[0].clone(), k[1].clone(), Word::empty(), Word::empty()], x);
            }
            lhs.sub(&Tensor::basis(&[Word::empty(), wa.clone(), wc.clone(), Word::empty()]))
        });
        match r {
            Ok(t) => record(&mut cta, || format!("a = {}, c = {}", afmt(wa), cfmt(wc)), &sq(&t), |x| square.fmt(x)),
            Err(e) => cta.fail(format!("a = {}, c = {}", afmt(wa), cfmt(wc)), format!("{e}")),
        }
    }
    report.push(cta.finish());

    let triple = pf.triple_space(d);
    let mut round1 = Check::new("CAA CAA^-1 = id", Some(d));
    let tkeys = filtered_keys(&triple.algs, d);
    let (tix, _) = sampling.tuples(&degrees(&triple.algs, &tkeys), 1, d, complete);
    for ix in &tix {
        let y = Tensor::basis(&tkeys[ix[0]]);
        match pf.caa(&pf.caa_inv(&y)) {
            Ok(z) => record(&mut round1, || triple.fmt(&y), &triple.decide_zero(&z.sub(&y)), |x| triple.fmt(x)),
            Err(e) => round1.fail(triple.fmt(&y), format!("{e}")),
        }
    }
    report.push(round1.finish());
    let mut round2 = Check::new("CAA^-1 CAA = id", Some(d));
    let skeys = filtered_keys(&square.algs, d);
    let (six, _) = sampling.tuples(&degrees(&square.algs, &skeys), 1, d, complete);
    for ix in &six {
        let x = Tensor::basis(&skeys[ix[0]]);
        match pf.caa(&x) {
            Ok(z) => record(&mut round2, || square.fmt(&x), &sq(&pf.caa_inv(&z).sub(&x)), |t| square.fmt(t)),
            Err(e) => round2.fail(square.fmt(&x), format!("{e}")),
        }
    }
    report.push(round2.finish());
    report
}

/// (innerB): ψ̄(a·b⊗c) = ψ̄(a⊗F(b)·c), needed for the *-structure to descend.
pub fn check_inner_b(pf: &PushForward, d: u32, sampling: Sampling) -> Report {
    let (a, c) = (pf.a(), &pf.c);
    let mut report = Report::new(format!("inner B-linearity({})", pf.name));
    report.config("degree", d);
    let complete = pf.omega.is_complete();
    let awords = pf.ca.test_words(d);
    let cwords = crate::ncalg::test_basis(&**c, d);
    let adeg: Vec<u32> = awords.iter().map(|w| a.degree(w)).collect();
    let cdeg: Vec<u32> = cwords.iter().map(|w| c.degree(w)).collect();
    let mut inner = Check::new("(innerB) psi(a b (x) c) = psi(a (x) F(b) c)", Some(d));
    for (i, j) in pair_indices(&adeg, &cdeg, d, complete, &sampling) {
        let (wa, wc) = (&awords[i], &cwords[j]);
        for (b, fb) in pf.ca.b_gens.iter().zip(&pf.f_gens) {
            let ab = a.mul(&NcPoly::word(wa.clone()), b);
            let fc = c.mul(fb, &NcPoly::word(wc.clone()));
            let lhs = pf.psi_tensor(&Tensor::of_polys(&[&ab, &NcPoly::word(wc.clone())]));
            let rhs = pf.psi_tensor(&Tensor::of_polys(&[&NcPoly::word(wa.clone()), &fc]));
            pf.case(&mut inner, || format!("a = {}, b = {}, c = {}", a.pres().fmt_word(wa), a.fmt(b), c.pres().fmt_word(wc)), lhs, rhs);
        }
    }
    report.push(inner.finish());
    report
}

fn pair_indices(adeg: &[u32], cdeg: &[u32], d: u32, complete: bool, sampling: &Sampling) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &x) in adeg.iter().enumerate() {
        for (j, &y) in cdeg.iter().enumerate() {
            if complete || x + y <= d {
                out.push((i, j));
            }
        }
    }
    sampling.pick(out)
}

fn triple_indices(adeg: &[u32], cdeg: &[u32], d: u32, complete: bool, sampling: &Sampling) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (i, &x) in adeg.iter().enumerate() {
        for (j, &y) in cdeg.iter().enumerate() {
            for (k, &z) in cdeg.iter().enumerate() {
                if complete || x + y + z <= d {
                    out.push((i, j, k));
                }
            }
        }
    }
    sampling.pick(out)
}

/// The twisted push-forward algebra: unit, C ⊂ coinvariants as a subalgebra,
/// associativity, the coaction as an algebra map, and independence of the
/// product from representatives on seeded relator perturbations.
pub fn check_pf_algebra(pf: &PushForward, d: u32, sampling: Sampling) -> Report {
    let mut report = Report::new(format!("push-forward algebra({})", pf.name));
    report.config("degree", d);
    report.config("seed", sampling.seed);
    let space = pf.space();
    let complete = pf.omega.is_complete();
    let keys = filtered_keys(&space, d);
    let degs = degrees(&space, &keys);
    let kfmt = |ix: &[usize]| ix.iter().map(|&i| pf.fmt(&Tensor::basis(&keys[i]))).collect::<Vec<_>>().join(" ; ");

    let mut unit = Check::new("1 (x)_B 1 is a two-sided unit", Some(d));
    for k in &keys {
        let x = Tensor::basis(k);
        pf.case(&mut unit, || pf.fmt(&x), pf.mul(&pf.unit(), &x), Ok(x.clone()));
        pf.case(&mut unit, || pf.fmt(&x), pf.mul(&x, &pf.unit()), Ok(x.clone()));
    }
    report.push(unit.finish());

    let cwords = crate::ncalg::test_basis(&*pf.c, d);
    let mut emb = Check::new("(c (x) 1)(c' (x) 1) = c c' (x) 1", Some(d));
    for x in &cwords {
        for y in &cwords {
            if !complete && pf.c.degree(x) + pf.c.degree(y) > d {
                continue;
            }
            let lhs = pf.mul(&Tensor::basis(&[x.clone(), Word::empty()]), &Tensor::basis(&[y.clone(), Word::empty()]));
            let rhs = Tensor::of_polys(&[&pf.c.mul_words(x, y), &NcPoly::one()]);
            pf.case(&mut emb, || format!("{} ; {}", pf.c.pres().fmt_word(x), pf.c.pres().fmt_word(y)), lhs, Ok(rhs));
        }
    }
    report.push(emb.finish());

    let mut assoc = Check::new("(x y) z = x (y z)", Some(d));
    let (triples, sampled) = sampling.tuples(&degs, 3, d, complete);
    for p in &triples {
        let (x, y, z) = (Tensor::basis(&keys[p[0]]), Tensor::basis(&keys[p[1]]), Tensor::basis(&keys[p[2]]));
        let lhs = pf.mul(&x, &y).and_then(|xy| pf.mul(&xy, &z));
        let rhs = pf.mul(&y, &z).and_then(|yz| pf.mul(&x, &yz));
        pf.case(&mut assoc, || kfmt(p), lhs, rhs);
    }
    if sampled {
        assoc.note(format!("{} sampled triples", triples.len()));
    }
    report.push(assoc.finish());

    let mut coalg = Check::new("delta(x y) = delta(x) delta(y)", Some(d));
    let (pairs, sampled) = sampling.tuples(&degs, 2, d, complete);
    for p in &pairs {
        let (x, y) = (Tensor::basis(&keys[p[0]]), Tensor::basis(&keys[p[1]]));
        let lhs = pf.mul(&x, &y).and_then(|xy| pf.coact(&xy));
        let rhs = (|| -> Result<Tensor> {
            let (dx, dy) = (pf.coact(&x)?, pf.coact(&y)?);
            let mut out = Tensor::zero(3);
            for (kx, cx) in dx.terms() {
                for (ky, cy) in dy.terms() {
                    let prod = pf.mul(&Tensor::basis(&kx[..2]), &Tensor::basis(&ky[..2]))?;
                    let h = pf.ca.h.h.mul_words(&kx[2], &ky[2]);
                    out.add_scaled(&prod.tensor(&Tensor::from_poly(&h)), &(cx * cy));
                }
            }
            Ok(out)
        })();
        pf.case_h(&mut coalg, || kfmt(p), lhs, rhs);
    }
    if sampled {
        coalg.note(format!("{} sampled pairs", pairs.len()));
    }
    report.push(coalg.finish());

    let mut reps = Check::new("product independent of representatives", Some(d));
    let relators = pf.omega.relators(d);
    if relators.is_empty() {
        reps.ok();
        reps.note("no balancing relators");
    } else {
        let mut cases = Vec::new();
        for (ri, _) in relators.iter().enumerate() {
            for ki in 0..keys.len() {
                cases.push((ri, ki));
            }
        }
        let cases = sampling.pick(cases);
        for (ri, ki) in cases {
            let (r, y) = (&relators[ri], Tensor::basis(&keys[ki]));
            pf.case(&mut reps, || format!("{} * {}", pf.fmt(r), pf.fmt(&y)), pf.mul(r, &y), Ok(Tensor::zero(2)));
            pf.case(&mut reps, || format!("{} * {}", pf.fmt(&y), pf.fmt(r)), pf.mul(&y, r), Ok(Tensor::zero(2)));
        }
    }
    report.push(reps.finish());
    report
}

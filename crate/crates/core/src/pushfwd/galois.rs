use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use super::{check_descent, check_pf_algebra, decide_legs, record, PushForward};
use crate::comodule::{coinvariants, filtered_keys, galois_check, top_degree, ComoduleAlgebra, Galois, Sampling};
use crate::error::Result;
use crate::ncalg::linalg::{kernel, rank, Indexer, SVec};
use crate::ncalg::{Alg, TKey, Tensor, Word};
use crate::report::{Check, Report, Witness};
use crate::twist::{check_twisting_conditions, TwistingMap};

impl PushForward {
    /// χ^ψ((c⊗a)⊗_C(c'⊗a')) = (c⊗a)·(c'⊗a'₍₀₎) ⊗ a'₍₁₎.
    pub fn chi(&self, x: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(3);
        for (k, c) in x.terms() {
            let left = Tensor::basis(&k[..2]);
            for (kd, y) in self.ca.coact_word(&k[3])?.terms() {
                let prod = self.mul(&left, &Tensor::basis(&[k[2].clone(), kd[0].clone()]))?;
                out.add_scaled(&prod.tensor(&Tensor::basis(&[kd[1].clone()])), &(c * y));
            }
        }
        Ok(out)
    }

    /// τ^ψ(h) = (1⊗τ¹(h)) ⊗_C (1⊗τ²(h)).
    pub fn tau(&self, g: &Galois, h: &Word) -> Result<Tensor> {
        let mut out = Tensor::zero(4);
        for (k, c) in g.tau(h)?.terms() {
            out.add_term(alloc::vec![Word::empty(), k[0].clone(), Word::empty(), k[1].clone()], c);
        }
        Ok(out)
    }
}

fn complete_degree(algs: &[Alg]) -> Option<u32> {
    algs.iter().map(top_degree).sum()
}

/// Coinvariants of the push-forward coaction, χ^ψ = (id⊗χ)∘CAA, bijectivity
/// of χ^ψ, and the identities χ^ψ(τ^ψ(h)) = 1⊗h and x₍₀₎τ^ψ(x₍₁₎) = 1⊗_C x.
pub fn pf_galois_check(pf: &Rc<PushForward>, g: &Galois, d: u32, sampling: Sampling) -> Report {
    let ca = &pf.ca;
    let hh = &ca.h;
    let mut report = Report::new(format!("push-forward galois({})", pf.name));
    report.config("degree", d);
    let space = pf.space();
    let complete = pf.omega.is_complete() && complete_degree(&space).is_some();
    let top = if complete { complete_degree(&space).unwrap() } else { d };

    match pf_coinvariants(pf, top) {
        Ok((dim_coinv, dim_c)) => {
            let mut c = Check::new("coinvariants = C (x)_B 1", Some(d));
            c.note(format!("dim coinvariants {dim_coinv}, dim C (x)_B 1 {dim_c}"));
            if dim_coinv == dim_c {
                c.ok();
            } else {
                c.fail(format!("degree <= {top}"), format!("dim coinvariants {dim_coinv} != {dim_c}"));
            }
            report.push(c.finish());
        }
        Err(e) => report.assert("coinvariants = C (x)_B 1", false, Some(d), || Witness { input: format!("degree <= {top}"), residue: format!("{e}") }),
    }

    let square = pf.square_space(d);
    let triple = pf.triple_space(d);
    let skeys = filtered_keys(&square.algs, d);
    let sdeg: Vec<u32> = skeys.iter().map(|k| k.iter().zip(&square.algs).map(|(w, a)| a.degree(w)).sum()).collect();
    let (cases, _) = sampling.tuples(&sdeg, 1, d, complete);
    let mut fact = Check::new("chi^psi = (id (x) chi) CAA", Some(d));
    for ix in &cases {
        let x = Tensor::basis(&skeys[ix[0]]);
        let r = (|| -> Result<Tensor> {
            let lhs = pf.chi(&x)?;
            let rhs = ca.coact_factor(&pf.caa(&x)?, 2)?.merge(1, &*ca.a);
            Ok(lhs.sub(&rhs))
        })();
        match r {
            Ok(t) => record(&mut fact, || square.fmt(&x), &decide_legs(&pf.omega, &t), |t| t.fmt_with(&pf.space_h())),
            Err(e) => fact.fail(square.fmt(&x), format!("{e}")),
        }
    }
    report.push(fact.finish());

    let mut surj = Check::new("chi^psi((c (x) a) tau^psi(h)) = c (x) a (x) h", Some(d));
    let hwords = hh.test_words(d);
    let okeys = filtered_keys(&space, d);
    for k in &okeys {
        for h in &hwords {
            if !complete && pf.c.degree(&k[0]) + ca.a.degree(&k[1]) + hh.h.degree(h) > d {
                continue;
            }
            let r = (|| -> Result<Tensor> {
                let t = pf.tau(g, h)?;
                let x = t.map_factor(1, 1, |w| Tensor::from_poly(&ca.a.mul_words(&k[1], w))).map_factor(0, 1, |w| Tensor::from_poly(&pf.c.mul_words(&k[0], w)));
                Ok(pf.chi(&x)?.sub(&Tensor::basis(&[k[0].clone(), k[1].clone(), h.clone()])))
            })();
            let input = || format!("{} ; {}", pf.fmt(&Tensor::basis(k)), hh.h.pres().fmt_word(h));
            match r {
                Ok(t) => record(&mut surj, input, &decide_legs(&pf.omega, &t), |t| t.fmt_with(&pf.space_h())),
                Err(e) => surj.fail(input(), format!("{e}")),
            }
        }
    }
    let surj_ok = surj.is_ok();
    report.push(surj.finish());

    if complete {
        let dim_h = hh.test_words(0).len();
        let dim_o = pf.omega.quotient_dim(top);
        let dim_t = triple.quotient_dim(complete_degree(&triple.algs).unwrap_or(top));
        let mut c = Check::new("chi^psi bijective", None);
        c.note(format!("dim C(x)_B A(x)_B A = {dim_t}, dim (C(x)_B A)(x)H = {}", dim_o * dim_h));
        if surj_ok && dim_t == dim_o * dim_h {
            c.ok();
        } else {
            c.fail("dimensions", format!("{dim_t} vs {} (surjective: {surj_ok})", dim_o * dim_h));
        }
        report.push(c.finish());
    } else {
        report.absorb("B in A", galois_check(g, d));
    }

    let mut inv = Check::new("chi^psi(tau^psi(h)) = (1 (x) 1) (x) h", Some(d));
    for h in &hwords {
        let r = pf.tau(g, h).and_then(|t| pf.chi(&t)).map(|x| x.sub(&Tensor::basis(&[Word::empty(), Word::empty(), h.clone()])));
        match r {
            Ok(t) => record(&mut inv, || hh.h.pres().fmt_word(h), &decide_legs(&pf.omega, &t), |t| t.fmt_with(&pf.space_h())),
            Err(e) => inv.fail(hh.h.pres().fmt_word(h), format!("{e}")),
        }
    }
    report.push(inv.finish());

    let mut trans = Check::new("x_(0) tau^psi(x_(1)) = 1 (x)_C x", Some(d));
    for k in &okeys {
        let r = (|| -> Result<Tensor> {
            let mut lhs = Tensor::zero(4);
            for (kd, c) in ca.coact_word(&k[1])?.terms() {
                let left = Tensor::basis(&[k[0].clone(), kd[0].clone()]);
                for (kt, y) in g.tau(&kd[1])?.terms() {
                    let prod = pf.mul(&left, &Tensor::basis(&[Word::empty(), kt[0].clone()]))?;
                    lhs.add_scaled(&prod.tensor(&Tensor::basis(&[Word::empty(), kt[1].clone()])), &(c * y));
                }
            }
            let rhs = Tensor::basis(&[Word::empty(), Word::empty(), k[0].clone(), k[1].clone()]);
            Ok(pf.caa(&lhs)?.sub(&pf.caa(&rhs)?))
        })();
        match r {
            Ok(t) => record(&mut trans, || pf.fmt(&Tensor::basis(k)), &triple.decide_zero(&t), |t| triple.fmt(t)),
            Err(e) => trans.fail(pf.fmt(&Tensor::basis(k)), format!("{e}")),
        }
    }
    report.push(trans.finish());
    report
}

/// Dimension of the coinvariants of C⊗_B A in degree ≤ d, and of C⊗_B 1.
fn pf_coinvariants(pf: &PushForward, d: u32) -> Result<(usize, usize)> {
    let keys = filtered_keys(&pf.space(), d);
    let mut idx: Indexer<TKey> = Indexer::new();
    let mut images: Vec<SVec> = Vec::new();
    for k in &keys {
        let t = pf.coact(&Tensor::basis(k))?.sub(&Tensor::basis(&[k[0].clone(), k[1].clone(), Word::empty()]));
        images.push(reduce_legs(pf, &t).to_svec(&mut idx));
    }
    let ker = kernel(&images).len();
    let relator_rank = keys.len() - pf.omega.quotient_dim(d);
    let mut cidx: Indexer<TKey> = Indexer::new();
    let cvecs: Vec<SVec> = crate::ncalg::test_basis(&*pf.c, d)
        .into_iter()
        .map(|w| pf.omega.reduce(&Tensor::basis(&[w, Word::empty()])).to_svec(&mut cidx))
        .collect();
    Ok((ker - relator_rank, rank(&cvecs)))
}

fn reduce_legs(pf: &PushForward, t: &Tensor) -> Tensor {
    let mut legs: alloc::collections::BTreeMap<Word, Tensor> = alloc::collections::BTreeMap::new();
    for (k, c) in t.terms() {
        legs.entry(k[2].clone()).or_insert_with(|| Tensor::zero(2)).add_term(k[..2].to_vec(), c);
    }
    let mut out = Tensor::zero(3);
    for (leg, part) in legs {
        out = out.add(&pf.omega.reduce(&part).tensor(&Tensor::basis(&[leg])));
    }
    out
}

/// The push-forward of a Galois object (B = k) along the unit of C. Only
/// normality and H-colinearity of ψ are needed; (C2) is asserted to follow
/// from normality.
pub fn galois_object_pf(ca: Rc<ComoduleAlgebra>, c: Alg, psi: Rc<TwistingMap>, d: u32, sampling: Sampling) -> (Rc<PushForward>, Report) {
    let mut report = Report::new(format!("galois object push-forward({})", psi.name));
    report.config("degree", d);
    let dim = coinvariants(&ca, d).map(|(b, _)| b.len());
    report.assert("coinvariants of A are k 1", matches!(dim, Ok(1)), Some(d), || Witness {
        input: ca.name.clone(),
        residue: match &dim {
            Ok(n) => format!("dimension {n}"),
            Err(e) => format!("{e}"),
        },
    });
    let pf = Rc::new(PushForward::new(&format!("{} (x)^psi {}", c.name(), ca.name), ca.clone(), c, Vec::new(), psi.clone(), d));
    let (twist, flags) = check_twisting_conditions(&psi, d);
    report.absorb("psi", twist);
    report.assert("(C2) follows from normality", !flags.normal() || flags.c2, Some(d), || Witness {
        input: psi.name.clone(),
        residue: String::from("psi normal but (C2) fails"),
    });
    report.absorb("descent", check_descent(&pf, d, sampling));
    report.absorb("algebra", check_pf_algebra(&pf, d, sampling));
    let g = Galois::new(ca, d);
    report.absorb("galois", pf_galois_check(&pf, &g, d, sampling));
    (pf, report)
}

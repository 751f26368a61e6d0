//! Ehresmann–Schauenburg bialgebroids of a Hopf–Galois extension and of its
//! push-forward, and the morphisms comparing them.

mod compare;
mod coring;
mod pf;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use crate::comodule::{filtered_keys, left_mul, right_mul, top_degree, Balanced, ComoduleAlgebra, Decision, Galois, Joint, Sampling};
use crate::error::{Error, Result};
use crate::ncalg::linalg::{kernel, Indexer, SVec};
use crate::ncalg::{Alg, NcPoly, TKey, Tensor, Word};
use crate::pushfwd::{decide_legs, record};
use crate::report::{Check, Report, Witness};

pub use compare::{base_ring_extension, check_gamma, check_tilde_gamma, gamma, TildeL};
pub use coring::{check_bialgebroid, check_coring, Bialgebroid, Coring};
pub use pf::{build_es_pf, EsM};

/// The diagonal coaction on the factors at `positions`, with the product of
/// their H-legs appended as a last factor.
pub(crate) fn diagonal(ca: &ComoduleAlgebra, t: &Tensor, positions: &[usize]) -> Result<Tensor> {
    let n = t.arity();
    let mut cur = t.tensor(&Tensor::basis(&[Word::empty()]));
    for &p in positions {
        let mut next = Tensor::zero(n + 1);
        for (k, c) in cur.terms() {
            for (kd, y) in ca.coact_word(&k[p])?.terms() {
                for (hw, z) in ca.h.h.mul_words(&k[n], &kd[1]).terms() {
                    let mut key = k.clone();
                    key[p] = kd[0].clone();
                    key[n] = hw.clone();
                    next.add_term(key, &(&(c * y) * z));
                }
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// Decides whether t is coinvariant for the diagonal coaction on `positions`.
pub(crate) fn coinvariant_in(ca: &ComoduleAlgebra, space: &Balanced, t: &Tensor, positions: &[usize]) -> Result<Decision> {
    let defect = diagonal(ca, t, positions)?.sub(&t.tensor(&Tensor::basis(&[Word::empty()])));
    Ok(decide_legs(space, &defect))
}

/// `Equal` if both are; otherwise the first that is not.
pub(crate) fn both(a: Decision, b: Decision) -> Decision {
    if a.is_equal() {
        b
    } else {
        a
    }
}

/// Basis of the diagonal coinvariants among the keys, as classes modulo the
/// relators of `space`.
pub(crate) fn coinvariant_basis(ca: &ComoduleAlgebra, space: &Balanced, keys: &[TKey], positions: &[usize]) -> Result<Vec<Tensor>> {
    let n = space.arity();
    let mut idx: Indexer<TKey> = Indexer::new();
    let mut images: Vec<SVec> = Vec::new();
    for k in keys {
        let x = Tensor::basis(k);
        let defect = diagonal(ca, &x, positions)?.sub(&x.tensor(&Tensor::basis(&[Word::empty()])));
        images.push(reduce_legs(space, &defect).to_svec(&mut idx));
    }
    let cands: Vec<Tensor> = kernel(&images)
        .into_iter()
        .map(|v| {
            let mut t = Tensor::zero(n);
            for (i, c) in v {
                t.add_term(keys[i as usize].clone(), &c);
            }
            t
        })
        .collect();
    Ok(space.independent(&cands).into_iter().map(|i| space.reduce(&cands[i])).collect())
}

pub(crate) fn reduce_legs(space: &Balanced, t: &Tensor) -> Tensor {
    let n = t.arity() - 1;
    let mut legs: BTreeMap<Word, Tensor> = BTreeMap::new();
    for (k, c) in t.terms() {
        legs.entry(k[n].clone()).or_insert_with(|| Tensor::zero(n)).add_term(k[..n].to_vec(), c);
    }
    let mut out = Tensor::zero(n + 1);
    for (leg, part) in legs {
        out = out.add(&space.reduce(&part).tensor(&Tensor::basis(&[leg])));
    }
    out
}

pub(crate) fn is_complete(algs: &[Alg]) -> bool {
    algs.iter().all(|a| top_degree(a).is_some())
}

/// The space of `algs` balanced at the given joints (pos, left, right).
pub(crate) fn balanced(name: &str, algs: Vec<Alg>, joints: &[(usize, &[NcPoly], &[NcPoly])], cap: u32) -> Balanced {
    let js = joints
        .iter()
        .filter(|(_, l, r)| !l.is_empty() || !r.is_empty())
        .map(|&(pos, l, r)| Joint { pos, left: l.to_vec(), right: r.to_vec() })
        .collect();
    Balanced::new(name, algs, js, cap)
}

pub(crate) fn invalid(what: &str, x: String) -> Error {
    Error::Invalid(format!("{what}: {x}"))
}

/// L = (A⊗A)^{coH} for a Hopf–Galois extension B ⊂ A, materialized in
/// degree ≤ d (completely when A is finite dimensional).
pub struct EsL {
    pub galois: Rc<Galois>,
    pub basis: Vec<Tensor>,
    pub bound: u32,
    pub complete: bool,
    total: Balanced,
    square: Balanced,
    cube: Balanced,
}

impl EsL {
    pub fn new(galois: Rc<Galois>, d: u32) -> Result<Self> {
        let ca = galois.ca.clone();
        let a = ca.a.clone();
        let b: &[NcPoly] = &ca.b_gens;
        let complete = is_complete(&ca.aa());
        let total = Balanced::new("A(x)A", alloc::vec![a.clone(); 2], Vec::new(), d);
        let square = balanced("L(x)_B L", alloc::vec![a.clone(); 4], &[(1, b, b)], d);
        let cube = balanced("L(x)_B L(x)_B L", alloc::vec![a; 6], &[(1, b, b), (3, b, b)], d);
        let keys = filtered_keys(&ca.aa(), d);
        let basis = coinvariant_basis(&ca, &total, &keys, &[0, 1])?;
        Ok(EsL { galois, basis, bound: d, complete, total, square, cube })
    }

    pub fn ca(&self) -> &Rc<ComoduleAlgebra> {
        &self.galois.ca
    }

    fn a(&self) -> &Alg {
        &self.galois.ca.a
    }
}

impl Coring for EsL {
    fn name(&self) -> String {
        format!("L({})", self.ca().name)
    }

    fn basis(&self) -> &[Tensor] {
        &self.basis
    }

    fn bound(&self) -> u32 {
        self.bound
    }

    fn complete(&self) -> bool {
        self.complete
    }

    fn degree(&self, x: &Tensor) -> u32 {
        x.max_degree(&self.ca().aa())
    }

    fn fmt(&self, x: &Tensor) -> String {
        x.fmt_with(&self.ca().aa())
    }

    fn base(&self) -> &Alg {
        self.a()
    }

    fn base_gens(&self) -> Vec<NcPoly> {
        self.ca().b_gens.clone()
    }

    fn total(&self) -> &Balanced {
        &self.total
    }

    fn member(&self, x: &Tensor) -> Result<Decision> {
        coinvariant_in(self.ca(), &self.total, x, &[0, 1])
    }

    fn act_left(&self, r: &NcPoly, x: &Tensor) -> Tensor {
        left_mul(x, 0, r, self.a())
    }

    fn act_right(&self, x: &Tensor, r: &NcPoly) -> Tensor {
        right_mul(x, 1, r, self.a())
    }

    /// Δ(a⊗a') = a₍₀₎ ⊗ τ¹(a₍₁₎) ⊗_B τ²(a₍₁₎) ⊗ a'.
    fn delta(&self, x: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(4);
        for (k, c) in x.terms() {
            for (kd, y) in self.ca().coact_word(&k[0])?.terms() {
                let t = self.galois.tau(&kd[1])?;
                let t = Tensor::basis(&[kd[0].clone()]).tensor(&t).tensor(&Tensor::basis(&[k[1].clone()]));
                out.add_scaled(&t, &(c * y));
            }
        }
        Ok(out)
    }

    /// ε(a⊗a') = a·a'.
    fn eps(&self, x: &Tensor) -> Result<NcPoly> {
        Ok(x.merge(0, &**self.a()).to_poly())
    }

    fn counit_left(&self, t: &Tensor) -> Result<Tensor> {
        Ok(t.merge(0, &**self.a()).merge(0, &**self.a()))
    }

    fn counit_right(&self, t: &Tensor) -> Result<Tensor> {
        Ok(t.merge(2, &**self.a()).merge(1, &**self.a()))
    }

    fn square(&self) -> &Balanced {
        &self.square
    }

    fn canon2(&self, t: &Tensor) -> Result<Tensor> {
        Ok(t.clone())
    }

    fn square_member(&self, t: &Tensor) -> Result<Decision> {
        let ca = self.ca();
        Ok(both(coinvariant_in(ca, &self.square, t, &[0, 1])?, coinvariant_in(ca, &self.square, t, &[2, 3])?))
    }

    fn cube(&self) -> &Balanced {
        &self.cube
    }

    fn canon3(&self, t: &Tensor) -> Result<Tensor> {
        Ok(t.clone())
    }
}

impl Bialgebroid for EsL {
    fn unit(&self) -> Tensor {
        Tensor::unit(2)
    }

    /// (a⊗a')·(d⊗d') = ad ⊗ d'a'.
    fn mul(&self, x: &Tensor, y: &Tensor) -> Result<Tensor> {
        let a = self.a();
        let mut out = Tensor::zero(2);
        for (kx, cx) in x.terms() {
            for (ky, cy) in y.terms() {
                let l = a.mul_words(&kx[0], &ky[0]);
                let r = a.mul_words(&ky[1], &kx[1]);
                out.add_scaled(&Tensor::of_polys(&[&l, &r]), &(cx * cy));
            }
        }
        Ok(out)
    }

    fn s(&self, b: &NcPoly) -> Tensor {
        Tensor::of_polys(&[b, &NcPoly::one()])
    }

    fn t(&self, b: &NcPoly) -> Tensor {
        Tensor::of_polys(&[&NcPoly::one(), b])
    }
}

/// Computes L in degree ≤ d, checks that its (ESbis) description agrees with
/// the (ES) one, that ε(L) ⊂ B, and all coring and bialgebroid axioms.
pub fn build_es(g: Rc<Galois>, d: u32, sampling: Sampling) -> Result<(EsL, Report)> {
    let l = EsL::new(g, d)?;
    let ca = l.ca().clone();
    let a = ca.a.clone();
    let mut report = Report::new(format!("ES bialgebroid({})", ca.name));
    report.config("degree", d);
    report.note("dim L", format!("{}", l.basis.len()));

    // (ES): a₍₀₎ ⊗ τ(a₍₁₎)a' = (a⊗a') ⊗_B 1
    let b: &[NcPoly] = &ca.b_gens;
    let es = balanced("A(x)A(x)_B A", alloc::vec![a.clone(); 3], &[(1, b, b)], d);
    let es_defect = |x: &Tensor| -> Result<Tensor> { Ok(l.delta(x)?.merge(2, &*a).sub(&x.tensor(&Tensor::unit(1)))) };
    let mut holds = Check::new("(ESbis) basis satisfies (ES)", Some(d));
    for x in &l.basis {
        match es_defect(x) {
            Ok(t) => record(&mut holds, || l.fmt(x), &es.decide_zero(&t), |t| es.fmt(t)),
            Err(e) => holds.fail(l.fmt(x), format!("{e}")),
        }
    }
    report.push(holds.finish());
    if l.complete {
        let keys = filtered_keys(&ca.aa(), d);
        let mut idx: Indexer<TKey> = Indexer::new();
        let mut images = Vec::new();
        for k in &keys {
            images.push(es.reduce(&es_defect(&Tensor::basis(k))?).to_svec(&mut idx));
        }
        let dim_es = kernel(&images).len();
        report.assert("dim (ES) = dim (ESbis)", dim_es == l.basis.len(), Some(d), || Witness {
            input: String::from("solution spaces"),
            residue: format!("(ES) {dim_es}, (ESbis) {}", l.basis.len()),
        });
    }

    let mut in_b = Check::new("eps(L) in B", Some(d));
    for x in &l.basis {
        let e = l.eps(x)?;
        let r = ca.coact(&e).map(|t| t.sub(&Tensor::of_polys(&[&e, &NcPoly::one()])));
        in_b.case_result(|| l.fmt(x), r.map(|t| (!t.is_zero()).then(|| t.fmt_with(&ca.ah()))));
    }
    report.push(in_b.finish());
    report.absorb("L", check_bialgebroid(&l, sampling));
    Ok((l, report))
}

//! Right H-comodule algebras, their coinvariants, the canonical map of
//! B ⊂ A, translation maps, strong connections and the twisted algebras
//! they induce on A⊗_B A.

mod balanced;
mod galois;
mod strong;
mod total;

use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Result;
use crate::hopf::Hopf;
use crate::ncalg::linalg::{kernel, Indexer, SVec};
use crate::ncalg::{check_map_well_defined, is_finite, test_basis, Alg, Extension, LinearMap, NcPoly, Span, TKey, Tensor, Word};
use crate::report::{Check, Report};

pub use balanced::{describe, filtered_keys, left_mul, right_mul, top_degree, Balanced, CustomJoint, Decision, Joint};
pub use galois::{canonical_map, galois_check, translation_check, translation_map, Galois};
pub use strong::{check_strong_connection, psi_ell, EllSource, StrongConnection, StrongFlags};
pub use total::{check_total, check_total_structure, check_triviality_total, Sampling, TotalAlgebra};

/// An algebra A with a right H-coaction δ, and a generating set of the
/// coinvariant subalgebra B (optionally with B's own presentation, whose
/// generators correspond to `b_gens` in order).
pub struct ComoduleAlgebra {
    pub name: String,
    pub a: Alg,
    pub h: Rc<Hopf>,
    pub delta: LinearMap,
    pub b_gens: Vec<NcPoly>,
    pub b: Option<Alg>,
}

impl ComoduleAlgebra {
    /// δ given on the generators of A and extended as an algebra map.
    pub fn new(name: &str, a: Alg, h: Rc<Hopf>, delta_gens: Vec<Tensor>, b_gens: Vec<NcPoly>, b: Option<Alg>) -> Self {
        let delta = LinearMap::on_generators(
            &format!("delta_{name}"),
            a.clone(),
            alloc::vec![a.clone(), h.h.clone()],
            Extension::AlgebraMorphism,
            delta_gens,
        );
        let b_gens = b_gens.iter().map(|p| a.nf(p)).collect();
        ComoduleAlgebra { name: name.into(), a, h, delta, b_gens, b }
    }

    /// δ given as an arbitrary linear map A → A⊗H.
    pub fn with_delta(name: &str, a: Alg, h: Rc<Hopf>, delta: LinearMap, b_gens: Vec<NcPoly>, b: Option<Alg>) -> Self {
        let b_gens = b_gens.iter().map(|p| a.nf(p)).collect();
        ComoduleAlgebra { name: name.into(), a, h, delta, b_gens, b }
    }

    /// The trivial coaction a ↦ a⊗1, with B = A.
    pub fn trivial(a: Alg, h: Rc<Hopf>) -> Self {
        let n = a.pres().ngens();
        let gens: Vec<NcPoly> = (0..n as u8).map(NcPoly::letter).collect();
        let delta = gens.iter().map(|g| Tensor::of_polys(&[g, &NcPoly::one()])).collect();
        Self::new("trivial", a.clone(), h, delta, gens, Some(a))
    }

    pub fn ah(&self) -> [Alg; 2] {
        [self.a.clone(), self.h.h.clone()]
    }

    pub fn aa(&self) -> [Alg; 2] {
        [self.a.clone(), self.a.clone()]
    }

    pub fn coact_word(&self, w: &Word) -> Result<Tensor> {
        self.delta.apply_word(w)
    }

    pub fn coact(&self, p: &NcPoly) -> Result<Tensor> {
        self.delta.apply(p)
    }

    /// Applies δ to factor `i`, inserting the H-leg right after it.
    pub fn coact_factor(&self, t: &Tensor, i: usize) -> Result<Tensor> {
        t.try_map_factor(i, 2, |w| self.coact_word(w))
    }

    /// F: B → A, when B is presented.
    pub fn inclusion(&self) -> Option<LinearMap> {
        self.b.as_ref().map(|b| {
            LinearMap::on_generators_poly(
                &format!("B->{}", self.a.name()),
                b.clone(),
                self.a.clone(),
                Extension::AlgebraMorphism,
                self.b_gens.clone(),
            )
        })
    }

    pub fn test_words(&self, d: u32) -> Vec<Word> {
        test_basis(&*self.a, d)
    }

    pub fn is_finite(&self) -> bool {
        is_finite(&*self.a) && self.h.is_finite()
    }

    /// A⊗_B A with its balancing relators generated up to `cap`.
    pub fn balanced_square(&self, cap: u32) -> Balanced {
        Balanced::pair("A(x)_B A", self.a.clone(), self.a.clone(), self.b_gens.clone(), self.b_gens.clone(), cap)
    }

    pub fn fmt_ah(&self, t: &Tensor) -> String {
        t.fmt_with(&self.ah())
    }
}

fn diff(algs: &[Alg], l: Result<Tensor>, r: Result<Tensor>) -> Result<Option<String>> {
    let d = l?.sub(&r?);
    Ok((!d.is_zero()).then(|| d.fmt_with(algs)))
}

/// Coassociativity and counit of δ on basis words ≤ d, coinvariance of the
/// declared B-generators, and (when B is presented) that B's relations hold
/// among them in A.
pub fn check_comodule_algebra(ca: &ComoduleAlgebra, d: u32) -> Report {
    let mut report = Report::new(format!("comodule algebra({})", ca.name));
    report.config("degree", d);
    report.absorb("delta", check_map_well_defined(&ca.delta, d));
    let a = &ca.a;
    let hh = &ca.h;
    let aah = [a.clone(), hh.h.clone(), hh.h.clone()];
    let mut coass = Check::new("(delta x id) delta = (id x Delta) delta", Some(d));
    let mut counit = Check::new("(id x eps) delta = id", Some(d));
    for w in ca.test_words(d) {
        let dw = ca.coact_word(&w);
        let lhs = dw.clone().and_then(|t| ca.coact_factor(&t, 0));
        let rhs = dw.clone().and_then(|t| t.try_map_factor(1, 2, |u| hh.coproduct(u)));
        coass.case_result(|| a.pres().fmt_word(&w), diff(&aah, lhs, rhs));
        let ce = dw.and_then(|t| t.try_map_factor(1, 0, |u| Ok(Tensor::scalar(hh.counit(u)?))));
        counit.case_result(|| a.pres().fmt_word(&w), diff(&[a.clone()], ce, Ok(Tensor::basis(&[w.clone()]))));
    }
    report.push(coass.finish());
    report.push(counit.finish());
    let mut coinv = Check::new("B-generators coinvariant", None);
    for b in &ca.b_gens {
        let lhs = ca.coact(b);
        let rhs = Tensor::of_polys(&[b, &NcPoly::one()]);
        coinv.case_result(|| a.fmt(b), diff(&ca.ah(), lhs, Ok(rhs)));
    }
    report.push(coinv.finish());
    if let Some(f) = ca.inclusion() {
        report.absorb("B relations in A", check_map_well_defined(&f, d));
    }
    report
}

/// A basis of the coinvariants B ∩ F_d, computed as the exact kernel of
/// δ − (·)⊗1, together with a report comparing it with the span of products
/// of the declared generators.
pub fn coinvariants(ca: &ComoduleAlgebra, d: u32) -> Result<(Vec<NcPoly>, Report)> {
    let mut report = Report::new(format!("coinvariants({})", ca.name));
    report.config("degree", d);
    let words = ca.test_words(d);
    let mut idx: Indexer<TKey> = Indexer::new();
    let mut images: Vec<SVec> = Vec::new();
    for w in &words {
        let t = ca.coact_word(w)?.sub(&Tensor::basis(&[w.clone(), Word::empty()]));
        images.push(t.to_svec(&mut idx));
    }
    let basis: Vec<NcPoly> = kernel(&images)
        .into_iter()
        .map(|v| v.into_iter().map(|(i, c)| (words[i as usize].clone(), c)).collect())
        .collect();
    report.note("dimension", format!("{}", basis.len()));

    // products of declared generators with degree ≤ d
    let mut gen_span: Vec<NcPoly> = alloc::vec![NcPoly::one()];
    let mut frontier = gen_span.clone();
    let finite = is_finite(&*ca.a);
    let degree_of = |p: &NcPoly| ca.a.pres().poly_degree(p);
    let cap = if finite { words.iter().map(|w| ca.a.degree(w)).max().unwrap_or(0) } else { d };
    let mut seen = Span::new(1, &[Tensor::from_poly(&NcPoly::one())]);
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for b in &ca.b_gens {
                let q = ca.a.mul(p, b);
                if q.is_zero() || (!finite && degree_of(p) + degree_of(b) > cap) {
                    continue;
                }
                let t = Tensor::from_poly(&q);
                if !seen.contains(&t) {
                    gen_span.push(q.clone());
                    seen = Span::new(1, &gen_span.iter().map(Tensor::from_poly).collect::<Vec<_>>());
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    let kernel_span = Span::new(1, &basis.iter().map(Tensor::from_poly).collect::<Vec<_>>());
    let mut contained = Check::new("generated subalgebra inside the kernel", Some(d));
    for p in &gen_span {
        if kernel_span.contains(&Tensor::from_poly(p)) {
            contained.ok();
        } else {
            contained.fail(ca.a.fmt(p), "not coinvariant");
        }
    }
    report.push(contained.finish());
    let mut eq = Check::new("kernel generated by declared B-generators", Some(d));
    if gen_span.len() == basis.len() {
        eq.ok();
    } else if finite {
        eq.fail(format!("dim kernel {}", basis.len()), format!("dim generated {}", gen_span.len()));
    } else {
        eq.undecided(format!("dim kernel {}", basis.len()), format!("dim generated {}", gen_span.len()));
    }
    report.push(eq.finish());
    Ok((basis, report))
}

//! Hopf algebras on presented algebras, the convolution algebra, and
//! matched pairs.

mod matched;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::ncalg::linalg::{Echelon, Indexer, SVec};
use crate::ncalg::{check_map_well_defined, is_finite, tensor_basis, test_basis, FULL_BASIS_CAP, Alg, Extension, LinearMap, NcPoly, TKey, Tensor, Word};
use crate::report::{Check, Report};

pub use matched::{check_matched_pair, double_crossed_product, Action, MatchedPair};

pub struct Hopf {
    pub h: Alg,
    pub delta: LinearMap,
    pub eps: LinearMap,
    pub s: LinearMap,
}

impl Hopf {
    pub fn new(h: Alg, delta: Vec<Tensor>, eps: Vec<Scalar>, s: Vec<NcPoly>) -> Self {
        let name = alloc::string::String::from(h.name());
        let hh = alloc::vec![h.clone(), h.clone()];
        let delta = LinearMap::on_generators(&format!("Delta_{name}"), h.clone(), hh, Extension::AlgebraMorphism, delta);
        let eps = eps.into_iter().map(Tensor::scalar).collect();
        let eps = LinearMap::on_generators(&format!("eps_{name}"), h.clone(), Vec::new(), Extension::AlgebraMorphism, eps);
        let s = LinearMap::on_generators_poly(&format!("S_{name}"), h.clone(), h.clone(), Extension::AntiAlgebraMorphism, s);
        Hopf { h, delta, eps, s }
    }

    pub fn name(&self) -> &str {
        self.h.name()
    }

    pub fn hh(&self) -> [Alg; 2] {
        [self.h.clone(), self.h.clone()]
    }

    pub fn coproduct(&self, w: &Word) -> Result<Tensor> {
        self.delta.apply_word(w)
    }

    pub fn counit(&self, w: &Word) -> Result<Scalar> {
        Ok(self.eps.apply_word(w)?.to_scalar())
    }

    pub fn counit_poly(&self, p: &NcPoly) -> Result<Scalar> {
        Ok(self.eps.apply(p)?.to_scalar())
    }

    pub fn antipode(&self, w: &Word) -> Result<NcPoly> {
        Ok(self.s.apply_word(w)?.to_poly())
    }

    /// The whole basis when H is finite dimensional, else the filtered piece.
    pub fn test_words(&self, d: u32) -> Vec<Word> {
        test_basis(&*self.h, d)
    }

    pub fn is_finite(&self) -> bool {
        is_finite(&*self.h)
    }
}

fn tres(algs: &[Alg], l: Result<Tensor>, r: Result<Tensor>) -> Result<Option<alloc::string::String>> {
    let d = l?.sub(&r?);
    Ok((!d.is_zero()).then(|| d.fmt_with(algs)))
}

/// Coassociativity, counit laws, multiplicativity of Δ and ε, and the
/// antipode identities on basis words of degree ≤ `d` (the whole basis when
/// H is finite dimensional).
pub fn check_bialgebra_axioms(hopf: &Hopf, d: u32) -> Report {
    let mut report = Report::new(format!("hopf({})", hopf.name()));
    report.config("degree", d);
    let words = hopf.test_words(d);
    report.config("complete", hopf.is_finite());
    report.absorb("Delta", check_map_well_defined(&hopf.delta, d));
    report.absorb("eps", check_map_well_defined(&hopf.eps, d));
    report.absorb("S", check_map_well_defined(&hopf.s, d));
    let h = &hopf.h;
    let hhh = [h.clone(), h.clone(), h.clone()];
    let one = [h.clone()];

    let mut coassoc = Check::new("coassociativity", Some(d));
    let mut counit = Check::new("counit laws", Some(d));
    let mut antipode = Check::new("antipode identities", Some(d));
    for w in &words {
        let fmt = || h.pres().fmt_word(w);
        let r = hopf.coproduct(w).and_then(|t| {
            let l = t.try_map_factor(0, 2, |u| hopf.coproduct(u))?;
            let r = t.try_map_factor(1, 2, |u| hopf.coproduct(u))?;
            tres(&hhh, Ok(l), Ok(r))
        });
        coassoc.case_result(fmt, r);
        let r = hopf.coproduct(w).and_then(|t| {
            let l = t.try_map_factor(0, 0, |u| hopf.eps.apply_word(u))?;
            let r = t.try_map_factor(1, 0, |u| hopf.eps.apply_word(u))?;
            let id = Tensor::basis(&[w.clone()]);
            Ok(tres(&one, Ok(l), Ok(id.clone()))?.or(tres(&one, Ok(r), Ok(id))?))
        });
        counit.case_result(fmt, r);
        let r = hopf.coproduct(w).and_then(|t| {
            let unit = Tensor::from_poly(&NcPoly::constant(hopf.counit(w)?));
            let l = t.try_map_factor(0, 1, |u| hopf.s.apply_word(u))?.merge(0, &**h);
            let r = t.try_map_factor(1, 1, |u| hopf.s.apply_word(u))?.merge(0, &**h);
            Ok(tres(&one, Ok(l), Ok(unit.clone()))?.or(tres(&one, Ok(r), Ok(unit))?))
        });
        antipode.case_result(fmt, r);
    }
    report.push(coassoc.finish());
    report.push(counit.finish());
    report.push(antipode.finish());

    let mut mult = Check::new("Delta and eps multiplicative", Some(d));
    for u in &words {
        for v in &words {
            let r = (|| {
                let uv = h.mul_words(u, v);
                let l = hopf.delta.apply(&uv)?;
                let r = hopf.coproduct(u)?.mul(&hopf.coproduct(v)?, &hopf.hh());
                if let Some(x) = tres(&hopf.hh(), Ok(l), Ok(r))? {
                    return Ok(Some(x));
                }
                let e = hopf.counit_poly(&uv)?;
                let f = &hopf.counit(u)? * &hopf.counit(v)?;
                Ok::<_, Error>((e != f).then(|| format!("eps: {e} vs {f}")))
            })();
            mult.case_result(|| format!("{} * {}", h.pres().fmt_word(u), h.pres().fmt_word(v)), r);
        }
    }
    report.push(mult.finish());
    report
}

/// (f*g)(w) = f(w₁)·g(w₂), products taken in the codomain factors.
pub fn convolve_at(
    hopf: &Hopf,
    codomain: &[Alg],
    f: &dyn Fn(&Word) -> Result<Tensor>,
    g: &dyn Fn(&Word) -> Result<Tensor>,
    w: &Word,
) -> Result<Tensor> {
    let mut out = Tensor::zero(codomain.len());
    for (k, x) in hopf.coproduct(w)?.terms() {
        out.add_scaled(&f(&k[0])?.mul(&g(&k[1])?, codomain), x);
    }
    Ok(out)
}

/// η∘ε with values in the given codomain.
pub fn unit_value(hopf: &Hopf, arity: usize, w: &Word) -> Result<Tensor> {
    Ok(Tensor::unit(arity).scale(&hopf.counit(w)?))
}

/// f*g tabulated on basis words of degree ≤ d.
pub fn convolve(hopf: &Hopf, f: &LinearMap, g: &LinearMap, d: u32) -> Result<LinearMap> {
    let cod = f.codomain.clone();
    let mut table = BTreeMap::new();
    for w in hopf.test_words(d) {
        let t = convolve_at(hopf, &cod, &|u| f.apply_word(u), &|u| g.apply_word(u), &w)?;
        table.insert(w, t);
    }
    Ok(LinearMap::table(&format!("{}*{}", f.name, g.name), hopf.h.clone(), cod, d, table))
}

/// Checks f*g = η∘ε = g*f on basis words of degree ≤ d.
pub fn check_convolution_inverse(hopf: &Hopf, f: &LinearMap, g: &LinearMap, d: u32) -> Report {
    let mut report = Report::new(format!("convolution inverse({}, {})", f.name, g.name));
    let cod = f.codomain.clone();
    let n = cod.len();
    let mut left = Check::new(format!("{} * {} = eta eps", f.name, g.name), Some(d));
    let mut right = Check::new(format!("{} * {} = eta eps", g.name, f.name), Some(d));
    for w in hopf.test_words(d) {
        let e = unit_value(hopf, n, &w);
        let fg = convolve_at(hopf, &cod, &|u| f.apply_word(u), &|u| g.apply_word(u), &w);
        let e2 = unit_value(hopf, n, &w);
        left.case_result(|| hopf.h.pres().fmt_word(&w), tres(&cod, fg, e));
        let gf = convolve_at(hopf, &cod, &|u| g.apply_word(u), &|u| f.apply_word(u), &w);
        right.case_result(|| hopf.h.pres().fmt_word(&w), tres(&cod, gf, e2));
    }
    report.push(left.finish());
    report.push(right.finish());
    report
}

/// The convolution inverse of f. A candidate is verified and returned as a
/// table; otherwise, for finite-dimensional H, f*g = η∘ε is solved for g with
/// values in the filtered piece of degree ≤ d of the codomain, then checked
/// on both sides.
pub fn convolution_inverse(hopf: &Hopf, f: &LinearMap, d: u32, candidate: Option<&LinearMap>) -> Result<(LinearMap, Report)> {
    let cod = f.codomain.clone();
    let name = format!("{}^-1", f.name);
    if let Some(g) = candidate {
        let report = check_convolution_inverse(hopf, f, g, d);
        if let Some(e) = report.failures().next() {
            let w = e.witness.clone().map(|w| format!("{}: {}", w.input, w.residue)).unwrap_or_default();
            return Err(Error::VerificationFailed(format!("{}: {w}", e.name)));
        }
        let mut table = BTreeMap::new();
        for w in hopf.test_words(d) {
            table.insert(w.clone(), g.apply_word(&w)?);
        }
        return Ok((LinearMap::table(&name, hopf.h.clone(), cod, d, table), report));
    }

    if !hopf.is_finite() {
        return Err(Error::Invalid(format!("convolution inverse of {} on infinite-dimensional {} needs a candidate", f.name, hopf.name())));
    }
    let words = hopf.test_words(d);
    let cod_basis: Vec<TKey> = if cod.iter().all(|a| a.full_basis(FULL_BASIS_CAP).is_some()) {
        tensor_basis(&cod, FULL_BASIS_CAP)
    } else {
        tensor_basis(&cod, d)
    };
    // unknowns: coefficient of codomain key k in g(w)
    let mut unknowns: Indexer<(Word, usize)> = Indexer::new();
    let mut rows: Indexer<(usize, TKey)> = Indexer::new();
    let mut cols: BTreeMap<u32, BTreeMap<u32, Scalar>> = BTreeMap::new();
    let mut rhs: BTreeMap<u32, Scalar> = BTreeMap::new();
    for (hi, w) in words.iter().enumerate() {
        for (k, x) in hopf.coproduct(w)?.terms() {
            let fv = f.apply_word(&k[0])?;
            for (bi, b) in cod_basis.iter().enumerate() {
                let prod = fv.mul(&Tensor::basis(b), &cod);
                if prod.is_zero() {
                    continue;
                }
                let u = unknowns.index(&(k[1].clone(), bi));
                let col = cols.entry(u).or_default();
                for (key, y) in prod.terms() {
                    let r = rows.index(&(hi, key.clone()));
                    let e = col.entry(r).or_insert_with(Scalar::zero);
                    *e = &*e + &(x * y);
                }
            }
        }
        for (key, y) in unit_value(hopf, cod.len(), w)?.terms() {
            rhs.insert(rows.index(&(hi, key.clone())), y.clone());
        }
    }
    let mut ech = Echelon::tracking();
    for (u, col) in cols {
        let v: SVec = col.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        ech.insert(v, u);
    }
    let target: SVec = rhs.into_iter().collect();
    let sol = ech.solve(&target).ok_or(Error::NotInvertibleAtBound(d))?;
    let mut table: BTreeMap<Word, Tensor> = words.iter().map(|w| (w.clone(), Tensor::zero(cod.len()))).collect();
    for (u, x) in &sol {
        let (w, bi) = unknowns.key(*u).clone();
        table.entry(w).or_insert_with(|| Tensor::zero(cod.len())).add_term(cod_basis[bi].clone(), x);
    }
    let g = LinearMap::table(&name, hopf.h.clone(), cod, d, table);
    let report = check_convolution_inverse(hopf, f, &g, d);
    if !report.passed() {
        return Err(Error::NotInvertibleAtBound(d));
    }
    Ok((g, report))
}

/// S⁻¹ = S^(2k−1) where k ≤ `cap` is the order of S² on basis words ≤ d.
pub fn antipode_inverse(hopf: &Hopf, d: u32, cap: u32) -> Result<LinearMap> {
    let words = hopf.test_words(d);
    let apply_s = |p: &NcPoly| -> Result<NcPoly> { Ok(hopf.s.apply(p)?.to_poly()) };
    let mut cur: BTreeMap<Word, NcPoly> = words.iter().map(|w| (w.clone(), NcPoly::word(w.clone()))).collect();
    for _ in 0..cap {
        let odd: BTreeMap<Word, NcPoly> = cur.iter().map(|(w, p)| Ok((w.clone(), apply_s(p)?))).collect::<Result<_>>()?;
        let even: BTreeMap<Word, NcPoly> = odd.iter().map(|(w, p)| Ok((w.clone(), apply_s(p)?))).collect::<Result<_>>()?;
        if even.iter().all(|(w, p)| *p == NcPoly::word(w.clone())) {
            let table = odd.into_iter().map(|(w, p)| (w, Tensor::from_poly(&p))).collect();
            return Ok(LinearMap::table(&format!("S^-1_{}", hopf.name()), hopf.h.clone(), alloc::vec![hopf.h.clone()], d, table));
        }
        cur = even;
    }
    Err(Error::NotInvertibleAtBound(d))
}

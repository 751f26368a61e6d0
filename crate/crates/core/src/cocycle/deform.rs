use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use super::TwoCocycle;
use crate::coeff::Scalar;
use crate::comodule::{check_comodule_algebra, check_strong_connection, coinvariants, ComoduleAlgebra, EllSource, Galois, StrongConnection, StrongFlags};
use crate::error::{Error, Result};
use crate::hopf::{check_bialgebra_axioms, check_convolution_inverse, Hopf};
use crate::ncalg::{Alg, AlgebraOps, LinearMap, NcPoly, Presentation, Tensor, Word};
use crate::report::{Check, Report};

type Product = Box<dyn Fn(&Word, &Word) -> NcPoly>;

/// An algebra on the normal-word basis of `base` with a new product.
pub struct DeformedAlgebra {
    base: Alg,
    pres: Presentation,
    product: Product,
    cache: RefCell<BTreeMap<(Word, Word), NcPoly>>,
}

impl DeformedAlgebra {
    pub fn new(base: Alg, name: &str, product: Product) -> Self {
        let mut pres = base.pres().clone();
        pres.name = name.into();
        pres.star = None;
        DeformedAlgebra { base, pres, product, cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn base(&self) -> &Alg {
        &self.base
    }
}

impl AlgebraOps for DeformedAlgebra {
    fn pres(&self) -> &Presentation {
        &self.pres
    }

    fn nf(&self, p: &NcPoly) -> NcPoly {
        self.base.nf(p)
    }

    fn mul_words(&self, u: &Word, v: &Word) -> NcPoly {
        let key = (u.clone(), v.clone());
        if let Some(p) = self.cache.borrow().get(&key) {
            return p.clone();
        }
        let p = (self.product)(u, v);
        self.cache.borrow_mut().insert(key, p.clone());
        p
    }

    fn basis(&self, d: u32) -> Vec<Word> {
        self.base.basis(d)
    }

    fn star(&self, _: &NcPoly) -> Result<NcPoly> {
        Err(Error::NoInvolution(self.pres.name.clone()))
    }
}

fn expect<T>(r: Result<T>) -> T {
    r.unwrap_or_else(|e| panic!("{e}"))
}

fn coproduct2(h: &Hopf, w: &Word) -> Result<Tensor> {
    h.coproduct(w)?.try_map_factor(1, 2, |u| h.coproduct(u))
}

/// The deformed Hopf algebra, comodule algebra and strong connection.
pub struct Deformation {
    pub hopf: Rc<Hopf>,
    pub ca: Rc<ComoduleAlgebra>,
    pub ell: Rc<StrongConnection>,
    /// u_σ(h) = σ(h₁, S(h₂)).
    pub u: LinearMap,
    /// ū_σ(h) = σ̄(S(h₁), h₂).
    pub u_bar: LinearMap,
    pub flags: StrongFlags,
}

/// Builds H_σ, A_σ and ℓ_σ(h) = u_σ(h₁) ℓ(h₂) on basis words ≤ d and checks:
/// the cocycle, u_σ*ū_σ = ε, the bialgebra and antipode axioms of H_σ with
/// the original coproduct and S_σ = u_σ*S*ū_σ, associativity and unit of both
/// deformed products, the comodule-algebra axioms of A_σ with the original
/// coaction, unchanged coinvariants, and the strong-connection properties
/// with (prop-ell) for ℓ_σ.
pub fn deform(ca: &Rc<ComoduleAlgebra>, ell: &StrongConnection, sigma: &Rc<TwoCocycle>, d: u32) -> Result<(Deformation, Report)> {
    let h = ca.h.clone();
    let mut report = Report::new(format!("deformation({} by {})", ca.name, sigma.name));
    report.config("degree", d);
    report.absorb("cocycle", super::check_cocycle(sigma, d));
    let h_words = h.test_words(d);

    let antipode = |w: &Word| -> Result<NcPoly> { h.antipode(w) };
    let mut u_table = BTreeMap::new();
    let mut ubar_table = BTreeMap::new();
    for w in &h_words {
        let (mut u, mut ub) = (Scalar::zero(), Scalar::zero());
        for (k, c) in h.coproduct(w)?.terms() {
            u += &(c * &sigma.eval_polys(&NcPoly::word(k[0].clone()), &antipode(&k[1])?));
            ub += &(c * &sigma.eval_inverse(&Tensor::of_polys(&[&antipode(&k[0])?, &NcPoly::word(k[1].clone())])));
        }
        u_table.insert(w.clone(), Tensor::scalar(u));
        ubar_table.insert(w.clone(), Tensor::scalar(ub));
    }
    let u = LinearMap::table("u_sigma", h.h.clone(), Vec::new(), d, u_table);
    let u_bar = LinearMap::table("u-bar_sigma", h.h.clone(), Vec::new(), d, ubar_table);
    report.absorb("u_sigma", check_convolution_inverse(&h, &u, &u_bar, d));

    let (hb, s2) = (h.clone(), sigma.clone());
    let m_sigma: Product = Box::new(move |x, y| {
        let mut out = NcPoly::zero();
        let (dx, dy) = (expect(coproduct2(&hb, x)), expect(coproduct2(&hb, y)));
        for (a, c) in dx.terms() {
            for (b, e) in dy.terms() {
                let s = &s2.value(&a[0], &b[0]) * &s2.inverse_value(&a[2], &b[2]);
                if !s.is_zero() {
                    out.add_scaled(&hb.h.mul_words(&a[1], &b[1]), &(&s * &(c * e)));
                }
            }
        }
        out
    });
    let h_sigma: Alg = Rc::new(DeformedAlgebra::new(h.h.clone(), &format!("{}_sigma", h.name()), m_sigma));

    let mut delta = BTreeMap::new();
    let mut eps = BTreeMap::new();
    let mut s_table = BTreeMap::new();
    for w in &h_words {
        delta.insert(w.clone(), h.coproduct(w)?);
        eps.insert(w.clone(), Tensor::scalar(h.counit(w)?));
        let mut s = NcPoly::zero();
        for (k, c) in coproduct2(&h, w)?.terms() {
            let coef = &(&u.apply_word(&k[0])?.to_scalar() * &u_bar.apply_word(&k[2])?.to_scalar()) * c;
            if !coef.is_zero() {
                s.add_scaled(&antipode(&k[1])?, &coef);
            }
        }
        s_table.insert(w.clone(), Tensor::from_poly(&s));
    }
    let hname = h_sigma.name().to_string();
    let hopf = Rc::new(Hopf {
        delta: LinearMap::table(&format!("Delta_{hname}"), h_sigma.clone(), vec![h_sigma.clone(), h_sigma.clone()], d, delta),
        eps: LinearMap::table(&format!("eps_{hname}"), h_sigma.clone(), Vec::new(), d, eps),
        s: LinearMap::table(&format!("S_{hname}"), h_sigma.clone(), vec![h_sigma.clone()], d, s_table),
        h: h_sigma.clone(),
    });
    report.push(associativity("m_sigma", &h_sigma, &h_words));
    report.absorb("H_sigma", check_bialgebra_axioms(&hopf, d));

    let (cb, s3) = (ca.clone(), sigma.clone());
    let bullet: Product = Box::new(move |x, y| {
        let mut out = NcPoly::zero();
        let (dx, dy) = (expect(cb.coact_word(x)), expect(cb.coact_word(y)));
        for (a, c) in dx.terms() {
            for (b, e) in dy.terms() {
                let s = s3.inverse_value(&a[1], &b[1]);
                if !s.is_zero() {
                    out.add_scaled(&cb.a.mul_words(&a[0], &b[0]), &(&s * &(c * e)));
                }
            }
        }
        out
    });
    let a_sigma: Alg = Rc::new(DeformedAlgebra::new(ca.a.clone(), &format!("{}_sigma", ca.a.name()), bullet));
    let a_words = ca.test_words(d);
    let mut coact = BTreeMap::new();
    for w in &a_words {
        coact.insert(w.clone(), ca.coact_word(w)?);
    }
    let delta = LinearMap::table(&format!("delta_{}", a_sigma.name()), a_sigma.clone(), vec![a_sigma.clone(), h_sigma.clone()], d, coact);
    let ca_sigma = Rc::new(ComoduleAlgebra::with_delta(
        &format!("{}_sigma", ca.name),
        a_sigma.clone(),
        hopf.clone(),
        delta,
        ca.b_gens.clone(),
        ca.b.clone(),
    ));
    report.push(associativity("bullet_sigma", &a_sigma, &a_words));
    report.absorb("A_sigma", check_comodule_algebra(&ca_sigma, d));

    let ah = ca_sigma.ah();
    let mut mult = Check::new("delta(a bullet_sigma b) = delta(a) delta(b)", Some(d));
    for x in &a_words {
        for y in &a_words {
            let res = (|| -> Result<Option<String>> {
                let lhs = ca_sigma.coact(&a_sigma.mul_words(x, y))?;
                let rhs = ca_sigma.coact_word(x)?.mul(&ca_sigma.coact_word(y)?, &ah);
                let diff = lhs.sub(&rhs);
                Ok((!diff.is_zero()).then(|| diff.fmt_with(&ah)))
            })();
            mult.case_result(|| format!("({}, {})", ca.a.pres().fmt_word(x), ca.a.pres().fmt_word(y)), res);
        }
    }
    report.push(mult.finish());

    let mut coinv = Check::new("coinvariants unchanged", Some(d));
    match (coinvariants(ca, d), coinvariants(&ca_sigma, d)) {
        (Ok((b0, _)), Ok((b1, _))) => coinv.case(|| "basis of coinvariants".into(), (b0 != b1).then(|| {
            let f = |v: &[NcPoly]| v.iter().map(|p| ca.a.fmt(p)).collect::<Vec<_>>().join(", ");
            format!("[{}] vs [{}]", f(&b0), f(&b1))
        })),
        (Err(e), _) | (_, Err(e)) => coinv.fail("coinvariants", format!("{e}")),
    }
    report.push(coinv.finish());

    let mut ell_table = BTreeMap::new();
    for w in &h_words {
        let mut t = Tensor::zero(2);
        for (k, c) in h.coproduct(w)?.terms() {
            let uc = &u.apply_word(&k[0])?.to_scalar() * c;
            if !uc.is_zero() {
                t.add_scaled(&ell.apply_word(&k[1])?, &uc);
            }
        }
        ell_table.insert(w.clone(), t);
    }
    let ell_sigma = Rc::new(StrongConnection::new(&format!("{}_sigma", ell.name), ca_sigma.clone(), EllSource::Table(ell_table)));
    let g = Galois::new(ca_sigma.clone(), d);
    let (r, flags) = check_strong_connection(&g, &ell_sigma, d);
    report.absorb("ell_sigma", r);
    Ok((Deformation { hopf, ca: ca_sigma, ell: ell_sigma, u, u_bar, flags }, report))
}

fn associativity(name: &str, a: &Alg, words: &[Word]) -> crate::report::CheckEntry {
    let mut c = Check::new(format!("{name} associative and unital"), None);
    let one = Word::empty();
    for x in words {
        for y in words {
            let xy = a.mul_words(x, y);
            for z in words {
                let lhs = a.mul(&xy, &NcPoly::word(z.clone()));
                let rhs = a.mul(&NcPoly::word(x.clone()), &a.mul_words(y, z));
                let diff = lhs.sub(&rhs);
                c.case(
                    || format!("({}, {}, {})", a.pres().fmt_word(x), a.pres().fmt_word(y), a.pres().fmt_word(z)),
                    (!diff.is_zero()).then(|| a.fmt(&diff)),
                );
            }
        }
        let w = NcPoly::word(x.clone());
        let (l, r) = (a.mul_words(&one, x), a.mul_words(x, &one));
        c.case(|| format!("unit at {}", a.pres().fmt_word(x)), (l != w || r != w).then(|| format!("{} / {}", a.fmt(&l), a.fmt(&r))));
    }
    c.finish()
}

/// Entrywise comparison of the deformed tables with the undeformed ones;
/// all entries agree exactly when σ is trivial.
pub fn compare_with_original(ca: &ComoduleAlgebra, ell: &StrongConnection, def: &Deformation, d: u32) -> Report {
    let mut r = Report::new(format!("deformed vs original({})", ca.name));
    r.config("degree", d);
    let h = &ca.h;
    let h_words = h.test_words(d);
    let a_words = ca.test_words(d);
    let table = |name: &str, orig: &Alg, new: &Alg, words: &[Word]| {
        let mut c = Check::new(name, Some(d));
        for x in words {
            for y in words {
                let diff = orig.mul_words(x, y).sub(&new.mul_words(x, y));
                c.case(|| format!("({}, {})", orig.pres().fmt_word(x), orig.pres().fmt_word(y)), (!diff.is_zero()).then(|| orig.fmt(&diff)));
            }
        }
        c.finish()
    };
    r.push(table("m_sigma = m", &h.h, &def.hopf.h, &h_words));
    r.push(table("bullet_sigma = m_A", &ca.a, &def.ca.a, &a_words));
    let mut s = Check::new("S_sigma = S", Some(d));
    let mut u = Check::new("u_sigma = eps", Some(d));
    let mut l = Check::new("ell_sigma = ell", Some(d));
    for w in &h_words {
        let input = || h.h.pres().fmt_word(w);
        s.case_result(input, (|| -> Result<Option<String>> {
            let diff = h.antipode(w)?.sub(&def.hopf.antipode(w)?);
            Ok((!diff.is_zero()).then(|| h.h.fmt(&diff)))
        })());
        u.case_result(input, (|| -> Result<Option<String>> {
            let (a, b) = (def.u.apply_word(w)?.to_scalar(), h.counit(w)?);
            Ok((a != b).then(|| format!("{a} != {b}")))
        })());
        l.case_result(input, (|| -> Result<Option<String>> {
            let diff = ell.apply_word(w)?.sub(&def.ell.apply_word(w)?);
            Ok((!diff.is_zero()).then(|| ell.fmt(&diff)))
        })());
    }
    r.push(s.finish());
    r.push(u.finish());
    r.push(l.finish());
    r
}

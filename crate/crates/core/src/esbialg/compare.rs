use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;

use super::coring::halves;
use super::{balanced, both, check_coring, coinvariant_in, invalid, Bialgebroid, Coring, EsL, EsM};
use crate::comodule::{left_mul, right_mul, Balanced, Decision, Sampling};
use crate::error::{Error, Result};
use crate::ncalg::{test_basis, Alg, NcPoly, Tensor, Word};
use crate::pushfwd::{check_inner_b, record, PushForward};
use crate::report::{Check, Report};
use crate::twist::invert_twisting;

/// γ(a⊗a') = (1⊗a)⊗(1⊗a').
pub fn gamma(x: &Tensor) -> Tensor {
    let e = Word::empty();
    let mut out = Tensor::zero(4);
    for (k, c) in x.terms() {
        out.add_term(alloc::vec![e.clone(), k[0].clone(), e.clone(), k[1].clone()], c);
    }
    out
}

fn gamma_gamma(t: &Tensor) -> Tensor {
    let mut out = Tensor::zero(8);
    for (l, r, c) in halves(t, 2) {
        out.add_scaled(&gamma(&l).tensor(&gamma(&r)), c);
    }
    out
}

fn record_in(space: &Balanced, c: &mut Check, input: impl FnOnce() -> String, t: Result<Tensor>) {
    match t {
        Ok(t) => record(c, input, &space.decide_zero(&t), |t| space.fmt(t)),
        Err(e) => c.fail(input(), format!("{e}")),
    }
}

fn record_dec(c: &mut Check, input: impl FnOnce() -> String, d: Result<Decision>) {
    match d {
        Ok(d) => record(c, input, &d, |t| format!("{} terms off", t.len())),
        Err(e) => c.fail(input(), format!("{e}")),
    }
}

fn eq_c(c: &Alg, p: &NcPoly, q: &NcPoly) -> Option<String> {
    let r = c.nf(&p.sub(q));
    (!r.is_zero()).then(|| c.fmt(&r))
}

fn f_of(pf: &PushForward, b: &NcPoly, d: u32) -> Result<NcPoly> {
    pf.f_of(b, d).ok_or_else(|| invalid("not in B", pf.a().fmt(b)))
}

/// γ: L → M is a morphism of bialgebroids over F: it lands in M, sends 1 to
/// 1, intertwines source, target and the base actions, respects ε and Δ, and
/// is multiplicative.
pub fn check_gamma(l: &EsL, m: &EsM, sampling: Sampling) -> Report {
    let pf = &m.pf;
    let d = l.bound;
    let mut report = Report::new(format!("gamma: L -> M({})", pf.name));
    report.config("degree", d);
    let mut mem = Check::new("gamma(L) in M", Some(d));
    let mut cnt = Check::new("eps_M(gamma(x)) = F(eps_L(x))", Some(d));
    let mut co = Check::new("Delta_M gamma = (gamma (x) gamma) Delta_L", Some(d));
    let mut acts = Check::new("gamma(b x) = F(b) gamma(x), gamma(x b) = gamma(x) F(b)", Some(d));
    let bs: Vec<NcPoly> = core::iter::once(NcPoly::one()).chain(l.base_gens()).collect();
    for x in l.basis() {
        let gx = gamma(x);
        record_dec(&mut mem, || l.fmt(x), m.member(&gx));
        let r = (|| -> Result<Option<String>> {
            let lhs = m.eps(&gx)?;
            let rhs = f_of(pf, &l.eps(x)?, d)?;
            Ok(eq_c(&pf.c, &lhs, &rhs))
        })();
        cnt.case_result(|| l.fmt(x), r);
        let r = (|| -> Result<Tensor> { Ok(m.canon2(&m.delta(&gx)?)?.sub(&m.canon2(&gamma_gamma(&l.delta(x)?))?)) })();
        record_in(m.square(), &mut co, || l.fmt(x), r);
        for b in &bs {
            let input = || format!("b = {}, x = {}", pf.a().fmt(b), l.fmt(x));
            let r = f_of(pf, b, d).map(|fb| gamma(&l.act_left(b, x)).sub(&m.act_left(&fb, &gx)));
            record_in(m.total(), &mut acts, input, r);
            let r = f_of(pf, b, d).map(|fb| gamma(&l.act_right(x, b)).sub(&m.act_right(&gx, &fb)));
            record_in(m.total(), &mut acts, input, r);
        }
    }
    report.push(mem.finish());
    report.push(cnt.finish());
    report.push(co.finish());
    report.push(acts.finish());

    let mut one = Check::new("gamma(1 (x) 1) = 1", None);
    record_in(m.total(), &mut one, || "1 (x) 1".into(), Ok(gamma(&l.unit()).sub(&m.unit())));
    report.push(one.finish());

    let mut st = Check::new("gamma s(b) = s~(b), gamma t(b) = t~(b)", Some(d));
    for b in &bs {
        let e = NcPoly::one();
        let input = || pf.a().fmt(b);
        // s~(b) = (1⊗b)⊗(1⊗1), t~(b) = (1⊗1)⊗(1⊗b)
        record_in(m.total(), &mut st, input, Ok(gamma(&l.s(b)).sub(&Tensor::of_polys(&[&e, b, &e, &e]))));
        record_in(m.total(), &mut st, input, Ok(gamma(&l.t(b)).sub(&Tensor::of_polys(&[&e, &e, &e, b]))));
        // and s~ = s_M∘F, t~ = t_M∘F
        let r = f_of(pf, b, d).map(|fb| Tensor::of_polys(&[&e, b, &e, &e]).sub(&m.s(&fb)));
        record_in(m.total(), &mut st, input, r);
        let r = f_of(pf, b, d).map(|fb| Tensor::of_polys(&[&e, &e, &e, b]).sub(&m.t(&fb)));
        record_in(m.total(), &mut st, input, r);
    }
    report.push(st.finish());

    let degs: Vec<u32> = l.basis().iter().map(|x| l.degree(x)).collect();
    let (pairs, sampled) = sampling.tuples(&degs, 2, d, l.complete);
    let mut mult = Check::new("gamma(x y) = gamma(x) gamma(y)", Some(d));
    for p in &pairs {
        let (x, y) = (&l.basis()[p[0]], &l.basis()[p[1]]);
        let r = (|| -> Result<Tensor> { Ok(gamma(&l.mul(x, y)?).sub(&m.mul(&gamma(x), &gamma(y))?)) })();
        record_in(m.total(), &mut mult, || format!("{} ; {}", l.fmt(x), l.fmt(y)), r);
    }
    if sampled {
        mult.note(format!("{} sampled pairs", pairs.len()));
    }
    report.push(mult.finish());
    report
}

/// The base ring extension L~ = C⊗_B L⊗_B C, a C-coring.
pub struct TildeL {
    pub l: Rc<EsL>,
    pub pf: Rc<PushForward>,
    pub basis: Vec<Tensor>,
    pub bound: u32,
    pub complete: bool,
    total: Balanced,
    square: Balanced,
    cube: Balanced,
}

impl TildeL {
    /// Drops the two middle C-factors of a Δ-representative, which must be 1.
    fn trivial_middle(&self, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(6);
        for (k, c) in t.terms() {
            if !k[3].is_empty() || !k[4].is_empty() {
                return Err(invalid("middle factor of a coproduct not 1", self.square.fmt(&self.canon2(t)?)));
            }
            out.add_term([&k[..3], &k[5..]].concat(), c);
        }
        Ok(out)
    }

    fn algs(&self) -> [Alg; 4] {
        let (c, a) = (self.pf.c.clone(), self.pf.a().clone());
        [c.clone(), a.clone(), a, c]
    }
}

/// Builds L~ on the classes of c⊗x⊗c' for C-words c, c' and x in the basis
/// of L, and checks its coring axioms.
pub fn base_ring_extension(l: Rc<EsL>, pf: Rc<PushForward>, d: u32) -> Result<(TildeL, Report)> {
    let (c, a) = (pf.c.clone(), pf.a().clone());
    let f: &[NcPoly] = &pf.f_gens;
    let b: &[NcPoly] = &pf.ca.b_gens;
    let algs = alloc::vec![c.clone(), a.clone(), a.clone(), c.clone()];
    let complete = l.complete && super::is_complete(&algs);
    let total = balanced("C(x)_B L(x)_B C", algs.clone(), &[(0, f, b), (2, b, f)], d);
    let sq = alloc::vec![c.clone(), a.clone(), a.clone(), c.clone(), a.clone(), a.clone(), c.clone()];
    let square = balanced("L~(x)_C L~", sq, &[(0, f, b), (2, b, f), (3, f, b), (5, b, f)], d);
    let mut cb = alloc::vec![c.clone(), a.clone(), a.clone(), c.clone(), a.clone(), a.clone(), c.clone(), a.clone(), a.clone()];
    cb.push(c.clone());
    let cube = balanced("L~(x)_C L~(x)_C L~", cb, &[(0, f, b), (2, b, f), (3, f, b), (5, b, f), (6, f, b), (8, b, f)], d);
    let cwords = test_basis(&*c, d);
    let mut cands = Vec::new();
    for x in &l.basis {
        let dx = l.degree(x);
        for w in &cwords {
            for w2 in &cwords {
                if !complete && c.degree(w) + dx + c.degree(w2) > d {
                    continue;
                }
                cands.push(Tensor::basis(&[w.clone()]).tensor(x).tensor(&Tensor::basis(&[w2.clone()])));
            }
        }
    }
    let basis = total.independent(&cands).into_iter().map(|i| total.reduce(&cands[i])).collect();
    let lt = TildeL { l, pf, basis, bound: d, complete, total, square, cube };
    let mut report = Report::new(format!("base ring extension({})", lt.pf.name));
    report.config("degree", d);
    report.note("dim L~", format!("{}", lt.basis.len()));
    report.absorb("L~", check_coring(&lt));
    Ok((lt, report))
}

impl Coring for TildeL {
    fn name(&self) -> String {
        format!("L~({})", self.pf.name)
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
        x.max_degree(&self.algs())
    }

    fn fmt(&self, x: &Tensor) -> String {
        x.fmt_with(&self.algs())
    }

    fn base(&self) -> &Alg {
        &self.pf.c
    }

    fn base_gens(&self) -> Vec<NcPoly> {
        (0..self.pf.c.pres().ngens() as u8).map(NcPoly::letter).collect()
    }

    fn total(&self) -> &Balanced {
        &self.total
    }

    fn member(&self, x: &Tensor) -> Result<Decision> {
        coinvariant_in(&self.pf.ca, &self.total, x, &[1, 2])
    }

    fn act_left(&self, r: &NcPoly, x: &Tensor) -> Tensor {
        left_mul(x, 0, r, &self.pf.c)
    }

    fn act_right(&self, x: &Tensor, r: &NcPoly) -> Tensor {
        right_mul(x, 3, r, &self.pf.c)
    }

    /// Δ(c⊗a⊗a'⊗c') = (c⊗a₍₀₎⊗τ¹(a₍₁₎)⊗1) ⊗_C (1⊗τ²(a₍₁₎)⊗a'⊗c').
    fn delta(&self, x: &Tensor) -> Result<Tensor> {
        let e = Word::empty();
        let mut out = Tensor::zero(8);
        for (k, c) in x.terms() {
            for (kd, y) in self.l.delta(&Tensor::basis(&k[1..3]))?.terms() {
                let key = alloc::vec![k[0].clone(), kd[0].clone(), kd[1].clone(), e.clone(), e.clone(), kd[2].clone(), kd[3].clone(), k[3].clone()];
                out.add_term(key, &(c * y));
            }
        }
        Ok(out)
    }

    /// ε(c⊗a⊗a'⊗c') = c·F(aa')·c', with aa' summed per pair (c, c') first.
    fn eps(&self, x: &Tensor) -> Result<NcPoly> {
        let c = &self.pf.c;
        let a = self.pf.a();
        let mut parts: alloc::collections::BTreeMap<(Word, Word), NcPoly> = alloc::collections::BTreeMap::new();
        for (k, s) in x.terms() {
            parts.entry((k[0].clone(), k[3].clone())).or_default().add_scaled(&a.mul_words(&k[1], &k[2]), s);
        }
        let mut out = NcPoly::zero();
        for ((w, w2), beta) in parts {
            let f = f_of(&self.pf, &beta, self.bound)?;
            out = out.add(&crate::ncalg::product(&**c, &[&NcPoly::word(w), &f, &NcPoly::word(w2)]));
        }
        Ok(out)
    }

    /// c⊗a⊗a'⊗1 ⊗_C 1⊗b⊗b'⊗c' ↦ c⊗aa'b⊗b'⊗c'.
    fn counit_left(&self, t: &Tensor) -> Result<Tensor> {
        let t = self.trivial_middle(t)?;
        let a = self.pf.a();
        Ok(t.merge(1, &**a).merge(1, &**a))
    }

    /// c⊗a⊗a'⊗1 ⊗_C 1⊗b⊗b'⊗c' ↦ c⊗a⊗a'bb'⊗c'.
    fn counit_right(&self, t: &Tensor) -> Result<Tensor> {
        let t = self.trivial_middle(t)?;
        let a = self.pf.a();
        Ok(t.merge(2, &**a).merge(2, &**a))
    }

    fn square(&self) -> &Balanced {
        &self.square
    }

    fn canon2(&self, t: &Tensor) -> Result<Tensor> {
        Ok(t.merge(3, &*self.pf.c))
    }

    fn square_member(&self, t: &Tensor) -> Result<Decision> {
        let t = self.canon2(t)?;
        let ca = &self.pf.ca;
        Ok(both(coinvariant_in(ca, &self.square, &t, &[1, 2])?, coinvariant_in(ca, &self.square, &t, &[4, 5])?))
    }

    fn cube(&self) -> &Balanced {
        &self.cube
    }

    fn canon3(&self, t: &Tensor) -> Result<Tensor> {
        Ok(t.merge(3, &*self.pf.c).merge(6, &*self.pf.c))
    }
}

/// γ~(c⊗a⊗a'⊗c') = (c⊗a)⊗ψ(a'⊗c').
pub fn tilde_gamma(pf: &PushForward, x: &Tensor) -> Result<Tensor> {
    let mut out = Tensor::zero(4);
    for (k, c) in x.terms() {
        let p = pf.psi_bar(&k[2], &k[3])?;
        out.add_scaled(&Tensor::basis(&k[..2]).tensor(&p), c);
    }
    Ok(out)
}

fn tilde_gamma2(pf: &PushForward, t: &Tensor) -> Result<Tensor> {
    let mut out = Tensor::zero(8);
    for (l, r, c) in halves(t, 4) {
        out.add_scaled(&tilde_gamma(pf, &l)?.tensor(&tilde_gamma(pf, &r)?), c);
    }
    Ok(out)
}

/// γ~: L~ → M. Requires (innerB) and returns `InnerBLinearityFailed` with
/// the first witness otherwise. Checks that γ~ is well defined, lands in M,
/// is C-bilinear, respects Δ and ε, restricts to γ along x ↦ 1⊗x⊗1, and,
/// when ψ is invertible, that it is bijective.
pub fn check_tilde_gamma(lt: &TildeL, m: &EsM, sampling: Sampling) -> Result<Report> {
    let pf = &m.pf;
    let d = lt.bound;
    let inner = check_inner_b(pf, d, sampling);
    if let Some(e) = inner.failures().next() {
        let w = e.witness.as_ref().map(|w| format!("{}: {}", w.input, w.residue)).unwrap_or_else(|| e.name.clone());
        return Err(Error::InnerBLinearityFailed(w));
    }
    let mut report = Report::new(format!("gamma~: L~ -> M({})", pf.name));
    report.config("degree", d);
    report.absorb("innerB", inner);

    let mut wd = Check::new("gamma~ vanishes on the relators of C (x)_B L (x)_B C", Some(d));
    for r in sampling.pick(lt.total().relators(d)) {
        record_in(m.total(), &mut wd, || lt.fmt(&r), tilde_gamma(pf, &r));
    }
    report.push(wd.finish());

    let cs: Vec<NcPoly> = core::iter::once(NcPoly::one()).chain(lt.base_gens()).collect();
    let mut mem = Check::new("gamma~(L~) in M", Some(d));
    let mut co = Check::new("Delta_M gamma~ = (gamma~ (x) gamma~) Delta~", Some(d));
    let mut cnt = Check::new("eps_M gamma~ = eps~", Some(d));
    let mut lin = Check::new("gamma~(c x c') = c gamma~(x) c'", Some(d));
    let mut images = Vec::new();
    for x in lt.basis() {
        let gx = match tilde_gamma(pf, x) {
            Ok(t) => t,
            Err(e) => {
                mem.fail(lt.fmt(x), format!("{e}"));
                continue;
            }
        };
        record_dec(&mut mem, || lt.fmt(x), m.member(&gx));
        let r = (|| -> Result<Tensor> { Ok(m.canon2(&m.delta(&gx)?)?.sub(&m.canon2(&tilde_gamma2(pf, &lt.delta(x)?)?)?)) })();
        record_in(m.square(), &mut co, || lt.fmt(x), r);
        let r = (|| -> Result<Option<String>> { Ok(eq_c(&pf.c, &m.eps(&gx)?, &lt.eps(x)?)) })();
        cnt.case_result(|| lt.fmt(x), r);
        for c in &cs {
            let input = || format!("c = {}, x = {}", pf.c.fmt(c), lt.fmt(x));
            let r = tilde_gamma(pf, &lt.act_left(c, x)).map(|t| t.sub(&m.act_left(c, &gx)));
            record_in(m.total(), &mut lin, input, r);
            let r = tilde_gamma(pf, &lt.act_right(x, c)).map(|t| t.sub(&m.act_right(&gx, c)));
            record_in(m.total(), &mut lin, input, r);
        }
        images.push(gx);
    }
    report.push(mem.finish());
    report.push(co.finish());
    report.push(cnt.finish());
    report.push(lin.finish());

    let mut tri = Check::new("gamma~(1 (x) x (x) 1) = gamma(x)", Some(d));
    let e = Tensor::basis(&[Word::empty()]);
    for x in lt.l.basis() {
        let r = tilde_gamma(pf, &e.tensor(x).tensor(&e)).map(|t| t.sub(&gamma(x)));
        record_in(m.total(), &mut tri, || lt.l.fmt(x), r);
    }
    report.push(tri.finish());

    if invert_twisting(&pf.psi, d).is_ok() {
        let rank = m.total().independent(&images).len();
        let (dl, dm) = (lt.basis.len(), m.basis.len());
        let mut bij = Check::new("gamma~ bijective for invertible psi", Some(d));
        bij.note(format!("rank {rank}, dim L~ {dl}, dim M {dm}"));
        if !(lt.complete && m.complete) {
            bij.note("dimensions compared in degree <= bound only");
        }
        if rank == dl && rank == dm {
            bij.ok();
        } else {
            bij.fail("ranks", format!("rank {rank}, dim L~ {dl}, dim M {dm}"));
        }
        report.push(bij.finish());
    } else {
        report.note("gamma~ bijective for invertible psi", "psi not invertible at this bound");
    }
    Ok(report)
}

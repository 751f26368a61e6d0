use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::comodule::{Balanced, Decision, Sampling};
use crate::error::Result;
use crate::ncalg::{Alg, NcPoly, Tensor};
use crate::pushfwd::record;
use crate::report::{Check, Report};

/// An R-coring materialized on a finite basis inside a tensor space. Elements
/// of X are tensors of arity `total().arity()`; Δ lands in tensors of twice
/// that arity, which `canon2` sends to a space where equality in X⊗_R X is
/// decided by `square()`.
pub trait Coring {
    fn name(&self) -> String;
    fn basis(&self) -> &[Tensor];
    fn bound(&self) -> u32;
    fn complete(&self) -> bool;
    fn degree(&self, x: &Tensor) -> u32;
    fn fmt(&self, x: &Tensor) -> String;
    /// The algebra holding R (R itself, or an algebra containing it).
    fn base(&self) -> &Alg;
    fn base_gens(&self) -> Vec<NcPoly>;
    fn total(&self) -> &Balanced;
    fn member(&self, x: &Tensor) -> Result<Decision>;
    fn act_left(&self, r: &NcPoly, x: &Tensor) -> Tensor;
    fn act_right(&self, x: &Tensor, r: &NcPoly) -> Tensor;
    fn delta(&self, x: &Tensor) -> Result<Tensor>;
    fn eps(&self, x: &Tensor) -> Result<NcPoly>;
    /// Σ ε(x₍₁₎)·x₍₂₎ on a Δ-representative, through an extension of ε that
    /// is defined on the representative's halves.
    fn counit_left(&self, t: &Tensor) -> Result<Tensor>;
    /// Σ x₍₁₎·ε(x₍₂₎), likewise.
    fn counit_right(&self, t: &Tensor) -> Result<Tensor>;
    fn square(&self) -> &Balanced;
    fn canon2(&self, t: &Tensor) -> Result<Tensor>;
    /// Membership of a Δ-representative in X⊗_R X.
    fn square_member(&self, t: &Tensor) -> Result<Decision>;
    fn cube(&self) -> &Balanced;
    fn canon3(&self, t: &Tensor) -> Result<Tensor>;
}

/// A bialgebroid over R: the coring together with a product and source and
/// target maps s, t: R → X.
pub trait Bialgebroid: Coring {
    fn unit(&self) -> Tensor;
    fn mul(&self, x: &Tensor, y: &Tensor) -> Result<Tensor>;
    fn s(&self, r: &NcPoly) -> Tensor;
    fn t(&self, r: &NcPoly) -> Tensor;
}

fn arity<X: Coring + ?Sized>(x: &X) -> usize {
    x.total().arity()
}

/// Splits each term of a Δ-representative into its two halves.
pub(crate) fn halves(t: &Tensor, n: usize) -> impl Iterator<Item = (Tensor, Tensor, &crate::coeff::Scalar)> {
    t.terms().map(move |(k, c)| (Tensor::basis(&k[..n]), Tensor::basis(&k[n..]), c))
}

/// Δ applied to the block of factors starting at `i`.
pub(crate) fn delta_on<X: Coring + ?Sized>(x: &X, t: &Tensor, i: usize) -> Result<Tensor> {
    let n = arity(x);
    let mut out = Tensor::zero(t.arity() + n);
    for (k, c) in t.terms() {
        let d = x.delta(&Tensor::basis(&k[i..i + n]))?;
        out.add_scaled(&Tensor::basis(&k[..i]).tensor(&d).tensor(&Tensor::basis(&k[i + n..])), c);
    }
    Ok(out)
}

/// Combines the halves of a Δ-representative with `f`.
fn fold_halves(t: &Tensor, n: usize, out_arity: usize, mut f: impl FnMut(&Tensor, &Tensor) -> Result<Tensor>) -> Result<Tensor> {
    let mut out = Tensor::zero(out_arity);
    for (l, r, c) in halves(t, n) {
        out.add_scaled(&f(&l, &r)?, c);
    }
    Ok(out)
}

fn eq_base(base: &Alg, p: &NcPoly, q: &NcPoly) -> Option<String> {
    let r = base.nf(&p.sub(q));
    (!r.is_zero()).then(|| base.fmt(&r))
}

fn record_total<X: Coring + ?Sized>(x: &X, c: &mut Check, input: impl FnOnce() -> String, t: Result<Tensor>) {
    match t {
        Ok(t) => record(c, input, &x.total().decide_zero(&t), |t| x.fmt(t)),
        Err(e) => c.fail(input(), format!("{e}")),
    }
}

fn record_square<X: Coring + ?Sized>(x: &X, c: &mut Check, input: impl FnOnce() -> String, t: Result<Tensor>) {
    match t.and_then(|t| x.canon2(&t)) {
        Ok(t) => record(c, input, &x.square().decide_zero(&t), |t| x.square().fmt(t)),
        Err(e) => c.fail(input(), format!("{e}")),
    }
}

fn with_one(gens: Vec<NcPoly>) -> Vec<NcPoly> {
    core::iter::once(NcPoly::one()).chain(gens).collect()
}

/// Basis membership, Δ(X) ⊂ X⊗_R X, the counit laws, coassociativity and
/// R-bilinearity of Δ and ε.
pub fn check_coring<X: Coring + ?Sized>(x: &X) -> Report {
    let n = arity(x);
    let d = Some(x.bound());
    let base = x.base();
    let rs = with_one(x.base_gens());
    let mut report = Report::new(format!("coring({})", x.name()));
    report.config("degree", x.bound());
    report.note("dim", format!("{}", x.basis().len()));

    let mut mem = Check::new("basis lies in the coinvariants", d);
    let mut dmem = Check::new("Delta(x) in X (x)_R X", d);
    let mut cl = Check::new("(eps (x) id) Delta = id", d);
    let mut cr = Check::new("(id (x) eps) Delta = id", d);
    let mut coass = Check::new("(Delta (x) id) Delta = (id (x) Delta) Delta", d);
    let mut dlin = Check::new("Delta(r x r') = r Delta(x) r'", d);
    let mut elin = Check::new("eps(r x) = r eps(x), eps(x r) = eps(x) r", d);
    for b in x.basis() {
        let input = || x.fmt(b);
        match x.member(b) {
            Ok(dec) => record(&mut mem, input, &dec, |t| format!("{} terms off", t.len())),
            Err(e) => mem.fail(input(), format!("{e}")),
        }
        let db = match x.delta(b) {
            Ok(t) => t,
            Err(e) => {
                dmem.fail(input(), format!("{e}"));
                continue;
            }
        };
        match x.square_member(&db) {
            Ok(dec) => record(&mut dmem, input, &dec, |t| format!("{} terms off", t.len())),
            Err(e) => dmem.fail(input(), format!("{e}")),
        }
        record_total(x, &mut cl, input, x.counit_left(&db).map(|t| t.sub(b)));
        record_total(x, &mut cr, input, x.counit_right(&db).map(|t| t.sub(b)));
        let c = (|| -> Result<Tensor> { Ok(x.canon3(&delta_on(x, &db, 0)?)?.sub(&x.canon3(&delta_on(x, &db, n)?)?)) })();
        match c {
            Ok(t) => record(&mut coass, input, &x.cube().decide_zero(&t), |t| x.cube().fmt(t)),
            Err(e) => coass.fail(input(), format!("{e}")),
        }
        for r in &rs {
            let rin = || format!("r = {}, x = {}", base.fmt(r), x.fmt(b));
            let lhs = x.delta(&x.act_left(r, b));
            let rhs = fold_halves(&db, n, 2 * n, |l, rr| Ok(x.act_left(r, l).tensor(rr)));
            record_square(x, &mut dlin, rin, lhs.and_then(|l| Ok(l.sub(&rhs?))));
            let lhs = x.delta(&x.act_right(b, r));
            let rhs = fold_halves(&db, n, 2 * n, |l, rr| Ok(l.tensor(&x.act_right(rr, r))));
            record_square(x, &mut dlin, rin, lhs.and_then(|l| Ok(l.sub(&rhs?))));
            let r1 = (|| -> Result<Option<String>> {
                let eb = x.eps(b)?;
                let a = eq_base(base, &x.eps(&x.act_left(r, b))?, &base.mul(r, &eb));
                let c = eq_base(base, &x.eps(&x.act_right(b, r))?, &base.mul(&eb, r));
                Ok(a.or(c))
            })();
            elin.case_result(rin, r1);
        }
    }
    for c in [mem, dmem, cl, cr, coass, dlin, elin] {
        report.push(c.finish());
    }
    report
}

/// The coring axioms plus: s and t are algebra maps with commuting images
/// inducing the bimodule structure, the Takeuchi condition, Δ(1) = 1⊗1,
/// ε(1) = 1, multiplicativity of Δ, and ε(x s(ε y)) = ε(xy) = ε(x t(ε y)).
pub fn check_bialgebroid<X: Bialgebroid + ?Sized>(x: &X, sampling: Sampling) -> Report {
    let n = arity(x);
    let d = Some(x.bound());
    let base = x.base();
    let rs = with_one(x.base_gens());
    let mut report = check_coring(x);
    report.name = format!("bialgebroid({})", x.name());

    let mut unit = Check::new("Delta(1) = 1 (x) 1, eps(1) = 1", None);
    let one = x.unit();
    record_square(x, &mut unit, || "1".into(), x.delta(&one).map(|t| t.sub(&one.tensor(&one))));
    unit.case_result(|| "eps(1)".into(), x.eps(&one).map(|e| eq_base(base, &e, &NcPoly::one())));
    report.push(unit.finish());

    let mut st = Check::new("s, t algebra maps with commuting images", d);
    for r in &rs {
        for r2 in &rs {
            let input = || format!("{} ; {}", base.fmt(r), base.fmt(r2));
            for (name, v) in [
                ("s", x.mul(&x.s(r), &x.s(r2)).map(|p| p.sub(&x.s(&base.mul(r, r2))))),
                ("t", x.mul(&x.t(r), &x.t(r2)).map(|p| p.sub(&x.t(&base.mul(r2, r))))),
                ("st", x.mul(&x.s(r), &x.t(r2)).and_then(|p| Ok(p.sub(&x.mul(&x.t(r2), &x.s(r))?)))),
            ] {
                record_total(x, &mut st, || format!("{name}: {}", input()), v);
            }
        }
    }
    report.push(st.finish());

    let mut bimod = Check::new("(i) r x = s(r) x, x r = t(r) x", d);
    let mut tak = Check::new("(ii) x_(1) t(r) (x)_R x_(2) = x_(1) (x)_R x_(2) s(r)", d);
    for b in x.basis() {
        let db = x.delta(b);
        if let Err(e) = &db {
            tak.fail(x.fmt(b), format!("{e}"));
        }
        for r in &rs {
            let input = || format!("r = {}, x = {}", base.fmt(r), x.fmt(b));
            record_total(x, &mut bimod, input, x.mul(&x.s(r), b).map(|t| t.sub(&x.act_left(r, b))));
            record_total(x, &mut bimod, input, x.mul(&x.t(r), b).map(|t| t.sub(&x.act_right(b, r))));
            if let Ok(db) = &db {
                let diff = fold_halves(db, n, 2 * n, |l, rr| Ok(x.mul(l, &x.t(r))?.tensor(rr).sub(&l.tensor(&x.mul(rr, &x.s(r))?))));
                record_square(x, &mut tak, input, diff);
            }
        }
    }
    report.push(bimod.finish());
    report.push(tak.finish());

    let degs: Vec<u32> = x.basis().iter().map(|b| x.degree(b)).collect();
    let (pairs, sampled) = sampling.tuples(&degs, 2, x.bound(), x.complete());
    let mut closed = Check::new("X closed under the product", d);
    let mut dmul = Check::new("(ii) Delta(x y) = Delta(x) Delta(y)", d);
    let mut ceps = Check::new("(iii) eps(x s(eps y)) = eps(x y) = eps(x t(eps y))", d);
    for p in &pairs {
        let (u, v) = (&x.basis()[p[0]], &x.basis()[p[1]]);
        let input = || format!("{} ; {}", x.fmt(u), x.fmt(v));
        let uv = match x.mul(u, v) {
            Ok(t) => t,
            Err(e) => {
                closed.fail(input(), format!("{e}"));
                continue;
            }
        };
        match x.member(&uv) {
            Ok(dec) => record(&mut closed, input, &dec, |t| format!("{} terms off", t.len())),
            Err(e) => closed.fail(input(), format!("{e}")),
        }
        let diff = (|| -> Result<Tensor> {
            let (du, dv) = (x.delta(u)?, x.delta(v)?);
            let mut prod = Tensor::zero(2 * n);
            for (ul, ur, cu) in halves(&du, n) {
                for (vl, vr, cv) in halves(&dv, n) {
                    prod.add_scaled(&x.mul(&ul, &vl)?.tensor(&x.mul(&ur, &vr)?), &(cu * cv));
                }
            }
            Ok(x.delta(&uv)?.sub(&prod))
        })();
        record_square(x, &mut dmul, input, diff);
        let r = (|| -> Result<Option<String>> {
            let ev = x.eps(v)?;
            let e1 = x.eps(&x.mul(u, &x.s(&ev))?)?;
            let e2 = x.eps(&uv)?;
            let e3 = x.eps(&x.mul(u, &x.t(&ev))?)?;
            Ok(eq_base(base, &e1, &e2).or_else(|| eq_base(base, &e2, &e3)))
        })();
        ceps.case_result(input, r);
    }
    for c in [&mut closed, &mut dmul, &mut ceps] {
        if sampled {
            c.note(format!("{} sampled pairs", pairs.len()));
        }
    }
    report.push(closed.finish());
    report.push(dmul.finish());
    report.push(ceps.finish());
    report
}

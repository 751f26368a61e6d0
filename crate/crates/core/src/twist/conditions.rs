use alloc::format;
use alloc::string::String;

use super::{left_mul_c, pairs, right_mul_a, TwistingMap};
use crate::error::Result;
use crate::ncalg::{NcPoly, Tensor, Word};
use crate::report::{Check, Report, Witness};

/// Outcome of each condition, as recorded by [`check_twisting_conditions`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TwistFlags {
    pub well_defined: bool,
    pub oeq: bool,
    pub c1: bool,
    pub c2: bool,
    pub left_normal: bool,
    pub right_normal: bool,
    pub associative: bool,
}

impl TwistFlags {
    pub fn normal(&self) -> bool {
        self.left_normal && self.right_normal
    }

    /// Well-defined, (Oeq), (C1), (C2) and both normalities.
    pub fn all(&self) -> bool {
        self.well_defined && self.oeq && self.c1 && self.c2 && self.normal()
    }
}

fn residue(psi: &TwistingMap, l: Result<Tensor>, r: Result<Tensor>) -> Result<Option<String>> {
    let d = l?.sub(&r?);
    Ok((!d.is_zero()).then(|| psi.fmt_out(&d)))
}

/// Σ ψ(a ⊗ c_i)·a_i over ψ(a' ⊗ c) = Σ c_i ⊗ a_i.
fn c1_rhs(psi: &TwistingMap, a: &Word, a2: &Word, c: &Word) -> Result<Tensor> {
    let mut out = Tensor::zero(2);
    for (k, x) in psi.apply_words(a2, c)?.terms() {
        out.add_scaled(&right_mul_a(&psi.apply_words(a, &k[0])?, &k[1], &psi.a), x);
    }
    Ok(out)
}

/// Σ c_i·ψ(a_i ⊗ c') over ψ(a ⊗ c) = Σ c_i ⊗ a_i.
fn c2_rhs(psi: &TwistingMap, a: &Word, c: &Word, c2: &Word) -> Result<Tensor> {
    let mut out = Tensor::zero(2);
    for (k, x) in psi.apply_words(a, c)?.terms() {
        out.add_scaled(&left_mul_c(&k[0], &psi.apply_words(&k[1], c2)?, &psi.c), x);
    }
    Ok(out)
}

/// ψ on `p ⊗ c` for a polynomial p.
fn apply_left_poly(psi: &TwistingMap, p: &NcPoly, c: &Word) -> Result<Tensor> {
    let mut out = Tensor::zero(2);
    for (w, x) in p.terms() {
        out.add_scaled(&psi.apply_words(w, c)?, x);
    }
    Ok(out)
}

fn apply_right_poly(psi: &TwistingMap, a: &Word, p: &NcPoly) -> Result<Tensor> {
    let mut out = Tensor::zero(2);
    for (w, x) in p.terms() {
        out.add_scaled(&psi.apply_words(a, w)?, x);
    }
    Ok(out)
}

/// Both sides of (Oeq-el) on (a, c, a', c').
fn oeq_sides(psi: &TwistingMap, a: &Word, c: &Word, a2: &Word, c2: &Word) -> Result<(Tensor, Tensor)> {
    let mut lhs = Tensor::zero(2);
    for (k, x) in psi.apply_words(a2, c2)?.terms() {
        let cc = psi.c.mul_words(c, &k[0]);
        lhs.add_scaled(&right_mul_a(&apply_right_poly(psi, a, &cc)?, &k[1], &psi.a), x);
    }
    let mut rhs = Tensor::zero(2);
    for (k, x) in psi.apply_words(a, c)?.terms() {
        let aa = psi.a.mul_words(&k[1], a2);
        rhs.add_scaled(&left_mul_c(&k[0], &apply_left_poly(psi, &aa, c2)?, &psi.c), x);
    }
    Ok((lhs, rhs))
}

/// Product of basis elements c⊗a and c'⊗a' in C⊗^ψA.
fn mul_basis(psi: &TwistingMap, c: &Word, a: &Word, c2: &Word, a2: &Word) -> Result<Tensor> {
    let mut out = Tensor::zero(2);
    for (k, x) in psi.apply_words(a, c2)?.terms() {
        let left = psi.c.mul_words(c, &k[0]);
        let right = psi.a.mul_words(&k[1], a2);
        out.add_scaled(&Tensor::of_polys(&[&left, &right]), x);
    }
    Ok(out)
}

fn mul_elem(psi: &TwistingMap, x: &Tensor, y: &Tensor) -> Result<Tensor> {
    let mut out = Tensor::zero(2);
    for (k1, s) in x.terms() {
        for (k2, t) in y.terms() {
            out.add_scaled(&mul_basis(psi, &k1[0], &k1[1], &k2[0], &k2[1])?, &(s * t));
        }
    }
    Ok(out)
}

/// Checks every defining condition of a twisting map over normal words of
/// total degree ≤ `d`. Failures are report entries; the flags are cached on ψ.
pub fn check_twisting_conditions(psi: &TwistingMap, d: u32) -> (Report, TwistFlags) {
    let mut report = Report::new(format!("twisting({})", psi.name));
    report.config("degree", d);
    let (a_alg, c_alg) = (&psi.a, &psi.c);
    let (ap, cp) = (a_alg.pres(), c_alg.pres());
    let mut flags = TwistFlags::default();

    let mut wd = Check::new("well-defined on relations", Some(d));
    if psi.is_generator_extension() {
        for (i, r) in ap.rules.iter().enumerate() {
            let deg = ap.degree(&r.lhs).max(ap.poly_degree(&r.rhs));
            if deg > d {
                continue;
            }
            for c in c_alg.basis(d - deg) {
                let res = residue(psi, psi.apply_words(&r.lhs, &c), apply_left_poly(psi, &r.rhs, &c));
                wd.case_result(|| format!("A rule {i}: ({} - ({})) ⊗ {}", ap.fmt_word(&r.lhs), ap.fmt(&r.rhs), cp.fmt_word(&c)), res);
            }
        }
        for (i, r) in cp.rules.iter().enumerate() {
            let deg = cp.degree(&r.lhs).max(cp.poly_degree(&r.rhs));
            if deg > d {
                continue;
            }
            for a in a_alg.basis(d - deg) {
                let res = residue(psi, psi.apply_words(&a, &r.lhs), apply_right_poly(psi, &a, &r.rhs));
                wd.case_result(|| format!("C rule {i}: {} ⊗ ({} - ({}))", ap.fmt_word(&a), cp.fmt_word(&r.lhs), cp.fmt(&r.rhs)), res);
            }
        }
    } else {
        wd.note("given on normal words; relators do not arise");
        wd.ok();
    }
    flags.well_defined = wd.is_ok();
    report.push(wd.finish());

    let ps = pairs(a_alg, c_alg, d);

    let mut oeq = Check::new("(Oeq-el)", Some(d));
    let mut assoc = Check::new("associativity of m^psi", Some(d));
    for (a, c) in &ps {
        let used = ap.degree(a) + cp.degree(c);
        for (a2, c2) in pairs(a_alg, c_alg, d - used) {
            let input = || format!("{} ⊗ {} ⊗ {} ⊗ {}", ap.fmt_word(a), cp.fmt_word(c), ap.fmt_word(&a2), cp.fmt_word(&c2));
            oeq.case_result(input, oeq_sides(psi, a, c, &a2, &c2).map(|(l, r)| {
                let diff = l.sub(&r);
                (!diff.is_zero()).then(|| psi.fmt_out(&diff))
            }));
            // ((1⊗a)(c⊗a'))(c'⊗1) against (1⊗a)((c⊗a')(c'⊗1)): the same quadruple
            let e = Word::empty();
            let x = Tensor::basis(&[e.clone(), a.clone()]);
            let y = Tensor::basis(&[c.clone(), a2.clone()]);
            let z = Tensor::basis(&[c2.clone(), e.clone()]);
            let res = mul_elem(psi, &x, &y)
                .and_then(|xy| mul_elem(psi, &xy, &z))
                .and_then(|l| Ok(l.sub(&mul_elem(psi, &x, &mul_elem(psi, &y, &z)?)?)))
                .map(|diff| (!diff.is_zero()).then(|| psi.fmt_out(&diff)));
            assoc.case_result(
                || format!("(1 ⊗ {}) ({} ⊗ {}) ({} ⊗ 1)", ap.fmt_word(a), cp.fmt_word(c), ap.fmt_word(&a2), cp.fmt_word(&c2)),
                res,
            );
        }
    }
    flags.oeq = oeq.is_ok();
    flags.associative = assoc.is_ok();
    report.push(oeq.finish());
    report.push(assoc.finish());
    report.assert("associativity iff (Oeq-el)", flags.oeq == flags.associative, Some(d), || Witness {
        input: String::from("basis quadruples"),
        residue: format!("(Oeq-el) {} but associativity {}", flags.oeq, flags.associative),
    });

    let mut c1 = Check::new("(C1el)", Some(d));
    let mut c2 = Check::new("(C2el)", Some(d));
    for (a, c) in &ps {
        let used = ap.degree(a) + cp.degree(c);
        for a2 in a_alg.basis(d - used) {
            let lhs = apply_left_poly(psi, &a_alg.mul_words(a, &a2), c);
            let res = residue(psi, lhs, c1_rhs(psi, a, &a2, c));
            c1.case_result(|| format!("{} {} ⊗ {}", ap.fmt_word(a), ap.fmt_word(&a2), cp.fmt_word(c)), res);
        }
        for c2w in c_alg.basis(d - used) {
            let lhs = apply_right_poly(psi, a, &c_alg.mul_words(c, &c2w));
            let res = residue(psi, lhs, c2_rhs(psi, a, c, &c2w));
            c2.case_result(|| format!("{} ⊗ {} {}", ap.fmt_word(a), cp.fmt_word(c), cp.fmt_word(&c2w)), res);
        }
    }
    flags.c1 = c1.is_ok();
    flags.c2 = c2.is_ok();
    report.push(c1.finish());
    report.push(c2.finish());

    let e = Word::empty();
    let mut ln = Check::new("left normal", Some(d));
    for a in a_alg.basis(d) {
        let res = residue(psi, psi.apply_words(&a, &e), Ok(Tensor::basis(&[e.clone(), a.clone()])));
        ln.case_result(|| format!("{} ⊗ 1", ap.fmt_word(&a)), res);
    }
    let mut rn = Check::new("right normal", Some(d));
    for c in c_alg.basis(d) {
        let res = residue(psi, psi.apply_words(&e, &c), Ok(Tensor::basis(&[c.clone(), e.clone()])));
        rn.case_result(|| format!("1 ⊗ {}", cp.fmt_word(&c)), res);
    }
    flags.left_normal = ln.is_ok();
    flags.right_normal = rn.is_ok();
    report.push(ln.finish());
    report.push(rn.finish());

    let f = flags;
    let implications = [
        ("implication: (Oeq) and left normal give (C1)", f.oeq && f.left_normal, f.c1),
        ("implication: (Oeq) and right normal give (C2)", f.oeq && f.right_normal, f.c2),
        ("implication: right normal and (C1) give (C2)", f.right_normal && f.c1, f.c2),
        ("implication: left normal and (C2) give (C1)", f.left_normal && f.c2, f.c1),
    ];
    for (name, premise, conclusion) in implications {
        report.assert(name, !premise || conclusion, Some(d), || Witness {
            input: String::from("condition flags"),
            residue: String::from("premise holds but conclusion fails"),
        });
    }
    psi.conditions.borrow_mut().replace((d, flags));
    (report, flags)
}

pub(crate) fn twisted_mul(psi: &TwistingMap, x: &Tensor, y: &Tensor) -> Result<Tensor> {
    mul_elem(psi, x, y)
}
